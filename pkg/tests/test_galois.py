import pytest

from ordfactor.poset import FinitePoset
from ordfactor.galois import (
    AdjunctionError,
    GaloisConnection,
    MonotoneMap,
    closure_laws_hold,
    identity_map,
    lower_adjoint_of,
    preservation_report,
    round_trip_laws_hold,
    subposet_kind,
    upper_adjoint_of,
    verify_connection,
)

DIV12 = FinitePoset.divisors(12)


def test_monotone_map_rejects_non_isotone():
    # swap 1 and 12 in the identity: not monotone
    vals = list(range(DIV12.size))
    vals[DIV12.index("1")], vals[DIV12.index("12")] = vals[DIV12.index("12")], vals[DIV12.index("1")]
    with pytest.raises(AdjunctionError, match="monotone"):
        MonotoneMap(DIV12, DIV12, tuple(vals))


def test_identity_adjunction():
    ok, witness = verify_connection(identity_map(DIV12), identity_map(DIV12))
    assert ok and witness is None


def test_constant_adjunction():
    bottom = DIV12.index("1")
    top = DIV12.index("12")
    d = MonotoneMap(DIV12, DIV12, tuple(bottom for _ in range(DIV12.size)))
    g = MonotoneMap(DIV12, DIV12, tuple(top for _ in range(DIV12.size)))
    ok, _ = verify_connection(d, g)
    assert ok


def test_identity_to_dual_fails_with_witness():
    dual = DIV12.dual()
    d = MonotoneMap(DIV12, dual, tuple(range(DIV12.size)), check=False)
    g = MonotoneMap(dual, DIV12, tuple(range(DIV12.size)), check=False)
    ok, witness = verify_connection(d, g)
    assert not ok
    a, b = witness
    # the witness pair genuinely violates the adjunction equivalence
    assert DIV12.leq(a, g(b)) != dual.leq(d(a), b)


def test_orientation_mismatch_is_input_error():
    with pytest.raises(AdjunctionError, match="orientation"):
        verify_connection(identity_map(DIV12), identity_map(FinitePoset.divisors(6)))


def test_connection_constructor_rejects_bad_pair():
    dual = DIV12.dual()
    d = MonotoneMap(DIV12, dual, tuple(range(DIV12.size)), check=False)
    g = MonotoneMap(dual, DIV12, tuple(range(DIV12.size)), check=False)
    with pytest.raises(AdjunctionError, match="witness"):
        GaloisConnection(d, g)


def test_adjoint_of_identity_is_identity():
    assert lower_adjoint_of(identity_map(DIV12)) == identity_map(DIV12)
    assert upper_adjoint_of(identity_map(DIV12)) == identity_map(DIV12)


def test_upper_adjoint_of_join_with_constant():
    # d(x) = x v 2 mapping into the up-set of 2
    c = DIV12.index("2")
    sub, old = DIV12.restrict(DIV12.up_set([c]))
    back = {o: i for i, o in enumerate(old)}
    d = MonotoneMap(DIV12, sub, tuple(back[DIV12.join([x, c])] for x in range(DIV12.size)))
    g = upper_adjoint_of(d)
    assert g is not None
    # g(b) is the largest x with x v 2 <= b, which here is b itself
    for b in range(sub.size):
        assert g(b) == old[b]


def test_non_meet_preserving_map_has_no_lower_adjoint():
    # V poset: bottom 0 under a, b; g collapses to a 2-chain non-meet-preservingly
    v = FinitePoset.from_pairs(["0", "a", "b"], [(0, 1), (0, 2)])
    two = FinitePoset.chain(2)
    g = MonotoneMap(v, two, (0, 1, 1))
    assert lower_adjoint_of(g) is None


def test_non_join_preserving_map_has_no_upper_adjoint():
    lam = FinitePoset.from_pairs(["a", "b", "1"], [(0, 2), (1, 2)])
    two = FinitePoset.chain(2)
    d = MonotoneMap(lam, two, (0, 0, 1))
    # join(a, b) = 1 maps to 1 but join of images is 0
    assert upper_adjoint_of(d) is None


def test_adjoint_synthesis_mutually_inverse():
    c = DIV12.index("2")
    sub, old = DIV12.restrict(DIV12.up_set([c]))
    back = {o: i for i, o in enumerate(old)}
    d = MonotoneMap(DIV12, sub, tuple(back[DIV12.join([x, c])] for x in range(DIV12.size)))
    g = upper_adjoint_of(d)
    assert lower_adjoint_of(g) == d


def test_preservation_report_identity():
    conn = GaloisConnection(identity_map(DIV12), identity_map(DIV12))
    rep = preservation_report(conn)
    assert rep.lower_preserves_joins and rep.upper_preserves_meets
    assert rep.lower_onto and rep.upper_onto
    assert rep.images_isomorphic and rep.exhaustive


def test_connection_laws_on_corpus():
    conns = [GaloisConnection(identity_map(DIV12), identity_map(DIV12))]
    bottom, top = DIV12.index("1"), DIV12.index("12")
    conns.append(
        GaloisConnection(
            MonotoneMap(DIV12, DIV12, tuple(bottom for _ in range(DIV12.size))),
            MonotoneMap(DIV12, DIV12, tuple(top for _ in range(DIV12.size))),
        )
    )
    c = DIV12.index("2")
    sub, old = DIV12.restrict(DIV12.up_set([c]))
    back = {o: i for i, o in enumerate(old)}
    d = MonotoneMap(DIV12, sub, tuple(back[DIV12.join([x, c])] for x in range(DIV12.size)))
    conns.append(GaloisConnection(d, upper_adjoint_of(d)))
    for conn in conns:
        assert round_trip_laws_hold(conn)
        assert closure_laws_hold(conn)
        rep = preservation_report(conn)
        assert rep.lower_preserves_joins and rep.upper_preserves_meets


def test_subposet_kind_whole_poset_is_both():
    assert subposet_kind(DIV12, range(DIV12.size)) == "both"


def test_subposet_kind_principal_chain_is_first():
    # powers of 2 inside Div(12): greatest member below any divisor exists,
    # least member above an odd multiple of 3 does not
    chain = [DIV12.index(x) for x in ("1", "2", "4")]
    assert subposet_kind(DIV12, chain) == "first"


def test_subposet_kind_upper_set_is_second():
    # the up-set of 2 admits least-member-above (join with 2), not greatest-below
    up2 = DIV12.up_set([DIV12.index("2")])
    assert subposet_kind(DIV12, up2) == "second"


def test_subposet_kind_neither():
    # {2} alone in Div(12): 3 has no member above or below it
    assert subposet_kind(DIV12, [DIV12.index("2")]) == "neither"


def test_flag_agreement_on_random_adjunction_corpus():
    # synthesize adjoints of random monotone maps; the preservation report
    # cross-checks onto/one-one/identity agreement internally and raises on
    # any mismatch, so a clean pass over the corpus is the assertion
    import random

    from ordfactor.poset import FinitePoset

    rng = random.Random(20260808)
    built = 0
    for _ in range(200):
        n = rng.randint(1, 5)
        up = [1 << i for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.4:
                    up[i] |= 1 << j
        for _ in range(n):
            for i in range(n):
                acc = up[i]
                m = up[i]
                while m:
                    low = m & -m
                    acc |= up[low.bit_length() - 1]
                    m ^= low
                up[i] = acc
        p = FinitePoset([f"x{i}" for i in range(n)], up)
        q = FinitePoset.divisors(rng.choice([4, 6, 8, 12]))
        values = []
        ok = True
        for i in range(p.size):
            cands = [
                v
                for v in range(q.size)
                if all(q.leq(values[j], v) for j in range(i) if p.leq(j, i))
                and all(q.leq(v, values[j]) for j in range(i) if p.leq(i, j))
            ]
            if not cands:
                ok = False
                break
            values.append(rng.choice(cands))
        if not ok:
            continue
        g = MonotoneMap(p, q, tuple(values))
        d = lower_adjoint_of(g)
        if d is None:
            continue
        conn = GaloisConnection(d, g)
        rep = preservation_report(conn)
        assert rep.lower_onto == rep.upper_one_one == rep.kernel_is_identity
        assert rep.upper_onto == rep.lower_one_one == rep.closure_is_identity
        built += 1
    assert built >= 20
