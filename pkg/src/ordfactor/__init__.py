"""ordfactor: factorization theory on finite posets.

Power ideals and their complete lattice, Galois connections, decomposition
conditions and their equivalence harness, topological representations,
internal/external products, and in-model Krull/Dedekind/UFD/PID
classification, with built-in generators and a line-oriented instance file
format behind the ``ordfactor`` CLI.
"""

from .poset import (
    FinitePoset,
    LatticeProfile,
    PosetError,
    is_irreducible,
    lattice_class,
    order_isomorphism,
)
from .galois import (
    AdjunctionError,
    GaloisConnection,
    MonotoneMap,
    lower_adjoint_of,
    preservation_report,
    subposet_kind,
    upper_adjoint_of,
    verify_connection,
)
from .monoid import (
    MonoidInstance,
    NotApplicableError,
    PrimePower,
    atoms,
    condense,
    decompose,
    derive_order,
    law_report,
    primes,
    uniqueness_check,
    valuation,
)
from .ideals import (
    IdealFamily,
    avoiding_ideal,
    check_condition,
    enumerate_ideals,
    equivalence_harness,
    ideal_closure,
    is_power_ideal,
    lower_set_filter_ideals,
)
from .divisor import (
    ClassificationVerdict,
    IdealSystem,
    build_principal_connection,
    check_D6,
    classify,
    derive_system,
    divisorial_closure,
    krull_clause_harness,
)
from .topology import Representation, build_representation, represent_ideal_family
from .products import (
    external_product,
    internal_external_iso,
    internal_product_witness,
    order_representation_monoid,
)
from .builders import gen_div, gen_free, gen_hilbert, gen_krullZ2, gen_random
from .instances import InstanceSpec, parse_instance, run_checks, serialize_instance
from .reporting import ConditionReport, Report

__version__ = "0.1.0"
