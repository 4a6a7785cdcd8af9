import json
import subprocess
import sys

import pytest


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "ordfactor.cli", *args],
        capture_output=True,
        text=False,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_check_div60_all_exit_zero():
    code, out, err = run_cli("check", "--gen", "div:60", "--conditions", "all")
    assert code == 0, err
    assert b"summary: pass" in out


def test_check_hilbert_d1_false_exit_one():
    code, out, _ = run_cli("check", "--gen", "hilbert:441", "--conditions", "D1")
    assert code == 1
    assert b'witness="9"' in out


def test_classify_krull_exit_one():
    code, out, _ = run_cli("classify", "--gen", "krullZ2")
    assert code == 1
    text = out.decode()
    assert "krull: true" in text
    assert "ufd: false" in text
    assert "pid: false" in text


def test_json_format_stable_schema():
    code, out, _ = run_cli("check", "--gen", "div:12", "--conditions", "D1,B2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["format_version"] == 1
    assert doc["instance"] == "div:12"
    assert [c["condition"] for c in doc["checks"]] == ["D1", "B2"]
    assert doc["summary"] == "pass"


def test_byte_identical_reports():
    a = run_cli("report", "--gen", "div:60", "--format", "json")
    b = run_cli("report", "--gen", "div:60", "--format", "json")
    assert a == b
    c = run_cli("check", "--gen", "random:9,7", "--conditions", "harness", "--format", "text")
    d = run_cli("check", "--gen", "random:9,7", "--conditions", "harness", "--format", "text")
    assert c == d


def test_usage_errors_exit_two():
    code, _, err = run_cli("check", "--gen", "nope:1")
    assert code == 2
    assert b"ordfactor:" in err
    code, _, _ = run_cli("check", "--instance", "/nonexistent/file")
    assert code == 2
    code, _, _ = run_cli("nonsense")
    assert code == 2


def test_instance_file_round_trip(tmp_path):
    from ordfactor.builders import gen_div
    from ordfactor.instances import InstanceSpec, serialize_instance

    spec = InstanceSpec(
        name="div12file",
        kind="ordered-monoid",
        elements=("1", "2", "3", "4", "6", "12"),
        order_rule="divisibility",
        mult_rule="multiplication",
    )
    path = tmp_path / "div12.om"
    path.write_text(serialize_instance(spec), encoding="utf-8")
    code, out, err = run_cli("check", "--instance", str(path), "--conditions", "D1")
    assert code == 0, err
    assert b"D1: true" in out


def test_decompose_cli():
    code, out, _ = run_cli("decompose", "--gen", "div:60", "--element", "60")
    assert code == 0
    assert b"60 = " in out


def test_enumerate_m_cli():
    code, out, _ = run_cli("enumerate-m", "--gen", "div:12", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["checks"][0]["witness"]) == 6


def test_unknown_condition_exits_two():
    code, _, err = run_cli("check", "--gen", "div:12", "--conditions", "D7")
    assert code == 2
    assert b"unknown conditions" in err


def test_console_script_installed():
    import shutil

    exe = shutil.which("ordfactor")
    if exe is None:
        pytest.skip("console script not on PATH in this environment")
    proc = subprocess.run([exe, "check", "--gen", "div:12", "--conditions", "D1"], capture_output=True)
    assert proc.returncode == 0
