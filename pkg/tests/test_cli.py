import io
import json
import subprocess
import sys

import pytest

from conftest import CONFIGS
from limroot.cli import run

SU21 = '{"family": "SU", "field": "C", "params": [2, 1]}'


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_roots_json():
    code, out, _ = call("--format", "json", "roots", SU21)
    assert code == 0
    data = json.loads(out)
    assert data["system"]["type"] == "BC1"
    assert data["rho"] == ["2"]
    assert all(row["equal"] for row in data["rho_prod_check"])


def test_output_is_deterministic():
    a = call("--format", "json", "dirsys", str(CONFIGS / "sl_untwisted.json"))
    b = call("--format", "json", "dirsys", str(CONFIGS / "sl_untwisted.json"))
    assert a == b


def test_oracle_agrees():
    code, out, _ = call("oracle", '{"family": "SOstar", "params": [3]}')
    assert code == 0 and "catalog agrees" in out


def test_satake_dot_and_delete():
    code, out, _ = call("satake", '{"family": "SU", "field": "C", "params": [3, 1]}', "--dot")
    assert code == 0 and out.startswith("graph satake")
    code, out, _ = call("--format", "json", "satake", '{"family": "SL", "field": "R", "params": [4]}',
                        "--delete", "2")
    assert json.loads(out)["restriction_classes"] == [[1], [3]]


def test_parabolic():
    code, out, _ = call("--format", "json", "parabolic",
                        '{"family": "SL", "field": "R", "params": [4]}', "--phi", "1,3")
    data = json.loads(out)
    assert code == 0
    assert data["rho_restriction"] and data["centralizer"] and data["parabolic_component"]


def test_classify_and_dirsys():
    code, out, _ = call("--format", "json", "classify", str(CONFIGS / "sl_untwisted.json"))
    assert code == 0 and json.loads(out)["case"] == "a"
    code, out, _ = call("dirsys", str(CONFIGS / "sl_r2.json"), "--diagrams")
    assert code == 0 and "weakly parabolic: False" in out


def test_classify_rejects_non_classical():
    code, _, err = call("classify", str(CONFIGS / "sl_r2.json"))
    assert code == 1 and "NotClassifiable" in err


def test_cohdeg():
    code, out, _ = call("--format", "json", "cohdeg", str(CONFIGS / "su_growing.json"),
                        "--weight", str(CONFIGS / "weights" / "nu_211.json"))
    data = json.loads(out)
    assert code == 0 and data["q"] == 2
    assert data["verdict"] == "classically_cohomologically_finite"


def test_lp():
    cfg = str(CONFIGS / "sl_untwisted.json")
    code, out, _ = call("--format", "json", "lp", cfg, "--p", "2", "--sigma", "1/2,-1/2")
    assert code == 0 and json.loads(out)["accepted"]
    code, out, _ = call("--format", "json", "lp", cfg, "--p", "inf", "--sigma", "[0, 0]")
    assert json.loads(out)["accepted"]


@pytest.mark.parametrize("argv", [
    ("roots", "{not json"),
    ("roots", "/no/such/file.json"),
    ("roots", '{"family": "SU", "field": "C", "params": [2, 0]}'),
    ("roots", '{"family": "XX", "field": "R", "params": [2]}'),
    ("--format", "dot", "roots", SU21),
    ("nosuchcommand",),
    ("dirsys", str(CONFIGS / "sl_r2.json"), "--depth", "-1"),
])
def test_input_errors_exit_one(argv):
    code, _, err = call(*argv)
    assert code == 1
    assert err.startswith("error:")


def test_oracle_mismatch_exits_two(monkeypatch):
    from limroot import oracle
    real = oracle.compare_with_catalog

    def broken(desc, bound=None):
        got, want, _ = real(desc, bound)
        return got, want, ["multiplicity differs at (1)"]

    monkeypatch.setattr(oracle, "compare_with_catalog", broken)
    code, out, err = call("oracle", SU21)
    assert code == 2 and "OracleMismatch" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "limroot", "roots", SU21],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "BC1" in proc.stdout
