import json
import subprocess
import sys

import pytest

from qcartan.cli import UnknownObject, build_matrix, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "algebra, text, expected",
    [
        ("cl", "vm2*v2", "-v2*vm2 + (1+q^2)*c/q^2"),
        ("ext", "v0*v0", "(1-q^4)/q^3*v2*vm2"),
        ("cl", "1", "1"),
        ("cl", "v2*v0 + v0*v2*q^2", "0"),
    ],
)
def test_normalize(capsys, algebra, text, expected):
    code, out, _ = run(capsys, "normalize", "--algebra", algebra, text)
    assert code == 0
    assert out.strip() == expected


def test_normalize_at_point(capsys):
    code, out, _ = run(capsys, "normalize", "--q", "2", "--c", "3", "vm2*v2")
    assert code == 0
    assert out.strip() == "-v2*vm2 + 15/4"


def test_normalize_syntax_error(capsys):
    code, _, err = run(capsys, "normalize", "v2**")
    assert code == 2
    assert "position 3" in err
    assert "^" in err


def test_verify_rejects_q_one(capsys):
    code, _, err = run(capsys, "verify", "--suite", "braiding", "--q", "1")
    assert code == 2
    assert "q = 1" in err


def test_verify_rejects_c_zero(capsys):
    code, _, err = run(capsys, "verify", "--suite", "uq", "--q", "7/5", "--c", "0")
    assert code == 2


def test_verify_passing_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "uq", "--q", "7/5")
    assert code == 0
    assert "10/10 checks passed" in out
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_c_as_expression(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "braiding", "--q", "3/2", "--c", "q")
    assert code == 0


def test_verify_exit_code_reflects_failures(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "ext", "--q", "7/5")
    assert code == 1
    assert "FAIL  ext.iota-top" in out
    assert "note  operator-form-e" in out


def test_verify_json(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--suite", "scalar", "--json", str(path))
    doc = json.loads(path.read_text())
    assert code == 0
    assert set(doc) == {"suite", "checks", "timing", "configuration", "findings"}
    assert doc["configuration"] == {"mode": "symbolic"}
    assert {c["id"] for c in doc["checks"]} == {
        "scalar.canonical-idempotent",
        "scalar.field-axioms",
        "scalar.q-integers",
        "scalar.specialize-homomorphism",
    }
    assert set(doc["checks"][0]) == {"id", "status", "lhs", "rhs", "anchor"}


def test_verify_json_stdout(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "uq", "--q", "7/5", "--c", "1", "--json", "-")
    doc = json.loads(out)
    assert doc["configuration"] == {"mode": "point", "q": "7/5", "c": "1"}


def test_matrix_sigma_tilde(capsys):
    code, out, _ = run(capsys, "matrix", "sigma-tilde", "V", "V", "--json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["entries"]) == 9 and len(doc["entries"][0]) == 9
    col = doc["columns"].index("v0(x)v2")
    column = {doc["rows"][i]: doc["entries"][i][col] for i in range(9) if doc["entries"][i][col] != "0"}
    assert column == {"v2(x)v0": "2*q^2/(1+q^4)", "v0(x)v2": "(-1+q^4)/(1+q^4)"}


def test_matrix_d_cl_column(capsys):
    mat, cols, rows = build_matrix("d-cl", [])
    j = cols.index("v2")
    nonzero = {rows[i]: str(mat[i, j]) for i in range(8) if mat[i, j]}
    assert nonzero == {"v2*v0": "-1/c"}


def test_matrix_lie_k_is_diagonal(capsys):
    mat, _, _ = build_matrix("L(K)", [])
    assert all(not mat[i, j] for i in range(8) for j in range(8) if i != j)


def test_matrix_text_output(capsys):
    code, out, _ = run(capsys, "matrix", "iota(v0)", "--algebra", "ext", "--q", "2")
    assert code == 0
    assert out.startswith("# iota(v0)")


@pytest.mark.parametrize("argv", [["foo"], ["sigma", "V"], ["sigma", "V", "W"], ["iota(v3)"], ["L(G)"], ["d-cl", "V"]])
def test_matrix_unknown_object(capsys, argv):
    with pytest.raises(UnknownObject):
        build_matrix(argv[0], argv[1:])
    code, _, err = run(capsys, "matrix", *argv)
    assert code == 2
    assert err.startswith("error:")


def test_cohomology_ext(capsys):
    code, out, _ = run(capsys, "cohomology", "--algebra", "ext")
    assert code == 0
    dims = [line.split("dim H = ")[1].split()[0] for line in out.splitlines() if "dim H" in line]
    assert dims == ["1", "0", "0", "1"]
    assert "v2*v0*vm2" in out


def test_cohomology_ext_at_q_one(capsys):
    code, out, _ = run(capsys, "cohomology", "--q", "1")
    dims = [line.split("dim H = ")[1].split()[0] for line in out.splitlines() if "dim H" in line]
    assert dims == ["1", "0", "0", "1"]


def test_cohomology_cl(capsys):
    code, out, _ = run(capsys, "cohomology", "--algebra", "cl")
    assert "parity 0: dim H = 0  (ker 4, im 4)" in out
    assert "parity 1: dim H = 0" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qcartan", "normalize", "v2*v2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0"
