import json
import subprocess
import sys

import pytest

from sunalg import basis
from sunalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tensors_n2(capsys):
    code, out, err = run(capsys, "tensors", "--n", "2")
    assert code == 0
    assert out.splitlines()[2:] == ["f 1 2 3 1.0"]
    assert "1 f-entries, 0 d-entries" in err


def test_tensors_to_file_roundtrip(capsys, tmp_path):
    path = tmp_path / "su3.txt"
    code, out, _ = run(capsys, "tensors", "--n", "3", "--out", str(path))
    assert code == 0 and "9 f-entries, 16 d-entries" in out
    f, d = basis.parse_tensors(path.read_text())
    _, f0, d0 = basis.tensors_for(3)
    assert f == f0 and d == d0


def test_tensors_json(capsys):
    code, out, _ = run(capsys, "tensors", "--n", "3", "--format", "json")
    f, d = basis.tensors_from_json(out)
    assert f[1, 2, 3] == 1.0


def test_tensors_unwritable_path(capsys, tmp_path):
    code, _, err = run(capsys, "tensors", "--n", "2", "--out", str(tmp_path / "no" / "x.txt"))
    assert code == 2 and "cannot write" in err


def test_invalid_n_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tensors", "--n", "1"])
    assert exc.value.code == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--only", "def-casimir,n3-ddd-sum")
    assert code == 0 and "n3-ddd-sum" in out and "pass" in out
    code, out, _ = run(capsys, "verify", "--n", "4", "--only", "n3-ddd-sum")
    assert code == 0 and "skipped(N≠3)" in out
    code, _, _ = run(capsys, "verify", "--n", "2", "--tol", "1e-30")
    assert code == 1
    code, _, err = run(capsys, "verify", "--n", "3", "--only", "bogus")
    assert code == 2 and "bogus" in err


def test_verify_json_range(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2..3", "--only", "tensor-dd", "--json")
    docs = json.loads(out)
    assert code == 0 and [d["n"] for d in docs] == [2, 3]
    assert all(d["format"] == "report v1" for d in docs)


@pytest.mark.parametrize("expr,expected", [
    ("f(a,b,c)*f(a,b,d)", "NN*delta(c,d)"),
    ("Tr[T(a)T(a)]", "(NN^2-1)/2"),
    ("TrAdj[D(a)D(b)]", "((NN^2-4)/NN)*delta(a,b)"),
])
def test_simplify(capsys, expr, expected):
    code, out, _ = run(capsys, "simplify", expr, "--check-n", "2,3,4,5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == expected
    assert lines[1].startswith("check: equal at N=2,3,4,5")


def test_simplify_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "simplify", "Tr[T(a)T(b)T(a)T(c)]", "--trace")
    assert code == 0 and out.strip() == "-(1/(4*NN))*delta(b,c)"
    assert " @ " in err and " ⇒ " in err


def test_simplify_json(capsys):
    code, out, _ = run(capsys, "simplify", "TrAdj[F(a)F(b)F(c)]", "--check-n", "3", "--json")
    doc = json.loads(out)
    assert doc["normal_form"] == "(i*NN/2)*f(a,b,c)" and doc["check"]["equal"]


def test_simplify_parse_error(capsys):
    code, _, err = run(capsys, "simplify", "f(a,b")
    assert code == 2 and "position 5" in err


def test_su3_flag_restricts_check_n(capsys):
    code, _, err = run(capsys, "simplify", "TrAdj[F(a)F(b)F(c)F(d)F(e)]", "--n3", "--check-n", "4")
    assert code == 2
    code, out, _ = run(capsys, "simplify", "TrAdj[F(a)F(b)F(c)F(d)F(e)]", "--n3")
    assert code == 0 and "equal at N=3" in out


@pytest.mark.parametrize("argv,expected", [
    (["Tr[T(1)T(1)]", "--n", "3"], "0.5 0.0"),
    (["d(1,1,8)", "--n", "3"], f"{basis.format_float(basis.tensors_for(3)[2][1, 1, 8])} 0.0"),
    (["TrAdj[F(a)F(a)]", "--n", "3"], "24.0 0.0"),
    (["Tr[T(a)T(b)T(a)T(c)]", "--n", "3", "b=1", "c=1"], "-0.083333333333333329 0.0"),
    (["Tr[T(a)T(b)T(a)T(c)]", "b=1", "--n", "3", "c=1"], "-0.083333333333333329 0.0"),
])
def test_eval(capsys, argv, expected):
    code, out, _ = run(capsys, "eval", *argv)
    assert code == 0 and out.strip() == expected


def test_eval_errors(capsys):
    assert run(capsys, "eval", "f(a,b,c)", "--n", "3", "a=1")[0] == 2
    assert run(capsys, "eval", "f(a,b,c)", "--n", "3", "a=1", "b=2", "c=99")[0] == 2
    assert run(capsys, "eval", "f(a,b,c)", "--n", "3", "a=x")[0] == 2
    with pytest.raises(SystemExit):
        main(["eval", "f(1,2,3)", "--n", "3", "--bogus"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sunalg", "eval", "f(1,2,3)", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "1.0 0.0"
