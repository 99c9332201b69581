import json
import subprocess
import sys

import pytest

from multicirc.circulant import cartesian_product, cycle
from multicirc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_snf_json(capsys):
    code, out, _ = run(capsys, "snf", "-m", "2,0,0;0,2,0;0,0,3")
    data = json.loads(out)
    assert code == 0
    assert data["S"] == [1, 2, 6] and data["divisors"] == [1, 2, 12]


def test_divisors_methods_agree(capsys):
    _, a, _ = run(capsys, "divisors", "-m", "4,2;6,8", "--method", "smith")
    _, b, _ = run(capsys, "divisors", "-m", "4,2;6,8", "--method", "minors")
    assert json.loads(a)["divisors"] == json.loads(b)["divisors"]


def test_group_accepts_json_matrix(capsys):
    code, out, _ = run(capsys, "group", "-m", "[[2,0],[0,6]]")
    assert code == 0 and json.loads(out)["invariant_factors"] == [2, 6]


def test_order(capsys):
    code, out, _ = run(capsys, "order", "-m", "2,0;0,6", "-a", "1,1")
    assert code == 0 and json.loads(out)["order"] == 6
    _, text, _ = run(capsys, "order", "-m", "2,0;0,6", "-a", "1,1", "--format", "text")
    assert text.strip() == "6"


def test_is_circulant_two_four(capsys):
    code, out, _ = run(capsys, "is-circulant", "-m", "2,0;0,4", "--jumps", "1,0|0,1")
    assert code == 0 and json.loads(out)["is_circulant"] is False


def test_is_circulant_exceptional(capsys):
    _, out, _ = run(capsys, "is-circulant", "-m", "2,0;0,2", "--jumps", "1,0|1,1")
    assert json.loads(out)["is_circulant"] is True


def test_dimension_report(capsys):
    _, out, _ = run(capsys, "dimension", "-m", "2,0;0,4", "--jumps", "1,0|0,1", "--mode", "graph")
    data = json.loads(out)
    assert data["exact_dimension"] == 2 and data["upper_bound"] == 2


def test_dimension_exact(capsys):
    _, out, _ = run(capsys, "dimension", "-m", "3,0;0,3", "--jumps", "1,0|0,1|1,1", "--mode", "graph", "--exact")
    assert json.loads(out)["exact_dimension"] == 1


def test_build_dot(capsys):
    code, out, _ = run(capsys, "build", "-m", "2,0;0,2", "--jumps", "1,0|1,1", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_build_json(capsys):
    _, out, _ = run(capsys, "build", "-m", "3", "--jumps", "1")
    assert json.loads(out) == {"directed": True, "edges": [[0, 1], [1, 2], [2, 0]], "n_vertices": 3}


def test_deterministic(capsys):
    argv = ["adam-canon", "-m", "2,0,0;0,2,0;0,0,3", "--jumps", "1,0,0|0,1,0|0,0,2"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_product(capsys):
    code, out, _ = run(capsys, "product", "-m", "3", "--jumps", "1", "-m", "3", "--jumps", "1", "--mode", "graph")
    assert code == 0 and json.loads(out)["n_vertices"] == 9


def test_directions_from_file(capsys, tmp_path):
    G = cartesian_product(cycle(5), cycle(5))
    path = tmp_path / "g.json"
    path.write_text(G.to_json())
    code, out, _ = run(capsys, "directions", "--graph", str(path), "-p", "5")
    assert code == 0 and json.loads(out)["n_directions"] == 2


def test_singular_exit_one(capsys):
    code, _, err = run(capsys, "group", "-m", "1,2;2,4")
    assert code == 1 and err.startswith("SingularMatrix")


def test_identity_jump_exit_one(capsys):
    code, _, err = run(capsys, "build", "-m", "2,0;0,2", "--jumps", "2,2")
    assert code == 1 and "IdentityJump" in err


def test_bad_matrix_exit_two(capsys):
    code, _, err = run(capsys, "group", "-m", "1,x;2,4")
    assert code == 2 and err


def test_missing_matrix_exit_two():
    with pytest.raises(SystemExit) as e:
        main(["group"])
    assert e.value.code == 2


def test_dot_rejected_for_numeric_commands():
    with pytest.raises(SystemExit) as e:
        main(["snf", "-m", "2", "--format", "dot"])
    assert e.value.code == 2


def test_verify_single_criterion(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1")
    assert code == 0 and [r["passed"] for r in json.loads(out)] == [True]
    _, text, _ = run(capsys, "verify", "--only", "1", "--format", "text")
    assert text.startswith("[PASS]")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "multicirc", "order", "-m", "4", "-a", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["order"] == 2
