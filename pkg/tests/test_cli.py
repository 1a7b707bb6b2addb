import json

import pytest

from monadkit.cli import main
from monadkit.monadfile import corpus_path, read_monad


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_exit_codes(capsys):
    assert run(capsys, "validate", corpus_path("g21"), "--fiberwise")[0] == 0
    code, out, _ = run(capsys, "validate", corpus_path("rank4_point"), "--fiberwise")
    assert code == 1 and "witness [0:0:1:-2]" in out


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "validate", tmp_path / "none.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"A": [-1], "B": [0], "C": [], "alpha": [["x^2"]], "beta": []}')
    code, _, err = run(capsys, "cohomology", bad)
    assert code == 2 and "input error" in err
    assert run(capsys, "cohomology", corpus_path("g21"), "--twists", "x")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_cohomology_json(capsys):
    code, out, _ = run(capsys, "cohomology", corpus_path("g21"), "--twists=-4..0", "--engine", "both", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["schema_version"] == 1
    assert rep["cohomology"]["h"]["2"] == [8, 5, 1, 0, 0]


def test_invariants_and_classify(capsys):
    code, out, _ = run(capsys, "invariants", corpus_path("ein"), "--json")
    rep = json.loads(out)
    assert rep["spectrum"] == [-2, -1, 0, 1, 2] and rep["h1_generators"] == [-3]
    code, out, _ = run(capsys, "classify", corpus_path("g21"))
    assert code == 0 and "ModifiedInstanton" in out
    assert run(capsys, "classify", corpus_path("nullcorr"))[0] == 1


def test_end_and_dimension(capsys):
    code, out, _ = run(capsys, "end", corpus_path("rank4_split"), "--json")
    assert json.loads(out)["cohomology"][0] == 5
    code, out, _ = run(capsys, "dimension", "--a", "4", "--json")
    assert json.loads(out)["dimensions"]["formula_value"] == 135


def test_symplectic(capsys, tmp_path):
    code, out, _ = run(capsys, "symplectic", corpus_path("rank4_nonsplit"), "--json")
    assert code == 0 and json.loads(out)["certificate"]["q"]
    code, out, _ = run(capsys, "symplectic", corpus_path("rank4_nonsplit"), "--printed-j")
    assert code == 0 and "valid: False" in out
    q = tmp_path / "q.json"
    q.write_text(json.dumps([[0, -1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 1, 0],
                             [0, 0, -1, 0, 0, 1], [0, 0, -1, 0, 0, 0], [0, 0, 0, -1, 0, 0]]))
    code, out, _ = run(capsys, "symplectic", corpus_path("rank4_nonsplit"), "--verify-q", q)
    assert "valid: True" in out
    assert run(capsys, "symplectic", corpus_path("ein"))[0] == 1


@pytest.mark.parametrize("argv,A", [
    (["nullcorr"], [-1]),
    (["rank4", "--v3", "1,0", "--v4", "0,1"], [-1]),
    (["instanton", "--charge", "2"], [-1, -1]),
    (["ein", "--l1", "x + y"], [-3]),
    (["modified", "--a", "2"], [-2, -1]),
])
def test_construct(capsys, tmp_path, argv, A):
    out = tmp_path / "m.json"
    assert run(capsys, "construct", *argv, "-o", out)[0] == 0
    assert list(read_monad(out).A) == A


def test_construct_failures(capsys):
    assert run(capsys, "construct", "ein", "--f5", "x^4")[0] == 1
    assert run(capsys, "construct", "ein", "--l1", "y")[0] == 1
    assert run(capsys, "construct", "nullcorr", "--form", "1,2")[0] == 2
