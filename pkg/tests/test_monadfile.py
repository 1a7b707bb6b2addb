import json

import pytest

from monadkit.monadfile import CORPUS, MonadFileError, dumps, loads, monad_from_dict, read_monad, write_monad


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip(corpus, name, tmp_path):
    m = corpus[name]
    assert loads(dumps(m)) == m
    p = tmp_path / f"{name}.json"
    write_monad(m, p)
    assert read_monad(p) == m
    assert dumps(read_monad(p)) == dumps(m)


GOOD = {"A": [-1], "B": [0, 0, 0, 0], "C": [1], "alpha": [["y"], ["-x"], ["w"], ["-z"]],
        "beta": [["x", "y", "z", "w"]]}


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("beta"),
    lambda d: d.update(A="-1"),
    lambda d: d.update(A=[True]),
    lambda d: d["alpha"].pop(),
    lambda d: d["beta"][0].append("x"),
    lambda d: d["alpha"][0].__setitem__(0, "x^2"),
    lambda d: d["alpha"][0].__setitem__(0, "x +"),
    lambda d: d["alpha"][0].__setitem__(0, 1.5),
    lambda d: d.update(meta=[1]),
])
def test_malformed_documents(mutate):
    doc = json.loads(json.dumps(GOOD))
    mutate(doc)
    with pytest.raises(MonadFileError):
        monad_from_dict(doc)


def test_bad_json_and_missing_file(tmp_path):
    with pytest.raises(MonadFileError):
        loads("{")
    with pytest.raises(MonadFileError):
        loads("[]")
    with pytest.raises(MonadFileError):
        read_monad(tmp_path / "absent.json")


def test_good_document_parses():
    m = monad_from_dict(GOOD)
    assert m.rank == 2 and m.composite().is_zero()
