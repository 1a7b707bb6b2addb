"""JSON serialization of monads.

A monad file holds ``A``, ``B``, ``C`` (lists of twists), ``alpha`` (rows
indexed by B, columns by A), ``beta`` (rows indexed by C, columns by B), each
entry a polynomial string, and an optional ``meta`` object.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .complexes import Monad
from .graded import ShapeError
from .polyring import PolyError

FORMAT_KEYS = ("A", "B", "C", "alpha", "beta")


class MonadFileError(ValueError):
    """The document is not a well-formed monad file."""


def monad_to_dict(m: Monad) -> dict:
    out = {"A": list(m.A), "B": list(m.B), "C": list(m.C),
           "alpha": m.alpha.to_strings(), "beta": m.beta.to_strings()}
    if m.meta:
        out["meta"] = m.meta
    return out


def dumps(m: Monad) -> str:
    return json.dumps(monad_to_dict(m), indent=2) + "\n"


def _twists(doc: dict, key: str) -> list[int]:
    v = doc.get(key)
    if not isinstance(v, list) or not all(isinstance(t, int) and not isinstance(t, bool) for t in v):
        raise MonadFileError(f"{key!r} must be a list of integers")
    return v


def _matrix(doc: dict, key: str, rows: int, cols: int) -> list[list[str]]:
    v = doc.get(key)
    if rows == 0 and v in (None, []):
        return []
    if not isinstance(v, list) or len(v) != rows:
        raise MonadFileError(f"{key!r} must have {rows} rows")
    for i, r in enumerate(v):
        if not isinstance(r, list) or len(r) != cols:
            raise MonadFileError(f"row {i} of {key!r} must have {cols} entries")
        for e in r:
            if not isinstance(e, (str, int)) or isinstance(e, bool):
                raise MonadFileError(f"entries of {key!r} must be polynomial strings")
    return [[str(e) for e in r] for r in v]


def monad_from_dict(doc: dict) -> Monad:
    if not isinstance(doc, dict):
        raise MonadFileError("a monad file must be a JSON object")
    missing = [k for k in FORMAT_KEYS if k not in doc]
    if missing:
        raise MonadFileError(f"missing keys: {', '.join(missing)}")
    A, B, C = (_twists(doc, k) for k in ("A", "B", "C"))
    alpha = _matrix(doc, "alpha", len(B), len(A))
    beta = _matrix(doc, "beta", len(C), len(B))
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise MonadFileError("'meta' must be an object")
    try:
        return Monad.from_strings(A, B, C, alpha, beta, meta)
    except (PolyError, ShapeError) as exc:
        raise MonadFileError(str(exc)) from exc


def loads(text: str) -> Monad:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MonadFileError(f"invalid JSON: {exc}") from exc
    return monad_from_dict(doc)


def read_monad(path: str | Path) -> Monad:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MonadFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def write_monad(m: Monad, path: str | Path) -> None:
    Path(path).write_text(dumps(m))


CORPUS = ("nullcorr", "nullcorr_line", "rank4_nonsplit", "rank4_split", "rank4_point", "rank4_line",
          "instanton5", "ein", "g21")


def corpus_path(name: str) -> Path:
    return Path(str(resources.files("monadkit") / "corpus" / f"{name}.json"))


def load_corpus(name: str) -> Monad:
    return read_monad(corpus_path(name))
