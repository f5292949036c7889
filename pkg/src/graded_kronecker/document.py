"""JSON documents for representations.

    {
      "d": -1,
      "field": "Q",
      "V": {"0": 1},
      "W": {"0": 1},
      "alpha": [{"degree": 0, "matrix": [["1"]]}],
      "beta": []
    }

Degrees are string keys, scalars are exact strings (``"3"``, ``"-2/5"``).
A block's ``degree`` is its source degree in V; missing blocks are zero.
:func:`dumps` writes one canonical form so that ``dumps(loads(s)) == s`` for
every document it produced.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict

from .linalg import GradedMap, GradedVectorSpace, ScalarField
from .quiver import Representation, RepresentationError, validate


class DocumentError(ValueError):
    """Malformed representation document."""


def _profile(obj: Any, where: str) -> Dict[int, int]:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object mapping degree strings to dimensions")
    out = {}
    for key, n in obj.items():
        try:
            g = int(key)
        except (TypeError, ValueError):
            raise DocumentError(f"{where}: key {key!r} is not an integer degree") from None
        if str(g) != key:
            raise DocumentError(f"{where}: key {key!r} is not a canonical integer")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise DocumentError(f"{where}[{key!r}]: dimension must be a nonnegative integer, got {n!r}")
        out[g] = n
    return out


def _scalar(x: Any, F: ScalarField, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DocumentError(f"{where}: scalar must be a string like '3' or '-2/5', got {x!r}")
    try:
        q = Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: cannot parse scalar {x!r}") from None
    try:
        return F(q)
    except ZeroDivisionError:
        raise DocumentError(f"{where}: denominator of {x!r} vanishes in {F}") from None


def _blocks(obj: Any, name: str, V, W, deg: int, F) -> GradedMap:
    if not isinstance(obj, list):
        raise DocumentError(f"{name}: expected a list of blocks")
    blocks = {}
    for n, blk in enumerate(obj):
        where = f"{name}[{n}]"
        if not isinstance(blk, dict) or set(blk) != {"degree", "matrix"}:
            raise DocumentError(f"{where}: expected an object with keys 'degree' and 'matrix'")
        i = blk["degree"]
        if not isinstance(i, int) or isinstance(i, bool):
            raise DocumentError(f"{where}.degree: expected an integer, got {i!r}")
        if i in blocks:
            raise DocumentError(f"{where}.degree: duplicate block for degree {i}")
        rows, cols = W[i + deg], V[i]
        m = blk["matrix"]
        if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
            raise DocumentError(f"{where}.matrix: expected a list of rows")
        if len(m) != rows:
            raise DocumentError(
                f"{where}.matrix: expected {rows} rows (dim W in degree {i + deg}), got {len(m)}"
            )
        for r, row in enumerate(m):
            if len(row) != cols:
                raise DocumentError(
                    f"{where}.matrix[{r}]: expected {cols} entries (dim V in degree {i}), got {len(row)}"
                )
        blocks[i] = tuple(
            tuple(_scalar(x, F, f"{where}.matrix[{r}][{c}]") for c, x in enumerate(row))
            for r, row in enumerate(m)
        )
    return GradedMap(V, W, deg, {i: m for i, m in blocks.items() if W[i + deg] and V[i]})


def from_dict(doc: Any) -> Representation:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    missing = {"d", "field", "V", "W", "alpha", "beta"} - set(doc)
    if missing:
        raise DocumentError(f"missing fields: {', '.join(sorted(missing))}")
    extra = set(doc) - {"d", "field", "V", "W", "alpha", "beta"}
    if extra:
        raise DocumentError(f"unknown fields: {', '.join(sorted(extra))}")
    d = doc["d"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise DocumentError(f"d: expected an integer, got {d!r}")
    if d == 0:
        raise DocumentError("d: d must be nonzero")
    try:
        F = ScalarField.parse(doc["field"]) if isinstance(doc["field"], str) else None
    except ValueError as exc:
        raise DocumentError(f"field: {exc}") from None
    if F is None:
        raise DocumentError("field: expected 'Q' or 'Fp:<p>'")
    V = GradedVectorSpace(_profile(doc["V"], "V"), F)
    W = GradedVectorSpace(_profile(doc["W"], "W"), F)
    rep = Representation(
        d, V, W, _blocks(doc["alpha"], "alpha", V, W, 0, F), _blocks(doc["beta"], "beta", V, W, d, F)
    )
    try:
        validate(rep)
    except RepresentationError as exc:
        raise DocumentError(str(exc)) from None
    return rep


def loads(text: str) -> Representation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def load(path) -> Representation:
    with open(path) as fh:
        return loads(fh.read())


def map_blocks(f: GradedMap) -> list:
    F = f.field
    out = []
    for i in f.source.support:
        if f.target[i + f.degree]:
            out.append({"degree": i, "matrix": [[F.format(x) for x in row] for row in f.block(i)]})
    return out


def square_blocks(f: GradedMap) -> list:
    """Blocks of a degree-0 base change, one per source degree."""
    F = f.field
    return [
        {"degree": g, "matrix": [[F.format(x) for x in row] for row in f.block(g)]}
        for g in f.source.support
    ]


def to_dict(rep: Representation) -> dict:
    return {
        "d": rep.d,
        "field": str(rep.field),
        "V": {str(g): n for g, n in rep.V.dims.items()},
        "W": {str(g): n for g, n in rep.W.dims.items()},
        "alpha": map_blocks(rep.alpha),
        "beta": map_blocks(rep.beta),
    }


def dumps(rep: Representation) -> str:
    return json.dumps(to_dict(rep), indent=2) + "\n"


def dump(rep: Representation, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(rep))
