"""Exact linear algebra over graded vector spaces.

Scalars live either in the rationals (``gmpy2.mpq``) or in a prime field
F_p (:class:`Fp`).  Matrices are plain tuples of row tuples, stored
per degree as dense blocks.  Nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from gmpy2 import mpq

Matrix = Tuple[Tuple, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


_Q0 = mpq(0)
_Q1 = mpq(1)


class Fp:
    """Element of the prime field Z/pZ."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, type(_Q0))) and other.denominator == 1:
            return int(other.numerator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class ScalarField:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not a prime")

    @classmethod
    def rationals(cls) -> "ScalarField":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "ScalarField":
        return cls(p)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return _Q0 if self.p is None else Fp(0, self.p)

    @property
    def one(self):
        return _Q1 if self.p is None else Fp(1, self.p)

    def __call__(self, x):
        """Coerce an int, rational, Fp or ``"p/q"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, Fp):
                raise TypeError("cannot coerce an F_p element into Q")
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"F_{x.p} element used in F_{self.p}")
            return x
        x = Fraction(int(x.numerator), int(x.denominator)) if not isinstance(x, int) else Fraction(x)
        num = Fp(x.numerator, self.p)
        return num / Fp(x.denominator, self.p)

    def elements(self) -> List:
        """All elements of a prime field, in order 0, 1, ..., p-1."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return [Fp(v, self.p) for v in range(self.p)]

    def format(self, x) -> str:
        if self.p is None:
            return str(x)
        return str(x.v)

    def __str__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "ScalarField":
        if text == "Q":
            return cls.rationals()
        if text.startswith("Fp:"):
            return cls.prime(int(text[3:]))
        raise ValueError(f"unknown field {text!r}, expected 'Q' or 'Fp:<p>'")


QQ = ScalarField.rationals()


# ---------------------------------------------------------------------------
# dense matrix helpers


def zeros(F: ScalarField, rows: int, cols: int) -> Matrix:
    z = F.zero
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity(F: ScalarField, n: int) -> Matrix:
    z, o = F.zero, F.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def shape(m: Matrix, cols: int | None = None) -> Tuple[int, int]:
    """(rows, cols).  A matrix with no rows cannot carry its width, so
    callers that know it pass ``cols``."""
    if len(m) == 0:
        return (0, cols or 0)
    return (len(m), len(m[0]))


def matmul(a: Matrix, b: Matrix, F: ScalarField, inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product ``a @ b``.  ``inner`` and ``cols`` resolve empty-matrix shapes."""
    n = len(a)
    k = len(b) if inner is None else inner
    if n == 1 and k == 1 and cols == 1:
        return ((a[0][0] * b[0][0],),)
    if cols is None:
        cols = len(b[0]) if b else 0
    z = F.zero
    if k == 0:
        return tuple(tuple(z for _ in range(cols)) for _ in range(n))
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = z
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(tuple(out_row))
    return tuple(out)


def transpose(m: Matrix, cols: int = 0) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols))
    return tuple(zip(*m))


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def rref(m: Sequence[Sequence], F: ScalarField) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix, F: ScalarField) -> int:
    if not m or not m[0]:
        return 0
    if len(m) == 1 and len(m[0]) == 1:
        return 1 if m[0][0] else 0
    return len(rref(m, F)[1])


def nullspace(m: Matrix, F: ScalarField, cols: int | None = None) -> List[List]:
    """Basis of {x : m x = 0}, as a list of column vectors."""
    n = cols if cols is not None else (len(m[0]) if m else 0)
    if n == 0:
        return []
    if not m:
        return [list(r) for r in identity(F, n)]
    red, pivots = rref(m, F)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(m: Matrix, F: ScalarField) -> Matrix:
    n = len(m)
    if n == 0:
        return ()
    if n == 1:
        if not m[0][0]:
            raise ValueError("matrix is singular")
        return ((F.one / m[0][0],),)
    aug = [list(row) + list(e) for row, e in zip(m, identity(F, n))]
    red, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def is_invertible(m: Matrix, F: ScalarField) -> bool:
    return len(m) == (len(m[0]) if m else 0) and rank(m, F) == len(m)


def block_diag(blocks: Sequence[Tuple[Matrix, int, int]], F: ScalarField) -> Matrix:
    """Block-diagonal matrix from ``(matrix, rows, cols)`` triples."""
    total_c = sum(c for _, _, c in blocks)
    out = []
    off = 0
    z = F.zero
    for m, r, c in blocks:
        for i in range(r):
            row = [z] * total_c
            row[off:off + c] = m[i]
            out.append(tuple(row))
        off += c
    return tuple(out)


# ---------------------------------------------------------------------------
# graded objects


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finitely supported dimension profile ``degree -> dim``.

    Degrees of dimension zero are dropped on construction, so two spaces
    compare equal iff their profiles agree.
    """

    dims: Mapping[int, int] = dc_field(default_factory=dict)
    field: ScalarField = QQ

    def __post_init__(self):
        clean = {}
        for g, n in dict(self.dims).items():
            if int(n) != n or n < 0:
                raise ValueError(f"dimension in degree {g} must be a nonnegative integer, got {n}")
            if n:
                clean[int(g)] = int(n)
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    def __getitem__(self, g: int) -> int:
        return self.dims.get(g, 0)

    def __hash__(self):
        return hash((tuple(self.dims.items()), self.field))

    @property
    def support(self) -> List[int]:
        return list(self.dims)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def __bool__(self):
        return bool(self.dims)

    def direct_sum(self, other: "GradedVectorSpace") -> "GradedVectorSpace":
        _same_field(self.field, other.field)
        out = dict(self.dims)
        for g, n in other.dims.items():
            out[g] = out.get(g, 0) + n
        return GradedVectorSpace(out, self.field)

    def dual(self) -> "GradedVectorSpace":
        return GradedVectorSpace({-g: n for g, n in self.dims.items()}, self.field)


def _same_field(a: ScalarField, b: ScalarField):
    if a != b:
        raise ValueError(f"field mismatch: {a} vs {b}")


def shift_space(X: GradedVectorSpace, k: int) -> GradedVectorSpace:
    """``X[k]`` with ``X[k]_i = X_{i+k}``: the support moves down by ``k``."""
    return GradedVectorSpace({g - k: n for g, n in X.dims.items()}, X.field)


def tensor_spaces(U: GradedVectorSpace, X: GradedVectorSpace) -> GradedVectorSpace:
    _same_field(U.field, X.field)
    out: Dict[int, int] = {}
    for a, m in U.dims.items():
        for b, n in X.dims.items():
            out[a + b] = out.get(a + b, 0) + m * n
    return GradedVectorSpace(out, U.field)


def hom_space(X: GradedVectorSpace, Y: GradedVectorSpace) -> GradedVectorSpace:
    """Graded Hom(X, Y): degree m collects maps X_i -> Y_{i+m}."""
    return tensor_spaces(X.dual(), Y)


@dataclass(frozen=True, eq=False)
class GradedMap:
    """Homogeneous map of degree ``degree``: block ``i`` sends source_i to target_{i+degree}.

    Blocks are stored only for source degrees whose target slot is nonzero;
    anything else is zero by definition.  Construction does not check shapes,
    call :meth:`check` (or build through :func:`graded_map`).
    """

    source: GradedVectorSpace
    target: GradedVectorSpace
    degree: int
    blocks: Mapping[int, Matrix]

    @property
    def field(self) -> ScalarField:
        return self.source.field

    def block(self, i: int) -> Matrix:
        """Block at source degree ``i``, with zeros filled in."""
        m = self.blocks.get(i)
        if m is None:
            return zeros(self.source.field, self.target[i + self.degree], self.source[i])
        return m

    def check(self, name: str = "map"):
        _same_field(self.source.field, self.target.field)
        for i, m in self.blocks.items():
            rows, cols = self.target[i + self.degree], self.source[i]
            got_rows = len(m)
            bad = got_rows != rows or any(len(r) != cols for r in m)
            if bad:
                if rows == 0 and not is_zero(m):
                    raise ValueError(
                        f"{name}: nonzero block at source degree {i} lands in degree "
                        f"{i + self.degree} where the target is zero"
                    )
                if rows == 0 and cols == 0:
                    continue
                got = (got_rows, len(m[0]) if m else 0)
                raise ValueError(
                    f"{name}: block at source degree {i} has shape {got}, expected ({rows}, {cols})"
                )

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            return False
        return all(self.block(i) == other.block(i) for i in self.source.support)

    def __hash__(self):
        return hash((self.source, self.target, self.degree))

    def is_zero(self) -> bool:
        return all(is_zero(m) for m in self.blocks.values())


def graded_map(source, target, degree, blocks=None) -> GradedMap:
    """Build a map, coercing entries into the field and dropping empty blocks."""
    F = source.field
    clean = {}
    for i, m in (blocks or {}).items():
        i = int(i)
        rows, cols = target[i + degree], source[i]
        mm = tuple(tuple(F(x) for x in row) for row in m)
        if rows == 0 or cols == 0:
            if is_zero(mm):
                continue
        clean[i] = mm
    f = GradedMap(source, target, degree, clean)
    f.check()
    return f


def zero_map(source, target, degree) -> GradedMap:
    return GradedMap(source, target, degree, {})


def identity_map(X: GradedVectorSpace) -> GradedMap:
    return GradedMap(X, X, 0, {g: identity(X.field, n) for g, n in X.dims.items()})


def rank_kernel_cokernel(f: GradedMap) -> Dict[str, Dict[int, int]]:
    """Per-degree rank, kernel dimension (on source degrees) and cokernel
    dimension (on target degrees)."""
    F = f.field
    ranks, kers = {}, {}
    for i, n in f.source.dims.items():
        r = rank(f.block(i), F) if f.target[i + f.degree] else 0
        ranks[i] = r
        kers[i] = n - r
    cokers = {}
    for j, n in f.target.dims.items():
        c = n - ranks.get(j - f.degree, 0)
        cokers[j] = c
    return {
        "rank": ranks,
        "kernel": {i: k for i, k in kers.items() if k},
        "cokernel": {j: c for j, c in cokers.items() if c},
    }


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """``g o f``; degrees add."""
    if f.target != g.source:
        raise ValueError("compose: target of f differs from source of g")
    F = f.field
    s = f.degree + g.degree
    out = {}
    for i, n in f.source.dims.items():
        mid = f.degree + i
        rows = g.target[mid + g.degree]
        if rows == 0:
            continue
        inner = f.target[mid]
        out[i] = matmul(g.block(mid), f.block(i), F, inner=inner, cols=n)
    return GradedMap(f.source, g.target, s, out)


def add_maps(f: GradedMap, g: GradedMap, scale=1) -> GradedMap:
    """``f + scale * g``."""
    if (f.source, f.target, f.degree) != (g.source, g.target, g.degree):
        raise ValueError("add_maps: incompatible maps")
    F = f.field
    c = F(scale)
    out = {}
    for i in f.source.support:
        if not f.target[i + f.degree]:
            continue
        a, b = f.block(i), g.block(i)
        out[i] = tuple(tuple(x + c * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))
    return GradedMap(f.source, f.target, f.degree, out)


def invert_map(f: GradedMap) -> GradedMap:
    """Inverse of a degree-0 automorphism-like map (each block square, invertible)."""
    if f.degree != 0 or f.source.dims != f.target.dims:
        raise ValueError("invert_map needs a degree-0 map between equal profiles")
    return GradedMap(f.target, f.source, 0, {i: inverse(f.block(i), f.field) for i in f.source.support})


def is_iso(f: GradedMap) -> bool:
    if f.degree != 0 or f.source.dims != f.target.dims:
        return False
    return all(is_invertible(f.block(i), f.field) for i in f.source.support)


def iter_entries(f: GradedMap) -> Iterable:
    for m in f.blocks.values():
        for row in m:
            yield from row
