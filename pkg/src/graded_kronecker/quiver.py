"""Representations of the graded Kronecker quiver.

A representation is ``(d, V, W, alpha, beta)`` with ``alpha: V -> W`` of
degree 0 and ``beta: V -> W`` of degree ``d``.  Blocks are stored in
(target x source) orientation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (
    QQ,
    GradedMap,
    GradedVectorSpace,
    ScalarField,
    block_diag,
    compose,
    identity,
    invert_map,
    is_iso,
    nullspace,
    shift_space,
)

LINE_BUNDLE = "LineBundle"
TORSION_ZERO = "TorsionZero"
TORSION_INFINITY = "TorsionInfinity"
FAMILIES = (LINE_BUNDLE, TORSION_ZERO, TORSION_INFINITY)


class RepresentationError(ValueError):
    """A Representation violates one of its invariants."""


@dataclass(frozen=True, order=True)
class IndecomposableLabel:
    """One of the four indecomposable families, plus a common grading shift.

    ``LineBundle(k)`` covers both line-bundle cases (``k < 0`` and ``k >= 0``).
    Ordering is lexicographic in (family, k, shift), which fixes summand
    order in decompositions.
    """

    family: str
    k: int
    shift: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family != LINE_BUNDLE and self.k < 1:
            raise ValueError(f"{self.family} needs k >= 1, got {self.k}")

    @property
    def dims(self) -> Tuple[int, int]:
        """(dim V, dim W)."""
        k = self.k
        if self.family == LINE_BUNDLE:
            return (-k, -k - 1) if k < 0 else (k, k + 1)
        return (k, k)

    def shifted(self, s: int) -> "IndecomposableLabel":
        return IndecomposableLabel(self.family, self.k, self.shift + s)

    def unshifted(self) -> "IndecomposableLabel":
        return IndecomposableLabel(self.family, self.k, 0)

    def __str__(self):
        return f"{self.family} k={self.k} shift={self.shift}"


def LineBundle(k: int, shift: int = 0) -> IndecomposableLabel:
    return IndecomposableLabel(LINE_BUNDLE, k, shift)


def TorsionZero(k: int, shift: int = 0) -> IndecomposableLabel:
    return IndecomposableLabel(TORSION_ZERO, k, shift)


def TorsionInfinity(k: int, shift: int = 0) -> IndecomposableLabel:
    return IndecomposableLabel(TORSION_INFINITY, k, shift)


@dataclass(frozen=True)
class Representation:
    d: int
    V: GradedVectorSpace
    W: GradedVectorSpace
    alpha: GradedMap
    beta: GradedMap

    @property
    def field(self) -> ScalarField:
        return self.V.field

    @property
    def dims(self) -> Tuple[int, int]:
        return (self.V.total, self.W.total)

    def is_zero(self) -> bool:
        return not self.V and not self.W

    def __str__(self):
        return f"Representation(d={self.d}, V={self.V.dims}, W={self.W.dims})"


@dataclass(frozen=True)
class Intertwiner:
    """Degree-0 maps ``phi: V -> V'`` and ``psi: W -> W'``."""

    phi: GradedMap
    psi: GradedMap

    def is_invertible(self) -> bool:
        return is_iso(self.phi) and is_iso(self.psi)

    def inverse(self) -> "Intertwiner":
        return Intertwiner(invert_map(self.phi), invert_map(self.psi))

    def then(self, other: "Intertwiner") -> "Intertwiner":
        """``other o self``."""
        return Intertwiner(compose(other.phi, self.phi), compose(other.psi, self.psi))


def validate(rep: Representation) -> None:
    """Raise :class:`RepresentationError` naming the first broken invariant."""
    if rep.d == 0:
        raise RepresentationError("d must be nonzero")
    F = rep.V.field
    if rep.W.field != F:
        raise RepresentationError(f"field mismatch: V over {F}, W over {rep.W.field}")
    for name, f, deg in (("alpha", rep.alpha, 0), ("beta", rep.beta, rep.d)):
        if f.degree != deg:
            raise RepresentationError(f"{name} must have degree {deg}, has degree {f.degree}")
        if f.source != rep.V or f.target != rep.W:
            raise RepresentationError(f"{name} must map V to W")
        try:
            f.check(name)
        except ValueError as exc:
            raise RepresentationError(str(exc)) from None


def from_bases(
    d: int,
    v_degrees: Sequence[int],
    w_degrees: Sequence[int],
    alpha_entries: Sequence[Tuple[int, int]],
    beta_entries: Sequence[Tuple[int, int]],
    field: ScalarField = QQ,
) -> Representation:
    """Build a representation from homogeneous basis degrees and 0/1 entries.

    ``alpha_entries`` holds ``(w_index, v_index)`` pairs with value one; basis
    order inside each degree follows list order.
    """
    V = GradedVectorSpace(_count(v_degrees), field)
    W = GradedVectorSpace(_count(w_degrees), field)
    v_pos = _positions(v_degrees)
    w_pos = _positions(w_degrees)

    def build(entries, deg):
        mats: Dict[int, List[List]] = {}
        for i, n in V.dims.items():
            rows = W[i + deg]
            if rows:
                mats[i] = [[field.zero] * n for _ in range(rows)]
        for wi, vi in entries:
            g = v_degrees[vi]
            if w_degrees[wi] != g + deg:
                raise ValueError(f"entry ({wi}, {vi}) breaks the degree {deg} constraint")
            mats[g][w_pos[wi]][v_pos[vi]] = field.one
        return GradedMap(V, W, deg, {i: tuple(map(tuple, m)) for i, m in mats.items()})

    return Representation(d, V, W, build(alpha_entries, 0), build(beta_entries, d))


def _count(degrees):
    out: Dict[int, int] = {}
    for g in degrees:
        out[g] = out.get(g, 0) + 1
    return out


def _positions(degrees):
    seen: Dict[int, int] = {}
    pos = []
    for g in degrees:
        pos.append(seen.get(g, 0))
        seen[g] = pos[-1] + 1
    return pos


def normal_form_bases(label: IndecomposableLabel, d: int):
    """Basis degrees and unit entries of a normal form before its shift.

    The one unshifted summand C sits in degree 0; every other degree follows
    from alpha having degree 0 and beta degree d.
    """
    k = label.k
    if label.family == LINE_BUNDLE and k < 0:
        a = -k
        v = [j * d for j in range(a)]
        w = [(i + 1) * d for i in range(a - 1)]
        alpha = [(j - 1, j) for j in range(1, a)]
        beta = [(j, j) for j in range(a - 1)]
    elif label.family == LINE_BUNDLE:
        v = [-(i + 1) * d for i in range(k)]
        w = [-j * d for j in range(k + 1)]
        alpha = [(i + 1, i) for i in range(k)]
        beta = [(i, i) for i in range(k)]
    elif label.family == TORSION_ZERO:
        v = [-(i + 1) * d for i in range(k)]
        w = [-j * d for j in range(k)]
        alpha = [(i + 1, i) for i in range(k - 1)]
        beta = [(i, i) for i in range(k)]
    else:
        v = [-i * d for i in range(k)]
        w = [-i * d for i in range(k)]
        alpha = [(i, i) for i in range(k)]
        beta = [(i - 1, i) for i in range(1, k)]
    return v, w, alpha, beta


@lru_cache(maxsize=4096)
def normal_form(label: IndecomposableLabel, d: int, field: ScalarField = QQ) -> Representation:
    # cached: representations are never mutated in place
    if d == 0:
        raise RepresentationError("d must be nonzero")
    v, w, alpha, beta = normal_form_bases(label, d)
    rep = from_bases(d, v, w, alpha, beta, field)
    return shift_rep(rep, label.shift)


def zero_rep(d: int, field: ScalarField = QQ) -> Representation:
    return from_bases(d, [], [], [], [], field)


def shift_rep(rep: Representation, s: int) -> Representation:
    """Shift both gradings by ``s`` (support moves down by ``s``)."""
    if s == 0:
        return rep
    V, W = shift_space(rep.V, s), shift_space(rep.W, s)

    def move(f):
        return GradedMap(V, W, f.degree, {i - s: m for i, m in f.blocks.items()})

    return Representation(rep.d, V, W, move(rep.alpha), move(rep.beta))


def _sum_map(f: GradedMap, g: GradedMap, V, W) -> GradedMap:
    F = V.field
    out = {}
    for i in V.support:
        deg = f.degree
        if not W[i + deg]:
            continue
        parts = [
            (f.block(i), f.target[i + deg], f.source[i]),
            (g.block(i), g.target[i + deg], g.source[i]),
        ]
        out[i] = block_diag(parts, F)
    return GradedMap(V, W, f.degree, out)


def direct_sum(a: Representation, b: Representation) -> Representation:
    if a.d != b.d:
        raise RepresentationError(f"d mismatch: {a.d} vs {b.d}")
    if a.field != b.field:
        raise RepresentationError(f"field mismatch: {a.field} vs {b.field}")
    V, W = a.V.direct_sum(b.V), a.W.direct_sum(b.W)
    return Representation(a.d, V, W, _sum_map(a.alpha, b.alpha, V, W), _sum_map(a.beta, b.beta, V, W))


def direct_sum_all(reps: Sequence[Representation], d: int, field: ScalarField = QQ) -> Representation:
    if not reps:
        return zero_rep(d, field)
    out = reps[0]
    if out.d != d or out.field != field:
        raise RepresentationError(f"summand has d={out.d}, field {out.field}; expected d={d}, field {field}")
    for r in reps[1:]:
        out = direct_sum(out, r)
    return out


def transport(rep: Representation, iso: Intertwiner) -> Representation:
    """The representation ``(psi alpha phi^-1, psi beta phi^-1)`` on the new bases."""
    inv_phi = invert_map(iso.phi)
    alpha = compose(iso.psi, compose(rep.alpha, inv_phi))
    beta = compose(iso.psi, compose(rep.beta, inv_phi))
    return Representation(rep.d, iso.phi.target, iso.psi.target, alpha, beta)


def is_morphism(a: Representation, b: Representation, m: Intertwiner) -> bool:
    """``alpha_b phi = psi alpha_a`` and ``beta_b phi = psi beta_a``."""
    return (
        compose(b.alpha, m.phi) == compose(m.psi, a.alpha)
        and compose(b.beta, m.phi) == compose(m.psi, a.beta)
    )


# ---------------------------------------------------------------------------
# random data


def _random_scalar(rng: random.Random, F: ScalarField, lo: int, hi: int, nonzero=False):
    while True:
        x = F(rng.randint(lo, hi))
        if x or not nonzero:
            return x


def random_rep(
    v_profile: Dict[int, int],
    w_profile: Dict[int, int],
    d: int,
    seed: int,
    field: ScalarField = QQ,
    entry_range: Tuple[int, int] = (-3, 3),
) -> Representation:
    rng = random.Random(seed)
    V = GradedVectorSpace(v_profile, field)
    W = GradedVectorSpace(w_profile, field)
    lo, hi = entry_range

    def fill(deg):
        out = {}
        for i, n in V.dims.items():
            rows = W[i + deg]
            if rows:
                out[i] = tuple(
                    tuple(_random_scalar(rng, field, lo, hi) for _ in range(n)) for _ in range(rows)
                )
        return GradedMap(V, W, deg, out)

    return Representation(d, V, W, fill(0), fill(d))


_SCALES = (-3, -2, -1, 1, 2, 3)


def random_invertible(n: int, rng: random.Random, F: ScalarField, ops: int | None = None):
    """Random invertible matrix as a product of elementary matrices."""
    if n == 0:
        return ()
    if n == 1 and ops is None:
        # a product of scalings is one nonzero scalar
        while True:
            c = F(rng.choice(_SCALES))
            if c:
                return ((c,),)
    m = [list(r) for r in identity(F, n)]
    for _ in range(ops if ops is not None else 3 * n):
        if n > 1 and rng.random() < 0.7:
            i, j = rng.sample(range(n), 2)
            c = _random_scalar(rng, F, -2, 2, nonzero=True)
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        else:
            i = rng.randrange(n)
            c = _random_scalar(rng, F, -3, 3, nonzero=True)
            m[i] = [c * x for x in m[i]]
    return tuple(map(tuple, m))


def random_base_change(rep: Representation, seed: int) -> Tuple[Representation, Intertwiner]:
    """A random isomorphic copy of ``rep`` and the intertwiner ``rep -> copy``."""
    rng = random.Random(seed)
    F = rep.field
    phi = GradedMap(rep.V, rep.V, 0, {g: random_invertible(n, rng, F) for g, n in rep.V.dims.items()})
    psi = GradedMap(rep.W, rep.W, 0, {g: random_invertible(n, rng, F) for g, n in rep.W.dims.items()})
    iso = Intertwiner(phi, psi)
    return transport(rep, iso), iso


# ---------------------------------------------------------------------------
# morphisms and isomorphism testing


def morphism_basis(a: Representation, b: Representation) -> List[Intertwiner]:
    """Basis of degree-0 morphisms ``a -> b``, by solving the linear system
    ``alpha_b phi = psi alpha_a``, ``beta_b phi = psi beta_a`` directly."""
    if a.d != b.d:
        raise RepresentationError(f"d mismatch: {a.d} vs {b.d}")
    F = a.field
    d = a.d
    # unknown layout: phi_g entries (row-major), then psi_g entries
    index = {}
    n = 0
    for g in a.V.support:
        for r in range(b.V[g]):
            for c in range(a.V[g]):
                index[("phi", g, r, c)] = n
                n += 1
    for g in a.W.support:
        for r in range(b.W[g]):
            for c in range(a.W[g]):
                index[("psi", g, r, c)] = n
                n += 1
    if n == 0:
        return []
    rows = []
    for i in a.V.support:
        for deg, fa, fb in ((0, a.alpha, b.alpha), (d, a.beta, b.beta)):
            t = i + deg
            mb, ma = fb.block(i), fa.block(i)
            # (fb phi_i - psi_t fa)[r][c] = 0 for r < dim W_b[t], c < dim V_a[i]
            for r in range(b.W[t]):
                for c in range(a.V[i]):
                    row = [F.zero] * n
                    for j in range(b.V[i]):
                        if mb[r][j]:
                            row[index[("phi", i, j, c)]] += mb[r][j]
                    for j in range(a.W[t]):
                        if ma[j][c]:
                            row[index[("psi", t, r, j)]] -= ma[j][c]
                    rows.append(row)
    basis = nullspace(rows, F, cols=n)
    out = []
    for v in basis:
        phi = {
            g: tuple(tuple(v[index[("phi", g, r, c)]] for c in range(a.V[g])) for r in range(b.V[g]))
            for g in a.V.support if b.V[g]
        }
        psi = {
            g: tuple(tuple(v[index[("psi", g, r, c)]] for c in range(a.W[g])) for r in range(b.W[g]))
            for g in a.W.support if b.W[g]
        }
        out.append(Intertwiner(GradedMap(a.V, b.V, 0, phi), GradedMap(a.W, b.W, 0, psi)))
    return out


def combine(basis: Sequence[Intertwiner], coeffs, F: ScalarField, a: Representation, b: Representation) -> Intertwiner:
    """Linear combination of morphisms ``a -> b``."""
    def comb(attr, X, Y):
        out = {}
        for g, n in X.dims.items():
            if not Y[g]:
                continue
            acc = [[F.zero] * n for _ in range(Y[g])]
            for m, c in zip(basis, coeffs):
                if not c:
                    continue
                blk = getattr(m, attr).block(g)
                for r in range(Y[g]):
                    for s in range(n):
                        if blk[r][s]:
                            acc[r][s] += c * blk[r][s]
            out[g] = tuple(map(tuple, acc))
        return GradedMap(X, Y, 0, out)

    return Intertwiner(comb("phi", a.V, b.V), comb("psi", a.W, b.W))


def find_isomorphism_linear(
    a: Representation, b: Representation, tries: int = 64, seed: int = 0
) -> Optional[Intertwiner]:
    """Search for an invertible element of Hom(a, b) among random combinations.

    Over Q a generic combination is invertible whenever any element is, so a
    miss after many tries is strong (not conclusive) evidence of
    non-isomorphism.  Over F_p small spaces are enumerated exhaustively.
    """
    if a.d != b.d:
        raise RepresentationError(f"d mismatch: {a.d} vs {b.d}")
    if a.V.dims != b.V.dims or a.W.dims != b.W.dims:
        return None
    if a.is_zero():
        return Intertwiner(GradedMap(a.V, b.V, 0, {}), GradedMap(a.W, b.W, 0, {}))
    basis = morphism_basis(a, b)
    if not basis:
        return None
    F = a.field
    rng = random.Random(seed)
    if F.is_prime_field and F.p ** len(basis) <= 4096:
        import itertools

        candidates = itertools.product(F.elements(), repeat=len(basis))
    else:
        candidates = (
            [_random_scalar(rng, F, -9, 9) for _ in basis] for _ in range(tries)
        )
    for coeffs in candidates:
        m = combine(basis, coeffs, F, a, b)
        if m.is_invertible():
            return m
    return None


def are_isomorphic(a: Representation, b: Representation) -> Optional[Intertwiner]:
    """Witness ``a -> b`` if isomorphic, else None.

    Decided by comparing decomposition labels; the witness is assembled from
    the two decompositions' base changes.
    """
    from .decompose import decompose

    if a.d != b.d:
        raise RepresentationError(f"d mismatch: {a.d} vs {b.d}")
    if a.field != b.field:
        raise RepresentationError(f"field mismatch: {a.field} vs {b.field}")
    if a.V.dims != b.V.dims or a.W.dims != b.W.dims:
        return None
    da, db = decompose(a), decompose(b)
    if da.summands != db.summands:
        return None
    return da.base_change.then(db.base_change.inverse())
