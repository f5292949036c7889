"""The two-step endomorphism complex and its bigraded cohomology.

For representations ``a``, ``b`` with the same ``d`` the complex is

    C0 = Hom(V_a, V_b) + Hom(W_a, W_b)
    C1 = Hom(V_a, W_b) + Hom(V_a, W_b)[d]
    D(u, v) = (v alpha_a - alpha_b u,  v beta_a - beta_b u)

with everything graded by internal degree; ``D`` has internal degree 0.
H^0 is the space of graded morphisms ``a -> b`` and H^1 the first Ext.
Signs differ from the usual display by an overall convention that does not
affect any dimension.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

from .linalg import GradedMap, GradedVectorSpace, hom_space, rank, shift_space
from .quiver import (
    LINE_BUNDLE,
    TORSION_ZERO,
    IndecomposableLabel,
    Representation,
    RepresentationError,
    validate,
)


@dataclass(frozen=True)
class TwoStepComplex:
    C0: GradedVectorSpace
    C1: GradedVectorSpace
    differential: GradedMap


@dataclass(frozen=True)
class BigradedDims:
    """``table[(h, i)]`` = dimension in homological degree h, internal degree i."""

    table: Dict[Tuple[int, int], int]

    def total(self) -> Dict[int, int]:
        out: Counter = Counter()
        for (h, i), n in self.table.items():
            out[h + i] += n
        return {g: n for g, n in sorted(out.items()) if n}

    def part(self, h: int) -> Dict[int, int]:
        return {i: n for (hh, i), n in sorted(self.table.items()) if hh == h and n}

    @property
    def dimension(self) -> int:
        return sum(self.table.values())


def _layout(a: Representation, b: Representation, m: int):
    """Unknown and equation index maps for internal degree ``m``."""
    d = a.d
    src = {}
    for kind, Xa, Xb in (("u", a.V, b.V), ("v", a.W, b.W)):
        for i, n in Xa.dims.items():
            for r in range(Xb[i + m]):
                for c in range(n):
                    src[(kind, i, r, c)] = len(src)
    tgt = {}
    for kind, off in (("x", 0), ("y", d)):
        for i, n in a.V.dims.items():
            for r in range(b.W[i + m + off]):
                for c in range(n):
                    tgt[(kind, i, r, c)] = len(tgt)
    return src, tgt


def _differential_block(a: Representation, b: Representation, m: int):
    d = a.d
    F = a.field
    src, tgt = _layout(a, b, m)
    mat = [[F.zero] * len(src) for _ in range(len(tgt))]
    for (kind, i, r, c), col in src.items():
        if kind == "u":
            # u_i = E_rc : V_a,i -> V_b,i+m ; contributes -alpha_b u and -beta_b u
            for off, fb, tk in ((0, b.alpha, "x"), (d, b.beta, "y")):
                blk = fb.block(i + m)
                for w in range(b.W[i + m + off]):
                    if blk[w][r]:
                        mat[tgt[(tk, i, w, c)]][col] -= blk[w][r]
        else:
            # v_j = E_rc : W_a,j -> W_b,j+m ; contributes v alpha_a and v beta_a
            j = i
            if a.V[j]:
                blk = a.alpha.block(j)
                for s in range(a.V[j]):
                    if blk[c][s]:
                        mat[tgt[("x", j, r, s)]][col] += blk[c][s]
            i2 = j - d
            if a.V[i2]:
                blk = a.beta.block(i2)
                for s in range(a.V[i2]):
                    if blk[c][s]:
                        mat[tgt[("y", i2, r, s)]][col] += blk[c][s]
    return tuple(map(tuple, mat)), len(src), len(tgt)


def _pair_complex(a: Representation, b: Representation) -> TwoStepComplex:
    if a.d != b.d:
        raise RepresentationError(f"d mismatch: {a.d} vs {b.d}")
    validate(a)
    validate(b)
    C0 = hom_space(a.V, b.V).direct_sum(hom_space(a.W, b.W))
    hvw = hom_space(a.V, b.W)
    C1 = hvw.direct_sum(shift_space(hvw, a.d))
    blocks = {}
    for m in C0.support:
        if C1[m]:
            blocks[m] = _differential_block(a, b, m)[0]
    return TwoStepComplex(C0, C1, GradedMap(C0, C1, 0, blocks))


def build_complex(rep: Representation) -> TwoStepComplex:
    return _pair_complex(rep, rep)


def complex_cohomology(cx: TwoStepComplex) -> BigradedDims:
    F = cx.C0.field
    table = {}
    ranks = {}
    for m, n in cx.C0.dims.items():
        r = rank(cx.differential.block(m), F) if cx.C1[m] else 0
        ranks[m] = r
        if n - r:
            table[(0, m)] = n - r
    for m, n in cx.C1.dims.items():
        if n - ranks.get(m, 0):
            table[(1, m)] = n - ranks.get(m, 0)
    return BigradedDims(dict(sorted(table.items())))


def cohomology(rep: Representation) -> BigradedDims:
    return complex_cohomology(build_complex(rep))


def hom_between(a: Representation, b: Representation) -> BigradedDims:
    return complex_cohomology(_pair_complex(a, b))


def closed_form(label: IndecomposableLabel, d: int) -> Dict[int, int]:
    """Total-degree cohomology profile of an indecomposable, read off the
    three degree lists (independent of the label's shift)."""
    if d == 0:
        raise RepresentationError("d must be nonzero")
    k = label.k
    if label.family == LINE_BUNDLE:
        degrees = [0]
    elif label.family == TORSION_ZERO:
        degrees = [-j * d for j in range(k)] + [j * d + 1 for j in range(1, k + 1)]
    else:
        degrees = [j * d for j in range(k)] + [1 - j * d for j in range(1, k + 1)]
    return dict(sorted(Counter(degrees).items()))
