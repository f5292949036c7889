"""Decomposition of graded Kronecker representations into indecomposables.

The grading splits a representation into independent zigzag chains, one per
residue class of degrees mod |d|.  On the chain of residue ``r`` the vertex
at position ``p`` is

* ``W_{r+md}`` when ``p = 2m``,
* ``V_{r+md}`` when ``p = 2m + 1``,

so each V vertex is a source with ``alpha`` pointing to position ``p - 1``
and ``beta`` pointing to position ``p + 1``.  Each chain is then reduced to
interval modules by a left-to-right sweep that keeps explicit bar vectors in
the original coordinates, in the manner of zigzag persistence.  Basis
changes during the sweep only add one bar into another when a module
morphism between the two (truncated) intervals exists, which is what keeps
the earlier part of the chain in normal form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Tuple

from .linalg import GradedMap, Matrix, ScalarField, inverse, matmul
from .quiver import (
    IndecomposableLabel,
    Intertwiner,
    LineBundle,
    Representation,
    TorsionInfinity,
    TorsionZero,
    direct_sum_all,
    normal_form,
    normal_form_bases,
    transport,
    validate,
)


def position_of(kind: str, degree: int, d: int) -> Tuple[int, int]:
    """(residue, chain position) of the vertex ``kind`` ("V" or "W") in ``degree``."""
    r = degree % abs(d)
    m = (degree - r) // d
    return r, 2 * m + (1 if kind == "V" else 0)


def degree_at(residue: int, p: int, d: int) -> int:
    return residue + (p // 2) * d


def kind_at(p: int) -> str:
    return "V" if p % 2 else "W"


@dataclass
class ZigzagChain:
    """One residue class of a representation, laid out along chain positions.

    ``dims[t]`` is the dimension at position ``start + t``; vertices of
    dimension zero inside the window are kept.  ``alpha[p]`` / ``beta[p]``
    are the blocks leaving the V vertex at position ``p``.
    """

    d: int
    residue: int
    start: int
    dims: List[int]
    alpha: Dict[int, Matrix] = dc_field(default_factory=dict)
    beta: Dict[int, Matrix] = dc_field(default_factory=dict)

    @property
    def stop(self) -> int:
        return self.start + len(self.dims) - 1

    def vertices(self) -> List[Tuple[str, int, int]]:
        """(kind, degree, dim) along the chain."""
        return [
            (kind_at(p), degree_at(self.residue, p, self.d), n)
            for p, n in zip(range(self.start, self.stop + 1), self.dims)
        ]


@dataclass(frozen=True)
class Interval:
    residue: int
    start: int
    end: int

    @property
    def positions(self) -> range:
        return range(self.start, self.end + 1)

    def vertices(self, d: int) -> List[Tuple[str, int]]:
        return [(kind_at(p), degree_at(self.residue, p, d)) for p in self.positions]

    @property
    def n_v(self) -> int:
        return sum(1 for p in self.positions if p % 2)


@dataclass
class Bar:
    start: int
    end: int | None
    vecs: Dict[int, list]


@dataclass
class Decomposition:
    summands: Tuple[IndecomposableLabel, ...]
    base_change: Intertwiner
    normal: Representation

    @property
    def multiset(self) -> Counter:
        return Counter(self.summands)

    def verify(self, rep: Representation) -> bool:
        """Entrywise check that the base change carries ``rep`` onto the
        direct sum of normal forms."""
        return self.base_change.is_invertible() and transport(rep, self.base_change) == self.normal


def to_zigzag(rep: Representation) -> List[ZigzagChain]:
    validate(rep)
    d = rep.d
    slots: Dict[int, Dict[int, int]] = {}
    for kind, X in (("V", rep.V), ("W", rep.W)):
        for g, n in X.dims.items():
            r, p = position_of(kind, g, d)
            slots.setdefault(r, {})[p] = n
    chains = []
    for r in sorted(slots):
        ps = slots[r]
        lo, hi = min(ps), max(ps)
        chain = ZigzagChain(d, r, lo, [ps.get(p, 0) for p in range(lo, hi + 1)])
        for p in range(lo, hi + 1):
            if p % 2 and ps.get(p):
                g = degree_at(r, p, d)
                chain.alpha[p] = rep.alpha.block(g)
                chain.beta[p] = rep.beta.block(g)
        chains.append(chain)
    return chains


def _key(bar: Bar, ident: int):
    # bar b may be added into bar b' iff key(b) <= key(b')
    s = bar.start
    return ((0, -s) if s % 2 else (1, s), ident)


def _axpy(F, y, c, x):
    return [a + c * b for a, b in zip(y, x)]


def _add_into(bars: List[Bar], src: int, dst: int, c, upto: int, F):
    """v_dst += c * v_src on every vertex both bars share, up to ``upto``."""
    lo = max(bars[src].start, bars[dst].start)
    for p in range(lo, upto + 1):
        bars[dst].vecs[p] = _axpy(F, bars[dst].vecs[p], c, bars[src].vecs[p])


def _unit(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return v


def interval_decompose(chain: ZigzagChain, F: ScalarField) -> List[Tuple[Interval, Dict[int, list]]]:
    """Split a chain into intervals.

    Returns each interval with the basis vector it occupies at every covered
    position (in the coordinates of the original vertex space).  In the new
    bases every arrow sends a bar's vector to the same bar's vector, or to
    zero where the bar stops.
    """
    bars: List[Bar] = []
    alive: List[int] = []
    p0 = chain.start
    n0 = chain.dims[0]
    for i in range(n0):
        bars.append(Bar(p0, None, {p0: _unit(F, n0, i)}))
        alive.append(len(bars) - 1)

    for t in range(len(chain.dims) - 1):
        p = p0 + t
        n_next = chain.dims[t + 1]
        order = sorted(alive, key=lambda b: _key(bars[b], b))
        if p % 2:
            alive = _forward(bars, order, chain.beta[p] if chain.dims[t] else (), p, n_next, F)
        else:
            g = chain.alpha[p + 1] if n_next else ()
            alive = _backward(bars, order, g, p, chain.dims[t], n_next, F)

    for b in alive:
        bars[b].end = chain.stop
    out = []
    for b in bars:
        out.append((Interval(chain.residue, b.start, b.end), b.vecs))
    return out


def _forward(bars, order, f, p, n_next, F):
    """Sweep across ``V_p -> W_{p+1}``."""
    kept: List[Tuple[int, list, int]] = []
    survivors = []
    for b in order:
        v = bars[b].vecs[p]
        col = [sum((x * y for x, y in zip(row, v) if x and y), F.zero) for row in f] if n_next else []
        for kb, kcol, pr in kept:
            if col[pr]:
                c = col[pr] / kcol[pr]
                col = _axpy(F, col, -c, kcol)
                _add_into(bars, kb, b, -c, p, F)
        piv = next((i for i, x in enumerate(col) if x), None)
        if piv is None:
            bars[b].end = p
        else:
            kept.append((b, col, piv))
            bars[b].vecs[p + 1] = col
            survivors.append(b)
    used = {pr for _, _, pr in kept}
    for i in range(n_next):
        if i not in used:
            bars.append(Bar(p + 1, None, {p + 1: _unit(F, n_next, i)}))
            survivors.append(len(bars) - 1)
    return survivors


def _backward(bars, order, g, p, n_here, n_next, F):
    """Sweep across ``W_p <- V_{p+1}``."""
    if n_next == 0:
        for b in order:
            bars[b].end = p
        return []
    cols = [list(c) for c in zip(*g)] if n_here else [[] for _ in range(n_next)]
    if n_here:
        basis = tuple(tuple(bars[b].vecs[p][i] for b in order) for i in range(n_here))
        coords = matmul(inverse(basis, F), tuple(zip(*cols)), F)
        cols = [list(c) for c in zip(*coords)]
    # cols[j]: coordinates (in bar order) of the image of preimage vector j
    pre = [_unit(F, n_next, j) for j in range(n_next)]
    pivot_of: Dict[int, int] = {}
    free = set(range(n_next))
    for r in reversed(range(n_here)):
        j = next((j for j in sorted(free) if cols[j][r]), None)
        if j is None:
            continue
        free.discard(j)
        pivot_of[r] = j
        inv = F.one / cols[j][r]
        cols[j] = [x * inv for x in cols[j]]
        pre[j] = [x * inv for x in pre[j]]
        for jj in range(n_next):
            if jj != j and cols[jj][r]:
                c = cols[jj][r]
                cols[jj] = _axpy(F, cols[jj], -c, cols[j])
                pre[jj] = _axpy(F, pre[jj], -c, pre[j])
    pivot_rows = set(pivot_of)
    survivors = []
    for r, b in enumerate(order):
        j = pivot_of.get(r)
        if j is None:
            bars[b].end = p
            continue
        for rr, a in enumerate(cols[j]):
            if rr != r and a:
                assert rr not in pivot_rows and rr < r
                _add_into(bars, order[rr], b, a, p, F)
        bars[b].vecs[p + 1] = pre[j]
        survivors.append(b)
    for j in sorted(free):
        bars.append(Bar(p + 1, None, {p + 1: pre[j]}))
        survivors.append(len(bars) - 1)
    return survivors


def _lowest_vertex_degree(label: IndecomposableLabel, d: int) -> int:
    v, w, _, _ = normal_form_bases(label.unshifted(), d)
    best = None
    for kind, degs in (("V", v), ("W", w)):
        for g in degs:
            _, p = position_of(kind, g, d)
            if best is None or p < best[0]:
                best = (p, g)
    return best[1]


def classify_interval(iv: Interval, d: int) -> IndecomposableLabel:
    if iv.end < iv.start:
        raise ValueError(f"malformed interval {iv}")
    k = iv.n_v
    first, last = kind_at(iv.start), kind_at(iv.end)
    if first == "W" and last == "W":
        label = LineBundle(k)
    elif first == "V" and last == "V":
        label = LineBundle(-k)
    elif first == "W":
        label = TorsionInfinity(k)
    else:
        label = TorsionZero(k)
    shift = _lowest_vertex_degree(label, d) - degree_at(iv.residue, iv.start, d)
    return label.shifted(shift)


def decompose(rep: Representation) -> Decomposition:
    validate(rep)
    F, d = rep.field, rep.d
    pieces = []
    for chain in to_zigzag(rep):
        for iv, vecs in interval_decompose(chain, F):
            pieces.append((classify_interval(iv, d), iv, vecs))
    pieces.sort(key=lambda x: x[0])
    labels = tuple(lab for lab, _, _ in pieces)

    cols: Dict[Tuple[str, int], list] = {}
    for _, iv, vecs in pieces:
        for p in iv.positions:
            key = (kind_at(p), degree_at(iv.residue, p, d))
            cols.setdefault(key, []).append(vecs[p])

    def change(kind, X):
        blocks = {}
        for g, n in X.dims.items():
            cs = cols[(kind, g)]
            assert len(cs) == n
            basis = tuple(tuple(c[i] for c in cs) for i in range(n))
            blocks[g] = inverse(basis, F)
        return GradedMap(X, X, 0, blocks)

    normal = direct_sum_all([normal_form(lab, d, F) for lab in labels], d, F)
    iso = Intertwiner(change("V", rep.V), change("W", rep.W))
    return Decomposition(labels, iso, normal)
