"""Brute-force checks that do not go through the decomposition algorithm.

Over a prime field the degree-0 endomorphism space of a representation is a
finite set, so indecomposability can be decided by listing every
endomorphism and looking for idempotents other than 0 and 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .decompose import decompose
from .linalg import GradedMap, GradedVectorSpace, ScalarField, identity_map
from .quiver import Intertwiner, Representation, combine, morphism_basis, validate


class BoundExceeded(ValueError):
    """The endomorphism space is too large to enumerate."""


@dataclass
class EndomorphismSpace:
    basis: List[Intertwiner]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def end_space(rep: Representation) -> EndomorphismSpace:
    validate(rep)
    return EndomorphismSpace(morphism_basis(rep, rep))


def _is_identity(m: Intertwiner, rep: Representation) -> bool:
    return m.phi == identity_map(rep.V) and m.psi == identity_map(rep.W)


def is_indecomposable_bruteforce(rep: Representation, bound: int = 8) -> bool:
    """True iff ``rep`` is nonzero and its only idempotent endomorphisms are 0 and 1."""
    F = rep.field
    if not F.is_prime_field:
        raise ValueError("brute-force idempotent search needs a prime field")
    if rep.is_zero():
        return False
    space = end_space(rep)
    if space.dimension > bound:
        raise BoundExceeded(f"endomorphism space has dimension {space.dimension} > {bound}")
    for coeffs in itertools.product(F.elements(), repeat=space.dimension):
        if not any(coeffs):
            continue
        e = combine(space.basis, coeffs, F, rep, rep)
        if e.then(e) == e and not _is_identity(e, rep):
            return False
    return True


def _profiles(max_dim: int, window: int) -> Iterator[Tuple[Dict[int, int], Dict[int, int]]]:
    slots = 2 * window
    for total in range(max_dim + 1):
        # compositions of ``total`` into ``slots`` nonnegative parts
        for cuts in itertools.combinations_with_replacement(range(slots), total):
            counts = [0] * slots
            for c in cuts:
                counts[c] += 1
            v = {g: counts[g] for g in range(window) if counts[g]}
            w = {g: counts[window + g] for g in range(window) if counts[window + g]}
            yield v, w


def enumerate_reps(v: Dict[int, int], w: Dict[int, int], d: int, F: ScalarField) -> Iterator[Representation]:
    """Every representation over the finite field ``F`` with the given profile."""
    V, W = GradedVectorSpace(v, F), GradedVectorSpace(w, F)
    slots = []
    for name, deg in (("alpha", 0), ("beta", d)):
        for i, n in V.dims.items():
            rows = W[i + deg]
            if rows:
                slots.append((name, deg, i, rows, n))
    sizes = [r * c for *_, r, c in slots]
    elems = F.elements()
    for values in itertools.product(elems, repeat=sum(sizes)):
        pos = 0
        blocks = {"alpha": {}, "beta": {}}
        for (name, deg, i, rows, cols), size in zip(slots, sizes):
            flat = values[pos:pos + size]
            pos += size
            blocks[name][i] = tuple(tuple(flat[r * cols:(r + 1) * cols]) for r in range(rows))
        yield Representation(
            d, V, W, GradedMap(V, W, 0, blocks["alpha"]), GradedMap(V, W, d, blocks["beta"])
        )


@dataclass
class AgreementReport:
    prime: int
    instances: int = 0
    indecomposable: int = 0
    disagreements: List[str] = field(default_factory=list)
    witness_failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.witness_failures


def _describe(rep: Representation) -> str:
    def blocks(f):
        return {i: [[int(x) for x in row] for row in m] for i, m in f.blocks.items()}

    return f"d={rep.d} V={rep.V.dims} W={rep.W.dims} alpha={blocks(rep.alpha)} beta={blocks(rep.beta)}"


def exhaustive_agreement(
    p: int = 2,
    d_values: Sequence[int] = (-2, -1, 1),
    max_dim: int = 3,
    window: int = 4,
    profiles: Optional[Sequence[Tuple[Dict[int, int], Dict[int, int]]]] = None,
) -> AgreementReport:
    """Compare ``decompose`` with the idempotent brute force on every small instance.

    Profiles are supported in degrees ``0 .. window-1`` with
    ``dim V + dim W <= max_dim`` unless given explicitly.
    """
    F = ScalarField.prime(p)
    report = AgreementReport(prime=p)
    todo = list(profiles) if profiles is not None else list(_profiles(max_dim, window))
    # gl(m) is the largest endomorphism space with m = dim V + dim W
    biggest = max((sum(v.values()) + sum(w.values()) for v, w in todo), default=0)
    bound = max(8, biggest * biggest)
    for d in d_values:
        for v, w in todo:
            for rep in enumerate_reps(v, w, d, F):
                report.instances += 1
                dec = decompose(rep)
                if not dec.verify(rep):
                    report.witness_failures.append(_describe(rep))
                brute = is_indecomposable_bruteforce(rep, bound=bound)
                report.indecomposable += brute
                if (len(dec.summands) == 1) != brute:
                    report.disagreements.append(_describe(rep))
    return report
