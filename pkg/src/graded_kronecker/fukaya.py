"""Representations read as objects ``Cone(V (x) F0 -> W (x) F1)`` with ``d = 1 - n``.

The Floer groups between the two basic objects enter only as fixed
dimension profiles (``HOM_F1_F0``, ``HOM_SELF``, :func:`hom_F0_F1`); nothing
geometric is computed.
The endomorphism complex of a representation then stands in for the
cohomology of an n-manifold, and the checks below test which indecomposables
could possibly be such a cohomology ring's dimension profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Union

from .decompose import decompose
from .ext import closed_form, cohomology
from .linalg import GradedVectorSpace, rank, tensor_spaces
from .quiver import (
    IndecomposableLabel,
    LineBundle,
    Representation,
    RepresentationError,
    TorsionInfinity,
    TorsionZero,
    validate,
)

CHECKS = ("support", "connected", "top_class", "duality", "h1_vanishes")


@dataclass(frozen=True)
class ModelParams:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")

    @property
    def d(self) -> int:
        return 1 - self.n


# Hom between the basic objects: F1 -> F0 vanishes, each F_i is rigid
HOM_F1_F0: Dict[int, int] = {}
HOM_SELF: Dict[int, int] = {0: 1}


def hom_F0_F1(p: ModelParams) -> Dict[int, int]:
    """Generators a (degree 0) and b (degree n - 1)."""
    return {0: 1, p.n - 1: 1}


@dataclass
class AdmissibilityReport:
    admissible: bool
    witness_shift: Optional[int]
    failures: List[str] = field(default_factory=list)
    profile: Dict[int, int] = field(default_factory=dict)


def rep_cohomology_as_HL(rep: Representation, p: ModelParams) -> Dict[int, int]:
    if rep.d != p.d:
        raise RepresentationError(f"rep has d={rep.d}, but n={p.n} forces d={p.d}")
    return cohomology(rep).total()


def failed_checks(profile: Dict[int, int], n: int, checks: Sequence[str] = CHECKS) -> List[str]:
    """Names of the enabled checks that ``profile`` (as H^*) fails."""
    h = lambda i: profile.get(i, 0)
    out = []
    if "support" in checks and any(g < 0 or g > n for g in profile):
        out.append("support")
    if "connected" in checks and h(0) != 1:
        out.append("connected")
    if "top_class" in checks and h(n) != 1:
        out.append("top_class")
    if "duality" in checks and any(h(g) != h(n - g) for g in set(profile) | {n - g for g in profile}):
        out.append("duality")
    if "h1_vanishes" in checks and h(1) != 0:
        out.append("h1_vanishes")
    return out


def manifold_admissible(
    obj: Union[Representation, IndecomposableLabel],
    p: ModelParams,
    checks: Sequence[str] = CHECKS,
) -> AdmissibilityReport:
    """Is there a shift making the cohomology profile look like H^* of a closed
    oriented n-manifold with H^1 = 0?

    The witness shift ``s`` means the profile is read with degree ``g`` moved
    to ``g - s``.  On failure, ``failures`` lists the checks broken at the
    shift that broke the fewest.
    """
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    if isinstance(obj, IndecomposableLabel):
        profile = closed_form(obj, p.d)
    else:
        profile = rep_cohomology_as_HL(obj, p)
    if not profile:
        return AdmissibilityReport(False, None, failed_checks({}, p.n, checks), profile)
    lo, hi = min(profile), max(profile)
    shifts = sorted(range(lo - p.n, hi + 1), key=lambda s: (abs(s), s))
    best = None
    for s in shifts:
        moved = {g - s: m for g, m in profile.items()}
        fails = failed_checks(moved, p.n, checks)
        if not fails:
            return AdmissibilityReport(True, s, [], profile)
        if best is None or len(fails) < len(best):
            best = fails
    return AdmissibilityReport(False, None, best, profile)


def candidate_labels(k_max: int) -> List[IndecomposableLabel]:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    labels = [LineBundle(k) for k in range(-k_max, k_max + 1)]
    labels += [TorsionZero(k) for k in range(1, k_max + 1)]
    labels += [TorsionInfinity(k) for k in range(1, k_max + 1)]
    return labels


def scan(p: ModelParams, k_max: int, checks: Sequence[str] = CHECKS):
    """(label, report) for every candidate label, computed from the actual
    endomorphism complex of its normal form."""
    from .quiver import normal_form

    return [(lab, manifold_admissible(normal_form(lab, p.d), p, checks)) for lab in candidate_labels(k_max)]


def scan_unique(p: ModelParams, k_max: int, checks: Sequence[str] = CHECKS) -> List[IndecomposableLabel]:
    return [lab for lab, rep in scan(p, k_max, checks) if rep.admissible]


def hom_from_F1(rep: Representation) -> Dict[int, int]:
    """Dimension profile of Hom(F1, L) for ``L = Cone(V (x) F0 -> W (x) F1)``.

    In the long exact sequence
    ``Hom(F1, V(x)F0) -> Hom(F1, W(x)F1) -> Hom(F1, L) -> Hom^{+1}(F1, V(x)F0)``
    both outer terms are ``V (x) Hom(F1, F0) = 0``, so Hom(F1, L) is W.
    """
    validate(rep)
    F = rep.field
    outer = tensor_spaces(rep.V, GradedVectorSpace(HOM_F1_F0, F))
    assert outer.total == 0
    return dict(tensor_spaces(rep.W, GradedVectorSpace(HOM_SELF, F)).dims)


def intersection_number_F1(rep: Representation) -> int:
    """Euler characteristic of Hom(F1, L)."""
    return sum((-1) ** (g % 2) * n for g, n in hom_from_F1(rep).items())


def indecomposability_gate(rep: Representation) -> bool:
    return len(decompose(rep).summands) == 1


def hom_from_F0_raw(rep: Representation) -> Dict[str, Dict[int, int]]:
    """Kernel and cokernel profiles of ``(alpha, beta): V -> W + W[d]``.

    This is the connecting map of the long exact sequence for Hom(F0, -)
    applied to the cone.  No identification with W is asserted.
    """
    validate(rep)
    F, d = rep.field, rep.d
    ker, coker = {}, {}
    degrees = set(rep.V.support) | set(rep.W.support) | {g - d for g in rep.W.support}
    for g in sorted(degrees):
        n_src = rep.V[g]
        n_tgt = rep.W[g] + rep.W[g + d]
        if n_src and n_tgt:
            stacked = tuple(rep.alpha.block(g)) + tuple(rep.beta.block(g))
            r = rank(stacked, F)
        else:
            r = 0
        if n_src - r:
            ker[g] = n_src - r
        if n_tgt - r:
            coker[g] = n_tgt - r
    return {"kernel": ker, "cokernel": coker}


def sphere_profile(n: int) -> Dict[int, int]:
    return {0: 1, n: 1}


def iter_n(lo: int = 2, hi: int = 10) -> Iterable[ModelParams]:
    return (ModelParams(n) for n in range(lo, hi + 1))
