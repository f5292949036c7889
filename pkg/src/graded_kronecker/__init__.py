"""Graded Kronecker quiver representations: decomposition, endomorphism
cohomology and a small Lagrangian-cohomology model built on top."""

from .decompose import Decomposition, decompose
from .ext import closed_form, cohomology, hom_between
from .fukaya import ModelParams, manifold_admissible, scan_unique
from .linalg import QQ, GradedMap, GradedVectorSpace, ScalarField
from .quiver import (
    IndecomposableLabel,
    Intertwiner,
    LineBundle,
    Representation,
    RepresentationError,
    TorsionInfinity,
    TorsionZero,
    are_isomorphic,
    direct_sum,
    normal_form,
    random_base_change,
    random_rep,
    shift_rep,
    validate,
)

__all__ = [
    "QQ",
    "Decomposition",
    "GradedMap",
    "GradedVectorSpace",
    "IndecomposableLabel",
    "Intertwiner",
    "LineBundle",
    "ModelParams",
    "Representation",
    "RepresentationError",
    "ScalarField",
    "TorsionInfinity",
    "TorsionZero",
    "are_isomorphic",
    "closed_form",
    "cohomology",
    "decompose",
    "direct_sum",
    "hom_between",
    "manifold_admissible",
    "normal_form",
    "random_base_change",
    "random_rep",
    "scan_unique",
    "shift_rep",
    "validate",
]
