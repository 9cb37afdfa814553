"""Desk-scale verification of special partial matchings and pircon topology."""

__version__ = "0.1.0"

from .poset import FinitePoset, IntervalHandle, is_isomorphic, product_with_chain2
from .simplicial import (
    BALL_LIKE,
    NEITHER,
    SPHERE_LIKE,
    HomologyProfile,
    MorseMatching,
    SimplicialComplex,
    classify_ball_or_sphere,
    collapse_matching,
    collapse_to_void,
    order_complex,
    reduced_homology,
    verify_acyclic,
)

__all__ = [
    "__version__",
    "FinitePoset",
    "IntervalHandle",
    "is_isomorphic",
    "product_with_chain2",
    "SimplicialComplex",
    "HomologyProfile",
    "MorseMatching",
    "order_complex",
    "reduced_homology",
    "classify_ball_or_sphere",
    "collapse_matching",
    "collapse_to_void",
    "verify_acyclic",
    "BALL_LIKE",
    "SPHERE_LIKE",
    "NEITHER",
]
