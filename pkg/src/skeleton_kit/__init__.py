"""Exact combinatorics of weighted Clemens polytopes, virtual line bundles on them, and decomposition data of stable maps."""

from __future__ import annotations

from .bundles import (
    Germ,
    MetrizedBundle,
    compatibility_check,
    curvature,
    is_kahler,
    linear_germ_basis,
    trivial_bundle,
    twist,
    validate_metrization,
)
from .complex import NumClassSpace, WeightedComplex, validate_complex
from .curves import (
    Cocycle,
    CurveSkeleton,
    build_skeleton,
    bundle_degree,
    cech_dimensions,
    coboundary,
    curvature_degree,
    degree,
    h1_dimension,
    metrization_to_cocycle,
    reorder,
)
from .decomp import (
    DecompGraph,
    DecompositionDatum,
    betti1,
    build_graph,
    canonicalize,
    count,
    derived_marks,
    enumerate_data,
    is_type,
    make_datum,
)
from .errors import SkeletonKitError, ValidationError
from .functions import SimpleFunction, classify_faces, derivative, divisor_to_simple_function
from .morphisms import (
    SkeletonMorphism,
    check_curvature_functoriality,
    check_derivative_functoriality,
    pullback_bundle,
    pullback_curvature,
    pullback_function,
    validate_morphism,
)

__version__ = "0.1.0"

__all__ = [
    "Germ",
    "MetrizedBundle",
    "compatibility_check",
    "curvature",
    "is_kahler",
    "linear_germ_basis",
    "trivial_bundle",
    "twist",
    "validate_metrization",
    "NumClassSpace",
    "WeightedComplex",
    "validate_complex",
    "Cocycle",
    "CurveSkeleton",
    "build_skeleton",
    "bundle_degree",
    "cech_dimensions",
    "coboundary",
    "curvature_degree",
    "degree",
    "h1_dimension",
    "metrization_to_cocycle",
    "reorder",
    "DecompGraph",
    "DecompositionDatum",
    "betti1",
    "build_graph",
    "canonicalize",
    "count",
    "derived_marks",
    "enumerate_data",
    "is_type",
    "make_datum",
    "SkeletonKitError",
    "ValidationError",
    "SimpleFunction",
    "classify_faces",
    "derivative",
    "divisor_to_simple_function",
    "SkeletonMorphism",
    "check_curvature_functoriality",
    "check_derivative_functoriality",
    "pullback_bundle",
    "pullback_curvature",
    "pullback_function",
    "validate_morphism",
]
