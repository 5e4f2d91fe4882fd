"""Exact engine for non-Lefschetz loci of finite graded modules over
a three-variable polynomial ring, and for the jumping-line geometry of
the associated rank-2 kernel bundle on the projective plane."""

__version__ = "0.1.0"

from .field_linalg import DEFAULT_PRIME, Matrix, PrimeField, cokernel_basis, kernel_basis, rank
from .polyring import Polynomial, Ring, monomial_basis, multiplication_matrix, substitute_line
from .presentation import (
    DegreeData,
    GradedModule,
    PresentationMatrix,
    generic_hilbert_profile,
    generic_module,
    graded_piece_matrix,
    hilbert_function,
    multiplication_map,
    random_presentation,
    socle,
)
from .groebner import GroebnerBasis, IdealMeasure, buchberger, intersect, measure, saturate
from .lefschetz import dual_matrix, is_lefschetz, locus_ideal, locus_ideal_at
from .bundle import (
    ChernData,
    SplittingType,
    StabilityReport,
    chern,
    classify_stability,
    euler_characteristic,
    h0,
    lefschetz_oracle,
)
from .jumping import LinePoint, is_jumping, line_point, restrict, splitting_type
from .predictor import (
    compare,
    expected_codimension,
    predict,
    predicted_codimension,
    predicted_degree,
)

__all__ = [
    "DEFAULT_PRIME",
    "ChernData",
    "DegreeData",
    "GradedModule",
    "GroebnerBasis",
    "IdealMeasure",
    "LinePoint",
    "Matrix",
    "Polynomial",
    "PresentationMatrix",
    "PrimeField",
    "Ring",
    "SplittingType",
    "StabilityReport",
    "buchberger",
    "chern",
    "classify_stability",
    "cokernel_basis",
    "compare",
    "dual_matrix",
    "euler_characteristic",
    "expected_codimension",
    "generic_hilbert_profile",
    "generic_module",
    "graded_piece_matrix",
    "h0",
    "hilbert_function",
    "intersect",
    "is_jumping",
    "is_lefschetz",
    "kernel_basis",
    "lefschetz_oracle",
    "line_point",
    "locus_ideal",
    "locus_ideal_at",
    "measure",
    "monomial_basis",
    "multiplication_map",
    "multiplication_matrix",
    "predict",
    "predicted_codimension",
    "predicted_degree",
    "random_presentation",
    "rank",
    "restrict",
    "saturate",
    "socle",
    "splitting_type",
    "substitute_line",
]
