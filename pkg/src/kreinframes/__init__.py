"""Finite-dimensional frames in Krein spaces.

Indefinite inner product spaces given by a Hermitian Gram matrix, J-projections,
J-frames, optimal frame bounds, and executable checks of the structural results
about projected, merged and sub-sampled J-frames.
"""

from kreinframes.errors import KreinError
from kreinframes.frames import (
    Classification,
    EsmeralBounds,
    FrameBounds,
    JFrameReport,
    VectorFamily,
    classify_family,
    definiteness_margin,
    esmeral_bounds,
    jframe_check,
    optimal_bounds,
)
from kreinframes.kspace import (
    KreinSpace,
    SymmetryReport,
    indefinite_inner,
    j_adjoint,
    j_inner,
    make_krein_space,
    validate_symmetry,
)
from kreinframes.sequences import (
    ExactnessReport,
    IntersectionReport,
    SequenceReport,
    SubsequenceReport,
    exactness,
    frame_sequence_check,
    intersection_test,
    subsequence_frame_test,
)
from kreinframes.subspace import (
    Operator,
    Subspace,
    j_complement,
    j_projection,
    make_subspace,
    q_projection,
)
from kreinframes.transforms import (
    ProjectedFamilyReport,
    UnionReport,
    project_family,
    union_families,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "EsmeralBounds",
    "ExactnessReport",
    "FrameBounds",
    "IntersectionReport",
    "JFrameReport",
    "KreinError",
    "KreinSpace",
    "Operator",
    "ProjectedFamilyReport",
    "SequenceReport",
    "SubsequenceReport",
    "Subspace",
    "SymmetryReport",
    "UnionReport",
    "VectorFamily",
    "classify_family",
    "definiteness_margin",
    "esmeral_bounds",
    "exactness",
    "frame_sequence_check",
    "indefinite_inner",
    "intersection_test",
    "j_adjoint",
    "j_complement",
    "j_inner",
    "j_projection",
    "jframe_check",
    "make_krein_space",
    "make_subspace",
    "optimal_bounds",
    "project_family",
    "q_projection",
    "subsequence_frame_test",
    "union_families",
    "validate_symmetry",
]
