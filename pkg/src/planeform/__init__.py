"""Invariant quadratic forms for bounded plane groups, on top of a small affine geometry kernel."""

from .complex_structure import ComplexStructure, derive_j, rotate
from .geometry import (
    Chart,
    GeoVector,
    Point,
    Ruler,
    check_axiom1_maps,
    is_parallelogram,
    is_ruler,
    middle,
    rational_line,
    ruler_between,
    translate,
    vector_between,
)
from .groups import (
    GroupClosure,
    GroupSpec,
    boundedness_screen,
    catalog,
    close_group,
    same_length,
)
from .linalg import (
    Mat2,
    TracelessDecomposition,
    Vec2,
    WedgeForm,
    char_poly,
    traceless_decompose,
    traceless_inner,
    wedge,
)
from .patch import FormEvaluator, GramN, parallelogram_residual, patch_form, polarize_eval
from .synthesis import (
    QuadraticForm,
    SynthesisReport,
    invariance_residual,
    is_positive_definite,
    synth_algebraic,
    synth_averaging,
    synth_contraction,
)

__version__ = "0.1.0"

__all__ = [
    "boundedness_screen",
    "catalog",
    "char_poly",
    "Chart",
    "check_axiom1_maps",
    "close_group",
    "ComplexStructure",
    "derive_j",
    "FormEvaluator",
    "GeoVector",
    "GramN",
    "GroupClosure",
    "GroupSpec",
    "invariance_residual",
    "is_parallelogram",
    "is_positive_definite",
    "is_ruler",
    "Mat2",
    "middle",
    "parallelogram_residual",
    "patch_form",
    "Point",
    "polarize_eval",
    "QuadraticForm",
    "rational_line",
    "rotate",
    "Ruler",
    "ruler_between",
    "same_length",
    "synth_algebraic",
    "synth_averaging",
    "synth_contraction",
    "SynthesisReport",
    "traceless_decompose",
    "traceless_inner",
    "TracelessDecomposition",
    "translate",
    "Vec2",
    "vector_between",
    "wedge",
    "WedgeForm",
]
