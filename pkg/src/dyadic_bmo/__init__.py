"""Finite-depth dyadic harmonic analysis: the dyadic shift, paraproducts,
commutators with multiplication operators, and dyadic BMO norms."""

from .bmo import (
    CostCapError,
    TreeAggregate1D,
    TreeAggregate2D,
    bmo_norm_1d,
    little_bmo_norm_2d,
    maximal_fn_1d,
    maximal_fn_2d,
    maximal_fn_axis,
    mixed_MS,
    mixed_SM,
    product_bmo_rect_2d,
    square_fn_1d,
    square_fn_2d,
    square_fn_axis,
)
from .commutators import (
    ConvergenceError,
    SpectralNormResult,
    commutator_apply_1d,
    commutator_apply_2d,
    commutator_matrix_1d,
    commutator_matrix_2d,
    generalized_pairing,
    operator_norm,
    pairing,
    pairing1,
)
from .core import (
    DepthError,
    DepthMismatchError,
    DyadicInterval,
    DyadicRectangle,
    HaarSpectrum1D,
    HaarSpectrum2D,
    Signal1D,
    Signal2D,
    analyze,
    analyze2,
    average,
    average2,
    haar,
    haar2,
    haar_value_on,
    indicator,
    indicator2,
    indicator_norm,
    indicator_norm2,
    inner,
    inner2,
    intervals,
    mixed_coeff_x,
    mixed_coeff_y,
    sign_in_parent,
    synthesize,
    synthesize2,
)
from .paraproducts import (
    KINDS_1D,
    KINDS_2D,
    PAPER_KINDS_2D,
    ParaKind1D,
    closed_form_2d,
    commutator_term_1d,
    commutator_term_2d,
    dd_term_closed_form_1d,
    para1,
    para2,
)
from .shift import (
    OperatorMatrix,
    apply_biT,
    apply_biT_star,
    apply_T,
    apply_T1,
    apply_T1_star,
    apply_T2,
    apply_T2_star,
    apply_T_star,
    apply_TTstar,
    matrix_of,
)

__all__ = [
    "CostCapError",
    "TreeAggregate1D",
    "TreeAggregate2D",
    "bmo_norm_1d",
    "little_bmo_norm_2d",
    "maximal_fn_1d",
    "maximal_fn_2d",
    "maximal_fn_axis",
    "mixed_MS",
    "mixed_SM",
    "product_bmo_rect_2d",
    "square_fn_1d",
    "square_fn_2d",
    "square_fn_axis",
    "ConvergenceError",
    "SpectralNormResult",
    "commutator_apply_1d",
    "commutator_apply_2d",
    "commutator_matrix_1d",
    "commutator_matrix_2d",
    "generalized_pairing",
    "operator_norm",
    "pairing",
    "pairing1",
    "DepthError",
    "DepthMismatchError",
    "DyadicInterval",
    "DyadicRectangle",
    "HaarSpectrum1D",
    "HaarSpectrum2D",
    "Signal1D",
    "Signal2D",
    "analyze",
    "analyze2",
    "average",
    "average2",
    "haar",
    "haar2",
    "haar_value_on",
    "indicator",
    "indicator2",
    "indicator_norm",
    "indicator_norm2",
    "inner",
    "inner2",
    "intervals",
    "mixed_coeff_x",
    "mixed_coeff_y",
    "sign_in_parent",
    "synthesize",
    "synthesize2",
    "KINDS_1D",
    "KINDS_2D",
    "PAPER_KINDS_2D",
    "ParaKind1D",
    "closed_form_2d",
    "commutator_term_1d",
    "commutator_term_2d",
    "dd_term_closed_form_1d",
    "para1",
    "para2",
    "OperatorMatrix",
    "apply_biT",
    "apply_biT_star",
    "apply_T",
    "apply_T1",
    "apply_T1_star",
    "apply_T2",
    "apply_T2_star",
    "apply_T_star",
    "apply_TTstar",
    "matrix_of",
]
