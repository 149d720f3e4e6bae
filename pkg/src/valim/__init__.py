"""Possibility-theoretic inferential models with partial prior information.

Data enter through closed-form plausibility contours, priors through nested
random sets or finite credal sets, and the combination rules, validification
transform, and Monte Carlo validity diagnostics all operate on the shared
contour calculus in valim.core.
"""

__version__ = "0.1.0"

from .combiners import (
    MINIMUM,
    PRODUCT,
    ConflictError,
    DempsterIM,
    TNorm,
    aggregate_hose,
    aggregate_squared,
    combiner_family,
    dempster_combine,
    dempster_upper,
    gbayes_upper,
    product_test_pvalue,
    tnorm_combine,
)
from .core import (
    DEFAULT_STEP,
    Contour,
    DegenerateContourError,
    GridSpec,
    Region,
    empty,
    full_line,
    interval,
    lower_prob,
    normalize,
    plausibility_region,
    singleton,
    union,
    upper_prob,
)
from .diagnostics import (
    CdfReport,
    CoverageReport,
    JointSampler,
    conditional_validity,
    contraction_check,
    coverage_length,
    validity_cdf,
)
from .models import (
    MvNormalModel,
    Observation,
    ScalarNormalModel,
    sample,
    vacuous_contour,
    vacuous_contour_mv,
    vacuous_contour_scalar,
)
from .priors import (
    CompatiblePrior,
    FiniteCredalSet,
    FocalPrior,
    IntervalPrior,
    SparsityPrior,
    interval_compatible,
    interval_prior_contour,
    normal_compatible,
    parse_prior,
    prior_upper_prob,
    sparsity_prior_contour,
)
from .sparse import (
    SparseDemoConfig,
    region_area,
    sparse_normalizer,
    sparse_tnorm_contour,
    sparse_validified_contour,
    topk_argmax,
)
from .validify import (
    GeneratorContour,
    ValidifyConfig,
    build_transform,
    validified_region,
    validify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
