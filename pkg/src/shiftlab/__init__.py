"""shiftlab: a numeric laboratory for shift-like polynomial automorphisms of C^k.

Subpackages cover the map algebra and iteration kernels, the escape-time
filtration with quantitative growth bounds, Green-function order/type
estimators, unstable-manifold series parametrization, planar charts of the
bounded-orbit parameter set with rotation data and the Yoccoz-type check,
an exact piecewise-translation system with range oracles, and interval
certificates for strip/disc region dynamics.
"""

__version__ = "0.1.0"

from .algebra import Poly, VecSeries, eigenvalues, max_norm, poly_eval, series_scale_arg
from .maps import (
    ShiftFactor,
    ShiftComposition,
    auto_metric,
    flagship_map,
    format_map,
    load_map,
    map_on_series,
    parse_map_text,
    partial_composition,
)
from .filtration import (
    FiltrationParams,
    EscapeResult,
    classify_point,
    escape_test,
    growth_constants,
    verify_growth_bounds,
    calibrate_growth_offset,
)
from .unstable import (
    SaddlePoint,
    UnstableSeries,
    classify_saddle,
    conjugacy_residual,
    eval_unstable,
    eval_unstable_batch,
    find_fixed_points,
    parse_unstable,
    serialize_unstable,
    sternberg_series,
)
from .green import (
    GreenParams,
    GrowthSample,
    green_plus,
    green_plus_batch,
    growth_exponents,
    growth_sample_level,
    growth_sample_modulus,
    order_estimate,
    type_estimate,
    u_plus,
    u_plus_batch,
)
from .ktilde import (
    KtildeChart,
    RotationData,
    access_path,
    bridged_test,
    complement_components,
    ktilde_grid,
    label_grid,
    rotation_data,
    synthetic_chart,
    yoccoz_branches,
    yoccoz_check,
)
from .translation import (
    RegionPoint,
    apply_Pn,
    apply_S,
    apply_T,
    budget_certificate,
    delta_index,
    polydisc_range_oracle,
    region_point,
    sample_delta_tilde,
    sample_y_all_ones,
    translation_range_oracle,
    tube_translation_vector,
    y_index,
)
from .strips import (
    IntervalBox,
    StripConfig,
    StripRegion,
    box_from_product,
    propagate_inverse_step,
    strip_classify,
    verify_bounded,
    verify_escape,
)
