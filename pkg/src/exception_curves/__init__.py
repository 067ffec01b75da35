"""Explicit singular exceptions for non-homogeneous self-similar measures.

Builds the exact-overlap curves ``c_{s,t}``, finds their points in
``R = {b1 + b2 > 1}``, and certifies weights p with ``SD > 1 > SDhat``.
"""

__version__ = "0.1.0"

from .combinatorics import (  # noqa: E402
    SeqPair,
    SignSeq,
    canonical_form,
    enumerate_pairs,
    flip,
    prefix_counts,
    swap,
    validate_pair,
)
from .curve_analysis import (  # noqa: E402
    ParamPoint,
    TraceConfig,
    check_sufficient_condition,
    intersects_R,
    solve_x_given_y,
    trace_curve,
)
from .dimension import (  # noqa: E402
    exception_window,
    merged_probability,
    reduced_similarity_dimension,
    sample_measure,
    similarity_dimension,
    solve_d,
)
from .polynomial import BiPoly, UniPoly, build_curve_poly, derivative_at_one, restrict_y1  # noqa: E402
from .certification import (  # noqa: E402
    ExceptionCertificate,
    build_catalog,
    certify_exception,
    compose_affine,
    verify_exact_overlap,
)
