"""Exact computation on plane projective curves over finite fields:
point counting, singularity analysis, line spectra, extremal point-count
bounds, a catalog of equality cases, and coefficient-space search."""

from .analysis import (
    INFINITE,
    CountReport,
    LineSpectrum,
    NonsingularityVerdict,
    count_by_line_sweep,
    count_points,
    intersection_multiplicity,
    is_frobenius_nonclassical,
    is_geometrically_nonsingular,
    line_spectrum,
    rational_points,
    singular_rational_points,
    tangent_line,
)
from .bounds import (
    BoundReport,
    bound_values,
    bound_verdicts,
    equivalent_by_point_frames,
    projective_equivalent,
    step3_solution,
)
from .catalog import CATALOG, catalog_curve, exceptional_quartic, verify_catalog
from .curve import (
    BinaryForm,
    PlaneCurve,
    curve_mul,
    divides,
    exact_divide,
    frobenius_form,
    has_linear_component,
    monomials,
)
from .field import ExtensionField, FiniteField
from .locus import decide_singular_locus, singular_points_over_extension
from .plane import (
    enumerate_lines,
    enumerate_points,
    incident,
    is_arc,
    line_through,
    lines_through_point,
    meet,
    normalize,
)
from .search import SearchRecord, SearchTask, random_singular_instances, run_search

__version__ = "0.1.0"
