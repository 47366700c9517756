"""Elliptic-billiard N-periodic families, focus/center-inversive polygons,
their invariants, and triangle-center loci."""

from .geometry import (
    CircleSpec,
    EllipseSpec,
    GeometryError,
    Point2,
    Polygon,
    SingularInversionError,
    ellipse_gradient,
    ellipse_point,
    ellipse_residual,
    interior_cosines,
    invert_point,
    limacon_point,
    make_ellipse,
    perimeter,
    signed_area,
)
from .orbits import (
    CausticSpec,
    Orbit,
    OrbitError,
    SolverError,
    confocal_caustic_n3,
    family_caustic,
    joachimsthal,
    n3_closed_form_JL,
    reflection_residual,
    solve_nperiodic,
    stachel_j,
    three_periodic,
)
from .inversive import (
    InversiveConfig,
    InversivePolygon,
    center_inversive,
    focus_inversive,
    pedal_polygon,
    spoke_stats,
)
from .centers import (
    Triangle,
    UnsupportedCenterError,
    center_point,
    center_trilinears,
    supported_center_ids,
    trilinear_to_cartesian,
)
from .invariants import (
    ClosedFormRefs,
    InvariantTrace,
    circumbilliard,
    closed_form_refs,
    sweep_family,
    verify_rotating_billiard,
)
from .loci import (
    CircleFit,
    ConicFit,
    LocusClass,
    LocusSample,
    LocusTolerances,
    center_inversive_x3_check,
    circle_locus_reference,
    classify_locus,
    fit_circle,
    fit_conic,
    swan_check,
    sweep_locus,
)
from .caustics import LineFamily, envelope_sample, side_line_family, tangency_residual

__version__ = "0.1.0"
