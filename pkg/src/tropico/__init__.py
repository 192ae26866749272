"""Exact-arithmetic enumeration of curves on toric surfaces via floor
diagrams, with construction and analysis of the plane tropical curves the
diagrams encode."""

from .lattice import (
    DirectionData,
    LatticePolygon,
    convex_hull,
    cubic_triangle,
    diamond,
    direction_data,
    integral_length,
    is_primitive,
    is_transverse,
    octic_quadrilateral,
    perp,
    transverse_directions,
    trapezium,
    triangle,
    vertex_singularity,
)
from .diagram import (
    DiagramSpec,
    FloorDiagram,
    Marking,
    count,
    diagram_genus,
    enumerate_diagrams,
    enumerate_markings,
    lemma_1_5_check,
    multiplicity,
    validate,
    validate_verbose,
    weighted_count_check,
)
from .tropical import (
    DualSubdivision,
    ParametrizedCurve,
    PlaneTropicalCurve,
    TropicalPolynomial,
    check_balancing,
    corner_locus,
    delta_invariant,
    geometric_genus,
    legendre_transform,
    newton_polygon_of,
    stable_intersection,
    stable_intersection_generic,
    tropical_multiplicity,
)
from .realize import (
    PointConfig,
    Realization,
    floor_decompose,
    realize,
    realize_stretched,
    stretch_points,
    verify_realization,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
