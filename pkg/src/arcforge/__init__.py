"""Arcs, k-systems and their classification on marked surfaces.

Arcs are tight edge-crossing itineraries over a fixed ideal triangulation;
intersection numbers, layouts, cutting and classification are all exact
combinatorics on top of that representation.
"""

from .arcs import ArcClass, enumerate_arc_classes, tighten
from .classify import canonical_code, classify, system_code, system_to_ribbon_graph, verify_filling
from .cutting import CutResult, complement_is_connected, cut_along
from .formulas import (
    FamilyPair,
    family_intersection,
    max_cardinality,
    polygon_construction_counts,
    slope_intersection,
)
from .intersections import geometric_intersection, intersection_matrix, self_intersection
from .layout import crossing_layout
from .slopes import slope_arc
from .surface import (
    IdealTriangulation,
    SurfaceInvariants,
    euler_characteristic,
    standard_fixture,
    validate_triangulation,
)
from .systems import (
    ArcSystem,
    compatibility_graph,
    construct_hexagon_system,
    is_k_system,
    is_saturated,
    maximum_cliques,
    non_intersecting_subset,
)

__version__ = "0.1.0"
