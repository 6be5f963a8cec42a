"""dotlab: exact combinatorics of rectilinear lattice curves and their
dotted planar diagrams, with a deformation engine and census verification."""

from .errors import (
    AlternationError,
    AxisError,
    BudgetExceeded,
    ContradictoryLabels,
    DegenerateError,
    DiagramError,
    DotlabError,
    FormatError,
    InconsistentRotation,
    NonGenericError,
    NotSimple,
    ProbeOnCurve,
    SiteStale,
)
from .polytope import (
    DOT,
    XMARK,
    Corner,
    CrossingPoint,
    LatticePolytope,
    PolytopeComponent,
    corner_angle_audit,
    crossings,
    load_polytope,
    parse_poly,
    serialize_poly,
    validate_polytope,
    winding_number,
)
from .diagram import (
    Arc,
    DottedGraph,
    FaceLabeling,
    FreeCircle,
    OUTER,
    canonical_code,
    parse_dg,
    relabel,
    serialize_dg,
)
from .components import (
    ComponentWitness,
    OverlapPair,
    bigon_components,
    circle_components,
    crossing_including_components,
    loop_components,
    outermost_components,
    overlapped_regions,
    two_corner_components,
)
from .extract import ExtractionTrace, extract, find_realization

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
