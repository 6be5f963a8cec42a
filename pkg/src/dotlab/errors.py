"""Exception types raised across the library.

Every error that reports a location carries enough context (component
index, corner index, coordinates) to point at the first offending input.
"""


class DotlabError(Exception):
    """Base class for all library errors."""


class PolytopeError(DotlabError):
    """Base class for lattice-curve validation failures."""

    def __init__(self, message, component=None, corner=None):
        self.component = component
        self.corner = corner
        where = []
        if component is not None:
            where.append(f"component {component}")
        if corner is not None:
            where.append(f"corner {corner}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class AlternationError(PolytopeError):
    """Corner marks do not alternate dot / X around the cycle."""


class AxisError(PolytopeError):
    """A segment runs along the wrong axis for its mark pair."""


class DegenerateError(PolytopeError):
    """Zero-length segment, odd corner count, or fewer than 4 corners."""


class NonGenericError(PolytopeError):
    """Collinear overlap, corner incidence, or non-transversal contact."""


class ProbeOnCurve(DotlabError):
    """Winding-number probe lies on a curve segment."""


class NotSimple(DotlabError):
    """Operation requires an embedded (self-avoiding) closed curve."""


class DiagramError(DotlabError):
    """Base class for dotted-graph structural failures."""


class InconsistentRotation(DiagramError):
    """Crossing rotations do not describe a planar map."""


class ContradictoryLabels(DiagramError):
    """Region labels cannot be assigned consistently; the map is corrupt."""


class SiteStale(DotlabError):
    """A move site does not match the diagram it is applied to."""


class BudgetExceeded(DotlabError):
    """Bounded search ran out of nodes or depth before finishing."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class FormatError(DotlabError):
    """Malformed `.poly` / `.dg` / JSON input."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LayoutFallbackNotice(Warning):
    """Diagram rendering fell back to a schematic layout."""
