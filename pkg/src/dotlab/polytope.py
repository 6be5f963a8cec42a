"""Rectilinear lattice curves with alternating dot / X corner marks.

A component is a closed curve on the integer grid whose corners carry
marks that strictly alternate: every dot-to-X segment is horizontal and
every X-to-dot segment is vertical.  A curve set is *generic* when every
contact between segments is a transversal interior double point of one
horizontal and one vertical segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AlternationError,
    AxisError,
    DegenerateError,
    NonGenericError,
    NotSimple,
    ProbeOnCurve,
    FormatError,
)
from . import geom

DOT = "D"
XMARK = "X"


@dataclass(frozen=True)
class Corner:
    x: int
    y: int
    mark: str  # DOT or XMARK

    @property
    def point(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class PolytopeComponent:
    """Cyclic corner sequence in traversal order (orientation matters)."""

    corners: tuple

    def __len__(self):
        return len(self.corners)

    def segments(self):
        """(hsegs, vsegs) in geom normal form, traversal direction kept."""
        hs, vs = [], []
        cs = self.corners
        for k, c in enumerate(cs):
            nxt = cs[(k + 1) % len(cs)]
            if c.y == nxt.y:
                hs.append(geom.norm_h(c.y, c.x, nxt.x))
            else:
                vs.append(geom.norm_v(c.x, c.y, nxt.y))
        return hs, vs

    def dot_count(self):
        return sum(1 for c in self.corners if c.mark == DOT)

    def orientation_sign(self):
        """+1 for counterclockwise traversal, -1 for clockwise."""
        s = 0
        cs = self.corners
        for k, c in enumerate(cs):
            nxt = cs[(k + 1) % len(cs)]
            s += c.x * nxt.y - nxt.x * c.y
        if s == 0:
            raise DegenerateError("component has zero signed area")
        return 1 if s > 0 else -1

    def translate(self, dx, dy):
        return PolytopeComponent(
            tuple(Corner(c.x + dx, c.y + dy, c.mark) for c in self.corners)
        )

    def is_simple(self):
        """True when the component curve has no self-contacts at all."""
        try:
            _check_component_simple(self)
        except (NotSimple, NonGenericError):
            return False
        return True


@dataclass(frozen=True)
class LatticePolytope:
    components: tuple

    def segments(self):
        hs, vs = [], []
        for comp in self.components:
            h, v = comp.segments()
            hs.extend(h)
            vs.extend(v)
        return hs, vs

    def dot_count(self):
        return sum(c.dot_count() for c in self.components)

    def corner_points(self):
        return [c.point for comp in self.components for c in comp.corners]

    def bbox(self):
        pts = self.corner_points()
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return (min(xs), min(ys), max(xs), max(ys))

    def translate(self, dx, dy):
        return LatticePolytope(
            tuple(c.translate(dx, dy) for c in self.components)
        )


@dataclass(frozen=True)
class CrossingPoint:
    """Transversal double point of one horizontal and one vertical strand."""

    x: int
    y: int
    hseg: tuple
    vseg: tuple

    @property
    def point(self):
        return (self.x, self.y)

    @property
    def sign(self):
        # Handedness of (horizontal strand, vertical strand), as the cross
        # product of their travel directions.
        return self.hseg[3] * self.vseg[3]


def validate_polytope(raw):
    """Build a LatticePolytope from raw corner lists, checking everything.

    `raw` is a list of components, each a list of (mark, x, y) triples in
    traversal order.  Raises the first violated invariant with its
    location; returns the validated polytope otherwise.
    """
    comps = []
    for ci, corner_list in enumerate(raw):
        n = len(corner_list)
        if n < 4:
            raise DegenerateError("component needs at least 4 corners", component=ci)
        if n % 2 != 0:
            raise DegenerateError("odd corner count", component=ci)
        corners = []
        for ki, (mark, x, y) in enumerate(corner_list):
            if mark not in (DOT, XMARK):
                raise FormatError(f"unknown mark {mark!r}")
            if not (isinstance(x, int) and isinstance(y, int)):
                raise DegenerateError("non-integer corner", component=ci, corner=ki)
            corners.append(Corner(x, y, mark))
        for ki in range(n):
            a, b = corners[ki], corners[(ki + 1) % n]
            if a.mark == b.mark:
                raise AlternationError(
                    f"consecutive corners both {a.mark}", component=ci, corner=ki
                )
            if a.point == b.point:
                raise DegenerateError("zero-length segment", component=ci, corner=ki)
            if a.mark == DOT:
                if a.y != b.y:
                    raise AxisError(
                        "dot-to-X segment must be horizontal", component=ci, corner=ki
                    )
            else:
                if a.x != b.x:
                    raise AxisError(
                        "X-to-dot segment must be vertical", component=ci, corner=ki
                    )
        comps.append(PolytopeComponent(tuple(corners)))
    poly = LatticePolytope(tuple(comps))
    _check_genericity(poly)
    return poly


def _check_genericity(poly):
    hs, vs = poly.segments()
    # Collinear overlap among parallel segments.
    by_y = {}
    for seg in hs:
        by_y.setdefault(seg[0], []).append(seg)
    for y, group in by_y.items():
        group.sort(key=lambda s: s[1])
        for a, b in zip(group, group[1:]):
            if geom.intervals_overlap(a[1], a[2], b[1], b[2]):
                raise NonGenericError(f"horizontal overlap at y={y}")
            if a[2] == b[1]:
                raise NonGenericError(f"horizontal segments touch at ({a[2]},{y})")
    by_x = {}
    for seg in vs:
        by_x.setdefault(seg[0], []).append(seg)
    for x, group in by_x.items():
        group.sort(key=lambda s: s[1])
        for a, b in zip(group, group[1:]):
            if geom.intervals_overlap(a[1], a[2], b[1], b[2]):
                raise NonGenericError(f"vertical overlap at x={x}")
            if a[2] == b[1]:
                raise NonGenericError(f"vertical segments touch at ({x},{a[2]})")
    # Corner incidences: no corner may lie on any other segment, and all
    # corner points must be distinct.
    corner_pts = poly.corner_points()
    seen = set()
    for p in corner_pts:
        if p in seen:
            raise NonGenericError(f"coincident corners at {p}")
        seen.add(p)
    for y, x0, x1, _ in hs:
        for (px, py) in seen:
            if py == y and x0 < px < x1:
                raise NonGenericError(f"corner ({px},{py}) lies on a segment")
    for x, y0, y1, _ in vs:
        for (px, py) in seen:
            if px == x and y0 < py < y1:
                raise NonGenericError(f"corner ({px},{py}) lies on a segment")
    # All H/V contacts are interior double points; collect and ensure no
    # two coincide (triple points are impossible once overlaps and corner
    # hits are excluded, but assert anyway).
    pts = set()
    for h in hs:
        for v in vs:
            p = geom.h_v_crossing(h, v)
            if p is None:
                # Endpoint touching between perpendicular segments of
                # different corners.
                y, x0, x1, _ = h
                x, y0, y1, _ = v
                if (x in (x0, x1) and y0 <= y <= y1) or (
                    y in (y0, y1) and x0 <= x <= x1
                ):
                    if (x, y) not in seen or not _is_own_corner(poly, h, v, (x, y)):
                        # A shared endpoint belonging to one corner of one
                        # component is the normal corner join; anything
                        # else is a non-generic contact.
                        raise NonGenericError(f"non-transversal contact at ({x},{y})")
                continue
            if p in pts:
                raise NonGenericError(f"triple point at {p}")
            pts.add(p)


def _is_own_corner(poly, h, v, p):
    """True when h and v are the two segments meeting at corner p."""
    for comp in poly.components:
        cs = comp.corners
        n = len(cs)
        for k, c in enumerate(cs):
            if c.point != p:
                continue
            prev = cs[(k - 1) % n]
            nxt = cs[(k + 1) % n]
            segs = set()
            if prev.y == c.y:
                segs.add(geom.norm_h(c.y, prev.x, c.x))
            else:
                segs.add(geom.norm_v(c.x, prev.y, c.y))
            if c.y == nxt.y:
                segs.add(geom.norm_h(c.y, c.x, nxt.x))
            else:
                segs.add(geom.norm_v(c.x, c.y, nxt.y))
            if h in segs and v in segs:
                return True
    return False


def crossings(poly):
    """All transversal double points, ordered lexicographically.

    Positions are integer points: axis-parallel segments with integer
    coordinates can only meet at lattice points.
    """
    hs, vs = poly.segments()
    found = []
    for h in hs:
        for v in vs:
            p = geom.h_v_crossing(h, v)
            if p is not None:
                assert isinstance(p[0], int) and isinstance(p[1], int)
                found.append(CrossingPoint(p[0], p[1], h, v))
    found.sort(key=lambda c: (c.x, c.y))
    return found


def winding_number(poly, probe):
    """Geometric winding number of the whole curve family around probe.

    This is the independent oracle for the combinatorial region labels:
    a horizontal ray towards +x, counting signed crossings with vertical
    segments.  Counterclockwise simple curves give +1 inside.
    """
    hs, vs = poly.segments()
    try:
        return geom.point_winding(hs, vs, Fraction(probe[0]), Fraction(probe[1]))
    except ValueError as exc:
        raise ProbeOnCurve(str(exc)) from None


def corner_angle_audit(component):
    """Counts (n_plus, n_minus) of quarter and three-quarter inner angles.

    The input curve must be simple; angles are measured against the
    bounded disk, so n_plus - n_minus == 4 holds for every valid input
    (the total turning of a simple closed curve is one full turn).
    """
    _check_component_simple(component)
    cs = component.corners
    n = len(cs)
    turns = []
    for k, c in enumerate(cs):
        prev = cs[(k - 1) % n]
        nxt = cs[(k + 1) % n]
        din = _unit(prev.point, c.point)
        dout = _unit(c.point, nxt.point)
        t = geom.turn_sign(din, dout)
        assert t != 0
        turns.append(t)
    total = sum(turns)
    assert total in (4, -4)
    if total == 4:  # counterclockwise: left turns are convex
        n_plus = sum(1 for t in turns if t == 1)
        n_minus = n - n_plus
    else:
        n_minus = sum(1 for t in turns if t == 1)
        n_plus = n - n_minus
    return (n_plus, n_minus)


def _unit(p, q):
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    return ((dx > 0) - (dx < 0), (dy > 0) - (dy < 0))


def _check_component_simple(component):
    try:
        poly = LatticePolytope((component,))
        _check_genericity(poly)
    except NonGenericError as exc:
        raise NotSimple(str(exc)) from None
    hs, vs = component.segments()
    for h in hs:
        for v in vs:
            if geom.h_v_crossing(h, v) is not None:
                raise NotSimple("component crosses itself")


# --------------------------------------------------------------------------
# `.poly` text format: one component per line, `D x y` / `X x y` tokens in
# traversal order, `#` comments, blank lines ignored.


def parse_poly(text):
    raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        toks = body.split()
        if len(toks) % 3 != 0:
            raise FormatError("token count not a multiple of 3", line=lineno)
        comp = []
        for k in range(0, len(toks), 3):
            mark = toks[k]
            if mark not in (DOT, XMARK):
                raise FormatError(f"expected D or X, got {mark!r}", line=lineno)
            try:
                x = int(toks[k + 1])
                y = int(toks[k + 2])
            except ValueError:
                raise FormatError("coordinates must be integers", line=lineno) from None
            comp.append((mark, x, y))
        raw.append(comp)
    return raw


def serialize_poly(poly):
    lines = []
    for comp in poly.components:
        toks = []
        for c in comp.corners:
            toks.append(f"{c.mark} {c.x} {c.y}")
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def load_polytope(text):
    return validate_polytope(parse_poly(text))
