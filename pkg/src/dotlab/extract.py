"""Compute the dotted diagram associated with a lattice curve family.

Dropping the X marks and keeping the plane graph up to isotopy turns a
validated lattice curve family into a DottedGraph: transversal double
points become crossings, maximal strand pieces between crossings become
arcs carrying their dot-corner counts, and crossing-free components
become free circles.  The containment forest and each piece's unbounded
face are read off the exact cell arrangement, so the combinatorial map
is correct by construction rather than by heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geom
from .diagram import DottedGraph, HEAD, TAIL, OUTER
from .errors import BudgetExceeded, DiagramError
from .polytope import DOT, LatticePolytope, crossings as polytope_crossings


@dataclass(frozen=True)
class ExtractionTrace:
    """How the diagram sits on the grid: realizing paths and face cells."""

    arc_paths: dict      # arc id -> tuple of lattice points (polyline)
    fc_paths: dict       # free circle id -> closed polyline
    crossing_points: dict  # crossing id -> (x, y)
    region_cells: dict   # region id -> sample cell of the arrangement
    arrangement: geom.CellArrangement


def extract(poly):
    """(DottedGraph, ExtractionTrace) for a validated LatticePolytope."""
    cps = polytope_crossings(poly)
    cross_id = {cp.point: i for i, cp in enumerate(cps)}
    cross_points = set(cross_id)

    walks = [_component_walk(comp, cross_points) for comp in poly.components]

    crossings_rot = {i: [None, None, None, None] for i in range(len(cps))}
    arc_dots = {}
    arc_paths = {}
    fc = {}
    fc_paths = {}
    fc_seq = 0
    arc_seq = 0
    for comp, walk in zip(poly.components, walks):
        has_cross = any(kind == "x" for kind, _, _ in walk)
        if not has_cross:
            sign = comp.orientation_sign()
            dots = comp.dot_count()
            fc[fc_seq] = (dots, sign, OUTER)  # host fixed up below
            fc_paths[fc_seq] = _walk_polyline(walk)
            fc_seq += 1
            continue
        # rotate the cyclic walk to start at its first crossing node
        start = next(i for i, node in enumerate(walk) if node[0] == "x")
        walk = walk[start:] + walk[:start]
        # split into arcs at crossing nodes
        cuts = [i for i, node in enumerate(walk) if node[0] == "x"]
        for k, i0 in enumerate(cuts):
            i1 = cuts[(k + 1) % len(cuts)]
            if k == len(cuts) - 1:
                nodes = walk[i0:] + walk[: 1]
            else:
                nodes = walk[i0 : i1 + 1]
            aid = arc_seq
            arc_seq += 1
            dots = sum(1 for kind, pt, mark in nodes[1:-1] if kind == "c" and mark == DOT)
            arc_dots[aid] = dots
            pts = [node[1] for node in nodes]
            arc_paths[aid] = tuple(pts)
            # register the two ends in the crossing rotations
            tail_cross = cross_id[pts[0]]
            head_cross = cross_id[pts[-1]]
            tdir = _unit_dir(pts[0], pts[1])
            hdir = _unit_dir(pts[-1], pts[-2])  # germ side: back towards the arc
            crossings_rot[tail_cross][_compass(tdir)] = (aid, TAIL)
            crossings_rot[head_cross][_compass(hdir)] = (aid, HEAD)

    for c, slots in crossings_rot.items():
        if any(s is None for s in slots):
            raise DiagramError(f"crossing {c} has an unfilled germ")
        crossings_rot[c] = tuple(slots)

    pre = DottedGraph(crossings_rot, arc_dots,
                      {g: v for g, v in fc.items()},
                      validate=False)

    hs, vs = poly.segments()
    full = geom.CellArrangement(hs, vs)

    # map every assembled region to a full-arrangement region id
    claim = {}
    piece_outer = {}
    for piece in sorted(pre.pieces()):
        _, arc_ids = pre.pieces()[piece]
        phs, pvs = _segments_of_paths([arc_paths[a] for a in arc_ids])
        ponly = geom.CellArrangement(phs, pvs)
        outer_idx = None
        for idx, orbit in enumerate(pre.orbits(piece)):
            dart = min(orbit)
            cell = _dart_left_cell(arc_paths, dart)
            if ponly.region_of_cell(cell) == ponly.outer:
                if outer_idx is not None and outer_idx != idx:
                    raise DiagramError("two orbits claim the unbounded face")
                outer_idx = idx
            else:
                claim[full.region_of_cell(cell)] = ("f", piece, idx)
        if outer_idx is None:
            raise DiagramError("no orbit claims the unbounded face")
        piece_outer[piece] = outer_idx
    for gid in sorted(fc):
        dots, sign, _ = fc[gid]
        inner_cell, _ = _fc_side_cells(fc_paths[gid], sign)
        claim[full.region_of_cell(inner_cell)] = ("fci", gid)
    if full.outer in claim:
        raise DiagramError("a bounded face claims the unbounded region")
    claim[full.outer] = OUTER

    # hosts: the region just outside each piece / free circle
    piece_hosts = {}
    for piece in sorted(pre.pieces()):
        orbit = pre.orbits(piece)[piece_outer[piece]]
        cell = _dart_left_cell(arc_paths, min(orbit))
        piece_hosts[piece] = claim[full.region_of_cell(cell)]
    fc_final = {}
    for gid in sorted(fc):
        dots, sign, _ = fc[gid]
        _, outer_cell = _fc_side_cells(fc_paths[gid], sign)
        host = claim[full.region_of_cell(outer_cell)]
        fc_final[gid] = (dots, sign, host)

    G = DottedGraph(crossings_rot, arc_dots, fc_final, piece_hosts, piece_outer)

    region_cells = {}
    samples = full.sample_cells()
    for rid, region in claim.items():
        region_cells[region] = samples[rid]
    trace = ExtractionTrace(
        arc_paths=arc_paths,
        fc_paths=fc_paths,
        crossing_points={i: cp.point for i, cp in enumerate(cps)},
        region_cells=region_cells,
        arrangement=full,
    )
    if len(claim) != full.nregions:
        raise DiagramError("face structure does not match the arrangement")
    return G, trace


def _component_walk(comp, cross_points):
    """Cyclic node list ('c', point, mark) / ('x', point, None) along the curve."""
    walk = []
    cs = comp.corners
    n = len(cs)
    for k, c in enumerate(cs):
        walk.append(("c", c.point, c.mark))
        nxt = cs[(k + 1) % n]
        for pt in _points_between(c.point, nxt.point):
            if pt in cross_points:
                walk.append(("x", pt, None))
    return walk


def _points_between(p, q):
    """Interior lattice points of the segment p -> q, in travel order."""
    x0, y0 = p
    x1, y1 = q
    if y0 == y1:
        step = 1 if x1 > x0 else -1
        return [(x, y0) for x in range(x0 + step, x1, step)]
    step = 1 if y1 > y0 else -1
    return [(x0, y) for y in range(y0 + step, y1, step)]


def _walk_polyline(walk):
    return tuple(pt for _, pt, _ in walk)


def _unit_dir(p, q):
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    return ((dx > 0) - (dx < 0), (dy > 0) - (dy < 0))


_COMPASS = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}  # E N W S


def _compass(d):
    return _COMPASS[d]


def _segments_of_paths(paths):
    hs, vs = [], []
    for pts in paths:
        for a, b in zip(pts, pts[1:]):
            if a[1] == b[1]:
                hs.append(geom.norm_h(a[1], a[0], b[0]))
            else:
                vs.append(geom.norm_v(a[0], a[1], b[1]))
    return hs, vs


def _dart_left_cell(arc_paths, dart):
    aid, d = dart
    pts = arc_paths[aid]
    if d < 0:
        pts = tuple(reversed(pts))
    p, q = pts[0], pts[1]
    u = _unit_dir(p, q)
    q1 = (p[0] + u[0], p[1] + u[1])
    return _left_cell_of_unit(p, q1)


def _left_cell_of_unit(p, q):
    (x0, y0), (x1, y1) = p, q
    if x1 == x0 + 1:
        return (x0, y0)
    if x1 == x0 - 1:
        return (x1, y0 - 1)
    if y1 == y0 + 1:
        return (x0 - 1, y0)
    return (x0, y1)


def _fc_side_cells(path, sign):
    """(inner cell, outer cell) next to a free circle's first unit step."""
    p, q = path[0], path[1]
    u = _unit_dir(p, q)
    q1 = (p[0] + u[0], p[1] + u[1])
    left = _left_cell_of_unit(p, q1)
    right = _left_cell_of_unit(q1, p)
    if sign > 0:
        return left, right
    return right, left


def find_realization(G, window, max_corners, budget=200000):
    """Bounded search for a lattice curve family extracting to G.

    Returns the lexicographically least polytope found, or None when the
    bounded space holds no realization (which proves nothing beyond the
    bounds).  Raises BudgetExceeded when the candidate budget runs out.
    """
    from . import census

    target = G.canonical_code()
    n_circles = len(G.circle_keys())
    n_crossings = len(G.rot)
    dot_total = G.dot_total()
    spec = census.EnumSpec(
        window=window,
        max_components=n_circles,
        max_corners_per_component=max_corners,
    )
    examined = 0
    for poly in census.enumerate_polytopes(spec):
        if len(poly.components) != n_circles:
            continue
        examined += 1
        if examined > budget:
            raise BudgetExceeded(f"examined {budget} candidates", partial=None)
        if poly.dot_count() != dot_total:
            continue
        if len(polytope_crossings(poly)) != n_crossings:
            continue
        got, _ = extract(poly)
        if got.canonical_code() == target:
            return poly
    return None
