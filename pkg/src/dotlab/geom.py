"""Exact integer geometry for axis-parallel segment arrangements.

All curves in this library are unions of horizontal and vertical segments
with integer endpoints.  Probe points are taken at cell centers of the
half-integer grid, so every predicate below is decided with integer
arithmetic only.

Conventions:
  * an H-segment is (y, x0, x1, d): y level, x0 < x1, d = +1 when the
    traversal runs towards +x, else -1;
  * a V-segment is (x, y0, y1, d): d = +1 for +y traversal;
  * cell (i, j) is the open unit square (i, i+1) x (j, j+1); its center
    (i + 1/2, j + 1/2) never lies on a segment.
"""

from __future__ import annotations

from fractions import Fraction


def norm_h(y, xa, xb):
    """H-segment from (xa,y) to (xb,y) in traversal order."""
    return (y, xa, xb, 1) if xa < xb else (y, xb, xa, -1)


def norm_v(x, ya, yb):
    return (x, ya, yb, 1) if ya < yb else (x, yb, ya, -1)


def h_v_crossing(h, v):
    """Interior intersection point of an H- and a V-segment, or None.

    Touching at an endpoint does not count; genericity validation rejects
    such contacts separately.
    """
    y, x0, x1, _ = h
    x, y0, y1, _ = v
    if x0 < x < x1 and y0 < y < y1:
        return (x, y)
    return None


def segments_cross_count(hsegs_a, vsegs_a, hsegs_b, vsegs_b):
    """Number of transversal crossings between two segment families."""
    n = 0
    for h in hsegs_a:
        for v in vsegs_b:
            if h_v_crossing(h, v) is not None:
                n += 1
    for h in hsegs_b:
        for v in vsegs_a:
            if h_v_crossing(h, v) is not None:
                n += 1
    return n


def intervals_overlap(a0, a1, b0, b1):
    """Open-interval overlap of [a0,a1] and [b0,b1] beyond a point."""
    return max(a0, b0) < min(a1, b1)


def cell_winding(hsegs, vsegs, cell):
    """Winding number of the closed curve family around cell center.

    Casts a ray towards +x from (i+1/2, j+1/2).  Only vertical segments
    can cross it; an upward crossing counts +1, downward -1.
    """
    i, j = cell
    w = 0
    for x, y0, y1, d in vsegs:
        if x > i and y0 <= j < y1:
            w += d
    return w


def point_winding(hsegs, vsegs, px, py):
    """Winding number around an arbitrary off-curve point (exact).

    Accepts ints, floats, or Fractions.  Raises ValueError when the probe
    lies on a segment; callers translate that into ProbeOnCurve.  The
    half-open interval rule [y0, y1) makes rays through corners exact for
    closed curves.
    """
    px = Fraction(px)
    py = Fraction(py)
    for y, x0, x1, _ in hsegs:
        if py == y and x0 <= px <= x1:
            raise ValueError("probe on horizontal segment")
    for x, y0, y1, _ in vsegs:
        if px == x and y0 <= py <= y1:
            raise ValueError("probe on vertical segment")
    w = 0
    for x, y0, y1, d in vsegs:
        if x > px and y0 <= py < y1:
            w += d
    return w


class CellArrangement:
    """Flood-filled face structure of a segment arrangement.

    Cells of the half-integer grid are glued whenever the shared unit edge
    is not covered by a segment; each connected blob of cells is one face
    of the arrangement.  Region 0 is always the unbounded face.
    """

    def __init__(self, hsegs, vsegs):
        self.hsegs = list(hsegs)
        self.vsegs = list(vsegs)
        xs = [x for _, x0, x1, _ in self.hsegs for x in (x0, x1)]
        xs += [x for x, _, _, _ in self.vsegs]
        ys = [y for y, _, _, _ in self.hsegs]
        ys += [y for _, y0, y1, _ in self.vsegs for y in (y0, y1)]
        if not xs:
            xs = [0]
            ys = [0]
        self.x_lo = min(xs) - 1
        self.x_hi = max(xs)          # cells x_lo .. x_hi inclusive
        self.y_lo = min(ys) - 1
        self.y_hi = max(ys)
        # Unit edges covered by segments.  h_block[(x, y)] blocks the
        # vertical step between cell (x, y-1) and (x, y).
        h_block = set()
        for y, x0, x1, _ in self.hsegs:
            for x in range(x0, x1):
                h_block.add((x, y))
        v_block = set()
        for x, y0, y1, _ in self.vsegs:
            for y in range(y0, y1):
                v_block.add((x, y))
        self._region = {}
        nregions = 0
        order = [(self.x_lo, self.y_lo)]
        order += [
            (i, j)
            for j in range(self.y_lo, self.y_hi + 1)
            for i in range(self.x_lo, self.x_hi + 1)
        ]
        for seed in order:
            if seed in self._region:
                continue
            rid = nregions
            nregions += 1
            stack = [seed]
            self._region[seed] = rid
            while stack:
                i, j = stack.pop()
                if i > self.x_lo and (i, j) not in v_block:
                    nb = (i - 1, j)
                    if nb not in self._region:
                        self._region[nb] = rid
                        stack.append(nb)
                if i < self.x_hi and (i + 1, j) not in v_block:
                    nb = (i + 1, j)
                    if nb not in self._region:
                        self._region[nb] = rid
                        stack.append(nb)
                if j > self.y_lo and (i, j) not in h_block:
                    nb = (i, j - 1)
                    if nb not in self._region:
                        self._region[nb] = rid
                        stack.append(nb)
                if j < self.y_hi and (i, j + 1) not in h_block:
                    nb = (i, j + 1)
                    if nb not in self._region:
                        self._region[nb] = rid
                        stack.append(nb)
        self.nregions = nregions
        self.outer = 0  # seeded from the margin cell first

    def region_of_cell(self, cell):
        i, j = cell
        i = min(max(i, self.x_lo), self.x_hi)
        j = min(max(j, self.y_lo), self.y_hi)
        return self._region[(i, j)]

    def sample_cells(self):
        """One representative cell per region, smallest (j, i) first."""
        best = {}
        for j in range(self.y_lo, self.y_hi + 1):
            for i in range(self.x_lo, self.x_hi + 1):
                r = self._region[(i, j)]
                if r not in best:
                    best[r] = (i, j)
        return best

    def left_cell_of_unit(self, p, q):
        """Cell on the left of the directed unit step p -> q."""
        (x0, y0), (x1, y1) = p, q
        if x1 == x0 + 1:      # +x
            return (x0, y0)
        if x1 == x0 - 1:      # -x
            return (x1, y0 - 1)
        if y1 == y0 + 1:      # +y
            return (x0 - 1, y0)
        if y1 == y0 - 1:      # -y
            return (x0, y1)
        raise ValueError("not a unit step")


def turn_sign(din, dout):
    """Cross product of unit direction vectors: +1 left turn, -1 right."""
    return din[0] * dout[1] - din[1] * dout[0]
