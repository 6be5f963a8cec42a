"""Classifiers for distinguished sub-structures of a dotted diagram.

The vocabulary:
  * circle component: an immersed circle that happens to be embedded;
  * loop component: a simple closed sub-path of one immersed circle based
    at a self-crossing;
  * two-corner component: a simple closed curve through exactly two
    "turning" crossings (all other crossings passed diagonally) whose
    bounded disk sits on the narrow side of both turns; a *bigon* is the
    lens-type two-corner component whose disk lies inside both side
    circles;
  * crossing-including component: a simple closed curve all of whose
    turning crossings keep all four local arcs inside the closed disk;
  * outermost component: a crossing-including component with no diagonal
    crossings on it at all.

Disks are face-id sets computed from sub-curve winding, never from
coordinates.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .diagram import HEAD, TAIL


@dataclass(frozen=True)
class ComponentWitness:
    kind: str
    arcs: tuple            # arc ids in traversal order; ('fc', gid) for free circles
    crossings: tuple       # crossings on the curve
    disk: frozenset        # region ids inside the bounded disk
    dots: int
    sign: int = 0          # winding of the disk side, when meaningful
    coherent: bool | None = None
    corners: tuple = ()    # (crossing, frozenset of the two used slots)
    sides: tuple = ()      # arc tuples of the two sides (two-corner kinds)
    side_circles: tuple = ()
    base: int | None = None   # base crossing of a loop
    diagonals: tuple = ()  # crossings passed diagonally
    circle: tuple | None = None  # immersed circle key, when meaningful


def _arrive_dart(G, c, s):
    """Dart whose motion enters crossing c through slot s."""
    aid, e = G.rot[c][s]
    return (aid, 1) if e == HEAD else (aid, -1)


def _depart_dart(G, c, s):
    aid, e = G.rot[c][s]
    return (aid, 1) if e == TAIL else (aid, -1)


def sector_face(G, c, p):
    """Region id of the sector between slots p and p+1 at crossing c."""
    return G.face_of_dart(_arrive_dart(G, c, (p + 1) % 4))


def _sector_index(sa, sb):
    """p such that {p, p+1 mod 4} == {sa, sb} for adjacent slots."""
    if (sa + 1) % 4 == sb:
        return sa
    if (sb + 1) % 4 == sa:
        return sb
    raise ValueError(f"slots {sa},{sb} not adjacent")


def circle_components(G):
    """Embedded immersed circles, free circles included."""
    out = []
    for key, chain in sorted(G.map_circles().items()):
        visited = [G.arcs[a].head[0] for a in chain]
        if len(set(visited)) != len(visited):
            continue  # self-crossing: not embedded
        wind = G.subcurve_winding({(a, 1) for a in chain})
        disk = frozenset(r for r, w in wind.items() if w != 0)
        vals = {wind[r] for r in disk}
        if len(vals) != 1 or vals - {1, -1}:
            continue
        out.append(ComponentWitness(
            kind="CircleComponent",
            arcs=tuple(chain),
            crossings=tuple(sorted(visited)),
            disk=disk,
            dots=sum(G.arcs[a].dots for a in chain),
            sign=vals.pop(),
            circle=key,
        ))
    for gid in sorted(G.free_circles):
        g = G.free_circles[gid]
        wind = G.subcurve_winding({(("fc", gid), 1)})
        disk = frozenset(r for r, w in wind.items() if w != 0)
        out.append(ComponentWitness(
            kind="CircleComponent",
            arcs=(("fc", gid),),
            crossings=(),
            disk=disk,
            dots=g.dots,
            sign=g.sign,
            circle=("fc", gid),
        ))
    return out


def loop_components(G):
    """Simple closed sub-paths of one immersed circle based at a crossing."""
    out = []
    for key, chain in sorted(G.map_circles().items()):
        m = len(chain)
        heads = [G.arcs[a].head[0] for a in chain]
        positions = {}
        for i, c in enumerate(heads):
            positions.setdefault(c, []).append(i)
        for c, pos in sorted(positions.items()):
            if len(pos) != 2:
                continue  # not a self-crossing of this circle
            for (lo, hi) in (tuple(pos), tuple(reversed(pos))):
                arcs = [chain[(lo + 1 + k) % m] for k in range((hi - lo) % m)]
                if not arcs:
                    continue
                inner = [G.arcs[a].head[0] for a in arcs[:-1]]
                if len(set(inner)) != len(inner) or c in inner:
                    continue
                wind = G.subcurve_winding({(a, 1) for a in arcs})
                disk = frozenset(r for r, w in wind.items() if w != 0)
                vals = {wind[r] for r in disk}
                if len(vals) != 1 or vals - {1, -1}:
                    continue
                out.append(ComponentWitness(
                    kind="LoopComponent",
                    arcs=tuple(arcs),
                    crossings=tuple(sorted(set(inner) | {c})),
                    disk=disk,
                    dots=sum(G.arcs[a].dots for a in arcs),
                    sign=vals.pop(),
                    base=c,
                    diagonals=tuple(sorted(set(inner))),
                    circle=key,
                ))
    return out


def two_corner_components(G):
    """All two-corner disk components (the general bigon notion)."""
    found = {}
    for x1 in sorted(G.rot):
        for slot_in in range(4):
            for slot_out in ((slot_in + 1) % 4, (slot_in - 1) % 4):
                motion = _depart_dart(G, x1, slot_out)
                side1 = [motion]
                visited = set()
                while True:
                    c, s = G.dart_arrival(motion)
                    if c == x1 or c in visited:
                        break
                    visited.add(c)
                    for turn in (1, -1):
                        res = _try_close(
                            G, x1, slot_in, slot_out, c, s,
                            (s + turn) % 4, side1, visited,
                        )
                        if res is not None:
                            key, witness = res
                            found.setdefault(key, witness)
                    motion = _depart_dart(G, c, (s + 2) % 4)
                    side1 = side1 + [motion]
    return [found[k] for k in sorted(found, key=repr)]


def _try_close(G, x1, slot_in1, slot_out1, x2, slot_in2, slot_out2, side1, visited):
    """Attempt side 2: straight run from (x2, slot_out2) closing at (x1, slot_in1)."""
    motion = _depart_dart(G, x2, slot_out2)
    side2 = [motion]
    inner = set()
    while True:
        c, s = G.dart_arrival(motion)
        if c == x1:
            if s != slot_in1:
                return None
            break
        if c in visited or c in inner:
            return None
        inner.add(c)
        motion = _depart_dart(G, c, (s + 2) % 4)
        side2.append(motion)
    darts = side1 + side2
    arcs = [d[0] for d in darts]
    if len(set(arcs)) != len(arcs):
        return None
    wind = G.subcurve_winding(set(darts))
    disk = frozenset(r for r, w in wind.items() if w != 0)
    vals = {wind[r] for r in disk}
    if not disk or len(vals) != 1 or vals - {1, -1}:
        return None
    for (cx, sa, sb) in ((x1, slot_in1, slot_out1), (x2, slot_in2, slot_out2)):
        if sector_face(G, cx, _sector_index(sa, sb)) not in disk:
            return None  # disk is not on the narrow side of this turn
    corner1 = (x1, frozenset({slot_in1, slot_out1}))
    corner2 = (x2, frozenset({slot_in2, slot_out2}))
    key = (frozenset(arcs), frozenset({corner1, corner2}))
    side1_arcs = tuple(d[0] for d in side1)
    side2_arcs = tuple(d[0] for d in side2)
    witness = ComponentWitness(
        kind="TwoCorner",
        arcs=tuple(arcs),
        crossings=tuple(sorted({x1} | visited | inner)),
        disk=disk,
        dots=sum(G.arcs[a].dots for a in arcs),
        sign=vals.pop(),
        coherent={d[1] for d in side1} == {d[1] for d in side2},
        corners=tuple(sorted((corner1, corner2), key=repr)),
        sides=(side1_arcs, side2_arcs),
        side_circles=(
            G.circle_of_arc(side1_arcs[0]),
            G.circle_of_arc(side2_arcs[0]),
        ),
        diagonals=tuple(sorted((visited | inner) - {x1, x2})),
    )
    return key, witness


def bigon_components(G):
    """Lens-type two-corner components: the disk lies inside both sides'
    immersed circles (nonzero winding for each on every disk face)."""
    labels = G.labels()
    out = []
    for w in two_corner_components(G):
        c1, c2 = w.side_circles
        if all(
            labels.winding(r, c1) != 0 and labels.winding(r, c2) != 0
            for r in w.disk
        ):
            out.append(dataclasses.replace(w, kind="BigonComponent"))
    return out


def crossing_including_components(G):
    """Simple closed curves whose turning crossings keep all four local
    arcs inside the closed disk.  Loop components (one turn) are excluded
    by definition; embedded circles qualify vacuously."""
    found = {}
    for w in circle_components(G):
        key = (frozenset(w.arcs), frozenset())
        found[key] = dataclasses.replace(
            w, kind="CrossingIncludingComponent",
            diagonals=w.crossings if w.circle[0] == "mc" else (),
        )
    for x0 in sorted(G.rot):
        for p in range(4):
            for (slot_in, slot_out) in ((p, (p + 1) % 4), ((p + 1) % 4, p)):
                chirality = 1 if slot_out == (slot_in + 1) % 4 else -1
                _cic_dfs(G, x0, slot_in, slot_out, chirality, found)
    return [found[k] for k in sorted(found, key=repr)]


def _cic_dfs(G, x0, slot_in, slot_out, chirality, found):
    start_corner = (x0, frozenset({slot_in, slot_out}))
    init = _depart_dart(G, x0, slot_out)

    def rec(motion, darts, corners, visited):
        c, s = G.dart_arrival(motion)
        if c == x0:
            if s == slot_in and corners:
                _cic_record(G, darts, corners | {start_corner}, found)
            return
        if c in visited:
            return
        straight = _depart_dart(G, c, (s + 2) % 4)
        rec(straight, darts + [straight], corners, visited | {c})
        s_out = (s + chirality) % 4
        turned = _depart_dart(G, c, s_out)
        rec(turned, darts + [turned],
            corners | {(c, frozenset({s, s_out}))}, visited | {c})

    rec(init, [init], set(), {x0})


def _cic_record(G, darts, corners, found):
    arcs = [d[0] for d in darts]
    if len(set(arcs)) != len(arcs):
        return
    if len(corners) == 1:
        return  # a loop component is not crossing-including
    key = (frozenset(arcs), frozenset(corners))
    if key in found:
        return
    wind = G.subcurve_winding(set(darts))
    disk = frozenset(r for r, w in wind.items() if w != 0)
    vals = {wind[r] for r in disk}
    if not disk or len(vals) != 1 or vals - {1, -1}:
        return
    for (c, slots) in corners:
        if sector_face(G, c, _sector_index(*sorted(slots))) in disk:
            return  # narrow-side turn: not crossing-including there
    corner_crossings = {c for c, _ in corners}
    on_curve = {G.dart_arrival(d)[0] for d in darts}
    found[key] = ComponentWitness(
        kind="CrossingIncludingComponent",
        arcs=tuple(arcs),
        crossings=tuple(sorted(on_curve)),
        disk=disk,
        dots=sum(G.arcs[a].dots for a in arcs),
        sign=vals.pop(),
        corners=tuple(sorted(corners, key=repr)),
        diagonals=tuple(sorted(on_curve - corner_crossings)),
    )


def outermost_components(G):
    """Crossing-including components with nothing attached outside: every
    crossing on the curve is a turning crossing."""
    return [w for w in crossing_including_components(G) if not w.diagonals]


# -- overlap relation ----------------------------------------------------------


@dataclass(frozen=True)
class OverlapPair:
    overlapping: frozenset   # region of the first part (assembled-region set)
    overlapped: frozenset    # region of the second part
    label_overlapping: int
    label_overlapped: int


def subdiagram_regions(G, keep_circles):
    """Regions of the sub-diagram formed by `keep_circles` only.

    Returns (classes, label_of): classes are frozensets of assembled
    region ids of G merged across every arc and free circle that is not
    kept; label_of maps each class to its sub-diagram label (sum of the
    kept circles' windings, constant on the class).
    """
    labels = G.labels()
    keep = set(keep_circles)
    parent = {r: r for r in G.regions()}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for aid in sorted(G.arcs):
        if G.circle_of_arc(aid) not in keep:
            left, right = G.arc_sides(aid)
            ra, rb = find(left), find(right)
            if ra != rb:
                parent[ra] = rb
    for gid in sorted(G.free_circles):
        if ("fc", gid) not in keep:
            ra = find(("fci", gid))
            rb = find(G.free_circles[gid].host)
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for r in G.regions():
        groups.setdefault(find(r), set()).add(r)
    classes = []
    label_of = {}
    for members in groups.values():
        key = frozenset(members)
        classes.append(key)
        vals = {sum(labels.winding(r, c) for c in keep) for r in members}
        assert len(vals) == 1, "sub-diagram label not constant on a region"
        label_of[key] = vals.pop()
    classes.sort(key=repr)
    return classes, label_of


def overlapped_regions(G, part1, part2):
    """All overlapping/overlapped region pairs for a circle 2-partition.

    A region R1 of part1 overlaps a region R2 of part2 when they
    intersect and every part1 region containing a piece of R2 - R1 has
    label zero; when R2 is contained in R1 the containing region is R1
    itself (degenerate reading: no overlap unless R1 is labeled zero).
    """
    regs1, lab1 = subdiagram_regions(G, set(part1))
    regs2, lab2 = subdiagram_regions(G, set(part2))
    pairs = []
    for r1 in regs1:
        for r2 in regs2:
            if not (r1 & r2):
                continue
            spill = r2 - r1
            if spill:
                ok = all(lab1[h] == 0 for h in regs1 if h & spill)
            else:
                ok = lab1[r1] == 0
            if ok:
                pairs.append(OverlapPair(
                    overlapping=r1, overlapped=r2,
                    label_overlapping=lab1[r1], label_overlapped=lab2[r2],
                ))
    return pairs
