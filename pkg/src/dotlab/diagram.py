"""Planar combinatorial maps of immersed oriented curves with dot counts.

A diagram consists of:
  * crossings: 4-valent vertices with a counterclockwise rotation of four
    arc ends; opposite ends (slots 0&2, 1&3) belong to the two through
    strands and each strand enters once and leaves once;
  * arcs: directed edges between crossing ends carrying a dot count;
  * free circles: closed curves without crossings (dot count, orientation
    sign, hosting face);
  * a containment forest assigning every connected piece to the face of
    another piece that contains it, or to the plane's outer region, plus
    the distinguished unbounded face of every map piece.

Everything is immutable after construction; operations build new
diagrams.  Faces are dart orbits: the face on the *left* of dart
``(arc, +1)`` is the orbit containing that dart, where the orbit
successor arrives at a crossing through slot ``s`` and leaves through
slot ``(s - 1) mod 4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ContradictoryLabels,
    DiagramError,
    FormatError,
    InconsistentRotation,
)

OUTER = ("outer",)

HEAD = "h"
TAIL = "t"


@dataclass(frozen=True)
class Arc:
    id: int
    tail: tuple  # (crossing id, slot)
    head: tuple
    dots: int


@dataclass(frozen=True)
class FreeCircle:
    id: int
    dots: int
    sign: int  # +1 counterclockwise, -1 clockwise
    host: tuple  # region id


class DottedGraph:
    """Immutable dotted diagram; derived structure is computed lazily."""

    def __init__(self, crossings, arc_dots, free_circles=None,
                 piece_hosts=None, piece_outer=None, validate=True):
        """
        crossings: {cid: ((aid, 'h'|'t'),) * 4} counterclockwise rotation
        arc_dots: {aid: dot count}
        free_circles: {gid: (dots, sign, host region)}
        piece_hosts: {piece id: region id}; piece id = min crossing id
        piece_outer: {piece id: orbit index or dart} unbounded face marker
        """
        self.rot = {c: tuple(slots) for c, slots in sorted(crossings.items())}
        self.free_circles = {}
        for gid, (dots, sign, host) in sorted((free_circles or {}).items()):
            self.free_circles[gid] = FreeCircle(gid, dots, sign, tuple(host))
        self.arcs = self._derive_arcs(arc_dots)
        self._cache = {}
        self.piece_hosts = {p: tuple(h) for p, h in sorted((piece_hosts or {}).items())}
        self.piece_outer = {}
        for p, o in sorted((piece_outer or {}).items()):
            if isinstance(o, tuple):
                o = self.orbit_index_of_dart(o)
            self.piece_outer[p] = o
        if validate:
            self.validate()

    # -- construction helpers ------------------------------------------------

    def _derive_arcs(self, arc_dots):
        ends = {}
        for c, slots in self.rot.items():
            if len(slots) != 4:
                raise DiagramError(f"crossing {c} does not have 4 ends")
            for s, (aid, e) in enumerate(slots):
                if e not in (HEAD, TAIL):
                    raise DiagramError(f"bad end tag {e!r} at crossing {c}")
                key = (aid, e)
                if key in ends:
                    raise DiagramError(f"arc end {key} appears twice")
                ends[key] = (c, s)
        arcs = {}
        for aid, dots in sorted(arc_dots.items()):
            if (aid, TAIL) not in ends or (aid, HEAD) not in ends:
                raise DiagramError(f"arc {aid} missing an end in the rotation table")
            if dots < 0:
                raise DiagramError(f"arc {aid} has negative dots")
            arcs[aid] = Arc(aid, ends[(aid, TAIL)], ends[(aid, HEAD)], dots)
        for (aid, e) in ends:
            if aid not in arcs:
                raise DiagramError(f"rotation references unknown arc {aid}")
        return arcs

    # -- basic structure -----------------------------------------------------

    def is_empty(self):
        return not self.rot and not self.free_circles

    def dot_total(self):
        return sum(a.dots for a in self.arcs.values()) + sum(
            g.dots for g in self.free_circles.values()
        )

    def pieces(self):
        """Map piece id (min crossing id) -> (crossing ids, arc ids)."""
        if "pieces" in self._cache:
            return self._cache["pieces"]
        parent = {c: c for c in self.rot}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arcs.values():
            ra, rb = find(a.tail[0]), find(a.head[0])
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for c in self.rot:
            groups.setdefault(find(c), set()).add(c)
        pieces = {}
        for members in groups.values():
            pid = min(members)
            arcs = sorted(
                a.id for a in self.arcs.values() if a.tail[0] in members
            )
            pieces[pid] = (tuple(sorted(members)), tuple(arcs))
        self._cache["pieces"] = pieces
        return pieces

    def piece_of_crossing(self, c):
        for pid, (cs, _) in self.pieces().items():
            if c in cs:
                return pid
        raise DiagramError(f"unknown crossing {c}")

    def piece_of_arc(self, aid):
        return self.piece_of_crossing(self.arcs[aid].tail[0])

    # -- darts and faces -----------------------------------------------------

    def dart_arrival(self, dart):
        """(crossing, slot) where the dart points into."""
        aid, d = dart
        arc = self.arcs[aid]
        return arc.head if d > 0 else arc.tail

    def dart_departure(self, dart):
        aid, d = dart
        arc = self.arcs[aid]
        return arc.tail if d > 0 else arc.head

    def next_dart(self, dart):
        """Successor inside the face orbit (face on the left)."""
        c, s = self.dart_arrival(dart)
        s2 = (s - 1) % 4
        aid, e = self.rot[c][s2]
        return (aid, 1) if e == TAIL else (aid, -1)

    def orbits(self, piece):
        """Face orbits of one map piece, ordered by least member dart."""
        key = ("orbits", piece)
        if key in self._cache:
            return self._cache[key]
        _, arc_ids = self.pieces()[piece]
        darts = [(a, d) for a in arc_ids for d in (1, -1)]
        seen = set()
        orbits = []
        for start in sorted(darts):
            if start in seen:
                continue
            orbit = []
            d = start
            while True:
                orbit.append(d)
                seen.add(d)
                d = self.next_dart(d)
                if d == start:
                    break
            orbits.append(tuple(orbit))
        orbits.sort(key=lambda o: min(o))
        self._cache[key] = orbits
        return orbits

    def orbit_index_of_dart(self, dart):
        piece = self.piece_of_arc(dart[0])
        for i, orbit in enumerate(self.orbits(piece)):
            if dart in orbit:
                return i
        raise DiagramError(f"dart {dart} not found")

    def face_of_dart(self, dart):
        """Region id of the face on the left of the dart (assembled)."""
        piece = self.piece_of_arc(dart[0])
        idx = self.orbit_index_of_dart(dart)
        return self.resolve_face(piece, idx)

    def resolve_face(self, piece, orbit_idx):
        """Assemble a local face into a global region id."""
        if orbit_idx == self.piece_outer[piece]:
            return self.piece_hosts[piece]
        return ("f", piece, orbit_idx)

    def regions(self):
        """All global region ids, outer first, deterministic order."""
        out = [OUTER]
        for piece in sorted(self.pieces()):
            for i in range(len(self.orbits(piece))):
                if i != self.piece_outer[piece]:
                    out.append(("f", piece, i))
        for gid in sorted(self.free_circles):
            out.append(("fci", gid))
        return out

    def arc_sides(self, aid):
        """(left region, right region) of an arc."""
        return self.face_of_dart((aid, 1)), self.face_of_dart((aid, -1))

    # -- immersed circles ----------------------------------------------------

    def strand_next(self, aid):
        """Following the immersed circle: arc after `aid` through its head."""
        c, s = self.arcs[aid].head
        aid2, e = self.rot[c][(s + 2) % 4]
        if e != TAIL:
            raise InconsistentRotation(
                f"crossing {c}: opposite of an incoming end is not outgoing"
            )
        return aid2

    def map_circles(self):
        """Immersed circles through crossings: {circle key: arc id tuple}."""
        if "map_circles" in self._cache:
            return self._cache["map_circles"]
        seen = set()
        circles = {}
        for a0 in sorted(self.arcs):
            if a0 in seen:
                continue
            chain = []
            a = a0
            while True:
                chain.append(a)
                seen.add(a)
                a = self.strand_next(a)
                if a == a0:
                    break
            circles[("mc", a0)] = tuple(chain)
        self._cache["map_circles"] = circles
        return circles

    def circle_keys(self):
        keys = list(self.map_circles())
        keys += [("fc", gid) for gid in sorted(self.free_circles)]
        return keys

    def circle_of_arc(self, aid):
        if "circle_of_arc" not in self._cache:
            m = {}
            for key, chain in self.map_circles().items():
                for a in chain:
                    m[a] = key
            self._cache["circle_of_arc"] = m
        return self._cache["circle_of_arc"][aid]

    # -- validation ----------------------------------------------------------

    def validate(self):
        for c, slots in self.rot.items():
            for s in range(2):
                e1 = slots[s][1]
                e2 = slots[s + 2][1]
                if e1 == e2:
                    raise InconsistentRotation(
                        f"crossing {c}: through-strand {s} is not coherently oriented"
                    )
        pieces = self.pieces()
        for pid, (cs, arc_ids) in pieces.items():
            v = len(cs)
            e = len(arc_ids)
            f = len(self.orbits(pid))
            if v - e + f != 2:
                raise InconsistentRotation(
                    f"piece {pid}: V-E+F = {v}-{e}+{f} != 2, not a planar piece"
                )
            if pid not in self.piece_outer:
                raise DiagramError(f"piece {pid} has no outer face marker")
            if not 0 <= self.piece_outer[pid] < f:
                raise DiagramError(f"piece {pid}: outer face index out of range")
            if pid not in self.piece_hosts:
                raise DiagramError(f"piece {pid} has no containment host")
        valid_regions = set(self.regions())
        for pid in pieces:
            host = self.piece_hosts[pid]
            if host not in valid_regions:
                raise DiagramError(f"piece {pid} hosted in unknown region {host}")
            if host[0] == "f" and host[1] == pid:
                raise DiagramError(f"piece {pid} hosted in its own face")
        for g in self.free_circles.values():
            if g.sign not in (1, -1):
                raise DiagramError(f"free circle {g.id} has sign {g.sign}")
            if g.dots < 0:
                raise DiagramError(f"free circle {g.id} has negative dots")
            if g.host not in valid_regions:
                raise DiagramError(f"free circle {g.id} hosted in unknown region")
            if g.host == ("fci", g.id):
                raise DiagramError(f"free circle {g.id} hosted inside itself")
        self._check_forest()
        self.map_circles()  # raises on incoherent strands
        self.labels()       # raises ContradictoryLabels on corrupt maps

    def _check_forest(self):
        def owner(region):
            if region == OUTER:
                return None
            if region[0] == "f":
                return ("p", region[1])
            return ("g", region[2 - 1])

        for start in list(self.pieces()) + [("g", g) for g in self.free_circles]:
            node = start if isinstance(start, tuple) else ("p", start)
            seen = set()
            while node is not None:
                if node in seen:
                    raise DiagramError("containment forest has a cycle")
                seen.add(node)
                if node[0] == "p":
                    region = self.piece_hosts[node[1]]
                else:
                    region = self.free_circles[node[1]].host
                node = owner(region)

    # -- region labels ---------------------------------------------------------

    def labels(self):
        """FaceLabeling: per-region totals and per-circle winding vectors."""
        if "labels" in self._cache:
            return self._cache["labels"]
        edges = []
        for aid in sorted(self.arcs):
            left, right = self.arc_sides(aid)
            edges.append((left, right, self.circle_of_arc(aid), 1))
        for gid in sorted(self.free_circles):
            g = self.free_circles[gid]
            inner = ("fci", gid)
            edges.append((inner, g.host, ("fc", gid), g.sign))
        vectors = {OUTER: {}}
        queue = [OUTER]
        adj = {}
        for left, right, circle, delta in edges:
            adj.setdefault(left, []).append((right, circle, -delta))
            adj.setdefault(right, []).append((left, circle, +delta))
        regions = set(self.regions())
        while queue:
            r = queue.pop()
            for (r2, circle, delta) in adj.get(r, []):
                vec = dict(vectors[r])
                vec[circle] = vec.get(circle, 0) + delta
                vec = {k: v for k, v in vec.items() if v != 0}
                if r2 in vectors:
                    if vectors[r2] != vec:
                        raise ContradictoryLabels(
                            f"region {r2} receives conflicting labels"
                        )
                else:
                    vectors[r2] = vec
                    queue.append(r2)
        missing = regions - set(vectors)
        if missing:
            raise ContradictoryLabels(f"regions unreachable from outer: {missing}")
        labeling = FaceLabeling(
            totals={r: sum(v.values()) for r, v in vectors.items()},
            vectors=vectors,
        )
        self._cache["labels"] = labeling
        return labeling

    def subcurve_winding(self, curve_darts):
        """Winding of every region around a closed sub-curve.

        `curve_darts` is a set of (arc id, direction) pairs forming closed
        curves; crossing arc `a` from right to left adds the traversal
        direction.  Free-circle ids may appear as (('fc', gid), dir).
        """
        delta = {}
        for item, d in curve_darts:
            delta[item] = delta.get(item, 0) + d
        wind = {OUTER: 0}
        queue = [OUTER]
        adj = {}
        for aid in sorted(self.arcs):
            left, right = self.arc_sides(aid)
            step = delta.get(aid, 0)
            adj.setdefault(left, []).append((right, -step))
            adj.setdefault(right, []).append((left, +step))
        for gid in sorted(self.free_circles):
            g = self.free_circles[gid]
            step = delta.get(("fc", gid), 0) * g.sign
            adj.setdefault(("fci", gid), []).append((g.host, -step))
            adj.setdefault(g.host, []).append((("fci", gid), +step))
        while queue:
            r = queue.pop()
            for (r2, step) in adj.get(r, []):
                w = wind[r] + step
                if r2 in wind:
                    if wind[r2] != w:
                        raise ContradictoryLabels("open sub-curve")
                else:
                    wind[r2] = w
                    queue.append(r2)
        return wind

    # -- canonical form --------------------------------------------------------

    def canonical_code(self):
        """Equal strings iff diagrams are isomorphic by an orientation
        preserving isomorphism of the plane respecting dots, orientations,
        containment, and outer faces."""
        if "code" in self._cache:
            return self._cache["code"]
        code = repr(_forest_code(self))
        self._cache["code"] = code
        return code

    # -- misc -------------------------------------------------------------------

    def children_of_region(self, region):
        """Pieces and free circles hosted directly inside a region."""
        out = []
        for pid in sorted(self.pieces()):
            if self.piece_hosts[pid] == region:
                out.append(("p", pid))
        for gid in sorted(self.free_circles):
            if self.free_circles[gid].host == region:
                out.append(("g", gid))
        return out

    def __repr__(self):
        return (
            f"DottedGraph(crossings={len(self.rot)}, arcs={len(self.arcs)}, "
            f"free_circles={len(self.free_circles)}, dots={self.dot_total()})"
        )


@dataclass(frozen=True)
class FaceLabeling:
    totals: dict
    vectors: dict

    def total(self, region):
        return self.totals[region]

    def winding(self, region, circle_key):
        return self.vectors[region].get(circle_key, 0)


# -- canonical encoding -------------------------------------------------------


def _piece_encoding_from_root(G, piece, root):
    """Deterministic encoding of one map piece grown from a root dart."""
    crossing_num = {}
    arc_num = {}
    arc_dots = []
    order = []
    c0, s0 = G.dart_arrival(root)
    crossing_num[c0] = 0
    queue = [(c0, s0)]
    body = []
    while queue:
        c, s_entry = queue.pop(0)
        order.append((c, s_entry))
        row = []
        for k in range(4):
            aid, e = G.rot[c][(s_entry + k) % 4]
            if aid not in arc_num:
                arc_num[aid] = len(arc_num)
                arc_dots.append(G.arcs[aid].dots)
                other = G.arcs[aid].head if e == TAIL else G.arcs[aid].tail
                oc, os = other
                if oc not in crossing_num:
                    crossing_num[oc] = len(crossing_num)
                    queue.append((oc, os))
            row.append((arc_num[aid], 0 if e == TAIL else 1))
        body.append(tuple(row))
    # renumber faces: orbit key = min (arc_num, dir01) over member darts
    orbits = G.orbits(piece)

    def orbit_key(orbit):
        return min((arc_num[a], 0 if d > 0 else 1) for (a, d) in orbit)

    keys = [orbit_key(o) for o in orbits]
    outer_key = keys[G.piece_outer[piece]]
    children = []
    for i, o in enumerate(orbits):
        if i == G.piece_outer[piece]:
            continue
        kids = tuple(sorted(
            _node_code(G, kind, nid)
            for kind, nid in G.children_of_region(("f", piece, i))
        ))
        if kids:
            children.append((keys[i], kids))
    children.sort()
    return (tuple(body), tuple(arc_dots), outer_key, tuple(children))


def _piece_code(G, piece):
    _, arc_ids = G.pieces()[piece]
    best = None
    for a in arc_ids:
        for d in (1, -1):
            enc = _piece_encoding_from_root(G, piece, (a, d))
            if best is None or enc < best:
                best = enc
    return ("p",) + best


def _node_code(G, kind, nid):
    if kind == "p":
        return _piece_code(G, nid)
    g = G.free_circles[nid]
    kids = tuple(sorted(
        _node_code(G, k2, n2)
        for k2, n2 in G.children_of_region(("fci", nid))
    ))
    return ("fc", g.dots, g.sign, kids)


def _forest_code(G):
    roots = G.children_of_region(OUTER)
    return tuple(sorted(_node_code(G, kind, nid) for kind, nid in roots))


def canonical_code(G):
    return G.canonical_code()


# -- `.dg` text format ---------------------------------------------------------


def _face_id_tables(G):
    """Global face numbering shared by serializer and parser.

    Orbits of map pieces (pieces by id, orbits by least dart) first, then
    the inner faces of free circles by id.
    """
    fid_of = {}
    seq = 0
    for piece in sorted(G.pieces()):
        for i in range(len(G.orbits(piece))):
            fid_of[("o", piece, i)] = seq
            seq += 1
    for gid in sorted(G.free_circles):
        fid_of[("fci", gid)] = seq
        seq += 1
    return fid_of


def _region_to_fid(G, fid_of, region):
    if region == OUTER:
        return "outer"
    if region[0] == "f":
        return f"f{fid_of[('o', region[1], region[2])]}"
    return f"f{fid_of[region]}"


def serialize_dg(G):
    fid_of = _face_id_tables(G)
    lines = []
    for c in sorted(G.rot):
        ends = " ".join(
            f"a{aid}:{'head' if e == HEAD else 'tail'}" for aid, e in G.rot[c]
        )
        lines.append(f"crossing c{c}: {ends}")
    for aid in sorted(G.arcs):
        arc = G.arcs[aid]
        circle = G.circle_of_arc(aid)
        lines.append(f"arc a{aid}: dots {arc.dots} circle {circle[1]}")
    for gid in sorted(G.free_circles):
        g = G.free_circles[gid]
        sign = "+" if g.sign > 0 else "-"
        host = _region_to_fid(G, fid_of, g.host)
        lines.append(f"freecircle g{gid}: dots {g.dots} sign {sign} face {host}")
    for piece in sorted(G.pieces()):
        host = G.piece_hosts[piece]
        if host == OUTER:
            lines.append(f"contain p{piece} in outer")
        else:
            owner = host[1] if host[0] == "f" else None
            if host[0] == "f":
                lines.append(
                    f"contain p{piece} in p{owner}.f{fid_of[('o', host[1], host[2])]}"
                )
            else:
                lines.append(f"contain p{piece} in g{host[1]}.f{fid_of[host]}")
    for piece in sorted(G.pieces()):
        lines.append(f"outer f{fid_of[('o', piece, G.piece_outer[piece])]}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_dg(text):
    crossings = {}
    arc_dots = {}
    fc_raw = {}
    contain_raw = []
    outer_raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        toks = body.split()
        kind = toks[0]
        try:
            if kind == "crossing":
                cid = _parse_id(toks[1].rstrip(":"), "c", lineno)
                slots = []
                for t in toks[2:6]:
                    aid_s, end = t.split(":")
                    aid = _parse_id(aid_s, "a", lineno)
                    if end not in ("head", "tail"):
                        raise FormatError(f"bad end {end!r}", line=lineno)
                    slots.append((aid, HEAD if end == "head" else TAIL))
                if len(slots) != 4:
                    raise FormatError("crossing needs 4 ends", line=lineno)
                crossings[cid] = tuple(slots)
            elif kind == "arc":
                aid = _parse_id(toks[1].rstrip(":"), "a", lineno)
                arc_dots[aid] = int(toks[toks.index("dots") + 1])
            elif kind == "freecircle":
                gid = _parse_id(toks[1].rstrip(":"), "g", lineno)
                dots = int(toks[toks.index("dots") + 1])
                sign = 1 if toks[toks.index("sign") + 1] == "+" else -1
                face = toks[toks.index("face") + 1]
                fc_raw[gid] = (dots, sign, face)
            elif kind == "contain":
                contain_raw.append((toks[1], toks[3], lineno))
            elif kind == "outer":
                outer_raw.append((toks[1], lineno))
            else:
                raise FormatError(f"unknown line kind {kind!r}", line=lineno)
        except (IndexError, ValueError) as exc:
            raise FormatError(f"malformed line: {exc}", line=lineno) from None

    # A provisional graph (hosts to be patched) for face numbering.
    free_seed = {gid: (d, s, OUTER) for gid, (d, s, _) in fc_raw.items()}
    pre = DottedGraph(crossings, arc_dots, free_seed,
                      piece_hosts=None, piece_outer=None, validate=False)
    fid_of = _face_id_tables(pre)
    region_of_fid = {}
    for key, fid in fid_of.items():
        if key[0] == "o":
            region_of_fid[fid] = ("o", key[1], key[2])
        else:
            region_of_fid[fid] = key

    def region_from_token(tok, lineno):
        if tok == "outer":
            return OUTER
        if "." in tok:
            tok = tok.split(".", 1)[1]
        if not tok.startswith("f"):
            raise FormatError(f"bad face id {tok!r}", line=lineno)
        fid = int(tok[1:])
        if fid not in region_of_fid:
            raise FormatError(f"face f{fid} does not exist", line=lineno)
        key = region_of_fid[fid]
        if key[0] == "o":
            return ("f", key[1], key[2])
        return key

    piece_outer = {}
    for tok, lineno in outer_raw:
        key = region_from_token(tok, lineno)
        if key == OUTER or key[0] != "f":
            raise FormatError("outer line must name a map-piece face", line=lineno)
        piece_outer[key[1]] = key[2]
    piece_hosts = {}
    for piece_tok, host_tok, lineno in contain_raw:
        pid = _parse_id(piece_tok, "p", lineno)
        piece_hosts[pid] = region_from_token(host_tok, lineno)
    free_circles = {}
    for gid, (dots, sign, face_tok) in fc_raw.items():
        free_circles[gid] = (dots, sign, region_from_token(face_tok, 0))
    # piece-outer faces resolve to hosts, not to themselves
    fixed_hosts = {}
    for pid, host in piece_hosts.items():
        fixed_hosts[pid] = host
    G = DottedGraph(crossings, arc_dots, free_circles,
                    piece_hosts=fixed_hosts, piece_outer=piece_outer)
    return G


def _parse_id(token, prefix, lineno):
    if not token.startswith(prefix):
        raise FormatError(f"expected {prefix}<n>, got {token!r}", line=lineno)
    return int(token[len(prefix):])


# -- relabeling (id permutation; used by tests and canonicalization checks) ----


def relabel(G, crossing_map=None, arc_map=None, fc_map=None, rotate=None):
    """Rename ids and cyclically rotate crossing tuples; same diagram."""
    cm = crossing_map or {c: c for c in G.rot}
    am = arc_map or {a: a for a in G.arcs}
    gm = fc_map or {g: g for g in G.free_circles}
    rot = {}
    for c, slots in G.rot.items():
        k = (rotate or {}).get(c, 0) % 4
        slots = slots[k:] + slots[:k]
        rot[cm[c]] = tuple((am[a], e) for a, e in slots)
    arc_dots = {am[a]: arc.dots for a, arc in G.arcs.items()}

    def map_region(region):
        if region == OUTER:
            return OUTER
        if region[0] == "f":
            piece, idx = region[1], region[2]
            orbit = G.orbits(piece)[idx]
            dart = min(orbit)
            return ("dart", am[dart[0]], dart[1])
        return ("fci", gm[region[1]])

    fcs = {
        gm[g.id]: (g.dots, g.sign, map_region(g.host))
        for g in G.free_circles.values()
    }
    hosts_raw = {piece: map_region(G.piece_hosts[piece]) for piece in G.pieces()}
    outer_raw = {}
    for piece in G.pieces():
        orbit = G.orbits(piece)[G.piece_outer[piece]]
        dart = min(orbit)
        outer_raw[piece] = (am[dart[0]], dart[1])
    # build without hosts first to translate dart-specified regions
    pre = DottedGraph(rot, arc_dots, {g: (d, s, OUTER) for g, (d, s, _) in fcs.items()},
                      validate=False)

    def fix_region(region):
        if region == OUTER or region[0] == "fci":
            return region
        _, aid, d = region
        piece = pre.piece_of_arc(aid)
        idx = pre.orbit_index_of_dart((aid, d))
        return ("f", piece, idx)

    fcs2 = {g: (d, s, fix_region(host)) for g, (d, s, host) in fcs.items()}
    hosts2 = {}
    for old_piece, region in hosts_raw.items():
        cs, _ = G.pieces()[old_piece]
        new_piece = min(cm[c] for c in cs)
        hosts2[new_piece] = fix_region(region)
    outer2 = {}
    for old_piece, dart in outer_raw.items():
        cs, _ = G.pieces()[old_piece]
        new_piece = min(cm[c] for c in cs)
        outer2[new_piece] = dart
    return DottedGraph(rot, arc_dots, fcs2, hosts2, outer2)
