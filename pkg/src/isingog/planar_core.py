"""Planar networks in a disk as combinatorial maps.

A network stores, for every vertex, the counterclockwise list of incident
edge indices.  Edge ``e = (u, v)`` owns two darts: ``2e`` leaving ``u`` and
``2e + 1`` leaving ``v``, so the twin of a dart is ``d ^ 1``.

Boundary vertices need one extra convention because the disk boundary sits
in a gap of their rotation: the list at ``b_i`` starts with the edge closest
to ``b_{i+1}`` and ends with the edge closest to ``b_{i-1}``.  Internally the
disk boundary is materialized as ``n`` arcs ``b_i -> b_{i+1}`` placed in that
gap, which turns the disk picture into an ordinary planar map.

Couplings are stored as ``x_e = tanh(J_e)`` in ``(0, 1]``; ``x_e = 1`` is an
infinite coupling (the endpoints are glued together).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property, cmp_to_key
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (BadBoundaryOrder, CouplingOutOfRange, Disconnected, EulerViolation,
                     LoopEdge, NotCrossing, ParseError, RotationError, StrandCycle,
                     ValidationError)

__all__ = [
    "PlanarNetwork", "MedialGraph", "MedialPairing", "parse_rational", "format_rational",
    "validate_network", "network_from_coordinates", "dual_network", "dual_coupling",
    "medial_graph", "medial_pairing", "xing_and_reduced", "uncross", "uncrossing_poset",
    "i_min_max", "standard_medial_graph", "remove_edge", "contract_spike", "crosses",
]


# rationals

def parse_rational(value) -> Fraction:
    """Read ``"p/q"``, ``"p"``, an int or a Fraction; reduce to lowest terms."""
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            num, _, den = value.strip().partition("/")
            return Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {value!r}") from None
    raise ParseError(f"not a rational: {value!r}")


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class _UnionFind:
    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v):
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


# networks

class PlanarNetwork:
    """A validated planar graph in a disk with couplings.

    Built by `validate_network`; treat instances as immutable.
    ``labels`` carries stable edge names through edge removal and contraction.
    """

    def __init__(self, vertices, boundary, edges, x, rotations, labels=None):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.boundary: tuple[str, ...] = tuple(boundary)
        self.edges: tuple[tuple[str, str], ...] = tuple(edges)
        self.x: tuple[Fraction, ...] = tuple(x)
        self.rotations: dict[str, tuple[int, ...]] = {v: tuple(rotations.get(v, ()))
                                                      for v in self.vertices}
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.edges)))
        self._bindex = {b: i for i, b in enumerate(self.boundary)}

    @property
    def n(self) -> int:
        return len(self.boundary)

    def __repr__(self):
        return f"PlanarNetwork(n={self.n}, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    def is_boundary(self, v) -> bool:
        return v in self._bindex

    def boundary_index(self, v) -> int:
        """0-based position of a boundary vertex."""
        return self._bindex[v]

    def degree(self, v) -> int:
        return len(self.rotations[v])

    def origin(self, d: int) -> str:
        return self.edges[d >> 1][d & 1]

    def dart(self, e: int, v: str) -> int:
        """The dart of edge ``e`` leaving ``v``."""
        return 2 * e + (0 if self.edges[e][0] == v else 1)

    @cached_property
    def _rot(self):
        nxt, prv = {}, {}
        for v, rot in self.rotations.items():
            darts = [self.dart(e, v) for e in rot]
            for a, b in zip(darts, darts[1:] + darts[:1]):
                nxt[a], prv[b] = b, a
        return nxt, prv

    def next_ccw(self, d: int) -> int:
        return self._rot[0][d]

    def prev_ccw(self, d: int) -> int:
        return self._rot[1][d]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face walks on the sphere (twin then rotation-inverse), face to the left."""
        return _orbits(range(2 * len(self.edges)), lambda d: self.prev_ccw(d ^ 1))

    @cached_property
    def components(self) -> tuple[frozenset, ...]:
        uf = _UnionFind(self.vertices)
        for u, v in self.edges:
            uf.union(u, v)
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(uf.find(v), set()).add(v)
        return tuple(frozenset(g) for g in groups.values())

    @cached_property
    def disk(self) -> "_DiskMap":
        return _DiskMap(self)

    def infinite_edges(self) -> list[int]:
        return [e for e, x in enumerate(self.x) if x == 1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": list(self.vertices),
            "boundary": list(self.boundary),
            "edges": [{"u": u, "v": v, "x": format_rational(x)}
                      for (u, v), x in zip(self.edges, self.x)],
            "rotations": {v: list(self.rotations[v]) for v in self.vertices},
        }

    def with_couplings(self, x: Sequence) -> "PlanarNetwork":
        x = [parse_rational(t) for t in x]
        return _checked(PlanarNetwork(self.vertices, self.boundary, self.edges, x,
                                      self.rotations, self.labels))


def _orbits(items: Iterable, step) -> tuple[tuple, ...]:
    seen, out = set(), []
    for d in items:
        if d in seen:
            continue
        orbit = []
        while d not in seen:
            seen.add(d)
            orbit.append(d)
            d = step(d)
        out.append(tuple(orbit))
    return tuple(out)


class _DiskMap:
    """The network plus n boundary arcs, as a planar map on the sphere.

    Arc i has darts ``A + 2i`` (leaving b_i toward b_{i+1}) and ``A + 2i + 1``.
    """

    def __init__(self, net: PlanarNetwork):
        self.net = net
        n, m = net.n, len(net.edges)
        self.first_arc = base = 2 * m
        self.origin = {d: net.origin(d) for d in range(2 * m)}
        nxt, prv = {}, {}
        for v in net.vertices:
            darts = [net.dart(e, v) for e in net.rotations[v]]
            if net.is_boundary(v):
                i = net.boundary_index(v)
                out_arc, in_arc = base + 2 * i, base + 2 * ((i - 1) % n) + 1
                self.origin[out_arc] = self.origin[in_arc] = v
                darts = [out_arc] + darts + [in_arc]
            for a, b in zip(darts, darts[1:] + darts[:1]):
                nxt[a], prv[b] = b, a
        self.nxt, self.prv = nxt, prv
        self.darts = tuple(range(2 * m + 2 * n))

    def is_arc(self, d) -> bool:
        return d >= self.first_arc

    def face_step(self, d):
        return self.prv[d ^ 1]

    @cached_property
    def faces(self):
        return _orbits(self.darts, self.face_step)

    @cached_property
    def face_of(self):
        return {d: k for k, f in enumerate(self.faces) for d in f}

    @property
    def outer(self) -> int:
        return self.face_of[self.first_arc + 1]

    def regions(self):
        """Faces inside the disk, as dart tuples."""
        return [f for k, f in enumerate(self.faces) if k != self.outer]

    def corners(self, face):
        """(vertex, dart after which a new dart is inserted) for each corner of a face."""
        return [(self.origin[d], d) for d in face]


def _checked(net: PlanarNetwork) -> PlanarNetwork:
    for e, ((u, v), x) in enumerate(zip(net.edges, net.x)):
        if u == v:
            raise LoopEdge(f"edge {e} is a loop at {u}")
        if not 0 < x <= 1:
            raise CouplingOutOfRange(f"edge {e} has x = {format_rational(x)}, outside (0, 1]")
    incident: dict = {v: [] for v in net.vertices}
    for e, (u, v) in enumerate(net.edges):
        incident[u].append(e)
        incident[v].append(e)
    for v in net.vertices:
        if sorted(net.rotations[v]) != sorted(incident[v]):
            raise RotationError(f"rotation at {v} lists {list(net.rotations[v])}, "
                                f"incident edges are {incident[v]}")
        if not net.is_boundary(v) and len(incident[v]) < 2:
            raise ValidationError(f"interior vertex {v} has degree {len(incident[v])}")

    boundary_comp = set()
    for comp in net.components:
        comp_edges = [e for e, (u, _) in enumerate(net.edges) if u in comp]
        darts = [d for e in comp_edges for d in (2 * e, 2 * e + 1)]
        if comp_edges:
            faces = _orbits(darts, lambda d: net.prev_ccw(d ^ 1))
            if len(comp) - len(comp_edges) + len(faces) != 2:
                raise EulerViolation(f"component containing {min(comp)} is not planar: "
                                     f"V-E+F = {len(comp) - len(comp_edges) + len(faces)}")
        if any(net.is_boundary(v) for v in comp):
            boundary_comp |= comp

    disk = net.disk
    darts = [d for d in disk.darts if disk.origin[d] in boundary_comp]
    faces = _orbits(darts, disk.face_step)
    v_count = len(boundary_comp)
    e_count = len(darts) // 2
    if v_count - e_count + len(faces) != 2:
        raise BadBoundaryOrder(f"boundary {list(net.boundary)} is not in counterclockwise "
                               f"order on the outer face")
    return net


def validate_network(raw: Mapping) -> PlanarNetwork:
    """Build a `PlanarNetwork` from a JSON-like description and check every invariant."""
    try:
        vertices = [str(v) for v in raw["vertices"]]
        boundary = [str(b) for b in raw["boundary"]]
        edges_raw = raw["edges"]
        rotations_raw = raw.get("rotations", {})
    except (KeyError, TypeError) as exc:
        raise ParseError(f"network description is missing field {exc}") from None
    if len(set(vertices)) != len(vertices):
        raise ValidationError("vertex names repeat")
    if len(set(boundary)) != len(boundary) or not set(boundary) <= set(vertices):
        raise ValidationError("boundary must list distinct vertices")
    if "n" in raw and int(raw["n"]) != len(boundary):
        raise ValidationError(f"n = {raw['n']} but {len(boundary)} boundary vertices given")
    if not boundary:
        raise ValidationError("at least one boundary vertex is required")
    edges, xs = [], []
    for e, item in enumerate(edges_raw):
        try:
            u, v = str(item["u"]), str(item["v"])
        except (KeyError, TypeError):
            raise ParseError(f"edge {e} needs fields u and v") from None
        if u not in vertices or v not in vertices:
            raise ValidationError(f"edge {e} uses an unknown vertex")
        edges.append((u, v))
        xs.append(parse_rational(item.get("x", "1/2")))
    rotations = {}
    for v in vertices:
        rot = rotations_raw.get(v, [])
        try:
            rotations[v] = tuple(int(e) for e in rot)
        except (TypeError, ValueError):
            raise ParseError(f"rotation at {v} must be a list of edge indices") from None
        if any(not 0 <= e < len(edges) for e in rotations[v]):
            raise RotationError(f"rotation at {v} names a missing edge")
    unknown = set(rotations_raw) - set(vertices)
    if unknown:
        raise RotationError(f"rotation given for unknown vertices {sorted(unknown)}")
    for e, (u, v) in enumerate(edges):
        if u == v:
            raise LoopEdge(f"edge {e} is a loop at {u}")
    return _checked(PlanarNetwork(vertices, boundary, edges, xs, rotations))


def network_from_coordinates(positions: Mapping[str, tuple], boundary: Sequence[str],
                             edges: Sequence[tuple]) -> PlanarNetwork:
    """Straight-line drawing to rotation system; the disk is centred at the origin.

    ``edges`` holds ``(u, v, x)`` triples.  Convenient for hand-made test data.
    """
    incident: dict = {v: [] for v in positions}
    for e, (u, v, _) in enumerate(edges):
        incident[u].append(e)
        incident[v].append(e)

    def angle(v, w):
        (x0, y0), (x1, y1) = positions[v], positions[w]
        return math.atan2(y1 - y0, x1 - x0)

    rotations = {}
    for v, inc in incident.items():
        ref = math.atan2(positions[v][1], positions[v][0]) if v in boundary else 0.0

        def key(e, v=v, ref=ref):
            u, w, _ = edges[e]
            return (angle(v, w if u == v else u) - ref) % (2 * math.pi)

        rotations[v] = sorted(inc, key=key)
    return validate_network({
        "vertices": list(positions), "boundary": list(boundary),
        "edges": [{"u": u, "v": v, "x": x} for u, v, x in edges], "rotations": rotations,
    })


# duality

def dual_coupling(x):
    """x* = (1 - x)/(1 + x), i.e. sinh(2J) sinh(2J*) = 1."""
    return (1 - x) / (1 + x)


def dual_network(net: PlanarNetwork) -> PlanarNetwork:
    """Kramers-Wannier dual; b*_i sits on the boundary arc from b_i to b_{i+1}.

    Dual edges of infinite couplings have x* = 0 and are dropped.
    """
    if len(net.components) != 1:
        raise Disconnected("the dual is only defined for connected networks")
    disk = net.disk
    n = net.n
    names, walks = {}, {}
    interior = 0
    for k, face in enumerate(disk.faces):
        if k == disk.outer:
            continue
        arcs = [d for d in face if disk.is_arc(d)]
        if arcs:
            (a,) = arcs
            i = (a - disk.first_arc) // 2
            names[k] = f"{net.boundary[i]}*"
            start = face.index(a) + 1
            face = face[start:] + face[:start]
        else:
            interior += 1
            names[k] = f"f{interior}"
        walks[k] = [d for d in face if not disk.is_arc(d)]
    boundary = [names[disk.face_of[disk.first_arc + 2 * i]] for i in range(n)]
    kept = [e for e in range(len(net.edges)) if net.x[e] < 1]
    new_index = {e: j for j, e in enumerate(kept)}
    edges = [(names[disk.face_of[2 * e]], names[disk.face_of[2 * e + 1]]) for e in kept]
    xs = [dual_coupling(net.x[e]) for e in kept]
    rotations = {names[k]: [new_index[d >> 1] for d in walk if (d >> 1) in new_index]
                 for k, walk in walks.items()}
    vertices = boundary + sorted((v for v in rotations if v not in boundary),
                                 key=lambda s: int(s[1:]))
    labels = [net.labels[e] for e in kept]
    vertices, edges, xs, rotations, labels = _prune_pendants(
        vertices, set(boundary), edges, xs, rotations, labels)
    return _checked(PlanarNetwork(vertices, boundary, edges, xs, rotations, labels))


def _prune_pendants(vertices, boundary, edges, xs, rotations, labels):
    # dropping x* = 0 edges can strand interior faces; a pendant or isolated
    # interior spin leaves every boundary correlation unchanged
    while True:
        bad = [v for v in vertices if v not in boundary and len(rotations[v]) <= 1]
        if not bad:
            return vertices, edges, xs, rotations, labels
        gone = {e for v in bad for e in rotations[v]}
        keep = [e for e in range(len(edges)) if e not in gone]
        idx = {e: j for j, e in enumerate(keep)}
        vertices = [v for v in vertices if v not in bad]
        rotations = {v: [idx[e] for e in rotations[v] if e in idx] for v in vertices}
        edges = [edges[e] for e in keep]
        xs = [xs[e] for e in keep]
        labels = [labels[e] for e in keep]


# edits used by the inverse solver

def remove_edge(net: PlanarNetwork, e: int) -> PlanarNetwork:
    keep = [f for f in range(len(net.edges)) if f != e]
    idx = {f: j for j, f in enumerate(keep)}
    rotations = {v: [idx[f] for f in rot if f != e] for v, rot in net.rotations.items()}
    return _checked(PlanarNetwork(net.vertices, net.boundary, [net.edges[f] for f in keep],
                                  [net.x[f] for f in keep], rotations,
                                  [net.labels[f] for f in keep]))


def contract_spike(net: PlanarNetwork, e: int) -> PlanarNetwork:
    """Contract a pendant edge b_k - v; v becomes the k-th boundary vertex."""
    u, v = net.edges[e]
    if net.is_boundary(v):
        u, v = v, u
    if not net.is_boundary(u) or net.degree(u) != 1 or net.is_boundary(v):
        raise ValidationError(f"edge {e} is not a boundary spike")
    keep = [f for f in range(len(net.edges)) if f != e]
    idx = {f: j for j, f in enumerate(keep)}
    rot_v = list(net.rotations[v])
    p = rot_v.index(e)
    rot_v = rot_v[p + 1:] + rot_v[:p]
    rotations = {w: [idx[f] for f in rot if f != e] for w, rot in net.rotations.items() if w != u}
    rotations[v] = [idx[f] for f in rot_v]
    boundary = [v if b == u else b for b in net.boundary]
    vertices = [w for w in net.vertices if w != u]
    return _checked(PlanarNetwork(vertices, boundary, [net.edges[f] for f in keep],
                                  [net.x[f] for f in keep], rotations,
                                  [net.labels[f] for f in keep]))


# medial pairings

def crosses(p, q) -> bool:
    a, b = sorted(p)
    c, d = sorted(q)
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True, order=True)
class MedialPairing:
    """A perfect matching of [2n], stored as sorted pairs."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, pairs: Iterable[Iterable[int]]) -> "MedialPairing":
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        flat = sorted(i for p in norm for i in p)
        if any(len(p) != 2 for p in norm) or flat != list(range(1, len(flat) + 1)):
            raise ValidationError(f"{norm} is not a perfect matching of [2n]")
        return cls(norm)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def partner(self, i: int) -> int:
        for a, b in self.pairs:
            if i == a:
                return b
            if i == b:
                return a
        raise KeyError(i)

    def involution(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return out

    def xing(self) -> int:
        return sum(crosses(p, q) for p, q in combinations(self.pairs, 2))

    def to_json(self):
        return [list(p) for p in self.pairs]


def uncross(tau: MedialPairing, p, q):
    """Resolve a crossing of ``p`` and ``q`` both ways; flags mark covering relations."""
    p, q = tuple(sorted(p)), tuple(sorted(q))
    if p not in tau.pairs or q not in tau.pairs:
        raise ValidationError(f"{p} and {q} must both belong to the pairing")
    if not crosses(p, q):
        raise NotCrossing(f"{p} and {q} do not cross")
    (a, b), (c, d) = sorted([p, q])  # a < c < b < d
    rest = [r for r in tau.pairs if r not in (p, q)]
    t1 = MedialPairing.of(rest + [(a, d), (c, b)])
    t2 = MedialPairing.of(rest + [(a, c), (b, d)])
    x = tau.xing()
    return t1, t2, (t1.xing() + 1 == x, t2.xing() + 1 == x)


def _all_pairings(points):
    if not points:
        yield ()
        return
    a = points[0]
    for j in range(1, len(points)):
        for tail in _all_pairings(points[1:j] + points[j + 1:]):
            yield ((a, points[j]),) + tail


@cache
def uncrossing_poset(n: int):
    """All matchings of [2n] and the covering pairs (lower, upper)."""
    elements = sorted(MedialPairing.of(m) for m in _all_pairings(list(range(1, 2 * n + 1))))
    covers = set()
    for tau in elements:
        for p, q in combinations(tau.pairs, 2):
            if crosses(p, q):
                t1, t2, flags = uncross(tau, p, q)
                for t, ok in zip((t1, t2), flags):
                    if ok:
                        covers.add((t, tau))
    return tuple(elements), tuple(sorted(covers))


def i_min_max(tau: MedialPairing, i: int):
    """Split each pair by the cyclic order starting at i: (I_min, I_max), sorted."""
    m = 2 * tau.n
    pos = lambda a: (a - i) % m
    lo, hi = [], []
    for a, b in tau.pairs:
        first, second = (a, b) if pos(a) < pos(b) else (b, a)
        lo.append(first)
        hi.append(second)
    return tuple(sorted(lo)), tuple(sorted(hi))


# medial graphs

class MedialGraph:
    """Degree-4 medial graph with 2n boundary leaves.

    Interior vertex ``v`` has four ports ``(v, 0..3)`` in counterclockwise
    order; boundary leaves are ``("d", i)``.  ``link`` pairs endpoints into
    medial edges.  Strands go straight, from port k to port k + 2.
    """

    def __init__(self, n, interior, link, coupling=None, loops=0):
        self.n = n
        self.interior = tuple(interior)
        self.link = dict(link)
        self.coupling = dict(coupling or {})
        self.loops = loops

    def __repr__(self):
        return f"MedialGraph(n={self.n}, interior={len(self.interior)})"

    def edges(self):
        """Medial edges as endpoint pairs, each listed once, deterministic order."""
        seen, out = set(), []
        order = [("d", i) for i in range(1, 2 * self.n + 1)]
        order += [(v, k) for v in self.interior for k in range(4)]
        for a in order:
            if a in seen:
                continue
            b = self.link[a]
            seen.add(a)
            seen.add(b)
            out.append((a, b))
        return out

    @cached_property
    def _strands(self):
        pairs, visited = [], set()
        for i in range(1, 2 * self.n + 1):
            cur = self.link[("d", i)]
            while cur[0] != "d":
                visited.add(cur)
                nxt = (cur[0], (cur[1] + 2) % 4)
                visited.add(nxt)
                cur = self.link[nxt]
            if i < cur[1]:
                pairs.append((i, cur[1]))
        closed = 0
        for v in self.interior:
            for k in range(4):
                if (v, k) in visited:
                    continue
                closed += 1
                cur = (v, k)
                while cur not in visited:
                    visited.add(cur)
                    opp = (cur[0], (cur[1] + 2) % 4)
                    visited.add(opp)
                    cur = self.link[opp]
        return MedialPairing.of(pairs), closed

    def closed_strands(self) -> int:
        return self._strands[1] + self.loops


def _splice(link, v, p, q):
    a, b = link[(v, p)], link[(v, q)]
    if a == (v, q):
        return 1  # the two ports close up into a loop without vertices
    link[a], link[b] = b, a
    return 0


def medial_graph(net: PlanarNetwork) -> MedialGraph:
    """Medial graph with one vertex per finite edge; infinite edges are uncrossed.

    For ``e = (u, w)`` the ports are: 0 = corner at u after e, 1 = corner at u
    before e, 2 = corner at w after e, 3 = corner at w before e (ccw order).
    """
    link = {}

    def port(e, v, after):
        at_first = net.edges[e][0] == v
        return (e, (0 if after else 1) if at_first else (2 if after else 3))

    def join(a, b):
        link[a], link[b] = b, a

    for v in net.vertices:
        rot = net.rotations[v]
        if net.is_boundary(v):
            i = net.boundary_index(v) + 1
            d_odd, d_even = ("d", 2 * i - 1), ("d", 2 * i)
            if not rot:
                join(d_odd, d_even)
                continue
            join(d_odd, port(rot[-1], v, True))
            join(d_even, port(rot[0], v, False))
            pairs = zip(rot, rot[1:])
        else:
            pairs = zip(rot, rot[1:] + rot[:1])
        for e, f in pairs:
            join(port(e, v, True), port(f, v, False))

    loops = 0
    for e in net.infinite_edges():
        # same-face ports join: 0 with 3 and 1 with 2
        loops += _splice(link, e, 0, 3)
        loops += _splice(link, e, 1, 2)
        for k in range(4):
            link.pop((e, k), None)
    interior = [e for e in range(len(net.edges)) if net.x[e] < 1]
    return MedialGraph(net.n, interior, link, {e: net.x[e] for e in interior}, loops)


def medial_pairing(g: MedialGraph, strict: bool = False) -> MedialPairing:
    """Pair d_i with d_j along strands; closed strands raise only when ``strict``."""
    tau, closed = g._strands
    if strict and closed + g.loops:
        raise StrandCycle(f"{closed + g.loops} strand(s) never reach the boundary")
    return tau


def xing_and_reduced(obj) -> tuple[int, bool]:
    g = medial_graph(obj) if isinstance(obj, PlanarNetwork) else obj
    tau = medial_pairing(g)
    x = tau.xing()
    return x, len(g.interior) == x


# standard reduced medial graph of a pairing

def _circle_point(t: Fraction):
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _ccw_cmp(a, b):
    half = lambda v: 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    c = _cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def standard_medial_graph(tau: MedialPairing, coupling=None) -> MedialGraph:
    """Reduced medial graph of ``tau`` from straight chords between points on a circle.

    Points sit on the unit circle at exact rational coordinates; they are
    nudged until no three chords meet, so every crossing is a degree-4 vertex.
    """
    n = tau.n
    chords = list(tau.pairs)  # sorted by smaller endpoint
    t = [Fraction(0)] + [Fraction(4 * i - 4 * n - 2, 2 * n) for i in range(1, 2 * n + 1)]
    bump = 0
    while True:
        pts = {i: _circle_point(t[i]) for i in range(1, 2 * n + 1)}
        hits = {}
        for a, b in combinations(range(len(chords)), 2):
            if crosses(chords[a], chords[b]):
                p1, p2 = pts[chords[a][0]], pts[chords[a][1]]
                p3, p4 = pts[chords[b][0]], pts[chords[b][1]]
                s = _cross(_sub(p3, p1), _sub(p4, p3)) / _cross(_sub(p2, p1), _sub(p4, p3))
                point = (p1[0] + s * (p2[0] - p1[0]), p1[1] + s * (p2[1] - p1[1]))
                hits.setdefault(point, []).append((a, b))
        if all(len(v) == 1 for v in hits.values()):
            break
        bump += 1
        for i in range(1, 2 * n + 1):
            t[i] += Fraction(i * i, 101 * bump + 7) / 97

    vertices = sorted((ab[0], pt) for pt, ab in hits.items())
    ports, along = {}, {c: [] for c in range(len(chords))}
    for v, (ab, point) in enumerate(vertices):
        ends = []
        for c in ab:
            for end in chords[c]:
                ends.append((c, end))
        order = sorted(ends, key=cmp_to_key(lambda p, q: _ccw_cmp(_sub(pts[p[1]], point),
                                                                  _sub(pts[q[1]], point))))
        for k, (c, end) in enumerate(order):
            ports[(v, c, end)] = k
        for c in ab:
            a_end = pts[chords[c][0]]
            dist = (point[0] - a_end[0]) ** 2 + (point[1] - a_end[1]) ** 2
            along[c].append((dist, v))
    link = {}
    for c, (a, b) in enumerate(chords):
        prev = ("d", a)
        for _, v in sorted(along[c]):
            here = (v, ports[(v, c, a)])
            link[prev], link[here] = here, prev
            prev = (v, ports[(v, c, b)])
        link[prev], link[("d", b)] = ("d", b), prev
    interior = list(range(len(vertices)))
    cpl = {v: coupling for v in interior} if coupling is not None else {}
    return MedialGraph(n, interior, link, cpl)
