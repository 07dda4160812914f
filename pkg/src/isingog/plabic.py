"""Bipartite plabic graphs built from medial graphs, and their dimers.

Every medial edge is oriented so that each interior medial vertex has two
incoming and two outgoing edges, alternating around it.  Each medial edge
becomes a unit-weight leg whose source end is white and target end black;
each interior vertex becomes a square with weights s, c, s, c.

Plabic vertices are boundary leaves ``("d", i)`` and ports ``(v, k)`` (the
end of a leg at medial vertex v).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Iterator

from .errors import NoBridge, NoMatchings, OrientationFailure
from .grassmann_exact import (DecoratedPermutation, GrassmannPoint, colex_subsets,
                              point_from_pluecker)
from .planar_core import MedialGraph, format_rational

__all__ = ["PlabicGraph", "AlmostPerfectMatching", "Bridge", "plabic_from_medial",
           "enumerate_apm", "boundary_pluecker", "boundary_measurement", "strand_permutation",
           "bridge_ops", "remove_degree_two", "sc_weights", "orient_medial"]

WHITE, BLACK = "white", "black"


def sc_weights(x: Fraction) -> tuple[Fraction, Fraction]:
    """(s, c) with s^2 + c^2 = 1, from the coupling x = tanh J."""
    d = 1 + x * x
    return (1 - x * x) / d, 2 * x / d


@dataclass
class PlabicGraph:
    n: int
    color: dict
    edges: list  # (u, w, weight)
    rotation: dict  # vertex -> ccw list of edge indices

    @property
    def boundary(self) -> list:
        return [("d", i) for i in range(1, 2 * self.n + 1)]

    @property
    def vertices(self) -> list:
        return list(self.color)

    @property
    def interior(self) -> list:
        return [v for v in self.color if v[0] != "d"]

    def other(self, e: int, v):
        u, w, _ = self.edges[e]
        return w if u == v else u

    def next_ccw(self, v, e):
        rot = self.rotation[v]
        return rot[(rot.index(e) + 1) % len(rot)]

    def prev_ccw(self, v, e):
        rot = self.rotation[v]
        return rot[(rot.index(e) - 1) % len(rot)]

    @cached_property
    def incident(self) -> dict:
        inc = {v: [] for v in self.color}
        for e, (u, w, _) in enumerate(self.edges):
            inc[u].append(e)
            inc[w].append(e)
        return inc

    def copy_with(self, edges=None, rotation=None, color=None) -> "PlabicGraph":
        return PlabicGraph(self.n, dict(color or self.color), list(edges or self.edges),
                           {v: list(r) for v, r in (rotation or self.rotation).items()})

    def to_json(self) -> dict:
        return {
            "boundary": [_name(v) for v in self.boundary],
            "vertices": [{"name": _name(v), "color": c} for v, c in self.color.items()],
            "edges": [{"u": _name(u), "v": _name(w), "w": format_rational(wt)}
                      for u, w, wt in self.edges],
        }


def _name(v) -> str:
    return f"d{v[1]}" if v[0] == "d" else f"p{v[0]}.{v[1]}"


def orient_medial(g: MedialGraph) -> dict:
    """'out' or 'in' for every medial endpoint, as seen from its own vertex.

    Odd boundary leaves are sources; at interior vertices opposite ports
    agree and neighbouring ports disagree.
    """
    dirs: dict = {}
    flip = {"in": "out", "out": "in"}
    queue = deque()

    def assign(p, d):
        if p in dirs:
            if dirs[p] != d:
                raise OrientationFailure(f"conflicting orientation at {p}")
            return
        dirs[p] = d
        queue.append(p)

    def drain():
        while queue:
            p = queue.popleft()
            assign(g.link[p], flip[dirs[p]])
            if p[0] != "d":
                v, k = p
                for j in range(4):
                    assign((v, j), dirs[p] if (j - k) % 2 == 0 else flip[dirs[p]])

    for i in range(1, 2 * g.n + 1):
        assign(("d", i), "out" if i % 2 else "in")
        drain()
    for v in g.interior:
        if (v, 0) not in dirs:
            assign((v, 0), "out")
            drain()
    return dirs


def plabic_from_medial(g: MedialGraph, coupling: dict | None = None) -> PlabicGraph:
    """The weighted plabic graph of a medial graph (couplings in (0, 1])."""
    coupling = coupling if coupling is not None else g.coupling
    dirs = orient_medial(g)
    color, edges, rotation = {}, [], {}
    for i in range(1, 2 * g.n + 1):
        color[("d", i)] = WHITE if i % 2 else BLACK
    for v in g.interior:
        for k in range(4):
            color[(v, k)] = WHITE if dirs[(v, k)] == "out" else BLACK
    leg_of = {}
    for a, b in g.edges():
        leg_of[a] = leg_of[b] = len(edges)
        edges.append((a, b, Fraction(1)))
    for a in color:
        rotation[a] = [leg_of[a]]
    for v in g.interior:
        s, c = sc_weights(coupling[v])
        k0 = next(k for k in range(4) if dirs[(v, k)] == "in")
        sq = {}
        for j, w in enumerate((s, c, s, c)):
            a, b = (v, (k0 + j) % 4), (v, (k0 + j + 1) % 4)
            sq[(a, b)] = len(edges)
            edges.append((a, b, w))
        for k in range(4):
            here, nxt, prv = (v, k), (v, (k + 1) % 4), (v, (k - 1) % 4)
            to_next = sq.get((here, nxt), sq.get((nxt, here)))
            to_prev = sq.get((here, prv), sq.get((prv, here)))
            rotation[here] += [to_next, to_prev]
    return PlabicGraph(g.n, color, edges, rotation)


@dataclass(frozen=True)
class AlmostPerfectMatching:
    edges: tuple[int, ...]
    boundary: tuple[int, ...]
    weight: Fraction


def enumerate_apm(G: PlabicGraph) -> Iterator[AlmostPerfectMatching]:
    """All almost perfect matchings, interior vertices covered exactly once.

    Backtracks on the uncovered interior vertex with the fewest options.
    """
    interior = set(G.interior)
    direct = [e for e, (u, w, _) in enumerate(G.edges) if u[0] == "d" and w[0] == "d"]
    covered: set = set()
    chosen: list[int] = []

    def options(v):
        return [e for e in G.incident[v] if G.other(e, v) not in covered]

    def rec():
        todo = [v for v in interior if v not in covered]
        if not todo:
            # edges joining two boundary leaves are optional and disjoint
            free = [e for e in direct if not {G.edges[e][0], G.edges[e][1]} & covered]
            for mask in range(1 << len(free)):
                extra = [e for k, e in enumerate(free) if mask >> k & 1]
                hit = covered | {v for e in extra for v in G.edges[e][:2]}
                b = tuple(i for i in range(1, 2 * G.n + 1)
                          if (("d", i) in hit) == (i % 2 == 0))
                edges = chosen + extra
                wt = prod((G.edges[e][2] for e in edges), start=Fraction(1))
                yield AlmostPerfectMatching(tuple(sorted(edges)), b, wt)
            return
        v = min(todo, key=lambda u: (len(options(u)), G.vertices.index(u)))
        for e in sorted(options(v)):
            w = G.other(e, v)
            covered.update((v, w))
            chosen.append(e)
            yield from rec()
            chosen.pop()
            covered.difference_update((v, w))

    yield from rec()


def boundary_pluecker(G: PlabicGraph) -> dict[tuple[int, ...], Fraction]:
    """Sum of matching weights per boundary set of size n."""
    pl: dict = {}
    for A in enumerate_apm(G):
        if len(A.boundary) == G.n:
            pl[A.boundary] = pl.get(A.boundary, 0) + A.weight
    if not any(pl.values()):
        raise NoMatchings("the plabic graph has no almost perfect matching")
    return pl


def boundary_measurement(G: PlabicGraph) -> GrassmannPoint:
    pl = boundary_pluecker(G)
    full = {I: Fraction(pl.get(I, 0)) for I in colex_subsets(2 * G.n, G.n)}
    return point_from_pluecker(full, G.n, 2 * G.n)


def _strand_step(G: PlabicGraph, v, e):
    """Arrive at v along e; return the edge the strand leaves by."""
    return G.next_ccw(v, e) if G.color[v] == BLACK else G.prev_ccw(v, e)


def _trace(G: PlabicGraph):
    """Strands as lists of (edge, start vertex) darts, then the closed ones."""
    used, open_, closed = set(), [], []
    for i in range(1, 2 * G.n + 1):
        v = ("d", i)
        (e,) = G.rotation[v]
        path = []
        while True:
            path.append((e, v))
            used.add((e, v))
            v = G.other(e, v)
            if v[0] == "d":
                break
            e = _strand_step(G, v, e)
        open_.append((i, v[1], path))
    for e, (a, b, _) in enumerate(G.edges):
        for start in (a, b):
            if (e, start) in used:
                continue
            path, cur, v = [], e, start
            while (cur, v) not in used:
                path.append((cur, v))
                used.add((cur, v))
                v = G.other(cur, v)
                cur = _strand_step(G, v, cur)
            closed.append(path)
    return open_, closed


def strand_permutation(G: PlabicGraph):
    """Strand permutation and whether the graph is reduced."""
    strands, closed = _trace(G)
    images = [0] * (2 * G.n)
    colors = []
    for i, j, path in strands:
        images[i - 1] = j
        if i == j:
            colors.append((i, G.color[G.other(path[0][0], ("d", i))]))
    reduced = not closed
    edge_lists = [[e for e, _ in path] for _, _, path in strands]
    for edges in edge_lists:
        if len(set(edges)) != len(edges):
            reduced = False
    for a, b in combinations(edge_lists, 2):
        shared = set(a) & set(b)
        pos_a = {e: k for k, e in enumerate(a)}
        pos_b = {e: k for k, e in enumerate(b)}
        for e, f in combinations(shared, 2):
            if (pos_a[e] < pos_a[f]) == (pos_b[e] < pos_b[f]):
                reduced = False
    return DecoratedPermutation(tuple(images), tuple(colors)), reduced


@dataclass(frozen=True)
class Bridge:
    i: int
    edge: int
    kind: str  # colour of the interior vertex next to d_i
    t: Fraction
    graph: PlabicGraph = field(compare=False, repr=False)

    def update(self, pl: dict) -> dict:
        """Plücker vector after removing the bridge, from the one before it."""
        return bridge_update(pl, self.i, self.kind, self.t)


def bridge_update(pl: dict, i: int, kind: str, t) -> dict:
    """Remove a bridge of weight t between i and i+1 at the level of minors.

    Black: Δ_I -= t Δ_{I - i + (i+1)} for i in I, i+1 not in I.
    White: Δ_I -= t Δ_{I - (i+1) + i} for i+1 in I, i not in I.
    Indices are mod N; with minors keyed by sorted tuples the twist of the
    cyclic shift cancels the reordering sign, so no sign appears.
    """
    N = max(max(I) for I in pl)
    j = i % N + 1
    src, dst = (i, j) if kind == BLACK else (j, i)
    out = {}
    for I, v in pl.items():
        if src in I and dst not in I:
            J = tuple(sorted(set(I) - {src} | {dst}))
            v = v - t * pl.get(J, 0)
        out[I] = v
    return out


def bridge_ops(G: PlabicGraph, i: int) -> Bridge:
    """Find the length-3 path d_i - a - b - d_{i+1} and remove its middle edge.

    The returned weight is gauge-fixed so that both boundary legs have unit weight.
    """
    N = 2 * G.n
    j = i % N + 1
    (leg_i,) = G.rotation[("d", i)]
    (leg_j,) = G.rotation[("d", j)]
    a, b = G.other(leg_i, ("d", i)), G.other(leg_j, ("d", j))
    if a[0] == "d" or b[0] == "d" or a == b:
        raise NoBridge(f"no bridge between {i} and {j}")
    mids = [e for e in G.incident[a] if G.other(e, a) == b]
    if not mids:
        raise NoBridge(f"no bridge between {i} and {j}")
    e = mids[0]
    t = G.edges[e][2] / (G.edges[leg_i][2] * G.edges[leg_j][2])
    edges = [x for f, x in enumerate(G.edges) if f != e]
    idx = {f: f - (f > e) for f in range(len(G.edges)) if f != e}
    rotation = {v: [idx[f] for f in rot if f != e] for v, rot in G.rotation.items()}
    return Bridge(i, e, G.color[a], t, PlabicGraph(G.n, dict(G.color), edges, rotation))


def remove_degree_two(G: PlabicGraph) -> PlabicGraph:
    """Collapse interior degree-2 vertices whose neighbours are both interior.

    After gauging both edges to weight 1 the two neighbours merge; this
    rescales the Plücker vector by a positive constant only.
    """
    while True:
        target = next((v for v in G.interior if len(G.rotation[v]) == 2
                       and all(G.other(e, v)[0] != "d" for e in G.rotation[v])
                       and G.other(G.rotation[v][0], v) != G.other(G.rotation[v][1], v)), None)
        if target is None:
            return G
        e1, e2 = G.rotation[target]
        a, b = G.other(e1, target), G.other(e2, target)
        w1, w2 = G.edges[e1][2], G.edges[e2][2]
        edges = list(G.edges)
        # gauge at b so that the edge to the target matches w1, then drop the pair
        for f in G.incident[b]:
            u, w, wt = edges[f]
            edges[f] = (u, w, wt * w1 / w2)
        # a absorbs b's other edges, spliced in where e1 was
        rot_a = G.rotation[a]
        pos = rot_a.index(e1)
        rot_b = G.rotation[b]
        pb = rot_b.index(e2)
        spliced = rot_b[pb + 1:] + rot_b[:pb]
        new_rot_a = rot_a[:pos] + spliced + rot_a[pos + 1:]
        for f in spliced:
            u, w, wt = edges[f]
            edges[f] = (a if u == b else u, a if w == b else w, wt)
        keep = [f for f in range(len(edges)) if f not in (e1, e2)]
        idx = {f: k for k, f in enumerate(keep)}
        rotation = {}
        for v, rot in G.rotation.items():
            if v in (b, target):
                continue
            rotation[v] = [idx[f] for f in (new_rot_a if v == a else rot)]
        color = {v: c for v, c in G.color.items() if v not in (b, target)}
        G = PlabicGraph(G.n, color, [edges[f] for f in keep], rotation)
