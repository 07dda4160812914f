"""Random planar networks for property tests and demos.

Networks grow from an empty disk by two moves: draw a chord between two
corners of one region, or subdivide an edge.  Both keep the drawing planar
and keep every component attached to the boundary.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .planar_core import PlanarNetwork, _checked, xing_and_reduced

__all__ = ["random_coupling", "random_network", "random_reduced_network", "empty_network"]


def random_coupling(rng: random.Random, max_den: int = 9, p_infinite: float = 0.0) -> Fraction:
    if rng.random() < p_infinite:
        return Fraction(1)
    q = rng.randint(2, max_den)
    return Fraction(rng.randint(1, q - 1), q)


def empty_network(n: int) -> PlanarNetwork:
    b = [f"b{i}" for i in range(1, n + 1)]
    return _checked(PlanarNetwork(b, b, [], [], {}))


def _add_chord(net: PlanarNetwork, rng, x) -> PlanarNetwork | None:
    disk = net.disk
    regions = [f for f in disk.regions() if len({disk.origin[d] for d in f}) > 1]
    if not regions:
        return None
    face = rng.choice(regions)
    d1, d2 = rng.sample(face, 2)
    u, v = disk.origin[d1], disk.origin[d2]
    if u == v:
        return None
    e = len(net.edges)
    rotations = {w: list(r) for w, r in net.rotations.items()}
    for w, d in ((u, d1), (v, d2)):
        rot = rotations[w]
        pos = 0 if disk.is_arc(d) else rot.index(d >> 1) + 1
        rot.insert(pos, e)
    return _checked(PlanarNetwork(net.vertices, net.boundary, net.edges + ((u, v),),
                                  net.x + (x,), rotations))


def _add_star(net: PlanarNetwork, rng, x) -> PlanarNetwork | None:
    """New interior vertex inside a region, joined to three of its corners."""
    disk = net.disk
    face = rng.choice(disk.regions())
    corners, seen = [], set()
    for d in face:
        v = disk.origin[d]
        if v not in seen:
            seen.add(v)
            corners.append(d)
    if len(corners) < 3:
        return None
    picked = sorted(rng.sample(range(len(corners)), 3))
    k = 1
    while f"v{k}" in net.vertices:
        k += 1
    w = f"v{k}"
    rotations = {t: list(r) for t, r in net.rotations.items()}
    edges, xs = list(net.edges), list(net.x)
    rotations[w] = []
    for j, c in enumerate(picked):
        d = corners[c]
        u = disk.origin[d]
        e = len(edges)
        edges.append((w, u))
        xs.append(x if j == 0 else random_coupling(rng))
        rot = rotations[u]
        rot.insert(0 if disk.is_arc(d) else rot.index(d >> 1) + 1, e)
        rotations[w].append(e)
    return _checked(PlanarNetwork(net.vertices + (w,), net.boundary, edges, xs, rotations))


def _subdivide(net: PlanarNetwork, rng, x) -> PlanarNetwork | None:
    if not net.edges:
        return None
    e = rng.randrange(len(net.edges))
    u, v = net.edges[e]
    k = 1
    while f"v{k}" in net.vertices:
        k += 1
    w = f"v{k}"
    f = len(net.edges)
    edges = list(net.edges)
    edges[e] = (u, w)
    edges.append((w, v))
    rotations = {t: list(r) for t, r in net.rotations.items()}
    rotations[v] = [f if g == e else g for g in rotations[v]]
    rotations[w] = [e, f]
    return _checked(PlanarNetwork(net.vertices + (w,), net.boundary, edges, net.x + (x,),
                                  rotations))


def random_network(rng: random.Random, n: int, max_edges: int = 6, max_vertices: int = 10,
                   p_infinite: float = 0.1, connected: bool = False,
                   steps: int | None = None) -> PlanarNetwork:
    """A random network with n boundary vertices and couplings p/q, q <= 9."""
    for _ in range(1000):
        net = empty_network(n)
        target = rng.randint(0, max_edges) if steps is None else steps
        tries = 0
        while len(net.edges) < target and tries < 50:
            tries += 1
            x = random_coupling(rng, p_infinite=p_infinite)
            roll = rng.random()
            if len(net.vertices) < max_vertices and roll < 0.2:
                grow = _subdivide
            elif len(net.vertices) < max_vertices and len(net.edges) + 3 <= max_edges and roll < 0.5:
                grow = _add_star
            else:
                grow = _add_chord
            net = grow(net, rng, x) or net
        if not connected or len(net.components) == 1:
            return net
    raise RuntimeError("could not generate a connected network")


def random_reduced_network(rng: random.Random, n: int, max_edges: int = 6,
                           max_vertices: int = 10) -> PlanarNetwork:
    """A reduced network with finite couplings and at least one edge.

    Grows one move at a time and discards moves that break reducedness.
    """
    for _ in range(1000):
        net = empty_network(n)
        target = rng.randint(1, max_edges)
        for _ in range(60):
            if len(net.edges) >= target:
                break
            room = len(net.vertices) < max_vertices and len(net.edges) + 3 <= max_edges
            grow = _add_star if room and rng.random() < 0.5 else _add_chord
            cand = grow(net, rng, random_coupling(rng))
            if cand is not None and len(cand.edges) <= max_edges and xing_and_reduced(cand)[1]:
                net = cand
        if net.edges:
            return net
    raise RuntimeError("could not generate a reduced network")
