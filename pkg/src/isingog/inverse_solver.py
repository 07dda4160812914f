"""Recover the couplings of a reduced network from its boundary correlations.

Each round finds a boundary spike or boundary edge whose removal leaves a
reduced network, reads its weight off a ratio of two minors of the doubled
matrix, then strips the corresponding 2x2 block from the point and repeats.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (DegenerateBlock, Inconsistent, NoEdges, NotReduced, ValidationError,
                     ZeroDenominator)
from .grassmann_exact import (GrassmannPoint, colex_subsets, correlations_from_minors,
                              doubled_matrix)
from .ising_exact import CorrelationMatrix
from .planar_core import (MedialPairing, PlanarNetwork, _checked, contract_spike, format_rational,
                          i_min_max, medial_graph, medial_pairing, remove_edge,
                          xing_and_reduced)

APPROX_TOL = Fraction(1, 10**9)

__all__ = ["PeelStep", "peel_candidates", "find_peelable", "peel_parameter", "peel_step",
           "reconstruct", "x_from_s", "x_from_c", "apply_peel"]


@dataclass(frozen=True)
class PeelStep:
    kind: str  # "spike" or "edge"
    k: int  # 1-based boundary position
    edge: int  # index in the current network
    label: object  # stable edge name from the original network
    s: Fraction | None = None
    c: Fraction | None = None
    x: Fraction | None = None
    vertex: str | None = None  # name of b_k when the step was taken

    @property
    def ktilde(self) -> int:
        return 2 * self.k - 1 if self.kind == "spike" else 2 * self.k

    def to_json(self) -> dict:
        out = {"kind": self.kind, "k": self.k, "ktilde": self.ktilde, "edge": self.label,
               "vertex": self.vertex}
        for name in ("s", "c", "x"):
            v = getattr(self, name)
            if v is not None:
                out[name] = format_rational(v) if isinstance(v, Fraction) else v
        return out


def apply_peel(net: PlanarNetwork, step: PeelStep) -> PlanarNetwork:
    if step.kind == "spike":
        return contract_spike(net, step.edge)
    return remove_edge(net, step.edge)


def peel_candidates(net: PlanarNetwork) -> list[PeelStep]:
    """Every spike or boundary edge whose removal keeps the network reduced.

    Ordered by k, spikes before edges.
    """
    if not net.edges:
        raise NoEdges("nothing left to peel")
    if not xing_and_reduced(net)[1]:
        raise NotReduced("the network is not reduced")
    n = net.n
    out = []
    for k in range(1, n + 1):
        b = net.boundary[k - 1]
        rot = net.rotations[b]
        if len(rot) == 1:
            e = rot[0]
            u, v = net.edges[e]
            other = v if u == b else u
            if not net.is_boundary(other):
                out.append(PeelStep("spike", k, e, net.labels[e]))
        nb = net.boundary[k % n]
        if n > 1 and rot and net.rotations[nb] and rot[0] == net.rotations[nb][-1]:
            e = rot[0]
            if set(net.edges[e]) == {b, nb}:
                out.append(PeelStep("edge", k, e, net.labels[e]))
    return [s for s in out if xing_and_reduced(apply_peel(net, s))[1]]


def find_peelable(net: PlanarNetwork) -> PeelStep:
    steps = peel_candidates(net)
    if not steps:
        raise NotReduced("no boundary spike or boundary edge can be peeled")
    return steps[0]


def peel_parameter(X: GrassmannPoint, tau: MedialPairing, step: PeelStep) -> Fraction:
    """s for a spike, c for a boundary edge, as a ratio of two minors of X."""
    N = X.N
    kt = step.ktilde
    nxt = kt % N + 1
    lo, hi = i_min_max(tau, nxt)
    if step.kind == "spike":
        I = lo
        J = tuple(sorted(set(I) - {nxt} | {kt}))
    else:
        I = hi
        J = tuple(sorted(set(I) - {kt} | {nxt}))
    num, den = X.minor(I), X.minor(J)
    if not den:
        raise ZeroDenominator(f"minor {J} vanishes")
    return num / den


def _exact_sqrt(q: Fraction) -> Fraction:
    if q < 0:
        raise Inconsistent(f"{format_rational(q)} has no real square root")
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a != q.numerator or b * b != q.denominator:
        raise Inconsistent(f"{format_rational(q)} is not the square of a rational")
    return Fraction(a, b)


def _sqrt(q: Fraction, exact: bool) -> Fraction:
    if exact:
        return _exact_sqrt(q)
    if q < 0:
        raise Inconsistent(f"{float(q)} has no real square root")
    return Fraction(math.sqrt(q)).limit_denominator(10**12)


def x_from_s(s: Fraction, exact: bool = True) -> Fraction:
    """Invert s = (1 - x^2)/(1 + x^2)."""
    if not 0 < s < 1:
        raise Inconsistent(f"s = {format_rational(s)} is outside (0, 1)")
    return _sqrt((1 - s) / (1 + s), exact)


def x_from_c(c: Fraction, exact: bool = True) -> tuple[Fraction, Fraction]:
    """Invert c = 2x/(1 + x^2); returns (s, x)."""
    if not 0 < c < 1:
        raise Inconsistent(f"c = {format_rational(c)} is outside (0, 1)")
    s = _sqrt(1 - c * c, exact)
    return s, (1 - s) / c


def peel_step(X: GrassmannPoint, step: PeelStep) -> GrassmannPoint:
    """Right-multiply by the inverse of the 2x2 block adjoining the spike or edge."""
    s, c = step.s, step.c
    if not s or not c:
        raise DegenerateBlock("s and c must both be nonzero")
    N = X.N
    n = N // 2
    kt = step.ktilde
    a, b = kt - 1, kt % N
    if step.kind == "spike":
        diag, off = 1 / c, -s / c
    else:
        diag, off = 1 / s, -c / s
    if kt == N:
        off *= (-1) ** (n - 1)
    rows = []
    for row in X.matrix:
        row = list(row)
        ra, rb = row[a], row[b]
        row[a] = ra * diag + rb * off
        row[b] = ra * off + rb * diag
        rows.append(tuple(row))
    return GrassmannPoint(tuple(rows))


def _component(net: PlanarNetwork, comp) -> PlanarNetwork:
    keep = [e for e, (u, _) in enumerate(net.edges) if u in comp]
    idx = {e: j for j, e in enumerate(keep)}
    return validate_sub(net, [v for v in net.vertices if v in comp],
                        [b for b in net.boundary if b in comp], keep, idx)


def validate_sub(net, vertices, boundary, keep, idx) -> PlanarNetwork:
    rotations = {v: [idx[e] for e in net.rotations[v]] for v in vertices}
    sub = PlanarNetwork(vertices, boundary, [net.edges[e] for e in keep],
                        [net.x[e] for e in keep], rotations, [net.labels[e] for e in keep])
    return _checked(sub)


def _negligible(v: Fraction, scale: Fraction, exact: bool) -> bool:
    return v == 0 if exact else abs(v) <= APPROX_TOL * scale


def _realizable_empty(X: GrassmannPoint, exact: bool) -> bool:
    odd = abs(X.minor(tuple(range(1, X.N + 1, 2))))
    return odd != 0 and all(_negligible(X.minor(I), odd, exact) for I in _pair_sets(X.k))


def _solve(net: PlanarNetwork, X: GrassmannPoint, rng, exact, values, trace):
    while net.edges:
        if len(net.components) > 1:
            m = correlations_from_minors(X, strict=exact)
            where = {b: i for i, b in enumerate(net.boundary)}
            for comp in net.components:
                for a in comp:
                    for b in net.boundary:
                        if (a in where and b not in comp
                                and not _negligible(m[where[a], where[b]], 1, exact)):
                            raise Inconsistent("correlation across disconnected parts is nonzero")
            for comp in net.components:
                sub = _component(net, comp)
                if sub.edges:
                    idx = [where[b] for b in sub.boundary]
                    sub_m = CorrelationMatrix(tuple(tuple(m[i, j] for j in idx) for i in idx))
                    _solve(sub, doubled_matrix(sub_m), rng, exact, values, trace)
            return
        steps = peel_candidates(net)
        if not steps:
            raise NotReduced("no boundary spike or boundary edge can be peeled")
        step = rng.choice(steps) if rng else steps[0]
        tau = medial_pairing(medial_graph(net))
        ratio = peel_parameter(X, tau, step)
        if step.kind == "spike":
            s = ratio
            x = x_from_s(s, exact)
            c = 2 * x / (1 + x * x)
        else:
            c = ratio
            s, x = x_from_c(c, exact)
        step = PeelStep(step.kind, step.k, step.edge, step.label, s, c, x,
                        net.boundary[step.k - 1])
        trace.append(step)
        values[step.label] = x
        X = peel_step(X, step)
        net = apply_peel(net, step)
    if not _realizable_empty(X, exact):
        raise Inconsistent("the matrix is not realizable on this graph")


def reconstruct(net: PlanarNetwork, m: CorrelationMatrix, rng: random.Random | None = None,
                exact: bool = True):
    """Couplings of every edge, keyed by edge label, plus the peel trace.

    Disconnected networks are split and each part is solved on its own
    boundary.  With ``rng`` the peel is chosen at random among the valid ones.
    """
    if m.n != net.n:
        raise ValidationError(f"matrix is {m.n}x{m.n} but the network has {net.n} boundary vertices")
    if not xing_and_reduced(net)[1]:
        raise NotReduced("the network is not reduced")
    values, trace = {}, []
    _solve(net, doubled_matrix(m), rng, exact, values, trace)
    return values, trace


def _pair_sets(n: int):
    # minors of the empty network's point vanish when I holds a whole pair {2i-1, 2i}
    for I in colex_subsets(2 * n, n):
        if any(2 * i - 1 in I and 2 * i in I for i in range(1, n + 1)):
            yield I
