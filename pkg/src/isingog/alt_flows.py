"""Boundary correlations from alternating flows.

An (A, B)-flow gives each edge of the spiked graph one of five states.  At
every vertex the arrows, read counterclockwise, must alternate in and out.
The two-point function is the weighted count of ({a}, {b})-flows divided by
the count of empty-boundary flows.

Weights contain y^2 = 1 - x^2 in denominators, which vanishes for infinite
couplings.  The ``scaled`` weights multiply through by the product of all
y_e^2, giving per-edge factors 2x, 2x^2 and 1 - x^2 instead.  Ratios are
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import ValidationError, ZeroDenominator
from .planar_core import PlanarNetwork, format_rational

__all__ = ["UNDIRECTED", "FORWARD", "BACKWARD", "CW", "CCW", "AlternatingFlow",
           "enumerate_flows", "flow_sums", "correlation_via_flows"]

UNDIRECTED, FORWARD, BACKWARD, CW, CCW = range(5)
STATE_NAMES = ("undirected", "forward", "backward", "cw", "ccw")
IN, OUT = 0, 1


@dataclass(frozen=True)
class AlternatingFlow:
    """Edge states on the spiked graph.

    ``edges`` lists (u, w) for the network edges followed by one spike per
    vertex in A then B, each spike written (outer end, b_i).
    """

    edges: tuple
    states: tuple[int, ...]
    spikes: int

    @property
    def support(self) -> frozenset:
        """Vertices of the network touched by an arrow."""
        out = set()
        for (u, w), st in zip(self.edges, self.states):
            if st != UNDIRECTED:
                out.update((u, w))
        return frozenset(v for v in out if not (isinstance(v, tuple) and v[0] == "spike"))

    def to_json(self) -> dict:
        return {"edges": [{"u": str(u), "w": str(w), "state": STATE_NAMES[s]}
                          for (u, w), s in zip(self.edges, self.states)]}


def _arrows(state: int, at_u: bool) -> tuple[int, ...]:
    if state == FORWARD:
        return (OUT,) if at_u else (IN,)
    if state == BACKWARD:
        return (IN,) if at_u else (OUT,)
    # a clockwise 2-cycle reads (in, out) counterclockwise at either end
    if state == CW:
        return (IN, OUT)
    if state == CCW:
        return (OUT, IN)
    return ()


def _alternates(seq: list[int]) -> bool:
    if len(seq) % 2:
        return False
    return all(seq[i] != seq[i - 1] for i in range(len(seq)))


def _spiked(net: PlanarNetwork, A: Iterable[int], B: Iterable[int]):
    A, B = sorted(set(A)), sorted(set(B))
    n = net.n
    if set(A) & set(B):
        raise ValidationError("A and B must be disjoint")
    if len(A) != len(B) or len(A) > 1:
        raise ValidationError("A and B must both be empty or both singletons")
    for i in A + B:
        if not 1 <= i <= n:
            raise ValidationError(f"boundary index {i} outside [1..{n}]")
    edges = list(net.edges)
    rotations = {v: list(r) for v, r in net.rotations.items()}
    need = {}
    for i, kind in [(i, OUT) for i in A] + [(i, IN) for i in B]:
        b = net.boundary[i - 1]
        outer = ("spike", i)
        e = len(edges)
        edges.append((outer, b))
        rotations[b].append(e)  # the spike sits in the outer gap, after the last edge
        rotations[outer] = [e]
        need[e] = FORWARD if kind == OUT else BACKWARD
    return edges, rotations, need


def _edge_factor(x: Fraction, state: int, scaled: bool) -> Fraction:
    y2 = 1 - x * x
    if scaled:
        return (y2, 2 * x, 2 * x, 2 * x * x, 2 * x * x)[state]
    if state == UNDIRECTED:
        return Fraction(1)
    if not y2:
        raise ZeroDenominator("y = 0 for an infinite coupling; use scaled weights")
    return (2 * x if state in (FORWARD, BACKWARD) else 2 * x * x) / y2


def enumerate_flows(net: PlanarNetwork, A: Iterable[int] = (), B: Iterable[int] = (),
                    scaled: bool = False) -> Iterator[tuple[AlternatingFlow, Fraction]]:
    """Every (A, B)-alternating flow with its weight.

    Literal weights are 2^(|A| - |V(F)|) times the per-edge factors, spikes
    contributing 1.  Scaled weights are the literal ones times prod y_e^2.
    """
    A = list(A)
    edges, rotations, need = _spiked(net, A, B)
    m = len(net.edges)
    states = [UNDIRECTED] * len(edges)
    for e, st in need.items():
        states[e] = st
    # assign edges in an order that closes vertices early
    order, seen = [], set()
    for v in sorted(rotations, key=lambda v: -len(rotations[v])):
        for e in rotations[v]:
            if e < m and e not in seen:
                seen.add(e)
                order.append(e)
    pos = {e: k for k, e in enumerate(order)}
    closes: dict[int, list] = {}
    for v, rot in rotations.items():
        if isinstance(v, tuple) and v[0] == "spike":
            continue
        last = max((pos[e] for e in rot if e < m), default=-1)
        closes.setdefault(last, []).append(v)

    def ok(v) -> bool:
        seq = []
        for e in rotations[v]:
            seq += _arrows(states[e], edges[e][0] == v)
        return _alternates(seq)

    if not all(ok(v) for v in closes.get(-1, [])):
        return

    def weight() -> Fraction:
        w = Fraction(1)
        touched = set()
        for e in range(m):
            w *= _edge_factor(net.x[e], states[e], scaled)
            if states[e] != UNDIRECTED:
                touched.update(edges[e])
        touched.update(net.boundary[i - 1] for i in A + list(B))
        return w * Fraction(2) ** (len(A) - len(touched))

    def rec(k):
        if k == len(order):
            yield AlternatingFlow(tuple(edges), tuple(states), len(need)), weight()
            return
        e = order[k]
        for st in range(5):
            states[e] = st
            if all(ok(v) for v in closes.get(k, [])):
                yield from rec(k + 1)
        states[e] = UNDIRECTED

    yield from rec(0)


def flow_sums(net: PlanarNetwork, a: int, b: int, scaled: bool = True) -> tuple[Fraction, Fraction]:
    """(sum over ({a},{b})-flows, sum over empty flows)."""
    num = sum((w for _, w in enumerate_flows(net, [a], [b], scaled)), Fraction(0))
    den = sum((w for _, w in enumerate_flows(net, scaled=scaled)), Fraction(0))
    return num, den


def correlation_via_flows(net: PlanarNetwork, a: int, b: int) -> Fraction:
    if a == b:
        raise ValidationError("a and b must differ")
    num, den = flow_sums(net, a, b)
    if not den:
        raise ZeroDenominator("the empty-flow sum vanished")
    return num / den


def report(net: PlanarNetwork, a: int, b: int) -> dict:
    num, den = flow_sums(net, a, b)
    return {"a": a, "b": b, "numerator": format_rational(num),
            "denominator": format_rational(den), "correlation": format_rational(num / den),
            "scaled_by": "prod of (1 - x_e^2)"}
