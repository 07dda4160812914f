"""Exact Ising correlations by summing over spin configurations.

With ``x = tanh J`` the Boltzmann weight of an edge is proportional to
``1 + x s s'``, so every correlation is a ratio of polynomials in the
couplings and stays rational.  Infinite couplings glue their endpoints.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Iterable, Sequence

from .errors import BadDiagonal, NotSymmetric, ParseError, TooLarge, ValidationError
from .planar_core import PlanarNetwork, _UnionFind, crosses, format_rational, parse_rational

__all__ = ["CorrelationMatrix", "correlation_matrix", "multipoint", "pfaffian_pf",
           "boundary_weights", "brute_force_limit", "matchings"]

DEFAULT_LIMIT = 20


def brute_force_limit() -> int:
    return int(os.environ.get("ISING_OG_BRUTE_LIMIT", DEFAULT_LIMIT))


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric matrix with unit diagonal; ``m[i, j]`` is 0-based."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValidationError("correlation matrix must be square")
        for i in range(n):
            if self.entries[i][i] != 1:
                raise BadDiagonal(f"m[{i + 1},{i + 1}] = {self.entries[i][i]}, expected 1")
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise NotSymmetric(f"m[{i + 1},{j + 1}] != m[{j + 1},{i + 1}]")

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "CorrelationMatrix":
        return cls(tuple(tuple(parse_rational(v) if not isinstance(v, float) else Fraction(v)
                               for v in row) for row in rows))

    @classmethod
    def from_pairs(cls, n: int, values: dict) -> "CorrelationMatrix":
        """Build from ``{(i, j): m_ij}`` with 1-based indices, i < j."""
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for (i, j), v in values.items():
            rows[i - 1][j - 1] = rows[j - 1][i - 1] = Fraction(v)
        return cls.of(rows)

    @classmethod
    def from_json(cls, doc: dict) -> "CorrelationMatrix":
        try:
            rows = doc["entries"]
        except (KeyError, TypeError):
            raise ParseError("matrix document needs an 'entries' field") from None
        m = cls.of(rows)
        if "n" in doc and int(doc["n"]) != m.n:
            raise ValidationError(f"n = {doc['n']} but the matrix is {m.n}x{m.n}")
        return m

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[format_rational(v) for v in row] for row in self.entries]}


def _classes(net: PlanarNetwork):
    uf = _UnionFind(net.vertices)
    for (u, v), x in zip(net.edges, net.x):
        if x == 1:
            uf.union(u, v)
    reps = sorted({uf.find(v) for v in net.vertices}, key=net.vertices.index)
    index = {r: k for k, r in enumerate(reps)}
    return {v: index[uf.find(v)] for v in net.vertices}, len(reps)


def boundary_weights(net: PlanarNetwork) -> dict[int, int]:
    """Unnormalized weight of each boundary spin pattern.

    Keys are bitmasks with bit i set when boundary spin i is -1; values are
    integers (couplings are cleared of denominators).  The spin of the first
    class is fixed to +1, which halves the work and changes no ratio.
    """
    cls, k = _classes(net)
    if k > brute_force_limit():
        raise TooLarge(f"{k} spin classes exceed the brute-force limit {brute_force_limit()}")
    terms = []
    for (u, v), x in zip(net.edges, net.x):
        a, b = cls[u], cls[v]
        if x < 1 and a != b:
            terms.append((1 << a | 1 << b, x.denominator + x.numerator,
                          x.denominator - x.numerator))
    bmask = [cls[b] for b in net.boundary]
    out: dict[int, int] = {}
    for s in range(0, 1 << k, 2):
        w = 1
        for mask, same, diff in terms:
            m = s & mask
            w *= diff if m and m != mask else same
            if not w:
                break
        if w:
            pat = sum(1 << i for i, c in enumerate(bmask) if s >> c & 1)
            out[pat] = out.get(pat, 0) + w
    return out


def _expect(weights: dict[int, int], mask: int) -> Fraction:
    z = sum(weights.values())
    num = sum(w if bin(p & mask).count("1") % 2 == 0 else -w for p, w in weights.items())
    return Fraction(num, z)


def correlation_matrix(net: PlanarNetwork) -> CorrelationMatrix:
    """Boundary two-point functions <s_i s_j>."""
    weights = boundary_weights(net)
    n = net.n
    rows = [[Fraction(1)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        rows[i][j] = rows[j][i] = _expect(weights, 1 << i | 1 << j)
    return CorrelationMatrix(tuple(map(tuple, rows)))


def multipoint(net: PlanarNetwork, A: Iterable[int]) -> Fraction:
    """<prod_{i in A} s_i> for a 1-based set A."""
    A = set(A)
    if any(not 1 <= i <= net.n for i in A):
        raise ValidationError(f"{sorted(A)} is not a subset of [1..{net.n}]")
    if len(A) % 2:
        return Fraction(0)
    return _expect(boundary_weights(net), sum(1 << (i - 1) for i in A))


def matchings(points: Sequence[int]):
    """Perfect matchings of a sorted sequence, as lists of pairs."""
    if not points:
        yield []
        return
    a = points[0]
    for j in range(1, len(points)):
        for tail in matchings(points[1:j] + points[j + 1:]):
            yield [(a, points[j])] + tail


def pfaffian_pf(m: CorrelationMatrix, K: Iterable[int]) -> Fraction:
    """Sum over matchings of K of (-1)^crossings times the matched entries."""
    K = sorted(set(K))
    if len(K) % 2:
        return Fraction(0)
    total = Fraction(0)
    for pi in matchings(K):
        sign = -1 if sum(crosses(p, q) for p, q in combinations(pi, 2)) % 2 else 1
        total += sign * prod((m[a - 1, b - 1] for a, b in pi), start=Fraction(1))
    return total
