"""Generalized Griffiths inequalities as positive sums of minors.

For boundary sets A and B, the one-set expectation <s_A> and the covariance
<s_A s_B> - <s_A><s_B> each equal a fixed multiple of a sum of maximal minors
of the doubled matrix.  Since those minors are nonnegative, both quantities
are too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .errors import OddSymmetricDifference, ValidationError
from .grassmann_exact import doubled_matrix, e_n_sets
from .ising_exact import (CorrelationMatrix, _expect, boundary_weights, correlation_matrix,
                          pfaffian_pf)
from .planar_core import PlanarNetwork, format_rational

__all__ = ["GriffithsIndexData", "griffiths_index_data", "d_sumparity", "GriffithsReport",
           "griffiths_check", "griffiths_from_matrix", "griffiths_sweep",
           "griffiths_sweep_matrix", "parse_subset"]


@dataclass(frozen=True)
class GriffithsIndexData:
    n: int
    A: frozenset
    B: frozenset
    C: frozenset
    n_prime: int
    alpha: dict  # [2n] -> [2n']
    beta: dict  # [2n'] -> [n]
    A_prime: frozenset
    B_prime: frozenset
    epsilon: int
    epsilon_literal: int  # 1 + sum(B') alone, kept for comparison


def _subset(n: int, S: Iterable[int], name: str) -> frozenset:
    S = frozenset(S)
    bad = [i for i in S if not 1 <= i <= n]
    if bad:
        raise ValidationError(f"{name} contains {bad[0]}, outside [1..{n}]")
    return S


def parse_subset(text: str | None) -> frozenset:
    """'1,3,4' -> {1, 3, 4}; empty or None gives the empty set."""
    if not text:
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ValidationError(f"cannot read {text!r} as a comma-separated list of integers") from None


def griffiths_index_data(n: int, A: Iterable[int], B: Iterable[int]) -> GriffithsIndexData:
    A, B = _subset(n, A, "A"), _subset(n, B, "B")
    C = A ^ B
    if len(C) % 2:
        raise OddSymmetricDifference(f"|A xor B| = {len(C)} is odd; both sides vanish")
    alpha, beta, pos = {}, {}, 0
    for i in range(1, n + 1):
        if i in C:
            pos += 1
            alpha[2 * i - 1] = alpha[2 * i] = pos
            beta[pos] = i
        else:
            alpha[2 * i - 1], alpha[2 * i] = pos + 1, pos + 2
            beta[pos + 1] = beta[pos + 2] = i
            pos += 2
    n_prime = pos // 2
    both = A & B
    a_prime, b_prime = set(), set()
    for i in range(1, 2 * n_prime + 1):
        if beta[i] in A - B:
            a_prime.add(i)
        elif beta[i] in B - A:
            b_prime.add(i)
        if i < 2 * n_prime and beta[i] == beta[i + 1] and beta[i] in both:
            a_prime.add(i)
            b_prime.add(i + 1)
    literal = (1 + sum(b_prime)) % 2
    # 1 + sum(B') alone breaks the identity whenever |A & B| is odd; the
    # extra |A & B| term makes it hold for every symmetric matrix
    epsilon = (literal + len(both)) % 2
    return GriffithsIndexData(n, A, B, C, n_prime, alpha, beta, frozenset(a_prime),
                              frozenset(b_prime), epsilon, literal)


def d_sumparity(n: int, B: Iterable[int], epsilon: int) -> list[tuple[int, ...]]:
    """n-subsets of [2n] whose elements inside the doubled B sum to epsilon mod 2."""
    doubled = {j for i in B for j in (2 * i - 1, 2 * i)}
    return [I for I in combinations(range(1, 2 * n + 1), n)
            if sum(i for i in I if i in doubled) % 2 == epsilon % 2]


@dataclass
class GriffithsReport:
    n: int
    A: frozenset
    B: frozenset
    lhs1: Fraction
    rhs1: Fraction
    lhs2: Fraction
    rhs2: Fraction
    epsilon: int | None
    terms1: list = field(default_factory=list)  # (I, minor) pairs behind rhs1
    terms2: list = field(default_factory=list)

    @property
    def odd(self) -> bool:
        return len(self.A ^ self.B) % 2 == 1

    @property
    def first_equal(self) -> bool:
        return self.lhs1 == self.rhs1

    @property
    def second_equal(self) -> bool:
        return self.lhs2 == self.rhs2

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for _, v in self.terms1 + self.terms2)

    def to_json(self) -> dict:
        fmt = format_rational

        def terms(ts):
            return [{"I": list(I), "minor": fmt(v)} for I, v in ts]

        return {
            "n": self.n, "A": sorted(self.A), "B": sorted(self.B),
            "odd_symmetric_difference": self.odd, "epsilon": self.epsilon,
            "first": {"lhs": fmt(self.lhs1), "rhs": fmt(self.rhs1), "equal": self.first_equal,
                      "nonnegative": all(v >= 0 for _, v in self.terms1),
                      "terms": terms(self.terms1)},
            "second": {"lhs": fmt(self.lhs2), "rhs": fmt(self.rhs2), "equal": self.second_equal,
                       "nonnegative": all(v >= 0 for _, v in self.terms2),
                       "terms": terms(self.terms2)},
        }


def _report(m: CorrelationMatrix, A, B, expect, pl=None) -> GriffithsReport:
    n = m.n
    A, B = _subset(n, A, "A"), _subset(n, B, "B")
    pl = pl if pl is not None else doubled_matrix(m).pluecker
    scale = Fraction(1, 2 ** n)
    terms1 = [(I, pl[I]) for I in e_n_sets(n, A)]
    rhs1 = scale * sum(v for _, v in terms1)
    lhs1 = expect(A)
    lhs2 = expect(A ^ B) - expect(A) * expect(B)
    try:
        eps = griffiths_index_data(n, A, B).epsilon
    except OddSymmetricDifference:
        return GriffithsReport(n, A, B, lhs1, rhs1, lhs2, Fraction(0), None, terms1, [])
    allowed = set(d_sumparity(n, B, eps))
    terms2 = [(I, pl[I]) for I in e_n_sets(n, A ^ B) if I in allowed]
    rhs2 = 2 * scale * sum(v for _, v in terms2)
    return GriffithsReport(n, A, B, lhs1, rhs1, lhs2, rhs2, eps, terms1, terms2)


def _spin_expect(net: PlanarNetwork):
    weights = boundary_weights(net)
    cache: dict[frozenset, Fraction] = {}

    def expect(S):
        if S not in cache:
            cache[S] = _expect(weights, sum(1 << (i - 1) for i in S)) if len(S) % 2 == 0 \
                else Fraction(0)
        return cache[S]

    return expect


def griffiths_check(net: PlanarNetwork, A: Iterable[int], B: Iterable[int]) -> GriffithsReport:
    """Both identities with left sides from brute-force spin sums."""
    return _report(correlation_matrix(net), A, B, _spin_expect(net))


def _all_subsets(n: int):
    return [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]


def griffiths_sweep(net: PlanarNetwork) -> Iterator[GriffithsReport]:
    """Reports for every pair (A, B) of boundary subsets, sharing one spin sum."""
    expect = _spin_expect(net)
    m = correlation_matrix(net)
    pl = doubled_matrix(m).pluecker
    for A in _all_subsets(net.n):
        for B in _all_subsets(net.n):
            yield _report(m, A, B, expect, pl)


def griffiths_from_matrix(m: CorrelationMatrix, A: Iterable[int],
                          B: Iterable[int]) -> GriffithsReport:
    """Both identities with left sides given by Pfaffians of m.

    This holds for any symmetric m with unit diagonal, network or not.
    """
    return _report(m, A, B, lambda S: pfaffian_pf(m, S))


def griffiths_sweep_matrix(m: CorrelationMatrix) -> Iterator[GriffithsReport]:
    pl = doubled_matrix(m).pluecker
    pf = {S: pfaffian_pf(m, S) for S in _all_subsets(m.n)}
    for A in pf:
        for B in pf:
            yield _report(m, A, B, pf.__getitem__, pl)
