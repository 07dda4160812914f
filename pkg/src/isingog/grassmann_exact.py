"""Exact Grassmannian linear algebra for doubled correlation matrices.

A point of Gr(k, N) is stored as a k x N rational matrix; its Plücker
coordinates are all maximal minors, keyed by sorted 1-based column tuples
and listed in colex order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.linalg import expm

from .errors import NotOG, NotTNN, RankDeficient, ValidationError, ZeroDenominator
from .ising_exact import CorrelationMatrix
from .planar_core import MedialPairing, crosses, format_rational, parse_rational

__all__ = [
    "GrassmannPoint", "DoubledMatrix", "DecoratedPermutation", "Certificate", "FlowCheck",
    "doubled_matrix", "pluecker_vector", "check_og_tnn", "e_n_sets", "correlations_from_minors",
    "positroid_necklace_perm", "cyclic_shift", "x0_point", "minor_via_matchings",
    "flow_positivity_check", "colex_subsets", "point_from_pluecker", "subset_key",
]


def colex_subsets(N: int, k: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(1, N + 1), k), key=lambda I: I[::-1])


def subset_key(I: Iterable[int]) -> str:
    return ",".join(map(str, sorted(I)))


def _bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [r[:] for r in rows]
    k = len(a)
    sign, prev = 1, 1
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for r in range(c + 1, k):
            for j in range(c + 1, k):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[k - 1][k - 1] if k else 1


@dataclass(frozen=True)
class GrassmannPoint:
    matrix: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "GrassmannPoint":
        return cls(tuple(tuple(parse_rational(v) for v in row) for row in rows))

    @property
    def k(self) -> int:
        return len(self.matrix)

    @property
    def N(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @cached_property
    def _int_rows(self):
        # clear denominators row by row; remember the scale
        rows, scale = [], Fraction(1)
        for row in self.matrix:
            den = reduce(math.lcm, (v.denominator for v in row), 1)
            rows.append([int(v * den) for v in row])
            scale /= den
        return rows, scale

    def minor(self, I: Sequence[int]) -> Fraction:
        rows, scale = self._int_rows
        cols = [i - 1 for i in I]
        return scale * _bareiss_det([[r[c] for c in cols] for r in rows])

    @cached_property
    def pluecker(self) -> dict[tuple[int, ...], Fraction]:
        pl = {I: self.minor(I) for I in colex_subsets(self.N, self.k)}
        if not any(pl.values()):
            raise RankDeficient(f"the {self.k}x{self.N} matrix does not have full rank")
        return pl

    def to_json(self) -> dict:
        return {"k": self.k, "N": self.N,
                "matrix": [[format_rational(v) for v in row] for row in self.matrix]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "GrassmannPoint":
        try:
            X = cls.of(doc["matrix"])
        except (KeyError, TypeError):
            raise ValidationError("point document needs a 'matrix' field") from None
        if len({len(r) for r in X.matrix}) != 1:
            raise ValidationError("matrix rows have different lengths")
        return X


@dataclass(frozen=True)
class DoubledMatrix(GrassmannPoint):
    base: CorrelationMatrix = field(default=None, compare=False)


def doubled_matrix(m: CorrelationMatrix) -> DoubledMatrix:
    """The n x 2n matrix with unit pairs on the diagonal blocks and signed m_ij elsewhere."""
    n = m.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row += [Fraction(1), Fraction(1)]
            else:
                v = (-1) ** (i + j + (i < j)) * m[i - 1, j - 1]
                row += [v, -v]
        rows.append(tuple(row))
    return DoubledMatrix(tuple(rows), m)


def pluecker_vector(X: GrassmannPoint) -> dict[tuple[int, ...], Fraction]:
    return X.pluecker


def point_from_pluecker(pl: Mapping[tuple[int, ...], Fraction], k: int, N: int) -> GrassmannPoint:
    """Reconstruct a matrix with an identity block on the lex-first basis.

    The result is rescaled so that the odd minor (1, 3, ..., N-1) equals 1
    when it is nonzero, otherwise so that the first nonzero minor does.
    """
    bases = sorted(I for I, v in pl.items() if v)
    if not bases:
        raise RankDeficient("all Plücker coordinates vanish")
    I0 = bases[0]
    d0 = Fraction(pl[I0])
    rows = []
    for r, i in enumerate(I0):
        row = []
        for j in range(1, N + 1):
            if j in I0:
                row.append(Fraction(int(j == i)))
            else:
                J = tuple(sorted(set(I0) - {i} | {j}))
                # moving j into the slot of i costs the sign of the sort
                sign = -1 if (J.index(j) - r) % 2 else 1
                row.append(sign * Fraction(pl.get(J, 0)) / d0)
        rows.append(row)
    X = GrassmannPoint(tuple(map(tuple, rows)))
    odd = tuple(range(1, N, 2)) if N == 2 * k else None
    ref = X.minor(odd) if odd else 0
    if not ref:
        ref = X.pluecker[next(I for I in X.pluecker if X.pluecker[I])]
    rows[0] = [v / ref for v in rows[0]]
    return GrassmannPoint(tuple(map(tuple, rows)))


@dataclass(frozen=True)
class Certificate:
    og: bool
    tnn: bool
    tp: bool
    min_minor: Fraction
    witness: tuple[int, ...]
    sign: int

    def to_json(self) -> dict:
        return {"og": self.og, "tnn": self.tnn, "tp": self.tp,
                "min_minor": format_rational(self.min_minor),
                "witness": list(self.witness), "sign": self.sign}


def _normalized(X: GrassmannPoint):
    pl = X.pluecker
    odd = tuple(range(1, X.N, 2))
    ref = pl.get(odd, 0)
    if not ref:
        ref = next(v for v in pl.values() if v)
    s = 1 if ref > 0 else -1
    return {I: s * v for I, v in pl.items()}


def check_og_tnn(X: GrassmannPoint) -> Certificate:
    """OG membership, total nonnegativity and positivity, up to a global sign."""
    if X.N != 2 * X.k:
        raise ValidationError(f"expected a k x 2k matrix, got {X.k} x {X.N}")
    pl = _normalized(X)
    full = set(range(1, X.N + 1))
    comp = {I: tuple(sorted(full - set(I))) for I in pl}
    sign = 0
    for c in (1, -1):
        if all(pl[I] == c * pl[comp[I]] for I in pl):
            sign = c
            break
    witness = min(pl, key=lambda I: (pl[I], I))
    low = pl[witness]
    return Certificate(sign == 1, low >= 0, low > 0, low, witness, sign)


def e_n_sets(n: int, S: Iterable[int]) -> list[tuple[int, ...]]:
    """n-subsets I of [2n] with |I & {2i-1, 2i}| even exactly for i in S."""
    S = set(S)
    out = []
    for choice in product(range(4), repeat=n):
        I = []
        for i, c in enumerate(choice, start=1):
            even = c in (0, 3)
            if even != (i in S):
                break
            I += {0: [], 1: [2 * i - 1], 2: [2 * i], 3: [2 * i - 1, 2 * i]}[c]
        else:
            if len(I) == n:
                out.append(tuple(I))
    return sorted(out)


def correlations_from_minors(X: GrassmannPoint, strict: bool = True) -> CorrelationMatrix:
    """Invert the doubling map on totally nonnegative OG points.

    ``strict=False`` skips the membership checks, for points known only
    approximately.
    """
    if strict:
        cert = check_og_tnn(X)
        if not cert.og:
            raise NotOG("the point does not lie in the orthogonal Grassmannian")
        if not cert.tnn:
            raise NotTNN(f"minor {cert.witness} is {format_rational(cert.min_minor)}")
    pl = _normalized(X)
    n = X.k
    z = sum(pl[I] for I in e_n_sets(n, ()))
    if not z:
        raise ZeroDenominator("the even-parity minors sum to zero")
    vals = {(i, j): sum(pl[I] for I in e_n_sets(n, (i, j))) / z
            for i, j in combinations(range(1, n + 1), 2)}
    return CorrelationMatrix.from_pairs(n, vals)


@dataclass(frozen=True)
class DecoratedPermutation:
    images: tuple[int, ...]
    colors: tuple[tuple[int, str], ...] = ()

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_fixed_point_free_involution(self) -> bool:
        return all(self(i) != i and self(self(i)) == i for i in range(1, len(self.images) + 1))

    def as_pairing(self) -> MedialPairing:
        if not self.is_fixed_point_free_involution():
            raise ValidationError("the permutation is not a fixed-point-free involution")
        return MedialPairing.of({tuple(sorted((i, self(i)))) for i in range(1, len(self.images) + 1)})

    def to_json(self) -> dict:
        return {"images": list(self.images), "colors": {str(i): c for i, c in self.colors}}


def positroid_necklace_perm(X: GrassmannPoint):
    """Positroid, Grassmann necklace and decorated permutation of a TNN point."""
    pl = _normalized(X)
    low = min(pl.values())
    if low < 0:
        raise NotTNN(f"negative minor {format_rational(low)}")
    N = X.N
    positroid = frozenset(I for I, v in pl.items() if v > 0)
    necklace = []
    for i in range(1, N + 1):
        rank = lambda a: (a - i) % N
        best = min(positroid, key=lambda I: sorted(map(rank, I)))
        necklace.append(best)
    images, colors = [], []
    for i in range(1, N + 1):
        cur, nxt = set(necklace[i - 1]), set(necklace[i % N])
        if cur == nxt:
            images.append(i)
            colors.append((i, "coloop" if i in cur else "loop"))
        else:
            (j,) = nxt - cur
            images.append(j)
    return positroid, tuple(necklace), DecoratedPermutation(tuple(images), tuple(colors))


def cyclic_shift(X: GrassmannPoint) -> GrassmannPoint:
    """Right multiplication by the twisted cyclic shift matrix."""
    sign = (-1) ** (X.k - 1)
    return GrassmannPoint(tuple(row[1:] + (sign * row[0],) for row in X.matrix))


def _float_minors(A: np.ndarray) -> dict[tuple[int, ...], float]:
    k, N = A.shape
    return {I: float(np.linalg.det(A[:, [i - 1 for i in I]])) for I in colex_subsets(N, k)}


def x0_point(n: int):
    """The cyclically symmetric point: sine-product minors and its correlation matrix."""
    N = 2 * n
    pl = {}
    for I in colex_subsets(N, n):
        pl[I] = math.prod(math.sin((j - i) * math.pi / N) for i, j in combinations(I, 2))
    z = sum(pl[I] for I in e_n_sets(n, ()))
    M = np.eye(n)
    for i, j in combinations(range(1, n + 1), 2):
        M[i - 1, j - 1] = M[j - 1, i - 1] = sum(pl[I] for I in e_n_sets(n, (i, j))) / z
    return pl, M


def minor_via_matchings(m: CorrelationMatrix, I: Iterable[int]) -> Fraction:
    """Maximal minor of the doubled matrix as a signed sum over bipartite matchings."""
    I = sorted(I)
    n = m.n
    C = {i for i in range(1, n + 1) if len({2 * i - 1, 2 * i} & set(I)) % 2 == 0}
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
    I1 = sorted({alpha[i] for i in I})
    J1 = [p for p in range(1, pos + 1) if p not in I1]
    if len(I1) != len(J1):
        return Fraction(0)
    entry = lambda a, b: Fraction(1) if beta[a] == beta[b] else m[beta[a] - 1, beta[b] - 1]
    total = Fraction(0)
    for perm in permutations(J1):
        pi = [tuple(sorted(p)) for p in zip(I1, perm)]
        sign = -1 if sum(crosses(p, q) for p, q in combinations(pi, 2)) % 2 else 1
        total += sign * math.prod((entry(a, b) for a, b in pi), start=Fraction(1))
    return 2 ** (len(C) // 2) * total


@dataclass(frozen=True)
class FlowCheck:
    ok: bool
    min_minor: float
    witness: tuple[int, ...]
    og_error: float

    def __bool__(self):
        return self.ok


def flow_positivity_check(X: GrassmannPoint, t: float, tol: float = 1e-9) -> FlowCheck:
    """Flow by exp(t(S + S^T)) and test strict positivity of every maximal minor."""
    k, N = X.k, X.N
    S = np.zeros((N, N))
    for i in range(N - 1):
        S[i + 1, i] = 1.0
    S[0, N - 1] = (-1) ** (k - 1)
    A = np.array([[float(v) for v in row] for row in X.matrix]) @ expm(t * (S + S.T))
    pl = _float_minors(A)
    odd = tuple(range(1, N, 2))
    scale = pl[odd] if abs(pl[odd]) > tol else max(pl.values(), key=abs)
    norm = {I: v / scale for I, v in pl.items()}
    full = set(range(1, N + 1))
    og_err = max(abs(v - norm[tuple(sorted(full - set(I)))]) for I, v in norm.items())
    witness = min(norm, key=norm.get)
    ok = norm[witness] > tol and og_err <= tol
    return FlowCheck(ok, norm[witness], witness, og_err)
