from fractions import Fraction as F
from itertools import chain, combinations

import pytest
from hypothesis import given, settings

from isingog import planar_core as pc
from isingog.errors import BadDiagonal, NotSymmetric, TooLarge
from isingog.ising_exact import CorrelationMatrix, correlation_matrix, multipoint, pfaffian_pf
from conftest import double_edge, empty, hub, path2, seeded, single_edge


def subsets(n):
    items = range(1, n + 1)
    return chain.from_iterable(combinations(items, r) for r in range(n + 1))


def test_single_edge():
    assert correlation_matrix(single_edge(F(1, 2)))[0, 1] == F(1, 2)
    assert correlation_matrix(single_edge(F(1)))[0, 1] == 1
    assert correlation_matrix(empty(2))[0, 1] == 0


def test_series_and_parallel():
    x, y = F(1, 2), F(1, 3)
    assert correlation_matrix(path2(x, y))[0, 1] == x * y
    assert correlation_matrix(double_edge(x, y))[0, 1] == (x + y) / (1 + x * y)


def test_multipoint_basics():
    net = single_edge()
    assert multipoint(net, []) == 1
    assert multipoint(net, [1]) == 0
    assert multipoint(net, [1, 2]) == F(1, 2)


def test_pfaffian_small():
    m = CorrelationMatrix.from_pairs(4, {(1, 2): F(1, 2), (1, 3): F(1, 3), (1, 4): F(1, 5),
                                         (2, 3): F(1, 7), (2, 4): F(2, 3), (3, 4): F(3, 4)})
    assert pfaffian_pf(m, [2, 4]) == F(2, 3)
    assert pfaffian_pf(m, [1, 2, 3, 4]) == m[0, 1] * m[2, 3] - m[0, 2] * m[1, 3] + m[0, 3] * m[1, 2]
    assert pfaffian_pf(m, [1, 2, 3]) == 0
    assert pfaffian_pf(m, []) == 1


def test_pfaffian_hub():
    net = hub()
    m = correlation_matrix(net)
    for K in subsets(6):
        assert pfaffian_pf(m, K) == multipoint(net, K)


def test_matrix_validation():
    with pytest.raises(NotSymmetric):
        CorrelationMatrix.of([[1, "1/2"], ["1/3", 1]])
    with pytest.raises(BadDiagonal):
        CorrelationMatrix.of([[1, 0], [0, "1/2"]])


def test_json_round_trip():
    m = correlation_matrix(hub())
    assert CorrelationMatrix.from_json(m.to_json()) == m


def test_too_large(monkeypatch):
    monkeypatch.setenv("ISING_OG_BRUTE_LIMIT", "3")
    with pytest.raises(TooLarge):
        correlation_matrix(hub())
    # infinite edges shrink the configuration space
    correlation_matrix(single_edge(F(1)))


def test_relabeling_invariance():
    net = hub()
    doc = net.to_json()
    rename = {v: f"w{k}" for k, v in enumerate(reversed(net.vertices))}
    doc["vertices"] = [rename[v] for v in reversed(doc["vertices"])]
    doc["boundary"] = [rename[v] for v in doc["boundary"]]
    for e in doc["edges"]:
        e["u"], e["v"] = rename[e["u"]], rename[e["v"]]
    doc["rotations"] = {rename[v]: r for v, r in doc["rotations"].items()}
    assert correlation_matrix(pc.validate_network(doc)) == correlation_matrix(net)


@settings(max_examples=60, deadline=None)
@given(seeded())
def test_griffiths_inequalities(net):
    m = correlation_matrix(net)
    for i in range(net.n):
        for j in range(net.n):
            assert 0 <= m[i, j] <= 1
    for A in subsets(net.n):
        for B in subsets(net.n):
            ab = set(A) ^ set(B)
            assert multipoint(net, ab) >= multipoint(net, A) * multipoint(net, B)


@settings(max_examples=60, deadline=None)
@given(seeded((2, 5)))
def test_pfaffian_identity(net):
    m = correlation_matrix(net)
    for K in subsets(net.n):
        assert pfaffian_pf(m, K) == multipoint(net, K)
