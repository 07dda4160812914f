"""
Duality, Griffiths inequalities and the symmetric point
=======================================================
"""

import math
from fractions import Fraction as F

import numpy as np

from isingog.grassmann_exact import cyclic_shift, doubled_matrix, x0_point
from isingog.griffiths import griffiths_sweep
from isingog.ising_exact import correlation_matrix
from isingog.planar_core import dual_network, network_from_coordinates


def on_circle(n, i):
    a = 2 * math.pi * (i - 1) / n
    return (math.cos(a), math.sin(a))


pos = {f"b{i}": on_circle(3, i) for i in range(1, 4)}
pos["v"] = (0.0, 0.0)
net = network_from_coordinates(pos, ["b1", "b2", "b3"], [
    ("v", "b1", F(1, 2)), ("v", "b2", F(2, 3)), ("v", "b3", F(3, 4)), ("b1", "b2", F(1, 3))])

# %% Kramers-Wannier: the dual network's point is the cyclic shift of ours
dual = dual_network(net)
print("dual couplings:", [str(x) for x in dual.x])
X = cyclic_shift(doubled_matrix(correlation_matrix(net)))
Y = doubled_matrix(correlation_matrix(dual))
ratios = {Y.pluecker[I] / v for I, v in X.pluecker.items() if v}
print("proportional:", len(ratios) == 1)

# %% Griffiths: every covariance is a positive sum of minors
reports = list(griffiths_sweep(net))
print(len(reports), "pairs (A, B);",
      "all identities exact:", all(r.first_equal and r.second_equal for r in reports))
worst = min((r for r in reports if r.lhs2 > 0), key=lambda r: r.lhs2)
print("smallest positive covariance", worst.lhs2, "for A =", sorted(worst.A), "B =", sorted(worst.B))

# %% The point fixed by the shift, in floating point
for n in (2, 3, 4):
    _, M = x0_point(n)
    print(n, np.round(M[0], 6))
print("m12 at n=2 is sqrt(2) - 1:", math.isclose(x0_point(2)[1][0, 1], math.sqrt(2) - 1))
