"""
Recovering couplings from boundary data
=======================================

On a reduced graph the couplings are determined by the correlation matrix.
We hide them, keep only the matrix, and peel them back one at a time.
"""

import math
from fractions import Fraction as F

from isingog.inverse_solver import reconstruct
from isingog.ising_exact import correlation_matrix
from isingog.planar_core import network_from_coordinates, xing_and_reduced


def on_circle(n, i):
    a = 2 * math.pi * (i - 1) / n
    return (math.cos(a), math.sin(a))


pos = {f"b{i}": on_circle(6, i) for i in range(1, 7)}
pos.update(V6=(0.3, 0.1), V7=(-0.2, -0.3))
edges = [("V6", "b1"), ("V6", "b2"), ("V6", "b3"), ("V6", "b6"), ("V7", "V6"),
         ("V7", "b5"), ("V7", "b4"), ("V7", "b3"), ("b4", "b3")]
secret = [F(1, k + 2) for k in range(len(edges))]
net = network_from_coordinates(pos, [f"b{i}" for i in range(1, 7)],
                               [(u, v, x) for (u, v), x in zip(edges, secret)])
print("crossings and reduced:", xing_and_reduced(net))

# %% Only the matrix leaves this cell
m = correlation_matrix(net)

# %% The solver sees the graph but ignores its couplings
blank = net.with_couplings([F(1, 2)] * len(edges))
values, trace = reconstruct(blank, m)
for step in trace:
    print(f"{step.kind:5} at {step.vertex}: edge {step.label}  x = {step.x}")

assert [values[e] for e in range(len(edges))] == secret
print("all", len(secret), "couplings recovered exactly")
