"""
Boundary correlations and the doubled matrix
============================================

Build a small planar network, compute its boundary correlations three ways,
and look at the point of the Grassmannian it defines.
"""

import math
from fractions import Fraction as F

from isingog.alt_flows import correlation_via_flows
from isingog.grassmann_exact import check_og_tnn, correlations_from_minors, doubled_matrix
from isingog.ising_exact import correlation_matrix
from isingog.plabic import boundary_measurement, plabic_from_medial
from isingog.planar_core import medial_graph, medial_pairing, network_from_coordinates


def on_circle(n, i):
    a = 2 * math.pi * (i - 1) / n
    return (math.cos(a), math.sin(a))


# Four boundary spins around a disk, one interior spin in the middle and a
# chord between b1 and b2.  Couplings are x = tanh J.
pos = {f"b{i}": on_circle(4, i) for i in range(1, 5)}
pos["v"] = (0.0, 0.0)
net = network_from_coordinates(pos, ["b1", "b2", "b3", "b4"], [
    ("v", "b1", F(1, 2)), ("v", "b2", F(1, 3)), ("v", "b3", F(2, 3)),
    ("v", "b4", F(1, 4)), ("b1", "b2", F(1, 5)),
])
print(net)

# %% Spin sums give exact rational correlations
m = correlation_matrix(net)
for row in m.entries:
    print("  ".join(f"{str(v):>9}" for v in row))

# %% The same numbers from alternating flows
print("flows <s1 s3> =", correlation_via_flows(net, 1, 3), " spin sum:", m[0, 2])

# %% The doubled matrix is an n x 2n matrix; its maximal minors are the point
X = doubled_matrix(m)
cert = check_og_tnn(X)
print("OG:", cert.og, " TNN:", cert.tnn, " smallest minor:", cert.min_minor, "at", cert.witness)

# Minors come back to correlations
assert correlations_from_minors(X) == m

# %% The plabic graph built from the medial graph has the same minors up to scale
G = plabic_from_medial(medial_graph(net))
Y = boundary_measurement(G)
ref = (1, 3, 5, 7)
assert all(X.pluecker[I] * Y.pluecker[ref] == Y.pluecker[I] * X.pluecker[ref] for I in X.pluecker)
print("dimer measurement matches; medial pairing:", medial_pairing(medial_graph(net)).pairs)
