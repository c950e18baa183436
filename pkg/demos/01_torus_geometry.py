"""Tour of the ground space: torus distances, ball-volume constants, and
the two distance laws that drive everything else.

Run:  python demos/01_torus_geometry.py
"""

import numpy as np

import geoksat as gk

print("=== p-norm distances on the unit torus ===")
g1 = gk.GeometrySpec(d=1)
print("d=1: dist(0.1, 0.9) =", gk.torus_distance([0.1], [0.9], g1),
      " (wraps around, not 0.8)")
gmax = gk.GeometrySpec(d=2, p_norm=gk.INFINITY)
print("d=2, max norm: dist((0,0), (0.3,0.4)) =",
      gk.torus_distance([0, 0], [0.3, 0.4], gmax))

print("\n=== ball-volume constants ===")
print(f"{'d':>3} {'p':>5} {'constant':>12}")
for d in (1, 2, 3):
    for p in (1, 2, gk.INFINITY):
        c = gk.ball_volume_constant(gk.GeometrySpec(d=d, p_norm=p))
        print(f"{d:>3} {str(p):>5} {c:>12.6f}")
print("note: d=2, p=2 gives pi; the max norm gives 2^d")

print("\n=== distance CDF vs simulation ===")
g2 = gk.GeometrySpec(d=2, p_norm=2)
rng = np.random.default_rng(0)
a, b = rng.random((2, 200_000, 2))
diff = np.abs(a - b)
diff = np.minimum(diff, 1 - diff)
dist = np.sqrt((diff**2).sum(axis=1))
for x in (0.1, 0.25, 0.4):
    print(f"  P(dist <= {x}): empirical {np.mean(dist <= x):.4f}  "
          f"formula {gk.dist_cdf(x, g2):.4f}")

print("\n=== connection weights (the geometric model's propensities) ===")
sites = gk.WeightedSites(np.array([[0.0]]), np.array([1.0]))
for dist_val, T in ((0.5, 0.5), (0.25, 0.5), (0.25, 0.9)):
    x = gk.connection_weight([dist_val], 0, sites, T, g1)
    print(f"  dist={dist_val}, T={T}: X = {x:.3f}")
print("closer variables and lower temperatures mean sharper propensities")
