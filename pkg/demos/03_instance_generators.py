"""Sampling instances from the two random k-SAT models and writing DIMACS.

Run:  python demos/03_instance_generators.py
"""

import io

import numpy as np

import geoksat as gk

print("=== non-uniform (power-law) model ===")
n, m, k = 1000, 4000, 3
ws = gk.power_law_weights(n, 2.5)
f = gk.sample_nonuniform_formula(n, m, k, ws, seed=7)
counts = np.bincount(np.abs(f.literals).ravel(), minlength=n + 1)[1:]
print(f"n={n}, m={m}, k={k}: variable 1 appears {counts[0]} times, "
      f"median variable {int(np.median(counts))} times")
print("heavy-tailed weights make a few variables ubiquitous")

print("\n=== geometric model at different temperatures ===")
g = gk.GeometrySpec(d=2, p_norm=2)
for T in (0.0, 0.5, 0.9):
    inst = gk.sample_geometric_formula(500, 500, 3, g, T, None, seed=11)
    nice = sum(gk.is_nice(i, inst) for i in range(inst.formula.m))
    print(f"  T={T}: {nice}/500 clauses are 'nice' "
          "(drawn exactly in nearest-first order)")
print("T=0 is the threshold case: every clause takes its k nearest variables")

print("\n=== DIMACS output ===")
buf = io.StringIO()
small = gk.sample_nonuniform_formula(6, 4, 3, gk.uniform_weights(6), seed=3)
gk.emit_dimacs(small, buf, {"model": "uniform", "seed": 3})
print(buf.getvalue())
parsed, comments = gk.parse_dimacs(io.StringIO(buf.getvalue()))
print("parsed back:", parsed.m, "clauses,", "comments:", comments)
