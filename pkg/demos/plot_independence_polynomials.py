"""
Independence polynomials and their modes
========================================

The Hilbert series of A(G) is the independence polynomial of G.  This demo
computes a few of them, finds their modes, and compares the path mode with
its closed form.
"""

from wlpgraph import cycle, independence_polynomial, mode_analysis, pan, path, tadpole
from wlpgraph.indpoly import brute_force_independence_polynomial, lambda_closed_form

for name, g in [("P_16", path(16)), ("C_12", cycle(12)), ("Pan_5", pan(5)), ("T_{6,6}", tadpole(6, 6))]:
    p = independence_polynomial(g)
    print(f"{name:8} {p}")
    print(f"{'':8} mode {mode_analysis(p).mode}")

# the recurrence agrees with a scan over all 2^n vertex subsets
g = tadpole(7, 5)
assert independence_polynomial(g) == brute_force_independence_polynomial(g)

# closed form for the mode of I(P_n; t)
print("\n n  mode  closed form")
for n in (1, 5, 10, 16, 25, 40):
    print(f"{n:2}  {mode_analysis(independence_polynomial(path(n))).mode:4}  {lambda_closed_form(n):11}")
