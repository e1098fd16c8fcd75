"""
Failures propagate through disjoint unions
==========================================

A(G1 + G2) is the tensor product A(G1) (x) A(G2).  If x ell fails to be
surjective on both factors, at degrees i and j, it also fails on the product
at degree i+j+1.  Injectivity failures combine at degree i+j.
"""

from wlpgraph import FailureKind, path, tensor_failure_check
from wlpgraph.graph import cycle
from wlpgraph.indpoly import cycle_mode, lambda_closed_form

lam = lambda_closed_form(15)
print("P_15 @", lam, "+ P_2 @ 0, surjectivity:",
      tensor_failure_check(path(15), lam, path(2), 0, FailureKind.SURJECTIVITY))

rho = cycle_mode(12)
print("C_12 @", rho, "+ P_2 @ 0, surjectivity:",
      tensor_failure_check(cycle(12), rho, path(2), 0, FailureKind.SURJECTIVITY))

# a single vertex gives k[z]/(z^2), whose map out of degree 1 is not injective
d = lambda_closed_form(16) - 1
print("P_16 @", d, "+ P_1 @ 1, injectivity:",
      tensor_failure_check(path(16), d, path(1), 1, FailureKind.INJECTIVITY))
