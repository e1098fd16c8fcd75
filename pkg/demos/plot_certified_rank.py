"""
Certified ranks
===============

A rank computed modulo a random prime is only a lower bound for the rank
over the rationals.  Full rank mod p is therefore already a proof; a rank
drop is proved by an exact integer kernel vector.
"""

from wlpgraph import RankPolicy, certified_rank, path
from wlpgraph.levels import level_map
from wlpgraph.rank import SparseIntMatrix, rank_exact, rank_mod_p

m = level_map(path(16), 3).to_sparse()
c = certified_rank(m)
print(f"P_16, degree 3: {m.rows}x{m.cols}, rank {c.rank}, {c.evidence.value}, primes {c.primes_used}")

# degree 4 looks injective by dimensions (715 -> 792) but is not
m = level_map(path(16), 4).to_sparse()
c = certified_rank(m, RankPolicy(seed=1))
print(f"P_16, degree 4: {m.rows}x{m.cols}, rank {c.rank}, {c.evidence.value} on the {c.side}")
support = [i for i, v in enumerate(c.witness) if v]
print(f"  witness support {len(support)} columns, entries {sorted(set(c.witness[i] for i in support))}")
print("  M v == 0:", not any(m.matvec(c.witness)))
print("  exact elimination agrees:", rank_exact(m) == c.rank)

# modular rank can only drop: a matrix with determinant 3 is singular mod 3
a = SparseIntMatrix.from_dense([[2, 1], [1, 2]])
print("rank mod 3:", rank_mod_p(a, 3), " rank mod 7:", rank_mod_p(a, 7), " exact:", rank_exact(a))
