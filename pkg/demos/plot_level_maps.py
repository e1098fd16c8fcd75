"""
Level maps of A(G)
==================

Multiplication by the sum of the variables sends each independent set S to
the sum of its one-vertex independent extensions.  Each level map is a 0/1
matrix with exactly j+1 ones per row.
"""

import numpy as np

from wlpgraph import cycle, path
from wlpgraph.levels import all_level_bases, format_matrix_dump, hilbert_data, level_map

g = cycle(4)
bases = all_level_bases(g)
print("bases of A(C_4):", [[bin(s) for s in b.sets] for b in bases])
print(level_map(g, 1).dense())

g = path(10)
print("Hilbert function of A(P_10):", hilbert_data(g).h)
m = level_map(g, 3)
print(f"degree 3 -> 4: {m.rows} x {m.cols}, {m.nnz} entries")
print("row sums:", np.unique(m.dense().sum(axis=1)))

# the debug dump used by the `matrix` subcommand
print(format_matrix_dump(level_map(path(4), 1)))
