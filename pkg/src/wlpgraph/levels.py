"""Graded pieces of A(G) and the multiplication-by-ell level maps.

The degree-k monomial basis of A(G) is the set of k-element independent
sets of G (as bit masks), sorted by mask value.  Multiplication by the sum
of the variables sends a basis monomial S to the sum of all S + {v} that are
still independent, so each level map is a 0/1 inclusion matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graph import Graph, members
from .rank import SparseIntMatrix

__all__ = [
    "LevelBasis",
    "LevelMap",
    "HilbertData",
    "level_basis",
    "all_level_bases",
    "hilbert_data",
    "level_map",
    "level_map_from_bases",
    "format_matrix_dump",
    "parse_matrix_dump",
]


@dataclass(frozen=True)
class LevelBasis:
    degree: int
    sets: tuple[int, ...]

    def __len__(self):
        return len(self.sets)

    @cached_property
    def index(self) -> dict[int, int]:
        return {s: i for i, s in enumerate(self.sets)}


@dataclass(frozen=True)
class HilbertData:
    h: tuple[int, ...]

    @property
    def socle_degree(self) -> int:
        return len(self.h) - 1


@dataclass(frozen=True, eq=False)
class LevelMap:
    """Matrix of multiplication by ell from degree j to degree j+1.

    Entries are coordinate arrays in column-major order (rows ascending
    within a column); every stored coefficient is 1.
    """

    j: int
    rows: int
    cols: int
    row_idx: np.ndarray
    col_idx: np.ndarray

    @property
    def nnz(self) -> int:
        return len(self.row_idx)

    @property
    def entries(self) -> list[tuple[int, int]]:
        return list(zip(self.row_idx.tolist(), self.col_idx.tolist()))

    def to_sparse(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.rows, self.cols, self.row_idx, self.col_idx,
                               np.ones(self.nnz, dtype=np.int64))

    def dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        a[self.row_idx, self.col_idx] = 1
        return a


def all_level_bases(g: Graph) -> list[LevelBasis]:
    """Every graded piece at once, by one backtracking pass."""
    buckets: list[list[int]] = [[]]
    adj = g.adj
    n = g.n
    # explicit stack: (next vertex to consider, current set, forbidden mask, size)
    stack = [(0, 0, 0, 0)]
    while stack:
        start, s, forbidden, k = stack.pop()
        if len(buckets) <= k:
            buckets.append([])
        buckets[k].append(s)
        for v in range(start, n):
            if not (forbidden >> v) & 1:
                stack.append((v + 1, s | (1 << v), forbidden | adj[v] | (1 << v), k + 1))
    return [LevelBasis(k, tuple(sorted(b))) for k, b in enumerate(buckets)]


def level_basis(g: Graph, k: int) -> LevelBasis:
    """Independent sets of size ``k``, sorted by mask; empty past alpha(G)."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    out: list[int] = []
    adj = g.adj
    n = g.n

    def extend(start, s, forbidden, size):
        if size == k:
            out.append(s)
            return
        # prune: not enough vertices left to reach size k
        if n - start < k - size:
            return
        for v in range(start, n):
            if not (forbidden >> v) & 1:
                extend(v + 1, s | (1 << v), forbidden | adj[v] | (1 << v), size + 1)

    extend(0, 0, 0, 0)
    return LevelBasis(k, tuple(sorted(out)))


def hilbert_data(g: Graph) -> HilbertData:
    return HilbertData(tuple(len(b) for b in all_level_bases(g)))


def level_map_from_bases(g: Graph, src: LevelBasis, dst: LevelBasis) -> LevelMap:
    if dst.degree != src.degree + 1:
        raise ValueError("target basis must sit one degree above the source")
    index = dst.index
    adj = g.adj
    full = g.vertex_mask
    rows: list[int] = []
    cols: list[int] = []
    for c, s in enumerate(src.sets):
        blocked = s
        for v in members(s):
            blocked |= adj[v]
        hits = sorted(index[s | (1 << v)] for v in members(full & ~blocked))
        rows.extend(hits)
        cols.extend([c] * len(hits))
    return LevelMap(src.degree, len(dst), len(src),
                    np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))


def level_map(g: Graph, j: int, bases: list[LevelBasis] | None = None) -> LevelMap:
    """Matrix of the map [A]_j -> [A]_{j+1}; requires j below the socle degree."""
    if bases is None:
        bases = all_level_bases(g)
    socle = len(bases) - 1
    if j < 0:
        raise ValueError("degree must be nonnegative")
    if j >= socle:
        raise ValueError(f"degree {j} is at or beyond socle degree {socle}")
    return level_map_from_bases(g, bases[j], bases[j + 1])


def format_matrix_dump(m: LevelMap | SparseIntMatrix) -> str:
    """``rows cols nnz`` header, then sorted ``r c`` lines (0-based)."""
    r, c = np.asarray(m.row_idx), np.asarray(m.col_idx)
    order = np.lexsort((c, r))
    lines = [f"{m.rows} {m.cols} {len(r)}"]
    lines += [f"{a} {b}" for a, b in zip(r[order].tolist(), c[order].tolist())]
    return "\n".join(lines) + "\n"


def parse_matrix_dump(text: str) -> SparseIntMatrix:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    rows, cols, nnz = (int(x) for x in lines[0])
    body = lines[1:]
    if len(body) != nnz:
        raise ValueError(f"header promises {nnz} entries, found {len(body)}")
    r = np.array([int(a) for a, _ in body], dtype=np.int64)
    c = np.array([int(b) for _, b in body], dtype=np.int64)
    return SparseIntMatrix(rows, cols, r, c, np.ones(nnz, dtype=np.int64))
