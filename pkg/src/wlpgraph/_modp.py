"""Sparse Gaussian elimination over GF(p).

Right-looking elimination with a Markowitz-style choice: the pivot column
is the live column with the fewest nonzeros, the pivot row the shortest
row in it.  Pivot rows are kept as they were when chosen, so a kernel
vector can be recovered by back substitution.

Two engines share that algorithm: a numba kernel for p < 2^31 (products
fit in int64) and a pure Python one for any odd prime.
"""

from __future__ import annotations

import numba as nb
import numpy as np
from numba.typed import List

NUMBA_PRIME_LIMIT = 1 << 31


@nb.njit(cache=True)
def _inv_mod(a, p):
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@nb.njit(cache=True)
def _find(a, x):
    k = np.searchsorted(a, x)
    if k < a.size and a[k] == x:
        return k
    return -1


@nb.njit(cache=True)
def _eliminate_nb(nrows, ncols, indptr, indices, data, p):
    rcols = List()
    rvals = List()
    rlen = np.empty(nrows, np.int64)
    ccount = np.zeros(ncols, np.int64)
    for r in range(nrows):
        lo, hi = indptr[r], indptr[r + 1]
        a = indices[lo:hi].copy()
        v = data[lo:hi].copy()
        order = np.argsort(a)
        a = a[order]
        v = v[order] % p
        keep = v != 0
        a = a[keep]
        v = v[keep]
        rcols.append(a)
        rvals.append(v)
        rlen[r] = a.size
        for c in a:
            ccount[c] += 1
    # column -> row lists, may hold stale entries; checked on use
    clist = List()
    csize = np.zeros(ncols, np.int64)
    for c in range(ncols):
        clist.append(np.empty(max(4, 2 * ccount[c]), np.int64))
    for r in range(nrows):
        for c in rcols[r]:
            clist[c][csize[c]] = r
            csize[c] += 1
    row_alive = np.ones(nrows, np.bool_)
    col_alive = np.ones(ncols, np.bool_)
    maxrank = min(nrows, ncols)
    piv_rows = np.empty(maxrank, np.int64)
    piv_cols = np.empty(maxrank, np.int64)
    rank = 0
    while rank < maxrank:
        bc = -1
        best = nrows + 1
        for c in range(ncols):
            if col_alive[c] and ccount[c] > 0 and ccount[c] < best:
                best = ccount[c]
                bc = c
                if best == 1:
                    break
        if bc < 0:
            break
        lst = clist[bc]
        pr = -1
        bl = ncols + 1
        for t in range(csize[bc]):
            r = lst[t]
            if row_alive[r] and rlen[r] < bl and _find(rcols[r], bc) >= 0:
                bl = rlen[r]
                pr = r
        pc = rcols[pr]
        pv = rvals[pr]
        inv = _inv_mod(pv[_find(pc, bc)], p)
        row_alive[pr] = False
        for c in pc:
            ccount[c] -= 1
        for t in range(csize[bc]):
            r = lst[t]
            if not row_alive[r]:
                continue
            a = rcols[r]
            av = rvals[r]
            k = _find(a, bc)
            if k < 0:
                continue
            f = av[k] * inv % p
            na = a.size
            nq = pc.size
            oc = np.empty(na + nq, np.int64)
            ov = np.empty(na + nq, np.int64)
            i = 0
            j = 0
            o = 0
            while i < na or j < nq:
                if j >= nq or (i < na and a[i] < pc[j]):
                    oc[o] = a[i]
                    ov[o] = av[i]
                    o += 1
                    i += 1
                elif i >= na or pc[j] < a[i]:
                    c = pc[j]
                    oc[o] = c
                    ov[o] = (p - f * pv[j] % p) % p
                    o += 1
                    j += 1
                    ccount[c] += 1
                    if csize[c] == clist[c].size:
                        grown = np.empty(2 * clist[c].size, np.int64)
                        grown[: csize[c]] = clist[c][: csize[c]]
                        clist[c] = grown
                    clist[c][csize[c]] = r
                    csize[c] += 1
                else:
                    val = (av[i] - f * pv[j] % p) % p
                    if val != 0:
                        oc[o] = a[i]
                        ov[o] = val
                        o += 1
                    else:
                        ccount[a[i]] -= 1
                    i += 1
                    j += 1
            rcols[r] = oc[:o].copy()
            rvals[r] = ov[:o].copy()
            rlen[r] = o
        col_alive[bc] = False
        piv_rows[rank] = pr
        piv_cols[rank] = bc
        rank += 1
    return rank, piv_rows[:rank].copy(), piv_cols[:rank].copy(), rcols, rvals


@nb.njit(cache=True)
def _kernel_nb(rank, piv_rows, piv_cols, rcols, rvals, ncols, free_col, p):
    x = np.zeros(ncols, np.int64)
    x[free_col] = 1
    for k in range(rank - 1, -1, -1):
        a = rcols[piv_rows[k]]
        v = rvals[piv_rows[k]]
        pc = piv_cols[k]
        s = 0
        d = 0
        for t in range(a.size):
            if a[t] == pc:
                d = v[t]
            else:
                s = (s + v[t] * x[a[t]]) % p
        x[pc] = (p - s) % p * _inv_mod(d, p) % p
    return x


def _eliminate_py(nrows, ncols, indptr, indices, data, p):
    rows: list[dict | None] = []
    colrows: list[set] = [set() for _ in range(ncols)]
    for r in range(nrows):
        row = {}
        for c, v in zip(indices[indptr[r]:indptr[r + 1]].tolist(), data[indptr[r]:indptr[r + 1]].tolist()):
            v %= p
            if v:
                row[c] = v
                colrows[c].add(r)
        rows.append(row)
    pivots: list[tuple[int, int, dict]] = []
    live = set(range(ncols))
    while True:
        bc, best = -1, nrows + 1
        for c in live:
            k = len(colrows[c])
            if 0 < k < best:
                bc, best = c, k
                if k == 1:
                    break
        if bc < 0:
            break
        pr = min(colrows[bc], key=lambda r: (len(rows[r]), r))
        prow = rows[pr]
        inv = pow(prow[bc], -1, p)
        for c in prow:
            colrows[c].discard(pr)
        for r in list(colrows[bc]):
            row = rows[r]
            f = row[bc] * inv % p
            for c, v in prow.items():
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    if c not in row:
                        colrows[c].add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    colrows[c].discard(r)
        rows[pr] = None
        live.discard(bc)
        pivots.append((pr, bc, prow))
    return pivots


class Elimination:
    """Result of one elimination: rank, pivot columns and a kernel solver."""

    def __init__(self, nrows, ncols, indptr, indices, data, p):
        self.p = p
        self.ncols = ncols
        if p < NUMBA_PRIME_LIMIT:
            self._engine = "numba"
            rank, pr, pc, rc, rv = _eliminate_nb(nrows, ncols, indptr, indices, data, p)
            self.rank = int(rank)
            self.pivot_cols = pc
            self._state = (pr, pc, rc, rv)
        else:
            self._engine = "python"
            pivots = _eliminate_py(nrows, ncols, indptr, indices, data, p)
            self.rank = len(pivots)
            self.pivot_cols = np.array([c for _, c, _ in pivots], dtype=np.int64)
            self._state = pivots

    def free_columns(self) -> np.ndarray:
        mask = np.ones(self.ncols, dtype=bool)
        mask[self.pivot_cols] = False
        return np.flatnonzero(mask)

    def kernel_vector(self, free_col: int) -> list[int]:
        """Kernel vector with 1 at ``free_col`` and 0 at the other free columns."""
        p = self.p
        if self._engine == "numba":
            pr, pc, rc, rv = self._state
            return _kernel_nb(self.rank, pr, pc, rc, rv, self.ncols, free_col, p).tolist()
        x = [0] * self.ncols
        x[free_col] = 1
        for _, c, row in reversed(self._state):
            s = sum(v * x[k] for k, v in row.items() if k != c)
            x[c] = -s * pow(row[c], -1, p) % p
        return x
