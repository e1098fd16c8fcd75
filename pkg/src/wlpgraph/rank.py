"""Exact ranks of sparse integer matrices over the rationals.

``certified_rank`` never reports a verdict it cannot back up:

* full rank is proved by a single prime, because rank mod p can only be
  lower than the rational rank;
* a rank drop is proved by an exact integer kernel vector on the deficient
  side, recovered from modular kernels by CRT and rational reconstruction;
* otherwise it falls back to fraction-free integer elimination, or raises
  :class:`RankIndeterminate`.
"""

from __future__ import annotations

import enum
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._modp import Elimination

__all__ = [
    "SparseIntMatrix",
    "Evidence",
    "RankCertificate",
    "RankPolicy",
    "RankIndeterminate",
    "is_prime",
    "random_prime",
    "rank_mod_p",
    "rank_exact",
    "certified_rank",
]


class SparseIntMatrix:
    """Coordinate-list integer matrix; entries sorted by (row, col)."""

    __slots__ = ("rows", "cols", "row_idx", "col_idx", "values")

    def __init__(self, rows, cols, row_idx, col_idx, values=None):
        r = np.asarray(row_idx, dtype=np.int64).ravel()
        c = np.asarray(col_idx, dtype=np.int64).ravel()
        v = np.ones(len(r), dtype=np.int64) if values is None else np.asarray(values, dtype=np.int64).ravel()
        if not (len(r) == len(c) == len(v)):
            raise ValueError("coordinate arrays differ in length")
        if len(r) and (r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols):
            raise ValueError("entry index out of range")
        order = np.lexsort((c, r))
        r, c, v = r[order], c[order], v[order]
        if len(r) > 1 and np.any((r[1:] == r[:-1]) & (c[1:] == c[:-1])):
            raise ValueError("duplicate (row, col) entry")
        nz = v != 0
        self.rows, self.cols = int(rows), int(cols)
        self.row_idx, self.col_idx, self.values = r[nz], c[nz], v[nz]

    @classmethod
    def from_dense(cls, a) -> SparseIntMatrix:
        a = np.asarray(a, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        r, c = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], r, c, a[r, c])

    @property
    def nnz(self) -> int:
        return len(self.values)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.cols, self.rows, self.col_idx, self.row_idx, self.values)

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        a[self.row_idx, self.col_idx] = self.values
        return a

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        counts = np.bincount(self.row_idx, minlength=self.rows)
        indptr = np.zeros(self.rows + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return indptr, self.col_idx.copy(), self.values.copy()

    def restrict_columns(self, cols: np.ndarray) -> SparseIntMatrix:
        """Submatrix on the given columns (renumbered in the given order)."""
        cols = np.asarray(cols, dtype=np.int64)
        lookup = np.full(self.cols, -1, dtype=np.int64)
        lookup[cols] = np.arange(len(cols))
        sel = lookup[self.col_idx] >= 0
        return SparseIntMatrix(self.rows, len(cols), self.row_idx[sel], lookup[self.col_idx[sel]], self.values[sel])

    def matvec(self, x) -> list[int]:
        """Exact M @ x with Python integers."""
        out = [0] * self.rows
        for r, c, v in zip(self.row_idx.tolist(), self.col_idx.tolist(), self.values.tolist()):
            xc = x[c]
            if xc:
                out[r] += v * xc
        return out

    def rmatvec(self, y) -> list[int]:
        """Exact y^T @ M with Python integers."""
        out = [0] * self.cols
        for r, c, v in zip(self.row_idx.tolist(), self.col_idx.tolist(), self.values.tolist()):
            yr = y[r]
            if yr:
                out[c] += v * yr
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (self.shape == other.shape and np.array_equal(self.row_idx, other.row_idx)
                and np.array_equal(self.col_idx, other.col_idx) and np.array_equal(self.values, other.values))

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# -- primes -----------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, bits: int = 31) -> int:
    """Uniform random prime in [2^(bits-1), 2^bits)."""
    lo, hi = 1 << (bits - 1), 1 << bits
    while True:
        cand = rng.randrange(lo, hi) | 1
        if cand < hi and is_prime(cand):
            return cand


# -- modular rank -------------------------------------------------------------

def _eliminate(m: SparseIntMatrix, p: int) -> Elimination:
    indptr, indices, data = m.csr()
    return Elimination(m.rows, m.cols, indptr, indices, data, p)


def rank_mod_p(m: SparseIntMatrix, p: int) -> int:
    """Rank of ``m`` over GF(p); ``p`` must be an odd prime."""
    if p <= 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if m.rows > m.cols:
        m = m.T
    return _eliminate(m, p).rank


# -- exact rank ---------------------------------------------------------------

def rank_exact(m: SparseIntMatrix, dense_threshold: int = 2000) -> int:
    """Rational rank by fraction-free integer elimination.

    Rows are kept primitive (content divided out) after every update, so no
    fractions ever appear and entry growth stays modest on 0/1 inputs.
    """
    if min(m.rows, m.cols) > dense_threshold:
        raise ValueError(
            f"matrix {m.rows}x{m.cols} exceeds the exact-elimination threshold {dense_threshold}; "
            "use certified_rank")
    if m.rows > m.cols:
        m = m.T
    rows: list[dict[int, int] | None] = [dict() for _ in range(m.rows)]
    colrows: list[set[int]] = [set() for _ in range(m.cols)]
    for r, c, v in zip(m.row_idx.tolist(), m.col_idx.tolist(), m.values.tolist()):
        rows[r][c] = v
        colrows[c].add(r)
    live = set(c for c in range(m.cols) if colrows[c])
    rank = 0
    while live:
        bc = min(live, key=lambda c: (len(colrows[c]), c))
        if not colrows[bc]:
            live.discard(bc)
            continue
        pr = min(colrows[bc], key=lambda r: (len(rows[r]), abs(rows[r][bc]), r))
        prow = rows[pr]
        a = prow[bc]
        for c in prow:
            colrows[c].discard(pr)
        for r in list(colrows[bc]):
            row = rows[r]
            b = row[bc]
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            new = {}
            for c, v in row.items():
                new[c] = fa * v
            for c, v in prow.items():
                nv = new.get(c, 0) - fb * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            content = 0
            for v in new.values():
                content = math.gcd(content, v)
                if content == 1:
                    break
            if content > 1:
                new = {c: v // content for c, v in new.items()}
            for c in row.keys() - new.keys():
                colrows[c].discard(r)
            for c in new.keys() - row.keys():
                colrows[c].add(r)
            rows[r] = new
        rows[pr] = None
        live.discard(bc)
        rank += 1
    return rank


# -- certificates -------------------------------------------------------------

class Evidence(str, enum.Enum):
    FULL_RANK_MOD_P = "FULL_RANK_MOD_P"
    EXACT_ELIMINATION = "EXACT_ELIMINATION"
    KERNEL_WITNESS = "KERNEL_WITNESS"


class RankIndeterminate(RuntimeError):
    """No strategy produced a sound rank within the configured limits."""


@dataclass(frozen=True)
class RankPolicy:
    seed: int = 0
    extra_primes: int = 2
    dense_threshold: int = 2000
    time_budget: float | None = None
    prime_bits: int = 31
    max_lift_primes: int = 64
    witness_tries: int = 8

    def __post_init__(self):
        if self.extra_primes < 0 or self.dense_threshold < 1 or self.max_lift_primes < 1:
            raise ValueError("policy knobs must be positive")
        if not 3 <= self.prime_bits <= 80:
            raise ValueError("prime_bits must lie in 3..80")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")


@dataclass(frozen=True)
class RankCertificate:
    """Rank of a ``rows x cols`` matrix plus the evidence that backs it.

    ``witness`` is set only for KERNEL_WITNESS: an integer vector ``v`` with
    ``M v = 0`` (side ``"right"``, length cols) or ``v^T M = 0`` (side
    ``"left"``, length rows).  The witness proves the rank is not maximal;
    the reported value is the modular rank, agreed on by every prime tried,
    which is a proven lower bound for the rational rank.
    """

    rank: int
    rows: int
    cols: int
    evidence: Evidence
    primes_used: tuple[int, ...] = ()
    witness: tuple[int, ...] | None = None
    side: str | None = None
    seconds: float = field(default=0.0, compare=False)

    @property
    def full_rank(self) -> bool:
        return self.rank == min(self.rows, self.cols)

    def verify(self, m: SparseIntMatrix) -> bool:
        """Re-check the evidence against ``m`` from scratch."""
        if m.shape != (self.rows, self.cols):
            return False
        if self.evidence is Evidence.FULL_RANK_MOD_P:
            return self.full_rank and bool(self.primes_used) and rank_mod_p(m, self.primes_used[0]) == self.rank
        if self.evidence is Evidence.KERNEL_WITNESS:
            return self.rank < min(self.rows, self.cols) and verify_witness(m, self.witness, self.side)
        return rank_exact(m, dense_threshold=max(self.rows, self.cols)) == self.rank

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "rows": self.rows,
            "cols": self.cols,
            "evidence": self.evidence.value,
            "primes": [str(p) for p in self.primes_used],
            "side": self.side,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "seconds": self.seconds,
        }

    @classmethod
    def from_json(cls, d: dict) -> RankCertificate:
        return cls(
            rank=d["rank"], rows=d["rows"], cols=d["cols"], evidence=Evidence(d["evidence"]),
            primes_used=tuple(int(p) for p in d["primes"]), side=d["side"],
            witness=None if d["witness"] is None else tuple(int(v) for v in d["witness"]),
            seconds=d["seconds"],
        )


def verify_witness(m: SparseIntMatrix, witness, side) -> bool:
    if witness is None or not any(witness):
        return False
    if side == "right":
        return len(witness) == m.cols and not any(m.matvec(witness))
    if side == "left":
        return len(witness) == m.rows and not any(m.rmatvec(witness))
    return False


def _rational_reconstruct(a: int, mod: int) -> tuple[int, int] | None:
    """n/d = a (mod ``mod``) with |n|, d <= sqrt(mod/2), or None."""
    bound = math.isqrt(mod // 2)
    r0, r1 = mod, a % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return r1, s1


def _reconstruct_vector(residues: list[int], mod: int) -> list[int] | None:
    denom = 1
    fracs = []
    for a in residues:
        got = _rational_reconstruct(a * denom % mod, mod)
        if got is None:
            return None
        num, den = got
        fracs.append(Fraction(num, den * denom))
        denom *= den
    scale = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * scale) for f in fracs]
    g = math.gcd(*ints)
    return [v // g for v in ints] if g > 1 else ints


class _Clock:
    def __init__(self, budget):
        self.start = time.perf_counter()
        self.budget = budget

    def elapsed(self):
        return time.perf_counter() - self.start

    def check(self, what):
        if self.budget is not None and self.elapsed() > self.budget:
            raise RankIndeterminate(f"time budget {self.budget}s exhausted during {what}")


def _lift_witness(b: SparseIntMatrix, p: int, rank: int, rng: random.Random, policy: RankPolicy,
                  clock: _Clock, primes: list[int]) -> list[int] | None:
    """Exact right-kernel vector of ``b`` (rows >= cols, rank < cols), or None."""
    elim = _eliminate(b, p)
    if elim.rank != rank:
        return None
    free = elim.free_columns()
    best = None
    for f in free[: policy.witness_tries].tolist():
        x = elim.kernel_vector(f)
        support = [i for i, v in enumerate(x) if v]
        if best is None or len(support) < len(best[1]):
            best = (f, support, x)
    f, support, x = best
    sub = b.restrict_columns(np.asarray(support, dtype=np.int64))
    f_local = support.index(f)
    residues = [x[i] for i in support]
    mod = p
    for _ in range(policy.max_lift_primes):
        clock.check("witness lifting")
        cand = _reconstruct_vector(residues, mod)
        if cand is not None and not any(sub.matvec(cand)):
            full = [0] * b.cols
            for i, v in zip(support, cand):
                full[i] = v
            return full
        q = random_prime(rng, policy.prime_bits)
        if q in primes:
            continue
        primes.append(q)
        e = _eliminate(sub, q)
        if e.rank == len(support):
            # the restricted columns are independent: no rational kernel here
            return None
        if e.rank < len(support) - 1:
            continue
        y = e.kernel_vector(int(e.free_columns()[0]))
        if y[f_local] == 0:
            continue
        scale = pow(y[f_local], -1, q)
        y = [v * scale % q for v in y]
        # CRT merge of residues mod ``mod`` with y mod q
        inv = pow(mod, -1, q)
        residues = [r + mod * ((yq - r) * inv % q) for r, yq in zip(residues, y)]
        mod *= q
    return None


def certified_rank(m: SparseIntMatrix, policy: RankPolicy | None = None) -> RankCertificate:
    """Rank of ``m`` with sound evidence; see the module docstring."""
    policy = policy or RankPolicy()
    clock = _Clock(policy.time_budget)
    full = min(m.rows, m.cols)

    def cert(rank, evidence, primes=(), witness=None, side=None):
        return RankCertificate(rank, m.rows, m.cols, evidence, tuple(primes),
                               None if witness is None else tuple(witness), side, clock.elapsed())

    if full == 0:
        return cert(0, Evidence.EXACT_ELIMINATION)
    if m.nnz == 0:
        # zero matrix: any standard basis vector on the short side is a witness
        if m.rows >= m.cols:
            w, side = [1] + [0] * (m.cols - 1), "right"
        else:
            w, side = [1] + [0] * (m.rows - 1), "left"
        return cert(0, Evidence.KERNEL_WITNESS, (), w, side)

    # distinct matrices draw distinct primes, reproducibly
    rng = random.Random(f"{policy.seed}:{m.rows}:{m.cols}:{m.nnz}:{int(m.row_idx.sum())}:{int(m.col_idx.sum())}")
    short = m if m.rows <= m.cols else m.T
    primes = [random_prime(rng, policy.prime_bits)]
    r1 = _eliminate(short, primes[0]).rank
    if r1 == full:
        return cert(r1, Evidence.FULL_RANK_MOD_P, primes)
    ranks = [r1]
    for _ in range(policy.extra_primes):
        clock.check("rank confirmation")
        q = random_prime(rng, policy.prime_bits)
        primes.append(q)
        rq = _eliminate(short, q).rank
        if rq == full:
            return cert(rq, Evidence.FULL_RANK_MOD_P, [q])
        ranks.append(rq)
    if len(set(ranks)) == 1:
        # witness lives on the short side: right kernel when cols <= rows
        b, side = (m, "right") if m.rows >= m.cols else (m.T, "left")
        w = _lift_witness(b, primes[0], r1, rng, policy, clock, primes)
        if w is not None:
            return cert(r1, Evidence.KERNEL_WITNESS, primes, w, side)
    clock.check("exact fallback")
    if full <= policy.dense_threshold:
        return cert(rank_exact(m, policy.dense_threshold), Evidence.EXACT_ELIMINATION, primes)
    raise RankIndeterminate(
        f"rank of {m.rows}x{m.cols} matrix unresolved: modular ranks {ranks}, no exact witness, "
        f"and min dimension exceeds dense_threshold={policy.dense_threshold}")
