"""Independence polynomials, unimodality and mode bookkeeping."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, cycle, members, pan, path, tadpole

__all__ = [
    "UPoly",
    "ModeReport",
    "independence_polynomial",
    "brute_force_independence_polynomial",
    "mode_analysis",
    "lambda_closed_form",
    "check_unimodal_sum",
    "IdentityCheck",
    "InequalityCheck",
    "verify_decompositions",
    "verify_mode_inequalities",
    "path_mode",
    "cycle_mode",
    "pan_mode",
    "BRUTE_FORCE_CAP",
]

BRUTE_FORCE_CAP = 25


class UPoly:
    """Univariate polynomial with nonnegative integer coefficients.

    ``coeffs[k]`` is the coefficient of t^k; trailing zeros are trimmed, so
    the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        if any(x < 0 for x in c):
            raise ValueError("coefficients must be nonnegative")
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def one(cls) -> UPoly:
        return cls((1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: UPoly) -> UPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self[k] + other[k] for k in range(n))

    def __mul__(self, other: UPoly | int) -> UPoly:
        if isinstance(other, int):
            return UPoly(other * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> UPoly:
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return UPoly((0,) * k + self.coeffs)

    def __call__(self, t):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def __repr__(self):
        return f"UPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                c = "" if a == 1 else str(a)
                terms.append(f"{c}t" if k == 1 else f"{c}t^{k}")
        return " + ".join(terms)

    def to_json(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> UPoly:
        return cls(int(s) for s in data)


_ONE_PLUS_T = UPoly((1, 1))


def _binomial_row(k: int) -> UPoly:
    """(1+t)^k by repeated convolution."""
    p = UPoly.one()
    for _ in range(k):
        p = p * _ONE_PLUS_T
    return p


def _components(adj: Sequence[int], mask: int) -> list[int]:
    comps = []
    while mask:
        seed = mask & -mask
        comp = seed
        frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adj[v] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        mask &= ~comp
    return comps


def independence_polynomial(g: Graph, rng: random.Random | None = None) -> UPoly:
    """I(G;t) via the vertex-deletion recurrence with component splitting.

    The branch vertex is the maximum-degree vertex of the current component
    (smallest index on ties), or a uniformly random vertex when ``rng`` is
    given.  Subproblems are memoised by the mask of surviving vertices.
    """
    adj = g.adj
    memo: dict[int, UPoly] = {}

    def solve(mask: int) -> UPoly:
        if mask == 0:
            return UPoly.one()
        hit = memo.get(mask)
        if hit is not None:
            return hit
        result = UPoly.one()
        isolated = 0
        for comp in _components(adj, mask):
            if comp & (comp - 1) == 0:
                isolated += 1
                continue
            result = result * solve_connected(comp)
        if isolated:
            result = result * _binomial_row(isolated)
        memo[mask] = result
        return result

    def solve_connected(comp: int) -> UPoly:
        hit = memo.get(comp)
        if hit is not None:
            return hit
        if rng is not None:
            v = rng.choice(list(members(comp)))
        else:
            v, best = -1, -1
            for u in members(comp):
                d = (adj[u] & comp).bit_count()
                if d > best:
                    v, best = u, d
        without_v = solve(comp & ~(1 << v))
        without_nv = solve(comp & ~(adj[v] | (1 << v)))
        result = without_v + without_nv.shift(1)
        memo[comp] = result
        return result

    return solve(g.vertex_mask)


def brute_force_independence_polynomial(g: Graph) -> UPoly:
    """Count independent sets by scanning all 2^n vertex subsets."""
    if g.n > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_CAP} vertices, got {g.n}")
    indep = np.ones(1, dtype=bool)
    size = np.zeros(1, dtype=np.int64)
    for v in range(g.n):
        # subsets of {0..v-1} extended by v; only lower neighbours matter
        lower = g.adj[v] & ((1 << v) - 1)
        masks = np.arange(1 << v, dtype=np.int64)
        ok = indep & ((masks & lower) == 0)
        indep = np.concatenate([indep, ok])
        size = np.concatenate([size, size + 1])
    counts = np.bincount(size[indep], minlength=1)
    return UPoly(int(c) for c in counts)


@dataclass(frozen=True)
class ModeReport:
    unimodal: bool
    mode: int | None


def mode_analysis(p: UPoly | Sequence[int]) -> ModeReport:
    """Unimodality and mode of a coefficient sequence.

    The mode is the unique i with a_{i-1} < a_i >= a_{i+1} >= ... >= a_D,
    taking a_{-1} = 0; for a unimodal sequence this is the first index
    attaining the maximum.
    """
    a = p.coeffs if isinstance(p, UPoly) else tuple(p)
    while a and a[-1] == 0:
        a = a[:-1]
    if not a:
        raise ValueError("mode of the zero polynomial is undefined")
    peak = a.index(max(a))
    rising = all(a[k] <= a[k + 1] for k in range(peak))
    falling = all(a[k] >= a[k + 1] for k in range(peak, len(a) - 1))
    if not (rising and falling):
        return ModeReport(False, None)
    return ModeReport(True, peak)


def lambda_closed_form(n: int) -> int:
    """ceil((5n + 2 - sqrt(5n^2 + 20n + 24)) / 10), computed exactly.

    For integer r = isqrt(D) the ceiling equals ceil((5n + 2 - r) / 10)
    whether or not D is a perfect square.
    """
    if n < 1:
        raise ValueError("n must be positive")
    r = math.isqrt(5 * n * n + 20 * n + 24)
    return -((r - 5 * n - 2) // 10)


def check_unimodal_sum(f: UPoly, g: UPoly) -> bool:
    """True iff f+g is unimodal with mode in {min(p,q), min(p,q)+1}.

    Requires f and g unimodal with modes p, q and |p - q| <= 1.
    """
    rf, rg = mode_analysis(f), mode_analysis(g)
    if not (rf.unimodal and rg.unimodal):
        raise ValueError("both summands must be unimodal")
    if abs(rf.mode - rg.mode) > 1:
        raise ValueError(f"modes {rf.mode} and {rg.mode} differ by more than 1")
    rs = mode_analysis(f + g)
    low = min(rf.mode, rg.mode)
    return rs.unimodal and rs.mode in (low, low + 1)


def path_mode(n: int) -> int:
    return mode_analysis(independence_polynomial(path(n))).mode


def cycle_mode(n: int) -> int:
    return mode_analysis(independence_polynomial(cycle(n))).mode


def pan_mode(n: int) -> int:
    return mode_analysis(independence_polynomial(pan(n))).mode


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    param: int
    lhs: UPoly
    rhs: UPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def verify_decompositions(m_range: Iterable[int], n_range: Iterable[int]) -> list[IdentityCheck]:
    """Check the four tadpole decompositions coefficientwise.

    T_{m,2} = Pan_m + t C_m and T_{m,3} = (1+t) Pan_m + t C_m over ``m_range``;
    T_{4,n} = C_{n+3} + t P_{n+2} and T_{5,n} = T_{4,n} + t C_{n+3} over
    ``n_range``.
    """
    I = independence_polynomial
    out = []
    for m in m_range:
        pm, cm = I(pan(m)), I(cycle(m))
        out.append(IdentityCheck("T(m,2) = Pan(m) + t*C(m)", m, I(tadpole(m, 2)), pm + cm.shift()))
        out.append(IdentityCheck("T(m,3) = (1+t)*Pan(m) + t*C(m)", m, I(tadpole(m, 3)),
                                 _ONE_PLUS_T * pm + cm.shift()))
    for n in n_range:
        t4 = I(tadpole(4, n))
        c = I(cycle(n + 3))
        out.append(IdentityCheck("T(4,n) = C(n+3) + t*P(n+2)", n, t4, c + I(path(n + 2)).shift()))
        out.append(IdentityCheck("T(5,n) = T(4,n) + t*C(n+3)", n, I(tadpole(5, n)), t4 + c.shift()))
    return out


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    param: int
    values: dict
    holds: bool


def verify_mode_inequalities(n_range: Iterable[int], m_range: Iterable[int] | None = None) -> list[InequalityCheck]:
    """Check the mode comparisons among paths, cycles, pans and tadpoles.

    ``n_range`` drives the path/cycle/pan chains and the T_{4,n}, T_{5,n}
    memberships; ``m_range`` (defaults to ``n_range``) drives the T_{m,2},
    T_{m,3} memberships.  Each statement is only evaluated where its lower
    bound allows (n >= 1, n >= 5, m >= 5).
    """
    n_vals = list(n_range)
    m_vals = n_vals if m_range is None else list(m_range)
    lam_cache: dict[int, int] = {}

    def lam(k):
        if k not in lam_cache:
            lam_cache[k] = path_mode(k)
        return lam_cache[k]

    out = []

    def add(name, param, values, ok):
        out.append(InequalityCheck(name, param, values, bool(ok)))

    for n in n_vals:
        if n >= 1:
            l0, l1, l3, l4 = lam(n), lam(n + 1), lam(n + 3), lam(n + 4)
            add("lambda(n+1) >= lambda(n)", n, {"lambda_n": l0, "lambda_n+1": l1}, l1 >= l0)
            add("lambda(n+3)-1 <= lambda(n) <= lambda(n+4)-1", n,
                {"lambda_n": l0, "lambda_n+3": l3, "lambda_n+4": l4}, l3 - 1 <= l0 <= l4 - 1)
        if n >= 5:
            rho, zeta = cycle_mode(n), pan_mode(n)
            ln, ln1, ln4 = lam(n), lam(n - 1), lam(n - 4)
            add("lambda(n-1) <= rho(n) <= lambda(n-4)+1 <= lambda(n)", n,
                {"lambda_n-1": ln1, "rho_n": rho, "lambda_n-4": ln4, "lambda_n": ln},
                ln1 <= rho <= ln4 + 1 <= ln)
            add("rho(n) <= lambda(n) <= zeta(n) <= rho(n)+1 <= lambda(n)+1", n,
                {"rho_n": rho, "lambda_n": ln, "zeta_n": zeta},
                rho <= ln <= zeta <= rho + 1 <= ln + 1)
            l2 = lam(n + 2)
            r4 = mode_analysis(independence_polynomial(tadpole(4, n)))
            add("mode T(4,n) in {lambda(n+2), lambda(n+2)+1}", n,
                {"mode": r4.mode, "lambda_n+2": l2}, r4.unimodal and r4.mode in (l2, l2 + 1))
            r5 = mode_analysis(independence_polynomial(tadpole(5, n)))
            add("mode T(5,n) in {lambda(n+2), ..., lambda(n+2)+2}", n,
                {"mode": r5.mode, "lambda_n+2": l2}, r5.unimodal and r5.mode in (l2, l2 + 1, l2 + 2))
    for m in m_vals:
        if m >= 5:
            rho = cycle_mode(m)
            r2 = mode_analysis(independence_polynomial(tadpole(m, 2)))
            add("mode T(m,2) in {rho(m), rho(m)+1}", m,
                {"mode": r2.mode, "rho_m": rho}, r2.unimodal and r2.mode in (rho, rho + 1))
            r3 = mode_analysis(independence_polynomial(tadpole(m, 3)))
            add("mode T(m,3) in {rho(m), ..., rho(m)+2}", m,
                {"mode": r3.mode, "rho_m": rho}, r3.unimodal and r3.mode in (rho, rho + 1, rho + 2))
    return out
