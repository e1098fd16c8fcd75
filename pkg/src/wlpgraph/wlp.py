"""Weak Lefschetz property of A(G) via certified ranks of the level maps.

For a monomial algebra it suffices to test ell = sum of the variables, so
A(G) has the WLP exactly when every map [A]_j -> [A]_{j+1}, 0 <= j < D, has
maximal rank.  A failure "at degree d" always refers to the map leaving
degree d.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .graph import Graph, cycle, disjoint_union, format_edge_list, pan, path, tadpole
from .indpoly import ModeReport, mode_analysis
from .levels import HilbertData, LevelBasis, all_level_bases, level_map_from_bases
from .rank import RankCertificate, RankIndeterminate, RankPolicy, certified_rank

__all__ = [
    "FailureKind",
    "DegreeVerdict",
    "WlpReport",
    "wlp_check",
    "map_rank",
    "Family",
    "ClassificationRow",
    "classify_family",
    "tensor_failure_check",
    "PremiseError",
]


class FailureKind(str, enum.Enum):
    INJECTIVITY = "INJECTIVITY"
    SURJECTIVITY = "SURJECTIVITY"
    BOTH = "BOTH"


def _failure_kind(h_j: int, h_j1: int, rank: int) -> FailureKind | None:
    if rank >= min(h_j, h_j1):
        return None
    if h_j < h_j1:
        return FailureKind.INJECTIVITY
    if h_j > h_j1:
        return FailureKind.SURJECTIVITY
    return FailureKind.BOTH


@dataclass(frozen=True)
class DegreeVerdict:
    j: int
    h_j: int
    h_j1: int
    rank: int
    certificate: RankCertificate

    @property
    def maximal(self) -> bool:
        return self.rank == min(self.h_j, self.h_j1)

    @property
    def failure_kind(self) -> FailureKind | None:
        return _failure_kind(self.h_j, self.h_j1, self.rank)

    def to_json(self) -> dict:
        fk = self.failure_kind
        return {
            "j": self.j,
            "h_j": str(self.h_j),
            "h_j1": str(self.h_j1),
            "rank": self.rank,
            "maximal": self.maximal,
            "failure_kind": None if fk is None else fk.value,
            "certificate": self.certificate.to_json(),
        }

    @classmethod
    def from_json(cls, d: dict) -> DegreeVerdict:
        return cls(d["j"], int(d["h_j"]), int(d["h_j1"]), d["rank"], RankCertificate.from_json(d["certificate"]))


@dataclass(frozen=True)
class WlpReport:
    graph: str
    n: int
    hilbert: HilbertData
    mode_report: ModeReport
    verdicts: tuple[DegreeVerdict, ...]
    seed: int
    timings: dict = field(default_factory=dict, compare=False)
    complete: bool = True

    @property
    def has_wlp(self) -> bool:
        return self.complete and all(v.maximal for v in self.verdicts)

    @property
    def failures(self) -> list[DegreeVerdict]:
        return [v for v in self.verdicts if not v.maximal]

    @property
    def first_failure(self) -> DegreeVerdict | None:
        f = self.failures
        return f[0] if f else None

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "n": self.n,
            "hilbert": [str(h) for h in self.hilbert.h],
            "unimodal": self.mode_report.unimodal,
            "mode": self.mode_report.mode,
            "degrees": [v.to_json() for v in self.verdicts],
            "has_wlp": self.has_wlp,
            "complete": self.complete,
            "seed": self.seed,
            "timings": self.timings,
        }

    @classmethod
    def from_json(cls, d: dict) -> WlpReport:
        return cls(
            graph=d["graph"], n=d["n"],
            hilbert=HilbertData(tuple(int(h) for h in d["hilbert"])),
            mode_report=ModeReport(d["unimodal"], d["mode"]),
            verdicts=tuple(DegreeVerdict.from_json(v) for v in d["degrees"]),
            seed=d["seed"], timings=d["timings"], complete=d["complete"],
        )


def _describe(g: Graph) -> str:
    return format_edge_list(g).strip().replace("\n", "; ")


def wlp_check(g: Graph, policy: RankPolicy | None = None, *, fail_fast: bool = False,
              name: str | None = None) -> WlpReport:
    """Decide the WLP of A(g) by certifying the rank of every level map.

    With ``fail_fast`` the scan stops at the first non-maximal degree and
    the report is marked incomplete past it.  A :class:`RankIndeterminate`
    from any degree is re-raised with that degree attached.
    """
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    policy = policy or RankPolicy()
    t0 = time.perf_counter()
    bases = all_level_bases(g)
    hilbert = HilbertData(tuple(len(b) for b in bases))
    t_bases = time.perf_counter() - t0
    verdicts = []
    complete = True
    for j in range(hilbert.socle_degree):
        m = level_map_from_bases(g, bases[j], bases[j + 1]).to_sparse()
        try:
            c = certified_rank(m, policy)
        except RankIndeterminate as exc:
            raise RankIndeterminate(f"degree {j}: {exc}") from exc
        v = DegreeVerdict(j, hilbert.h[j], hilbert.h[j + 1], c.rank, c)
        verdicts.append(v)
        if fail_fast and not v.maximal:
            complete = j == hilbert.socle_degree - 1
            break
    timings = {"bases": round(t_bases, 6), "total": round(time.perf_counter() - t0, 6)}
    return WlpReport(name or _describe(g), g.n, hilbert, mode_analysis(hilbert.h), tuple(verdicts),
                     policy.seed, timings, complete)


def map_rank(g: Graph, j: int, policy: RankPolicy | None = None,
             bases: Sequence[LevelBasis] | None = None) -> tuple[int, int, int, RankCertificate | None]:
    """(h_j, h_{j+1}, rank) of ell : [A]_j -> [A]_{j+1} for any j >= 0.

    Past the socle degree the target (or source) is the zero space and the
    rank is 0, with no certificate needed.
    """
    bases = bases if bases is not None else all_level_bases(g)
    D = len(bases) - 1
    h_j = len(bases[j]) if j <= D else 0
    h_j1 = len(bases[j + 1]) if j + 1 <= D else 0
    if h_j == 0 or h_j1 == 0:
        return h_j, h_j1, 0, None
    c = certified_rank(level_map_from_bases(g, bases[j], bases[j + 1]).to_sparse(), policy)
    return h_j, h_j1, c.rank, c


class PremiseError(ValueError):
    """A claimed failure does not actually hold."""


def _fails(kind: FailureKind, h_j: int, h_j1: int, rank: int) -> bool:
    if kind is FailureKind.SURJECTIVITY:
        return rank < h_j1
    if kind is FailureKind.INJECTIVITY:
        return rank < h_j
    raise ValueError("kind must be SURJECTIVITY or INJECTIVITY")


def tensor_failure_check(g1: Graph, i: int, g2: Graph, j: int, kind: FailureKind | str,
                         policy: RankPolicy | None = None) -> bool:
    """Does the failure of g1 at i and g2 at j carry over to their disjoint union?

    Non-surjectivity at i and j should give non-surjectivity of the union at
    i+j+1; non-injectivity should give non-injectivity at i+j.  Here "not
    surjective" means rank < h_{d+1} and "not injective" rank < h_d, with no
    reference to which side is smaller.  Raises :class:`PremiseError` if
    either premise fails.
    """
    kind = FailureKind(kind)
    for g, d, tag in ((g1, i, "first"), (g2, j, "second")):
        h, h1, r, _ = map_rank(g, d, policy)
        if not _fails(kind, h, h1, r):
            raise PremiseError(f"{tag} graph does not fail {kind.value.lower()} at degree {d}")
    target = i + j + 1 if kind is FailureKind.SURJECTIVITY else i + j
    h, h1, r, _ = map_rank(disjoint_union(g1, g2), target, policy)
    return _fails(kind, h, h1, r)


# -- families and sweeps -------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """A one-parameter graph family: PATH, CYCLE, PAN, or a tadpole with one side fixed."""

    kind: str
    fixed: int | None = None

    def __post_init__(self):
        if self.kind not in ("PATH", "CYCLE", "PAN", "TADPOLE_FIXED_M", "TADPOLE_FIXED_N"):
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind.startswith("TADPOLE") and self.fixed is None:
            raise ValueError(f"{self.kind} needs a fixed parameter")

    def graph(self, k: int) -> Graph:
        if self.kind == "PATH":
            return path(k)
        if self.kind == "CYCLE":
            return cycle(k)
        if self.kind == "PAN":
            return pan(k)
        if self.kind == "TADPOLE_FIXED_M":
            return tadpole(self.fixed, k)
        return tadpole(k, self.fixed)

    def name(self, k: int) -> str:
        return {
            "PATH": f"P_{k}",
            "CYCLE": f"C_{k}",
            "PAN": f"Pan_{k}",
            "TADPOLE_FIXED_M": f"T_{{{self.fixed},{k}}}",
            "TADPOLE_FIXED_N": f"T_{{{k},{self.fixed}}}",
        }[self.kind]

    @property
    def id(self) -> str:
        return self.kind if self.fixed is None else f"{self.kind}({self.fixed})"


@dataclass(frozen=True)
class ClassificationRow:
    param: int
    has_wlp: bool | None
    fail_degree: int | None
    fail_kind: FailureKind | None
    seconds: float = field(compare=False)
    report: WlpReport | None = field(default=None, compare=False, repr=False)
    error: str | None = None

    @property
    def indeterminate(self) -> bool:
        return self.has_wlp is None


def _classify_one(args) -> ClassificationRow:
    family, k, policy = args
    t0 = time.perf_counter()
    try:
        rep = wlp_check(family.graph(k), policy, name=family.name(k))
    except RankIndeterminate as exc:
        return ClassificationRow(k, None, None, None, time.perf_counter() - t0, None, str(exc))
    f = rep.first_failure
    return ClassificationRow(k, rep.has_wlp, None if f is None else f.j, None if f is None else f.failure_kind,
                             time.perf_counter() - t0, rep)


def classify_family(family: Family, params: Iterable[int], policy: RankPolicy | None = None,
                    parallelism: int = 1,
                    progress: Callable[[ClassificationRow], None] | None = None) -> list[ClassificationRow]:
    """Run :func:`wlp_check` over a parameter range, in parameter order.

    Indeterminate parameters appear with ``has_wlp = None`` and the error
    text rather than being dropped.
    """
    policy = policy or RankPolicy()
    jobs = [(family, k, policy) for k in params]
    rows = []
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for row in pool.map(_classify_one, jobs):
                rows.append(row)
                if progress:
                    progress(row)
    else:
        for job in jobs:
            row = _classify_one(job)
            rows.append(row)
            if progress:
                progress(row)
    return rows
