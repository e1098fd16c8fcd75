"""Simple undirected graphs stored as adjacency bit rows.

Vertex sets are plain Python ints used as bit masks, so there is no upper
limit on the number of vertices.  Graphs are immutable; every operation
returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "GraphError",
    "path",
    "cycle",
    "tadpole",
    "pan",
    "empty_graph",
    "disjoint_union",
    "from_edge_list",
    "induced_subgraph",
    "delete_vertex",
    "delete_closed_neighborhood",
    "is_independent",
    "relabel",
    "parse_edge_list",
    "format_edge_list",
    "mask_of",
    "members",
]


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertices."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the bit mask of the open neighbourhood N(v).  ``labels``
    are display names only and do not take part in equality.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length must equal vertex count")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label count must equal vertex count")
        self.validate()

    def validate(self) -> None:
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError("vertex out of range")
            if (nb >> v) & 1:
                raise GraphError("loops not allowed")
            for u in members(nb):
                if not (self.adj[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(members(self.adj[v]))

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(self.degree(v) for v in range(self.n))

    @property
    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u] >> (u + 1) << (u + 1))]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def _build(n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError("loops not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError("vertex out of range")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), tuple(labels) if labels is not None else None)


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on ``n`` vertices with the given (deduplicated) edges."""
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    return _build(n, edges)


def empty_graph(n: int) -> Graph:
    """``n`` isolated vertices."""
    return from_edge_list(n, [])


def path(n: int) -> Graph:
    """The path P_n with edges {i, i+1}."""
    if n < 1:
        raise GraphError("path needs at least one vertex")
    return _build(n, [(i, i + 1) for i in range(n - 1)], [f"x_{i + 1}" for i in range(n)])


def cycle(m: int) -> Graph:
    if m < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return _build(m, [(i, (i + 1) % m) for i in range(m)], [f"x_{i + 1}" for i in range(m)])


def tadpole(m: int, n: int) -> Graph:
    """The tadpole T_{m,n}: cycle C_m on 0..m-1, tail P_n on m..m+n-1.

    The bridge joins m-1 (label ``x_m``) to m (label ``y_1``).  ``n = 0``
    gives the bare cycle.
    """
    if m < 3:
        raise GraphError("tadpole cycle needs at least 3 vertices")
    if n < 0:
        raise GraphError("tadpole tail length must be nonnegative")
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges += [(m + k, m + k + 1) for k in range(n - 1)]
    if n >= 1:
        edges.append((m - 1, m))
    labels = [f"x_{i + 1}" for i in range(m)] + [f"y_{k + 1}" for k in range(n)]
    return _build(m + n, edges, labels)


def pan(m: int) -> Graph:
    return tadpole(m, 1)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    adj = g1.adj + tuple(nb << shift for nb in g2.adj)
    labels = None
    if g1.labels is not None or g2.labels is not None:
        l1 = g1.labels or tuple(str(v) for v in range(g1.n))
        l2 = g2.labels or tuple(str(v) for v in range(g2.n))
        labels = l1 + tuple(f"{s}'" for s in l2)
    return Graph(g1.n + g2.n, adj, labels)


def induced_subgraph(g: Graph, keep: int) -> Graph:
    """Subgraph induced on the vertex mask ``keep``, renumbered compactly."""
    keep &= g.vertex_mask
    old = list(members(keep))
    new_index = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        adj.append(mask_of(new_index[u] for u in members(g.adj[v] & keep)))
    labels = tuple(g.labels[v] for v in old) if g.labels is not None else None
    return Graph(len(old), tuple(adj), labels)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError("vertex out of range")


def delete_vertex(g: Graph, v: int) -> tuple[Graph, int]:
    """G minus v, with the surviving mask into ``g``."""
    _check_vertex(g, v)
    keep = g.vertex_mask & ~(1 << v)
    return induced_subgraph(g, keep), keep


def delete_closed_neighborhood(g: Graph, v: int) -> tuple[Graph, int]:
    """G minus N[v], with the surviving mask into ``g``."""
    _check_vertex(g, v)
    keep = g.vertex_mask & ~g.closed_neighborhood(v)
    return induced_subgraph(g, keep), keep


def is_independent(g: Graph, s: int) -> bool:
    if s & ~g.vertex_mask:
        raise GraphError("vertex out of range")
    for v in members(s):
        if g.adj[v] & s:
            return False
    return True


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Isomorphic copy in which old vertex ``v`` becomes ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("perm must be a permutation of 0..n-1")
    adj = [0] * g.n
    for v in range(g.n):
        adj[perm[v]] = mask_of(perm[u] for u in members(g.adj[v]))
    labels = None
    if g.labels is not None:
        out = [""] * g.n
        for v in range(g.n):
            out[perm[v]] = g.labels[v]
        labels = tuple(out)
    return Graph(g.n, tuple(adj), labels)


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n <count>`` header plus one ``u v`` pair per line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphError(f"line {lineno}: expected header 'n <count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex indices")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex") from None
    if n is None:
        raise GraphError("missing header 'n <count>'")
    return from_edge_list(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
