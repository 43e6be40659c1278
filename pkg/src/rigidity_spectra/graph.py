"""Simple undirected graphs on vertices ``0..n-1`` and the counting
primitives (boundaries, cross edges, partition counts, connectivity)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphError, ParseError

Edge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph.

    ``edges`` keeps first-seen input order (normalized so ``u < v``); the
    pebble game relies on that order for deterministic witnesses.
    """

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graphs must have at least one vertex")
        seen: set[Edge] = set()
        ordered: list[Edge] = []
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                continue
            seen.add(e)
            ordered.append(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "edges", tuple(ordered))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((self.n, self.edge_set()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Partition:
    """Partition of ``ground`` into disjoint nonempty parts."""

    ground: frozenset[int]
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        union: set[int] = set()
        total = 0
        for p in self.parts:
            if not p:
                raise GraphError("partition parts must be nonempty")
            union |= p
            total += len(p)
        if total != len(union):
            raise GraphError("partition parts overlap")
        if union != set(self.ground):
            raise GraphError("partition parts do not cover the ground set")

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]]) -> "Partition":
        ps = tuple(frozenset(p) for p in parts)
        return cls(frozenset().union(*ps), ps)

    @classmethod
    def from_labels(cls, vertices: Sequence[int], labels: Sequence[int]) -> "Partition":
        groups: dict[int, set[int]] = {}
        for v, lab in zip(vertices, labels):
            groups.setdefault(lab, set()).add(v)
        return cls(frozenset(vertices), tuple(frozenset(groups[k]) for k in sorted(groups)))

    @property
    def trivial_parts(self) -> tuple[int, ...]:
        return tuple(sorted(next(iter(p)) for p in self.parts if len(p) == 1))

    @property
    def trivial_count(self) -> int:
        return sum(1 for p in self.parts if len(p) == 1)

    @property
    def nontrivial_count(self) -> int:
        return sum(1 for p in self.parts if len(p) > 1)


# -- ingestion ---------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m`` then one ``u v`` per line.

    Blank lines and lines starting with ``#`` are skipped. Repeated edges
    collapse into one, so the header's ``m`` is informational.
    """
    header = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 0:
                raise ParseError(f"bad header {line!r}", lineno)
            header = (a, b)
            continue
        n = header[0]
        if a < 0 or b < 0:
            raise ParseError(f"negative vertex index in {line!r}", lineno)
        if a >= n or b >= n:
            raise ParseError(f"vertex index >= n={n} in {line!r}", lineno)
        if a == b:
            raise ParseError(f"loop edge at vertex {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header")
    return Graph(header[0], tuple(edges))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# -- derived graphs ------------------------------------------------------------

def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``G - Z`` relabeled contiguously and the new->old label map."""
    z = set(removed)
    if any(not 0 <= v < g.n for v in z):
        raise GraphError("vertex to delete is out of range")
    if len(z) >= g.n:
        raise GraphError("cannot delete every vertex")
    keep = tuple(v for v in range(g.n) if v not in z)
    new = {old: i for i, old in enumerate(keep)}
    edges = tuple((new[u], new[v]) for u, v in g.edges if u not in z and v not in z)
    return Graph(len(keep), edges), keep


def subgraph_from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    """Spanning subgraph on all ``n`` vertices with the given edges."""
    return Graph(n, tuple(edges))


def induced_edges(g: Graph, vertices: Iterable[int]) -> list[Edge]:
    s = set(vertices)
    return [(u, v) for u, v in g.edges if u in s and v in s]


# -- counting ------------------------------------------------------------------

def _as_subset(g: Graph, vertices: Iterable[int]) -> set[int]:
    s = set(vertices)
    if any(not 0 <= v < g.n for v in s):
        raise GraphError("vertex out of range")
    return s


def boundary(g: Graph, u_set: Iterable[int]) -> int:
    """Number of edges with exactly one end in ``U``."""
    u = _as_subset(g, u_set)
    if not u or len(u) == g.n:
        raise GraphError("boundary needs a nonempty proper subset")
    return sum(1 for a, b in g.edges if (a in u) != (b in u))


def cross_edges(g: Graph, x_set: Iterable[int], y_set: Iterable[int]) -> int:
    x, y = _as_subset(g, x_set), _as_subset(g, y_set)
    if not x or not y:
        raise GraphError("cross_edges needs nonempty sets")
    if x & y:
        raise GraphError("cross_edges needs disjoint sets")
    return sum(1 for a, b in g.edges if (a in x and b in y) or (a in y and b in x))


def partition_cross_count(g: Graph, partition: Partition) -> int:
    """``e_G(pi)``: edges whose ends lie in different parts."""
    if set(partition.ground) != set(range(g.n)):
        raise GraphError("partition does not cover V(G)")
    label = {}
    for i, p in enumerate(partition.parts):
        for v in p:
            label[v] = i
    return sum(1 for a, b in g.edges if label[a] != label[b])


def n_z_of_partition(g: Graph, z_set: Iterable[int], partition: Partition) -> int:
    """Sum over trivial parts ``{u}`` of the number of Z-neighbors of ``u``."""
    z = _as_subset(g, z_set)
    if z & partition.ground:
        raise GraphError("Z meets the partitioned ground set")
    if z | partition.ground != set(range(g.n)):
        raise GraphError("partition must cover V(G) - Z")
    if not z:
        return 0
    return sum(len(g.adj[u] & z) for u in partition.trivial_parts)


def min_degree(g: Graph) -> int:
    return min(len(a) for a in g.adj)


def is_regular(g: Graph) -> bool:
    return len({len(a) for a in g.adj}) == 1


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


# -- vertex connectivity via unit-capacity max flow -----------------------------

def _local_connectivity(g: Graph, s: int, t: int, cap: int) -> int:
    """Max number of internally vertex-disjoint s-t paths, stopping at ``cap``.

    Split network: vertex x becomes x_in=2x -> x_out=2x+1 with capacity 1
    (unbounded for s and t); each edge xy gives x_out->y_in and y_out->x_in.
    """
    big = g.n
    residual: dict[int, dict[int, int]] = {i: {} for i in range(2 * g.n)}

    def arc(a, b, c):
        residual[a][b] = residual[a].get(b, 0) + c
        residual[b].setdefault(a, 0)

    for x in range(g.n):
        arc(2 * x, 2 * x + 1, big if x in (s, t) else 1)
    for x, y in g.edges:
        arc(2 * x + 1, 2 * y, 1)
        arc(2 * y + 1, 2 * x, 1)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, c in residual[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            residual[a][b] -= 1
            residual[b][a] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """kappa(G); ``n-1`` for complete graphs, otherwise a minimum vertex cut size.

    Even's scheme: some vertex among the first kappa+1 lies outside a minimum
    cut and has a non-neighbor on the far side, so sources 0..best suffice.
    """
    if g.is_complete():
        return g.n - 1
    best = g.n - 1
    s = 0
    while s <= best and s < g.n:
        for t in range(g.n):
            if t != s and t not in g.adj[s]:
                best = min(best, _local_connectivity(g, s, t, best))
                if best == 0:
                    return 0
        s += 1
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    if k <= 0:
        return True
    if g.n <= k:
        return False
    if g.is_complete():
        return True
    for s in range(k):
        for t in range(g.n):
            if t != s and t not in g.adj[s]:
                if _local_connectivity(g, s, t, k) < k:
                    return False
    return True
