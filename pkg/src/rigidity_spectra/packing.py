"""Edge-disjoint spanning rigid subgraphs.

``pack_spanning_rigid`` runs matroid union (matroid partition) over k
copies of the planar rigidity matroid, using one pebble game per copy as
the independence and fundamental-circuit oracle. ``partition_condition_oracle``
brute-forces the sufficient partition condition for the same property.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .errors import SizeGuardError
from .graph import Edge, Graph, Partition, is_k_connected
from .sparsity import PebbleGame, is_rigid

MAX_ORACLE_N = 9


@dataclass
class PackingResult:
    k: int
    found: bool
    parts: list[list[Edge]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"k": self.k, "found": self.found, "parts": [[list(e) for e in p] for p in self.parts]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "PackingResult":
        return cls(data["k"], data["found"], [[tuple(e) for e in p] for p in data["parts"]])


def _game_from(n: int, edges) -> PebbleGame:
    game = PebbleGame(n)
    for u, v in edges:
        if not game.try_add(u, v):
            raise RuntimeError(f"matroid union produced a dependent set at edge ({u}, {v})")
    return game


def matroid_union(g: Graph, k: int) -> list[list[Edge]]:
    """k disjoint rigidity-independent edge sets of maximum total size.

    Each edge, in input order, is inserted along a shortest augmenting path
    of the exchange graph: y -> z (z in I_i) when I_i - z + y is independent,
    i.e. when z lies on the fundamental circuit of y in I_i. BFS visits
    circuit members in sorted order, so ties go to the lexicographically
    smallest path.
    """
    target = k * (2 * g.n - 3)
    sets: list[list[Edge]] = [[] for _ in range(k)]
    games = [PebbleGame(g.n) for _ in range(k)]
    owner: dict[Edge, int] = {}
    for x in g.edges:
        if len(owner) >= target:
            break
        parent: dict[Edge, Optional[tuple[Edge, int]]] = {x: None}
        queue = deque([x])
        sink: Optional[tuple[Edge, int]] = None
        while queue and sink is None:
            y = queue.popleft()
            for i in range(k):
                if owner.get(y) == i:
                    continue
                circuit = games[i].circuit(*y)
                if circuit is None:
                    sink = (y, i)
                    break
                for z in circuit:
                    if z not in parent:
                        parent[z] = (y, i)
                        queue.append(z)
        if sink is None:
            continue
        y, i = sink
        touched = {i}
        sets[i].append(y)
        while parent[y] is not None:
            prev, j = parent[y]
            sets[j].remove(y)
            sets[j].append(prev)
            touched.add(j)
            y = prev
        for j in touched:
            games[j] = _game_from(g.n, sets[j])
        owner = {e: j for j, s in enumerate(sets) for e in s}
    return [sorted(s) for s in sets]


def pack_spanning_rigid(g: Graph, k: int) -> PackingResult:
    """Find k edge-disjoint spanning rigid subgraphs, each as a Laman edge set."""
    if g.n < 3:
        raise ValueError("packing needs n >= 3")
    if k < 1:
        raise ValueError("k must be >= 1")
    parts = matroid_union(g, k)
    need = 2 * g.n - 3
    if all(len(p) == need for p in parts):
        return PackingResult(k, True, parts)
    return PackingResult(k, False, [])


def verify_packing(g: Graph, result: PackingResult) -> bool:
    """Parts are disjoint subsets of E(G), each of size 2n-3 and spanning rigid."""
    if not result.found:
        return False
    if len(result.parts) != result.k:
        return False
    edges = g.edge_set()
    seen: set[Edge] = set()
    for part in result.parts:
        s = {tuple(sorted(e)) for e in part}
        if len(s) != len(part) or s & seen or not s <= edges:
            return False
        seen |= s
        if len(s) != 2 * g.n - 3 or not is_rigid(Graph(g.n, tuple(sorted(s)))):
            return False
    return True


def pack_spanning_2connected(g: Graph, k: int) -> PackingResult:
    """Rigid packing whose parts are checked to be 2-connected spanning subgraphs."""
    result = pack_spanning_rigid(g, k)
    for part in result.parts:
        if not is_k_connected(Graph(g.n, tuple(part)), 2):
            raise RuntimeError("a spanning rigid part on >= 3 vertices failed 2-connectivity")
    return result


# -- partition condition ------------------------------------------------------------

def restricted_growth_strings(r: int) -> Iterator[list[int]]:
    """All set partitions of ``range(r)`` as restricted growth strings.

    The same list object is yielded each time; copy it to keep it.
    """
    labels = [0] * r

    def rec(i: int, top: int):
        if i == r:
            yield labels
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    if r == 0:
        yield labels
    else:
        yield from rec(1, 0)


@dataclass
class OracleResult:
    holds: bool
    removed: Optional[frozenset[int]] = None
    partition: Optional[Partition] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None


def partition_rhs(k: int, z_size: int, nontrivial: int, trivial: int, n_z: int) -> int:
    return k * (3 - z_size) * nontrivial + 2 * k * trivial - 3 * k - n_z


def partition_condition_oracle(g: Graph, k: int) -> OracleResult:
    """Test e_{G-Z}(pi) >= k(3-|Z|)n0' + 2k n0 - 3k - n_Z(pi) for every proper
    Z and every partition pi of V(G) - Z.

    Z is enumerated by size then lexicographically. Within the first Z that
    has a violation, the reported witness maximizes the deficit, then the
    number of parts.
    """
    n = g.n
    if n > MAX_ORACLE_N:
        raise SizeGuardError(f"partition oracle is limited to n <= {MAX_ORACLE_N} (got n={n})")
    for size in range(n):
        for z in combinations(range(n), size):
            zs = set(z)
            rest = [v for v in range(n) if v not in zs]
            pos = {v: i for i, v in enumerate(rest)}
            local = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
            zdeg = [len(g.adj[v] & zs) for v in rest]
            best = None
            for labels in restricted_growth_strings(len(rest)):
                counts: dict[int, int] = {}
                for lab in labels:
                    counts[lab] = counts.get(lab, 0) + 1
                crossing = sum(1 for a, b in local if labels[a] != labels[b])
                trivial = sum(1 for c in counts.values() if c == 1)
                nontrivial = len(counts) - trivial
                n_z = sum(zdeg[i] for i, lab in enumerate(labels) if counts[lab] == 1)
                rhs = partition_rhs(k, size, nontrivial, trivial, n_z)
                if crossing < rhs:
                    key = (rhs - crossing, len(counts))
                    if best is None or key > best[0]:
                        best = (key, list(labels), crossing, rhs)
            if best is not None:
                _, labels, lhs, rhs = best
                return OracleResult(
                    False, frozenset(zs), Partition.from_labels(rest, labels), lhs, rhs
                )
    return OracleResult(True)
