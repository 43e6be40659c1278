"""Lovász–Yemini covers: collections of induced subgraphs whose edge sets
partition E(G). A cover with value sum(2|X| - 3) below 2n - 3 certifies
that G is not rigid."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .errors import MalformedCoverError, SizeGuardError
from .families import hd_connectors, hd_copy_vertices
from .graph import Graph
from .sparsity import rigid_components

MAX_SEARCH_N = 10


@dataclass(frozen=True)
class Cover:
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "Cover":
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def value(self) -> int:
        return sum(2 * len(b) - 3 for b in self.blocks)

    def to_dict(self, g: Graph) -> dict:
        return {
            "blocks": [sorted(b) for b in self.blocks],
            "value": self.value,
            "threshold": 2 * g.n - 3,
        }

    def to_json(self, g: Graph) -> str:
        return json.dumps(self.to_dict(g))

    @classmethod
    def from_dict(cls, data: dict) -> "Cover":
        return cls.of(data["blocks"])


@dataclass(frozen=True)
class CoverVerdict:
    value: int
    threshold: int
    is_nonrigidity_witness: bool


def verify_cover(g: Graph, cover: Cover) -> CoverVerdict:
    """Check that the blocks' induced edge sets partition E(G) and compare the
    cover value with 2n - 3."""
    owner: dict[tuple[int, int], int] = {}
    for i, block in enumerate(cover.blocks):
        if len(block) < 2:
            raise MalformedCoverError(f"block {i} has fewer than two vertices")
        if any(not 0 <= v < g.n for v in block):
            raise MalformedCoverError(f"block {i} has a vertex outside V(G)")
        for u, v in g.edges:
            if u in block and v in block:
                if (u, v) in owner:
                    raise MalformedCoverError(
                        f"edge ({u}, {v}) is induced by blocks {owner[(u, v)]} and {i}", (u, v)
                    )
                owner[(u, v)] = i
    for e in g.edges:
        if e not in owner:
            raise MalformedCoverError(f"edge {e} is not induced by any block", e)
    threshold = 2 * g.n - 3
    return CoverVerdict(cover.value, threshold, cover.value < threshold)


def hd_canonical_cover(d: int) -> Cover:
    """The five copies of H_d plus the ten connector edges as blocks."""
    if d < 6:
        raise ValueError("H_d is defined for d >= 6")
    blocks = [hd_copy_vertices(d, c) for c in range(5)]
    blocks += [frozenset(e) for e in hd_connectors(d)]
    return Cover(tuple(blocks))


def component_cover(g: Graph) -> Cover:
    """Cover by rigid components; its value equals the rigidity rank of G."""
    return Cover(tuple(rigid_components(g)))


# -- exhaustive search -------------------------------------------------------------

def _forest_size(edge_ids: int, edges: list[tuple[int, int]], n: int) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    size = 0
    i = 0
    while edge_ids:
        if edge_ids & 1:
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                size += 1
        edge_ids >>= 1
        i += 1
    return size


def search_witness_cover(g: Graph) -> Optional[Cover]:
    """Exhaustive search for a cover with value < 2n - 3 (n <= 10).

    Blocks are vertex sets whose induced subgraph has no isolated vertex,
    i.e. the vertex supports of edge groups. Depth-first branch and bound
    over the lowest uncovered edge, largest blocks first, pruned by two
    lower bounds on the cost of covering the remaining edges: the size of a
    spanning forest of them, and their count divided by the best
    edges-per-cost ratio of any block that fits. Independent of the pebble
    game.
    """
    n, m = g.n, g.m
    if n > MAX_SEARCH_N:
        raise SizeGuardError(f"cover search is limited to n <= {MAX_SEARCH_N} (got n={n})")
    threshold = 2 * n - 3
    if m == 0:
        return Cover(()) if 0 < threshold else None
    edges = list(g.edges)
    index = {e: i for i, e in enumerate(edges)}

    by_edge: list[list[tuple[int, int, frozenset[int]]]] = [[] for _ in range(m)]
    for size in range(n, 1, -1):
        for combo in combinations(range(n), size):
            block = frozenset(combo)
            mask = 0
            touched = set()
            for (u, v), i in index.items():
                if u in block and v in block:
                    mask |= 1 << i
                    touched.update((u, v))
            if touched != block:
                continue
            cost = 2 * size - 3
            for i in range(m):
                if mask >> i & 1:
                    by_edge[i].append((mask, cost, block))

    # a block on s vertices covers at most s(s-1)/2 edges at cost 2s-3
    best_ratio = [1.0] * (n + 1)
    for s in range(3, n + 1):
        best_ratio[s] = max(best_ratio[s - 1], s * (s - 1) / 2 / (2 * s - 3))

    def lower_bound(uncovered: int) -> int:
        width = len({v for i in range(m) if uncovered >> i & 1 for v in edges[i]})
        count = bin(uncovered).count("1")
        return max(_forest_size(uncovered, edges, n), math.ceil(count / best_ratio[width] - 1e-9))

    failed: dict[int, int] = {}

    def dfs(uncovered: int, budget: int) -> Optional[list[frozenset[int]]]:
        # find blocks covering exactly `uncovered` with total cost < budget
        if uncovered == 0:
            return [] if budget > 0 else None
        if failed.get(uncovered, -1) >= budget:
            return None
        if lower_bound(uncovered) >= budget:
            failed[uncovered] = max(failed.get(uncovered, -1), budget)
            return None
        low = (uncovered & -uncovered).bit_length() - 1
        for mask, cost, block in by_edge[low]:
            if mask & ~uncovered or cost >= budget:
                continue
            rest = dfs(uncovered & ~mask, budget - cost)
            if rest is not None:
                return [block] + rest
        failed[uncovered] = max(failed.get(uncovered, -1), budget)
        return None

    found = dfs((1 << m) - 1, threshold)
    if found is None:
        return None
    return Cover(tuple(found))
