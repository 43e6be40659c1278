"""(2,3)-pebble game: rank in the planar rigidity matroid and the rigidity,
redundant rigidity and global rigidity decisions built on it."""

from __future__ import annotations

from typing import Iterable, Optional

from .graph import Edge, Graph, is_k_connected


class PebbleGame:
    """Pebble-game state for the (2,3)-sparsity matroid on ``n`` vertices.

    Every vertex holds two units split between free pebbles and out-edges of
    the orientation of the accepted edges, so ``sum(pebbles) + |accepted| = 2n``.
    """

    K = 2
    L = 3

    def __init__(self, n: int):
        self.n = n
        self.pebbles = [self.K] * n
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.accepted: list[Edge] = []

    # -- pebble movement -------------------------------------------------

    def _fetch(self, root: int, pinned: int) -> bool:
        """Move one free pebble onto ``root`` along a reversed out-path.

        The search never enters ``pinned`` and explores the lowest-index
        head first.
        """
        parent = {root: -1, pinned: -1}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in sorted(self.out[x], reverse=True):
                if y in parent:
                    continue
                parent[y] = x
                if self.pebbles[y] > 0:
                    self.pebbles[y] -= 1
                    self.pebbles[root] += 1
                    while y != root:
                        x = parent[y]
                        self.out[x].remove(y)
                        self.out[y].append(x)
                        y = x
                    return True
                stack.append(y)
        return False

    def gather(self, u: int, v: int, want: int = 4) -> int:
        """Collect up to ``want`` pebbles on {u, v}; return how many sit there."""
        while self.pebbles[u] + self.pebbles[v] < want:
            if self.pebbles[u] < self.K and self._fetch(u, v):
                continue
            if self.pebbles[v] < self.K and self._fetch(v, u):
                continue
            break
        return self.pebbles[u] + self.pebbles[v]

    # -- matroid operations ----------------------------------------------

    def is_independent_with(self, u: int, v: int) -> bool:
        """Would the accepted set plus uv stay (2,3)-sparse? Reorients, never adds."""
        return self.gather(u, v) == self.L + 1

    def try_add(self, u: int, v: int) -> bool:
        if self.gather(u, v) < self.L + 1:
            return False
        self.pebbles[u] -= 1
        self.out[u].append(v)
        self.accepted.append((u, v) if u < v else (v, u))
        return True

    def remove(self, u: int, v: int) -> None:
        if v in self.out[u]:
            self.out[u].remove(v)
            self.pebbles[u] += 1
        elif u in self.out[v]:
            self.out[v].remove(u)
            self.pebbles[v] += 1
        else:
            raise KeyError((u, v))
        self.accepted.remove((u, v) if u < v else (v, u))

    def reach(self, roots: Iterable[int]) -> set[int]:
        seen = set(roots)
        stack = list(seen)
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def circuit(self, u: int, v: int) -> Optional[list[Edge]]:
        """Accepted edges of the fundamental circuit of uv, or None if uv is independent.

        With three pebbles held on {u, v}, the vertices reachable from them
        span the smallest tight set containing u and v; its accepted edges
        together with uv form the circuit.
        """
        if self.gather(u, v) == self.L + 1:
            return None
        region = self.reach((u, v))
        return sorted((x, y) if x < y else (y, x) for x in region for y in self.out[x])

    def rigid_region(self, u: int, v: int) -> set[int]:
        """Vertex set of the rigid component spanned from u, v.

        With three pebbles pinned on {u, v}, a vertex belongs to the
        component iff no free pebble can be drawn to it.
        """
        self.gather(u, v, want=self.L)
        free = [x for x in range(self.n) if x not in (u, v) and self.pebbles[x] > 0]
        rev: list[list[int]] = [[] for _ in range(self.n)]
        for x in range(self.n):
            for y in self.out[x]:
                rev[y].append(x)
        loose = set(free)
        stack = list(free)
        while stack:
            y = stack.pop()
            for x in rev[y]:
                if x not in loose and x not in (u, v):
                    loose.add(x)
                    stack.append(x)
        return {x for x in range(self.n) if x not in loose}

    def state_ok(self) -> bool:
        return all(self.pebbles[x] + len(self.out[x]) == self.K for x in range(self.n))


def run_pebble_game(n: int, edges: Iterable[Edge], stop_at_full: bool = True) -> PebbleGame:
    game = PebbleGame(n)
    full = max(2 * n - 3, 0) if n >= 2 else 0
    for u, v in edges:
        if stop_at_full and len(game.accepted) >= full:
            break
        game.try_add(u, v)
    return game


def rigidity_rank(g: Graph) -> tuple[int, list[Edge]]:
    """Rank of E(G) in the planar rigidity matroid and one maximum independent set."""
    game = run_pebble_game(g.n, g.edges)
    return len(game.accepted), list(game.accepted)


def _rigid_by_rank(n: int, rank: int) -> bool:
    if n == 1:
        return True
    return rank == 2 * n - 3


def is_rigid(g: Graph) -> bool:
    return _rigid_by_rank(g.n, rigidity_rank(g)[0])


def extract_spanning_tight(g: Graph) -> Optional[list[Edge]]:
    """A spanning (2,3)-tight edge set (Laman subgraph) if G is rigid, else None."""
    rank, basis = rigidity_rank(g)
    if not _rigid_by_rank(g.n, rank):
        return None
    return sorted(basis)


def is_redundantly_rigid(g: Graph) -> bool:
    """Rigid after deleting any one edge, taken literally at every n (so K2
    and K3 are not redundantly rigid).

    Only the basis edges need a re-run, because deleting a non-basis edge
    leaves the basis intact.
    """
    rank, basis = rigidity_rank(g)
    if not _rigid_by_rank(g.n, rank):
        return False
    for e in basis:
        rest = [f for f in g.edges if f != e]
        if len(run_pebble_game(g.n, rest).accepted) != 2 * g.n - 3:
            return False
    return True


def is_globally_rigid(g: Graph) -> bool:
    """3-connected and redundantly rigid, or complete on at most three vertices."""
    if g.n <= 3:
        return g.is_complete()
    return is_k_connected(g, 3) and is_redundantly_rigid(g)


def rigid_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the maximal rigid subgraphs, one per edge class.

    Every edge lies in exactly one component and each component induces
    its own edges, so the sets double as a cover of E(G).
    """
    game = run_pebble_game(g.n, g.edges, stop_at_full=False)
    comps: list[frozenset[int]] = []
    assigned: set[Edge] = set()
    for u, v in g.edges:
        if (u, v) in assigned:
            continue
        region = frozenset(game.rigid_region(u, v))
        comps.append(region)
        for a, b in g.edges:
            if a in region and b in region:
                assigned.add((a, b))
    return comps
