"""Randomized rigidity test: rank of the rigidity matrix at a random
placement over GF(p), p = 2**62 - 57.

By Schwartz-Zippel a random placement attains the generic rank except with
probability O(m / p), so a full-rank trial proves rigidity and repeated
deficient trials make non-rigidity overwhelmingly likely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

PRIME = 2**62 - 57
DEFAULT_TRIALS = 3


@dataclass(frozen=True)
class Placement:
    coords: tuple[tuple[int, int], ...]
    seed: object


def random_placement(g: Graph, seed) -> Placement:
    """Uniform coordinates in GF(p)^2, redrawn until no edge has coincident ends."""
    rng = np.random.default_rng(seed)
    while True:
        xy = rng.integers(0, PRIME, size=(g.n, 2), dtype=np.int64)
        coords = tuple((int(x), int(y)) for x, y in xy)
        if all(coords[u] != coords[v] for u, v in g.edges):
            return Placement(coords, seed)


def rigidity_matrix(g: Graph, placement: Placement) -> list[list[int]]:
    """m x 2n matrix over GF(p); row uv holds p(u)-p(v) at u and p(v)-p(u) at v."""
    rows = []
    for u, v in g.edges:
        (xu, yu), (xv, yv) = placement.coords[u], placement.coords[v]
        dx, dy = (xu - xv) % PRIME, (yu - yv) % PRIME
        row = [0] * (2 * g.n)
        row[2 * u], row[2 * u + 1] = dx, dy
        row[2 * v], row[2 * v + 1] = (-dx) % PRIME, (-dy) % PRIME
        rows.append(row)
    return rows


def rank_mod_p(rows: list[list[int]], limit: int | None = None) -> int:
    """Rank over GF(p) by incremental reduction to reduced row-echelon form.

    Stops early once ``limit`` independent rows have been found.
    """
    basis: dict[int, list[int]] = {}
    for row in rows:
        r = list(row)
        for col, b in basis.items():
            f = r[col]
            if f:
                r = [(x - f * y) % PRIME for x, y in zip(r, b)]
        pivot = next((c for c, x in enumerate(r) if x), None)
        if pivot is None:
            continue
        inv = pow(r[pivot], -1, PRIME)
        r = [(x * inv) % PRIME for x in r]
        for col, b in basis.items():
            f = b[pivot]
            if f:
                basis[col] = [(x - f * y) % PRIME for x, y in zip(b, r)]
        basis[pivot] = r
        if limit is not None and len(basis) >= limit:
            break
    return len(basis)


def _full_rank(n: int) -> int:
    return 2 * n - 3 if n >= 2 else 0


def numeric_rank(g: Graph, seed=0) -> int:
    """Rank of the rigidity matrix of ``g`` at one random placement."""
    if g.n < 2:
        raise ValueError("numeric_rank needs n >= 2")
    rows = rigidity_matrix(g, random_placement(g, seed))
    return rank_mod_p(rows, limit=_full_rank(g.n))


def is_rigid_numeric(g: Graph, trials: int = DEFAULT_TRIALS, seed=0) -> bool:
    """True iff some trial reaches rank 2n-3. Only false negatives are possible."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if g.n == 1:
        return True
    target = _full_rank(g.n)
    for t in range(trials):
        if numeric_rank(g, seed=[int(seed), t]) == target:
            return True
    return False
