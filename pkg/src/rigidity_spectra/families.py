"""Graph generators for the test corpus.

Randomized generators draw from ``numpy.random.default_rng(seed)`` (PCG64),
so a 64-bit seed reproduces a graph bit for bit.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .graph import Edge, Graph

# H_d copy layout: offsets of a_i, b_i, u_i, v_i inside each K_{d+1} block
A, B, U, V = 0, 1, 2, 3
# connector set F with 0-based copy indices: (copy, role) -- (copy, role)
_HD_CONNECTORS = (
    ((0, B), (1, A)), ((1, B), (2, A)), ((2, B), (3, A)), ((3, B), (4, A)), ((4, B), (0, A)),
    ((0, U), (2, V)), ((2, U), (4, V)), ((4, U), (1, V)), ((1, U), (3, V)), ((3, U), (0, V)),
)


def _rng(seed):
    return np.random.default_rng(seed)


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def gen_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def gen_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def gen_complete_minus_2matching(d: int) -> Graph:
    """K_{d+1} without the disjoint edges 01 and 23."""
    if d < 4:
        raise ValueError("need d >= 4")
    missing = {(A, B), (U, V)}
    return Graph(d + 1, tuple(e for e in itertools.combinations(range(d + 1), 2) if e not in missing))


def gen_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


# -- H_d ------------------------------------------------------------------------

def hd_vertex(d: int, copy: int, offset: int) -> int:
    return copy * (d + 1) + offset


def hd_copy_vertices(d: int, copy: int) -> frozenset[int]:
    return frozenset(range(copy * (d + 1), (copy + 1) * (d + 1)))


def hd_connectors(d: int) -> list[Edge]:
    return [
        (hd_vertex(d, c1, r1), hd_vertex(d, c2, r2)) for (c1, r1), (c2, r2) in _HD_CONNECTORS
    ]


def gen_hd(d: int) -> Graph:
    """Five copies of K_{d+1} minus two disjoint edges, joined by ten connectors.

    Copy i occupies labels [i(d+1), (i+1)(d+1)); a_i b_i and u_i v_i are the
    deleted edges at offsets 0-1 and 2-3. The result is d-regular on 5(d+1)
    vertices.
    """
    if d < 6:
        raise ValueError("H_d is defined for d >= 6")
    block = gen_complete_minus_2matching(d)
    edges: list[Edge] = []
    for c in range(5):
        base = c * (d + 1)
        edges.extend((base + x, base + y) for x, y in block.edges)
    edges.extend(hd_connectors(d))
    return Graph(5 * (d + 1), tuple(edges))


# -- random families -------------------------------------------------------------

def gen_henneberg_laman(n: int, seed) -> Graph:
    """Random Laman graph grown from K2 by Henneberg moves.

    Each step is a type-I vertex addition or, when at least three vertices
    exist, a type-II edge split with probability 1/2.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = _rng(seed)
    edges: list[Edge] = [(0, 1)]
    for x in range(2, n):
        if x >= 3 and rng.random() < 0.5:
            i = int(rng.integers(len(edges)))
            u, v = edges.pop(i)
            others = [w for w in range(x) if w not in (u, v)]
            w = others[int(rng.integers(len(others)))]
            edges.extend([(u, x), (v, x), (w, x)])
        else:
            u, v = (int(t) for t in rng.choice(x, size=2, replace=False))
            edges.extend([(u, x), (v, x)])
    return Graph(n, tuple(edges))


def gen_random_regular(n: int, d: int, seed, max_restarts: int = 1000) -> Graph:
    """Simple d-regular graph from the pairing model.

    Points are paired one random pair at a time; a pair that would create a
    loop or a repeated edge is rejected and redrawn, and a dead end restarts
    the whole pairing.
    """
    if not 0 <= d < n:
        raise ValueError("need 0 <= d < n")
    if (n * d) % 2:
        raise ValueError("n*d must be even")
    rng = _rng(seed)
    for _ in range(max_restarts):
        points = [v for v in range(n) for _ in range(d)]
        nbrs: list[set[int]] = [set() for _ in range(n)]
        edges: list[Edge] = []
        stuck = False
        while points:
            placed = False
            for _ in range(64):
                i, j = rng.choice(len(points), size=2, replace=False)
                u, v = points[i], points[j]
                if u != v and v not in nbrs[u]:
                    placed = True
                    break
            if not placed:
                pairs = [
                    (i, j)
                    for i in range(len(points))
                    for j in range(i + 1, len(points))
                    if points[i] != points[j] and points[j] not in nbrs[points[i]]
                ]
                if not pairs:
                    stuck = True
                    break
                i, j = pairs[int(rng.integers(len(pairs)))]
                u, v = points[i], points[j]
            nbrs[u].add(v)
            nbrs[v].add(u)
            edges.append((u, v) if u < v else (v, u))
            for k in sorted((int(i), int(j)), reverse=True):
                points.pop(k)
        if not stuck:
            return Graph(n, tuple(edges))
    raise RuntimeError("pairing model failed to produce a simple graph")


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def gen_paley(q: int) -> Graph:
    if not _is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q % 4 != 1:
        raise ValueError(f"{q} is not 1 mod 4")
    residues = {(x * x) % q for x in range(1, q)}
    return Graph(q, tuple((i, j) for i, j in itertools.combinations(range(q), 2) if (j - i) % q in residues))


def gen_gnp(n: int, p: float, seed) -> Graph:
    rng = _rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, tuple(e for e, k in zip(pairs, keep) if k))


# -- family specs ---------------------------------------------------------------

_BUILDERS = {
    "hd": (gen_hd, ("d",)),
    "complete": (gen_complete, ("n",)),
    "complete_minus_2matching": (gen_complete_minus_2matching, ("d",)),
    "cycle": (gen_cycle, ("n",)),
    "path": (gen_path, ("n",)),
    "complete_bipartite": (gen_complete_bipartite, ("a", "b")),
    "petersen": (gen_petersen, ()),
    "laman": (gen_henneberg_laman, ("n", "seed")),
    "regular": (gen_random_regular, ("n", "d", "seed")),
    "paley": (gen_paley, ("q",)),
    "gnp": (gen_gnp, ("n", "p", "seed")),
}


@dataclass
class FamilySpec:
    family: str
    params: dict[str, Any]
    expected: dict[str, Any] = field(default_factory=dict)

    def build(self) -> Graph:
        try:
            fn, names = _BUILDERS[self.family]
        except KeyError:
            raise ValueError(f"unknown family {self.family!r}") from None
        missing = [k for k in names if k not in self.params]
        if missing:
            raise ValueError(f"family {self.family!r} needs parameters {missing}")
        return fn(*(self.params[k] for k in names))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        return cls(**json.loads(text))

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``name:key=value,key=value`` (e.g. ``hd:d=10``)."""
        name, _, rest = text.partition(":")
        params: dict[str, Any] = {}
        for item in filter(None, rest.split(",")):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"bad family parameter {item!r}")
            params[key.strip()] = float(value) if key.strip() == "p" else int(value)
        return cls(name.strip(), params)


def family_names() -> list[str]:
    return sorted(_BUILDERS)
