"""Graph matrices and their spectra.

``L = D - A``, ``A`` and ``Q = D + A`` are built as exact integer-valued
float arrays; spectra come from the in-repo tridiagonal QL solver in
:mod:`rigidity_spectra._eigen`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _eigen
from .errors import ConvergenceError, DisconnectedError, GraphError, NotRegularError
from .graph import Graph, is_connected, is_regular

MAX_SWEEPS = 60
RESIDUAL_TOL = 1e-8
RAMANUJAN_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    data: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not exactly symmetric")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def order(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, ij):
        return self.data[ij]


@dataclass(frozen=True, eq=False)
class Spectrum:
    values: np.ndarray
    max_residual: float

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def tolist(self) -> list[float]:
        return [float(x) for x in self.values]


def _edge_arrays(g: Graph):
    if not g.edges:
        return np.zeros(0, dtype=np.intp), np.zeros(0, dtype=np.intp)
    e = np.asarray(g.edges, dtype=np.intp)
    return e[:, 0], e[:, 1]


def adjacency_array(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    u, v = _edge_arrays(g)
    a[u, v] = 1.0
    a[v, u] = 1.0
    return a


def laplacian_array(g: Graph) -> np.ndarray:
    a = adjacency_array(g)
    return np.diag(a.sum(axis=1)) - a


def adjacency(g: Graph) -> SymmetricMatrix:
    return SymmetricMatrix(adjacency_array(g))


def laplacian(g: Graph) -> SymmetricMatrix:
    return SymmetricMatrix(laplacian_array(g))


def signless_laplacian(g: Graph) -> SymmetricMatrix:
    a = adjacency_array(g)
    return SymmetricMatrix(np.diag(a.sum(axis=1)) + a)


def eigenvalues_array(m: np.ndarray, check: bool = True) -> Spectrum:
    """Spectrum of a raw symmetric float array (no symmetry validation)."""
    m = np.ascontiguousarray(m, dtype=np.float64)
    if m.shape[0] < 1:
        raise ValueError("matrix order must be at least 1")
    values, worst, status = _eigen.symmetric_eigenvalues(m, MAX_SWEEPS, check)
    if status != 0:
        raise ConvergenceError(
            f"QL iteration exceeded {MAX_SWEEPS} sweeps at eigenvalue {-1 - status}"
        )
    if not np.all(np.isfinite(values)):
        raise ConvergenceError("eigensolver produced non-finite values")
    if check and worst > RESIDUAL_TOL:
        raise ConvergenceError(f"eigenpair residual {worst:.3e} exceeds {RESIDUAL_TOL}")
    return Spectrum(values, float(worst))


def eigenvalues(m: SymmetricMatrix) -> Spectrum:
    """All eigenvalues, ascending, with residual-checked extreme pairs."""
    return eigenvalues_array(m.data)


def _need_two(g: Graph):
    if g.n < 2:
        raise GraphError("spectral quantities need n >= 2")


def mu2(g: Graph) -> float:
    """Algebraic connectivity: second-smallest Laplacian eigenvalue."""
    _need_two(g)
    return float(eigenvalues(laplacian(g))[1])


def lambda2(g: Graph) -> float:
    _need_two(g)
    return float(eigenvalues(adjacency(g))[-2])


def lambda_abs(g: Graph) -> float:
    """max(|lambda_2|, |lambda_n|) of the adjacency spectrum."""
    _need_two(g)
    vals = eigenvalues(adjacency(g)).values
    return float(max(abs(vals[-2]), abs(vals[0])))


def q2(g: Graph) -> float:
    _need_two(g)
    return float(eigenvalues(signless_laplacian(g))[-2])


def nontrivial_adjacency_bound(g: Graph) -> tuple[int, float]:
    """(d, max |lambda|) over adjacency eigenvalues other than +-d, for connected d-regular g."""
    if not is_regular(g):
        raise NotRegularError("graph is not regular")
    if not is_connected(g):
        raise DisconnectedError("graph is not connected")
    d = g.degree(0)
    vals = eigenvalues(adjacency(g)).values
    tol = RAMANUJAN_TOL * max(1.0, d)
    rest = [abs(x) for x in vals if abs(x - d) > tol and abs(x + d) > tol]
    return d, max(rest, default=0.0)


def is_ramanujan(g: Graph) -> bool:
    d, worst = nontrivial_adjacency_bound(g)
    if d == 0:
        return True
    return worst <= 2.0 * math.sqrt(d - 1) + RAMANUJAN_TOL
