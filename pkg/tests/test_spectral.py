import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import atlas, family_graphs, gnp_sample, graphs
from rigidity_spectra.errors import DisconnectedError, GraphError, NotRegularError
from rigidity_spectra.families import (
    gen_complete,
    gen_cycle,
    gen_gnp,
    gen_hd,
    gen_paley,
    gen_path,
    gen_petersen,
)
from rigidity_spectra.graph import (
    Graph,
    boundary,
    cross_edges,
    delete_vertices,
    min_degree,
    vertex_connectivity,
)
from rigidity_spectra.spectral import (
    SymmetricMatrix,
    adjacency,
    eigenvalues,
    eigenvalues_array,
    is_ramanujan,
    lambda2,
    laplacian,
    laplacian_array,
    mu2,
    nontrivial_adjacency_bound,
    q2,
    signless_laplacian,
)

# mu2, lambda2, q2 of H_d from numpy.linalg.eigvalsh (LAPACK), frozen
HD_SPECTRA = {
    6: (0.5785814438688206, 5.421418556131178, 11.421418556131183),
    7: (0.5175178360837052, 6.482482163916292, 13.482482163916295),
    8: (0.46803801914368304, 7.531961980856321, 15.531961980856321),
    9: (0.4272280721769608, 8.572771927823037, 17.572771927823048),
    10: (0.3930163508979181, 9.606983649102087, 19.606983649102087),
    11: (0.3639255670598249, 10.636074432940186, 21.636074432940184),
    12: (0.3388837396508332, 11.661116260349166, 23.661116260349175),
}


def test_matrix_examples():
    assert laplacian(gen_complete(2)).data.tolist() == [[1, -1], [-1, 1]]
    a = adjacency(gen_path(3)).data
    assert np.all(np.diag(a) == 0)
    assert a.sum() == 4 and np.array_equal(a, a.T)


@given(graphs())
def test_laplacian_rows_sum_to_zero(g):
    assert np.all(laplacian_array(g).sum(axis=1) == 0)


def test_symmetric_matrix_rejects_asymmetry():
    with pytest.raises(ValueError):
        SymmetricMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        SymmetricMatrix(np.zeros((2, 3)))


def test_complete_graph_spectrum():
    for n in (2, 5, 9):
        vals = eigenvalues(laplacian(gen_complete(n))).values
        assert vals[0] == pytest.approx(0, abs=1e-10)
        assert np.allclose(vals[1:], n, atol=1e-10)


def test_signless_complete_spectrum():
    vals = eigenvalues(signless_laplacian(gen_complete(6))).values
    assert np.allclose(vals, [4] * 5 + [10], atol=1e-10)


def test_path3_spectrum():
    assert np.allclose(eigenvalues(laplacian(gen_path(3))).values, [0, 1, 3], atol=1e-12)


def test_petersen_spectrum():
    vals = eigenvalues(laplacian(gen_petersen())).values
    assert np.allclose(vals, [0] + [2] * 5 + [5] * 4, atol=1e-10)


def test_cycle_mu2_closed_form():
    for n in (3, 4, 7, 12):
        assert mu2(gen_cycle(n)) == pytest.approx(2 - 2 * math.cos(2 * math.pi / n), abs=1e-12)


def test_paley_mu2_closed_form():
    for q in (5, 13, 17, 29):
        assert mu2(gen_paley(q)) == pytest.approx((q - math.sqrt(q)) / 2, abs=1e-10)


@pytest.mark.parametrize("d", sorted(HD_SPECTRA))
def test_hd_spectral_values(d):
    g = gen_hd(d)
    m2, l2, s2 = HD_SPECTRA[d]
    assert mu2(g) == pytest.approx(m2, abs=1e-10)
    assert lambda2(g) == pytest.approx(l2, abs=1e-10)
    assert q2(g) == pytest.approx(s2, abs=1e-10)
    assert 5 / (d + 3) < mu2(g) <= 5 / (d + 1) + 1e-8


def test_mu2_complete_and_disconnected():
    assert mu2(gen_complete(7)) == pytest.approx(7, abs=1e-10)
    two_triangles = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert mu2(two_triangles) == pytest.approx(0, abs=1e-10)


def test_spectral_quantities_need_two_vertices():
    for fn in (mu2, lambda2, q2):
        with pytest.raises(GraphError):
            fn(Graph(1, ()))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_eigenvalues_match_lapack(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n))
    m = m + m.T
    spec = eigenvalues_array(m)
    assert np.allclose(spec.values, np.linalg.eigvalsh(m), atol=1e-9 * max(1, np.abs(m).max()) * n)
    assert spec.max_residual <= 1e-8


@given(graphs())
def test_trace_and_zero_eigenvalue(g):
    spec = eigenvalues(laplacian(g))
    assert abs(spec.values[0]) <= 1e-8
    assert abs(spec.values.sum() - 2 * g.m) <= 1e-8 * max(1, g.m)
    assert spec.max_residual <= 1e-8


def test_ramanujan_examples():
    assert is_ramanujan(gen_petersen())
    assert is_ramanujan(gen_complete(9))
    assert is_ramanujan(gen_paley(17))
    d, worst = nontrivial_adjacency_bound(gen_paley(17))
    assert d == 8
    assert worst == pytest.approx((1 + math.sqrt(17)) / 2, abs=1e-10)


def test_ramanujan_preconditions():
    with pytest.raises(NotRegularError):
        is_ramanujan(gen_path(4))
    with pytest.raises(DisconnectedError):
        is_ramanujan(Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5))))


# -- inequalities on the corpus ---------------------------------------------------------

def _corpus():
    return list(atlas(6)) + list(family_graphs()) + list(gnp_sample(40, 5, 25, seed=3))


def test_courant_weyl_consequences():
    for g in _corpus():
        delta = min_degree(g)
        m2, l2, s2 = mu2(g), lambda2(g), q2(g)
        assert m2 + l2 >= delta - 1e-8, g
        assert delta + l2 <= s2 + 1e-8, g


def test_fiedler_connectivity_bound():
    for g in _corpus():
        if g.is_complete():
            continue
        assert mu2(g) <= vertex_connectivity(g) + 1e-8, g


def test_fiedler_interlacing_random():
    rng = np.random.default_rng(7)
    for i in range(100):
        g = gen_gnp(int(rng.integers(5, 20)), float(rng.uniform(0.2, 0.9)), [7, i])
        s = rng.choice(g.n, size=int(rng.integers(1, 4)), replace=False)
        h, _ = delete_vertices(g, s.tolist())
        if h.n < 2:
            continue
        assert mu2(g) <= mu2(h) + len(s) + 1e-8


def lh_holds(g, x, y, tol=1e-6):
    m2 = mu2(g)
    rx, ry = boundary(g, x) / len(x), boundary(g, y) / len(y)
    if m2 < max(rx, ry):
        return None
    return cross_edges(g, x, y) ** 2 >= len(x) * len(y) * (m2 - rx) * (m2 - ry) - tol


def test_cross_edge_lower_bound_random():
    rng = np.random.default_rng(11)
    qualifying = 0
    for i in range(400):
        g = gen_gnp(int(rng.integers(6, 16)), float(rng.uniform(0.5, 1.0)), [11, i])
        perm = rng.permutation(g.n)
        a = int(rng.integers(1, g.n))
        b = int(rng.integers(a + 1, g.n + 1))
        res = lh_holds(g, perm[:a].tolist(), perm[a:b].tolist())
        if res is not None:
            assert res
            qualifying += 1
    assert qualifying >= 50
