import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from corpus import atlas, family_graphs, gnp_sample, graphs
from rigidity_spectra.families import (
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_hd,
    gen_henneberg_laman,
)
from rigidity_spectra.graph import Graph, induced_edges, vertex_connectivity
from rigidity_spectra.numeric import numeric_rank
from rigidity_spectra.sparsity import (
    PebbleGame,
    extract_spanning_tight,
    is_globally_rigid,
    is_redundantly_rigid,
    is_rigid,
    rigid_components,
    rigidity_rank,
    run_pebble_game,
)


def is_sparse_exhaustive(n, edges):
    """Every vertex set X with |X| >= 2 spans at most 2|X| - 3 of the edges."""
    g = Graph(n, tuple(edges))
    for r in range(2, n + 1):
        for x in itertools.combinations(range(n), r):
            if len(induced_edges(g, x)) > 2 * r - 3:
                return False
    return True


def rank_of(n, edges):
    return len(run_pebble_game(n, edges, stop_at_full=False).accepted)


def test_rank_examples():
    assert rigidity_rank(gen_complete(2))[0] == 1
    assert rigidity_rank(gen_cycle(4))[0] == 4
    assert rigidity_rank(gen_complete(4))[0] == 5


def test_k4_rank_by_exhaustive_sparsity():
    k4 = gen_complete(4)
    best = max(
        r for r in range(7) for s in itertools.combinations(k4.edges, r) if is_sparse_exhaustive(4, s)
    )
    assert best == 5


def test_rigidity_examples():
    assert is_rigid(gen_complete(4))
    assert not is_rigid(gen_cycle(4))
    for d in (6, 8, 10, 12):
        assert not is_rigid(gen_hd(d))
    assert is_rigid(Graph(1, ()))


def test_extract_spanning_tight_examples():
    tight = extract_spanning_tight(gen_complete(4))
    assert len(tight) == 5 and is_sparse_exhaustive(4, tight)
    assert extract_spanning_tight(gen_cycle(4)) is None
    lam = gen_henneberg_laman(9, seed=4)
    assert sorted(extract_spanning_tight(lam)) == sorted(lam.edges)


def test_redundant_rigidity_examples():
    assert is_redundantly_rigid(gen_complete(4))
    assert not is_redundantly_rigid(gen_complete_bipartite(3, 3))
    assert not is_redundantly_rigid(gen_cycle(4))
    # literal definition at small n: deleting an edge of K3 leaves a path
    assert not is_redundantly_rigid(gen_complete(3))
    assert not is_redundantly_rigid(gen_complete(2))
    assert not is_redundantly_rigid(Graph(3, ((0, 1), (1, 2))))


def test_global_rigidity_examples():
    assert is_globally_rigid(gen_complete(3))
    assert is_globally_rigid(gen_complete(2))
    assert is_globally_rigid(gen_complete(4))
    assert not is_globally_rigid(gen_complete_bipartite(3, 3))
    assert not is_globally_rigid(gen_cycle(4))


def test_redundant_rigidity_by_definition():
    # the basis shortcut must agree with deleting every edge in turn
    for g in atlas(7):
        direct = is_rigid(g) and all(
            is_rigid(Graph(g.n, tuple(f for f in g.edges if f != e))) for e in g.edges
        )
        assert is_redundantly_rigid(g) == direct, g


def test_pebble_state_invariant():
    for g in gnp_sample(30, 4, 14, seed=5):
        game = run_pebble_game(g.n, g.edges, stop_at_full=False)
        assert game.state_ok()
        assert sum(game.pebbles) + len(game.accepted) == 2 * g.n


def test_circuit_is_minimal_dependent():
    for g in gnp_sample(25, 4, 9, seed=6):
        game = run_pebble_game(g.n, g.edges, stop_at_full=False)
        for e in g.edges:
            if e in game.accepted:
                continue
            circ = game.circuit(*e) + [e]
            assert not is_sparse_exhaustive(g.n, circ)
            for f in circ:
                assert is_sparse_exhaustive(g.n, [x for x in circ if x != f])


def test_pebble_remove_restores_state():
    game = PebbleGame(4)
    for e in gen_complete(4).edges[:5]:
        assert game.try_add(*e)
    assert not game.try_add(2, 3)
    game.remove(0, 1)
    assert game.state_ok()
    assert game.try_add(2, 3)
    with pytest.raises(KeyError):
        game.remove(0, 1)


def test_basis_is_sparse_exhaustively():
    for g in list(atlas(6)) + list(gnp_sample(30, 7, 10, seed=9)):
        _, basis = rigidity_rank(g)
        assert is_sparse_exhaustive(g.n, basis)


def test_spanning_tight_sparse_exhaustively():
    for g in gnp_sample(40, 4, 10, seed=10):
        tight = extract_spanning_tight(g)
        if tight is not None:
            assert len(tight) == 2 * g.n - 3
            assert is_sparse_exhaustive(g.n, tight)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_rank_axioms(g):
    rng = np.random.default_rng(g.m)
    edges = list(g.edges)
    a = [e for e in edges if rng.random() < 0.5]
    b = [e for e in edges if e in a or rng.random() < 0.5]
    c = [e for e in edges if rng.random() < 0.5]
    ra, rb = rank_of(g.n, a), rank_of(g.n, b)
    assert ra <= rb <= len(b)
    union = [e for e in edges if e in a or e in c]
    inter = [e for e in edges if e in a and e in c]
    assert rank_of(g.n, union) + rank_of(g.n, inter) <= ra + rank_of(g.n, c)


def test_rank_independent_of_edge_order():
    rng = np.random.default_rng(12)
    for g in gnp_sample(30, 4, 12, seed=12):
        edges = list(g.edges)
        rng.shuffle(edges)
        assert rank_of(g.n, edges) == rigidity_rank(g)[0]


def test_rank_matches_numeric_rank():
    for g in gnp_sample(500, 2, 12, seed=13):
        assert rigidity_rank(g)[0] == numeric_rank(g, seed=1), g


def test_globally_rigid_implies_rigid_and_3_connected():
    for g in list(atlas(7)) + [g for g in family_graphs() if g.n <= 30]:
        if g.n >= 4 and is_globally_rigid(g):
            assert is_rigid(g) and vertex_connectivity(g) >= 3


def test_rigid_components_cover_edges_once():
    for g in list(gnp_sample(40, 3, 12, seed=14)) + [gen_hd(6)]:
        comps = rigid_components(g)
        for e in g.edges:
            assert sum(1 for c in comps if e[0] in c and e[1] in c) == 1
        for c in comps:
            assert is_rigid(Graph(len(c), tuple(
                (sorted(c).index(u), sorted(c).index(v)) for u, v in induced_edges(g, c)
            )))


def test_hd_rigid_components_are_copies_and_connectors():
    comps = rigid_components(gen_hd(8))
    sizes = sorted(len(c) for c in comps)
    assert sizes == [2] * 10 + [9] * 5
