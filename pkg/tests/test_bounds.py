from __future__ import annotations

import itertools
import json
import math

import networkx as nx
import pytest
from hypothesis import given, settings

from hyperell.bounds import (BoundsReport, bounds_report, ckk_bound, gonality_witnesses, grid_spectrum,
                             grid_witness, hypercube_chain, is_nondegenerate, laplacian_spectrum,
                             series_parallel_check, spectral_lower_bound, treewidth_exact)
from hyperell.errors import GraphError, HyperellError, UnsupportedError
from hyperell.families import (complete_bipartite, complete_graph, cycle_graph, grid_graph, hypercube,
                               path_graph, star_graph)
from hyperell.morphisms import is_harmonic
from hyperell.multigraph import MultiGraph
from strategies import hyperelliptic_graphs, multigraphs


def _from_nx(h: nx.Graph) -> MultiGraph:
    h = nx.convert_node_labels_to_integers(h)
    return MultiGraph.from_edge_list(h.number_of_nodes(), list(h.edges))


def _brute_treewidth(g: MultiGraph) -> int:
    """Minimum over all elimination orderings of the largest neighbourhood."""
    h = g.simple()
    if h.number_of_edges() == 0:
        return 0
    best = len(h)
    for order in itertools.permutations(h.nodes):
        w, k = h.copy(), 0
        for v in order:
            nb = list(w.neighbors(v))
            k = max(k, len(nb))
            w.add_edges_from(itertools.combinations(nb, 2))
            w.remove_node(v)
            if k >= best:
                break
        best = min(best, k)
    return best


# -- treewidth -------------------------------------------------------------------

def test_trees_and_cycles():
    assert treewidth_exact(path_graph(5)).value == 1
    assert treewidth_exact(star_graph(4)).value == 1
    assert treewidth_exact(cycle_graph(5)).value == 2
    assert treewidth_exact(MultiGraph.from_edge_list(3, [])).value == 0


@pytest.mark.parametrize("d,n", [(3, 3), (3, 4), (4, 4), (2, 5)])
def test_complete_bipartite(d, n):
    assert treewidth_exact(complete_bipartite(d, n)).value == min(d, n)


@pytest.mark.parametrize("d,n", [(2, 2), (3, 4), (3, 6), (4, 5), (4, 6)])
def test_grids(d, n):
    assert treewidth_exact(grid_graph(d, n)).value == min(d, n)


def test_search_closes_heuristic_gap():
    petersen = _from_nx(nx.petersen_graph())
    assert treewidth_exact(petersen).value == 4
    assert treewidth_exact(complete_graph(6)).value == 5


def test_budget_keeps_honest_bounds():
    g = _from_nx(nx.petersen_graph())
    res = treewidth_exact(g, budget=0)
    assert res.lower <= 4 <= res.upper
    if not res.exact:
        with pytest.raises(HyperellError):
            res.value


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=12))
def test_treewidth_matches_brute_force(g):
    assert treewidth_exact(g).value == _brute_treewidth(g)


def test_series_parallel():
    assert not series_parallel_check(complete_graph(4))
    for n in range(3, 8):
        assert series_parallel_check(cycle_graph(n))
    assert series_parallel_check(MultiGraph.from_edge_list(2, [(0, 1), (0, 1), (0, 0)]))
    assert not series_parallel_check(complete_bipartite(3, 3))


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=12))
def test_series_parallel_agrees_with_treewidth(g):
    assert series_parallel_check(g) == (treewidth_exact(g).value <= 2)


@settings(max_examples=40, deadline=None)
@given(hyperelliptic_graphs())
def test_hyperelliptic_graphs_are_series_parallel(gi):
    assert series_parallel_check(gi[0])


# -- witnesses ------------------------------------------------------------------------

def test_grid_witness_degree_three():
    found = gonality_witnesses(grid_graph(3, 5), "grid", d=3, n=5)
    assert [deg for deg, _ in found] == [3, 5]
    assert all(is_nondegenerate(m) for _, m in found)
    assert gonality_witnesses(grid_graph(4, 3), "grid", d=4, n=3)[0][0] == 3
    assert [deg for deg, _ in gonality_witnesses(grid_graph(1, 4), "grid", d=1, n=4)] == [1]
    with pytest.raises(GraphError):
        grid_witness(grid_graph(3, 4), 3, 5)


def test_bipartite_witness_degree_three():
    (deg, _), = gonality_witnesses(complete_bipartite(3, 4), "complete_bipartite", d=3, n=4)
    assert deg == 3


def test_hypercube_chain_degrees_multiply():
    steps = hypercube_chain(3)
    assert [is_harmonic(s).degree for s in steps] == [2, 2]
    (deg, m), = gonality_witnesses(hypercube(3), "hypercube", n=3)
    assert deg == 4 and is_harmonic(m).harmonic


def test_k4_generic_witness():
    found = gonality_witnesses(complete_graph(4))
    assert found and found[0][0] <= 3


def test_unknown_family_hint():
    with pytest.raises(UnsupportedError):
        gonality_witnesses(cycle_graph(4), "moebius")


def test_hyperelliptic_witness_has_degree_two():
    assert gonality_witnesses(cycle_graph(5), "hyperelliptic")[0][0] == 2


# -- spectra ---------------------------------------------------------------------------

def test_small_spectra():
    assert laplacian_spectrum(path_graph(2)) == pytest.approx([0, 2])
    assert laplacian_spectrum(cycle_graph(4)) == pytest.approx([0, 2, 2, 4])


def test_grid_spectrum_closed_form():
    assert laplacian_spectrum(grid_graph(3, 4)) == pytest.approx(grid_spectrum(3, 4), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=12))
def test_spectrum_invariants(g):
    spec = laplacian_spectrum(g)
    assert sum(1 for x in spec if abs(x) < 1e-9) == len(g.components())
    non_loops = sum(1 for e in g.edge_ids if not g.is_loop(e))
    assert sum(spec) == pytest.approx(2 * non_loops, abs=1e-8)
    assert all(x >= -1e-9 for x in spec)


def test_ckk_decreasing_on_long_grids():
    vals = [ckk_bound(grid_graph(3, n)) for n in (4, 8, 16, 32)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("g,witness", [(grid_graph(3, 5), 3), (complete_bipartite(3, 4), 3), (hypercube(3), 4)])
def test_spectral_bound_below_witness(g, witness):
    assert spectral_lower_bound(g) <= witness


def test_spectral_formula_plugs():
    g = cycle_graph(5)
    assert spectral_lower_bound(g, lambda h: 1.5) == 1.5
    with pytest.raises(UnsupportedError):
        spectral_lower_bound(g, "nonexistent")
    with pytest.raises(UnsupportedError):
        spectral_lower_bound(g, None)
    with pytest.raises(GraphError):
        spectral_lower_bound(MultiGraph.from_edge_list(4, [(0, 1), (2, 3)]))


# -- report ---------------------------------------------------------------------------------

def test_bounds_report_json():
    rep = bounds_report(grid_graph(3, 5), "grid", d=3, n=5)
    assert isinstance(rep, BoundsReport)
    data = json.loads(rep.to_json())
    assert data["treewidth"] == {"lower": 3, "upper": 3}
    assert data["gonality_lower"] == 3 and data["gonality_upper"] == 3
    assert data["upper_source"] == "witness" and data["witness"] is not None
    assert len(data["spectrum"]) == 15
    assert data["gonality_lower"] >= math.ceil(data["spectral_bound"] - 1e-9)
