from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from hyperell.errors import ContractViolation, GraphError, InvalidWitnessError
from hyperell.families import banana, complete_bipartite, cycle_graph, path_graph
from hyperell.generators import CROSS, FIXED, SPLIT, VERTICAL, generate_hyperelliptic, random_hyperelliptic
from hyperell.morphisms import Involution, quotient, vertex_swap_involution
from hyperell.multigraph import MultiGraph, betti_genus
from hyperell.structure import (CLASS_NAMES, HyperellipticDecomposition, check_chain_lemma, check_forest_lemma,
                                decompose, eliminate_horizontal, reduce_all, reduce_fixed_components,
                                reduce_side_components)
from strategies import seeds


def _banana_swap(n: int = 3):
    g = banana(n)
    return g, Involution(g, {0: 1, 1: 0}, {e: e for e in g.edge_ids})


def _raw(g: MultiGraph, inv: Involution, fixed, a, b, **classes) -> HyperellipticDecomposition:
    full = {k: frozenset(classes.get(k, ())) for k in CLASS_NAMES}
    return HyperellipticDecomposition(g, inv, frozenset(fixed), tuple(a), tuple(b), full)


def test_banana_all_horizontal():
    g, inv = _banana_swap(4)
    d = decompose(g, inv)
    assert d.fixed == set() and d.side_a == (0,) and d.side_b == (1,)
    assert d["H"] == set(g.edge_ids)


def test_c4_reflection_classes():
    g = cycle_graph(4)
    d = decompose(g, vertex_swap_involution(g, {1: 3}))
    assert d.fixed == {0, 2} and d.n == 1
    assert len(d["T_A"]) == 2 and len(d["T_B"]) == 2


def test_classes_follow_generator_choices():
    tree = MultiGraph.from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    marking = {0: SPLIT, 1: SPLIT, 2: SPLIT, 3: FIXED, 4: FIXED}
    g, inv = generate_hyperelliptic(0, tree, marking, {0: VERTICAL, 1: CROSS}, {0: 1, 1: 0, 2: 1})
    d = decompose(g, inv)
    sizes = {k: len(v) for k, v in d.classes.items()}
    assert sizes == {"E_A": 1, "E_B": 1, "C": 2, "T_A": 1, "T_B": 1, "E_F": 2, "H": 2}


def test_decompose_json_lists_every_class():
    g, inv = _banana_swap()
    data = json.loads(decompose(g, inv).to_json())
    assert set(data["classes"]) == set(CLASS_NAMES)


def test_decompose_rejects_non_tree_quotient():
    g = complete_bipartite(3, 3)
    with pytest.raises(InvalidWitnessError):
        decompose(g, vertex_swap_involution(g, {0: 3, 1: 4, 2: 5}))


def test_decompose_rejects_loops():
    g = MultiGraph.from_edge_list(1, [(0, 0)])
    with pytest.raises(GraphError):
        decompose(g, Involution(g, {0: 0}, {0: 0}))


def test_forest_lemma_detects_cycle():
    g = MultiGraph.from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    inv = Involution(g, {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2}, {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2})
    d = _raw(g, inv, (), (0, 1, 2), (3, 4, 5), E_A={0, 1, 2}, E_B={3, 4, 5})
    assert not check_forest_lemma(d)
    with pytest.raises(ContractViolation):
        reduce_side_components(d)


def test_forest_lemma_empty_side():
    g, inv = _banana_swap()
    assert check_forest_lemma(decompose(g, inv))


def test_chain_lemma_doubled_path():
    g = MultiGraph.from_edge_list(4, [(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3)])
    inv = Involution(g, {v: v for v in range(4)}, {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4})
    assert check_chain_lemma(decompose(g, inv))


def test_chain_lemma_tripled_edge():
    g = banana(3)
    inv = Involution(g, {0: 0, 1: 1}, {0: 1, 1: 0, 2: 2})
    assert not check_chain_lemma(_raw(g, inv, (0, 1), (), (), E_F={0, 1, 2}))


def test_chain_lemma_doubled_triangle():
    g = MultiGraph.from_edge_list(3, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)])
    inv = Involution(g, {v: v for v in range(3)}, {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4})
    d = _raw(g, inv, (0, 1, 2), (), (), E_F=set(range(6)))
    assert not check_chain_lemma(d)
    with pytest.raises(ContractViolation):
        reduce_fixed_components(d)


def test_reduce_fixed_chain_with_pendant_transfers():
    tree = MultiGraph.from_edge_list(5, [(0, 1), (1, 2), (0, 3), (2, 4)])
    marking = {0: FIXED, 1: FIXED, 2: FIXED, 3: SPLIT, 4: SPLIT}
    g, inv = generate_hyperelliptic(0, tree, marking, {}, {3: 1, 4: 1})
    g1, i1, merge = reduce_fixed_components(decompose(g, inv))
    assert len(i1.fixed_vertices()) == 1
    d1 = decompose(g1, i1)
    assert len(d1["T_A"]) == 2 and len(d1["T_B"]) == 2 and not d1["E_F"]
    assert len({merge[v] for v in inv.fixed_vertices()}) == 1


def test_reduce_fixed_identity_without_fixed_edges():
    g, inv = _banana_swap()
    g1, i1, merge = reduce_fixed_components(decompose(g, inv))
    assert g1 == g and all(k == v for k, v in merge.items())


def test_eliminate_horizontal_banana():
    n = 4
    g, inv = _banana_swap(n)
    g1, i1 = eliminate_horizontal(decompose(g, inv))
    d1 = decompose(g1, i1)
    assert len(d1.fixed) == n and d1.n == 1
    assert len(d1["T_A"]) + len(d1["T_B"]) == 2 * n and not d1["H"]


def test_eliminate_horizontal_identity_when_no_horizontals():
    g = cycle_graph(4)
    inv = vertex_swap_involution(g, {1: 3})
    g1, i1 = eliminate_horizontal(decompose(g, inv))
    assert g1 == g and i1 == inv


def test_eliminate_single_horizontal_next_to_cross_pair():
    g, inv = generate_hyperelliptic(0, path_graph(2), {0: SPLIT, 1: SPLIT}, {0: CROSS}, {0: 1})
    d = decompose(g, inv)
    d1 = decompose(*eliminate_horizontal(d))
    assert not d1["H"]
    assert len(d1.fixed) == len(d.fixed) + 1 and len(d1["T_A"]) == len(d["T_A"]) + 1


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_full_reduction_leaves_cross_and_transfer_only(seed):
    g, inv = random_hyperelliptic(seed, 12)
    before = decompose(g, inv)
    assert check_forest_lemma(before) and check_chain_lemma(before)
    res = reduce_all(g, inv)
    d = res.decomposition
    assert not (d["E_F"] or d["E_A"] or d["E_B"] or d["H"])
    assert betti_genus(quotient(res.involution).quotient).is_tree
    assert set(res.vertex_merge) == set(g.vertices)
