from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from hyperell.bounds import treewidth_exact
from hyperell.drawing import PLANE, TORUS, mirror, verify_drawing
from hyperell.embedder import (FaceConstraint, embed_bielliptic, embed_hyperelliptic, embed_with_two_pairs,
                               inductive_frames)
from hyperell.errors import ContractViolation, GraphError, InvalidWitnessError
from hyperell.families import banana, complete_bipartite, cycle_graph
from hyperell.generators import FIXED, SPLIT, generate_hyperelliptic, random_bielliptic, random_hyperelliptic
from hyperell.morphisms import quotient, vertex_swap_involution
from hyperell.multigraph import MultiGraph, is_isomorphic
from strategies import bielliptic_graphs, hyperelliptic_graphs


def _outer_vertices(d) -> set[int]:
    rep = verify_drawing(d)
    return rep.face_vertices(d.graph, rep.outer_face)


def _left_half(d) -> MultiGraph:
    """Vertices with x <= 0 and the edges drawn entirely in x <= 0."""
    keep = sorted(v for v, p in d.points.items() if p[0] <= 0)
    relabel = {v: i for i, v in enumerate(keep)}
    pairs = []
    for e, (u, v) in d.graph.edge_items():
        pts = [p for piece in d.polylines[e] for p in piece]
        if u in relabel and v in relabel and all(p[0] <= 0 for p in pts):
            pairs.append((relabel[u], relabel[v]))
    return MultiGraph.from_edge_list(len(keep), pairs)


# -- small named cases -----------------------------------------------------------

def test_banana_b4_pair_on_outer_face():
    g = banana(4)
    inv = vertex_swap_involution(g, {0: 1})
    d = embed_hyperelliptic(g, inv)
    assert d.surface == PLANE and d.symmetric
    assert verify_drawing(d).orientable_genus == 0
    assert {0, 1} <= _outer_vertices(d)
    assert d.points[1] == mirror(d.points[0])


def test_c4_reflection_is_symmetric_square():
    g = cycle_graph(4)
    inv = vertex_swap_involution(g, {1: 3})
    d = embed_hyperelliptic(g, inv)
    assert d.points[0][0] == 0 and d.points[2][0] == 0
    assert d.points[3] == mirror(d.points[1])
    rep = verify_drawing(d)
    assert rep.face_count == 2 and rep.orientable_genus == 0
    assert any(set(vs) == {1, 3} for vs, _ in d.certificates)


def test_c6_two_pairs_share_outer_face():
    g = cycle_graph(6)
    inv = vertex_swap_involution(g, {1: 5, 2: 4})
    d = embed_with_two_pairs(g, inv, (1, 5), (2, 4))
    assert {1, 2, 4, 5} <= _outer_vertices(d)
    assert FaceConstraint((frozenset({1, 2, 4, 5}),)).satisfied(d)


def test_two_pairs_with_fixed_midpoint_and_repeated_set():
    tree = MultiGraph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
    g, inv = generate_hyperelliptic(0, tree, {0: SPLIT, 1: FIXED, 2: FIXED, 3: FIXED}, {}, {})
    pair = next(o for o in inv.vertex_orbits() if len(o) == 2)
    fixed = sorted(inv.fixed_vertices())
    for target in fixed:
        d = embed_with_two_pairs(g, inv, pair, target)
        assert set(pair) | {target} <= _outer_vertices(d)
    d = embed_with_two_pairs(g, inv, pair, pair)
    assert set(pair) <= _outer_vertices(d)


def test_two_pairs_rejects_non_orbits():
    g = cycle_graph(6)
    inv = vertex_swap_involution(g, {1: 5, 2: 4})
    with pytest.raises(GraphError):
        embed_with_two_pairs(g, inv, (1, 4), 0)
    with pytest.raises(GraphError):
        embed_with_two_pairs(g, inv, (1, 5), 9)


def test_k33_on_torus_has_genus_one():
    g = complete_bipartite(3, 3)
    d = embed_bielliptic(g, vertex_swap_involution(g, {0: 3, 1: 4, 2: 5}))
    assert d.surface == TORUS
    assert verify_drawing(d).orientable_genus == 1


def test_low_betti_bielliptic_is_drawn_planar():
    g = cycle_graph(4)
    d = embed_bielliptic(g, vertex_swap_involution(g, {0: 2, 1: 3}))
    assert d.surface == PLANE and verify_drawing(d).orientable_genus == 0


# -- errors ------------------------------------------------------------------------

def test_invalid_witnesses_rejected():
    g = complete_bipartite(3, 3)
    biell = vertex_swap_involution(g, {0: 3, 1: 4, 2: 5})
    with pytest.raises(InvalidWitnessError):
        embed_hyperelliptic(g, biell)
    c = cycle_graph(4)
    hyp = vertex_swap_involution(c, {1: 3})
    with pytest.raises(InvalidWitnessError):
        embed_bielliptic(c, hyp)
    with pytest.raises(InvalidWitnessError):
        embed_hyperelliptic(cycle_graph(4), biell)


def test_loops_and_disconnected_inputs_rejected():
    g = MultiGraph.from_edge_list(2, [(0, 1), (0, 1), (0, 0), (1, 1)])
    with pytest.raises(GraphError):
        embed_hyperelliptic(g, vertex_swap_involution(g, {0: 1}))
    h = MultiGraph.from_edge_list(4, [(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        embed_hyperelliptic(h, vertex_swap_involution(h, {0: 1, 2: 3}))


def test_contract_violation_names_the_lemma():
    err = ContractViolation("attachment", "two edges")
    assert err.lemma == "attachment" and "[attachment]" in str(err)


# -- the generator corpus -----------------------------------------------------------

@pytest.mark.parametrize("seed", range(40))
def test_hyperelliptic_corpus_symmetric_and_certified(seed):
    g, inv = random_hyperelliptic(seed)
    d = embed_hyperelliptic(g, inv)
    rep = verify_drawing(d)
    assert rep.orientable_genus == 0 and d.symmetric
    for v, p in d.points.items():
        assert d.points[inv(v)] == mirror(p)
    pairs = {o for o in inv.vertex_orbits() if len(o) == 2}
    assert pairs <= {tuple(sorted(vs)) for vs, _ in d.certificates}


@settings(max_examples=40, deadline=None)
@given(hyperelliptic_graphs())
def test_left_half_reads_off_the_quotient(gi):
    g, inv = gi
    d = embed_hyperelliptic(g, inv)
    assert is_isomorphic(_left_half(d), quotient(inv).quotient)


@settings(max_examples=40, deadline=None)
@given(bielliptic_graphs())
def test_bielliptic_outputs_have_genus_at_most_one(gi):
    g, alpha = gi
    assert verify_drawing(embed_bielliptic(g, alpha)).orientable_genus <= 1


def test_bielliptic_corpus_sweep():
    for seed in range(60):
        g, alpha = random_bielliptic(seed)
        assert verify_drawing(embed_bielliptic(g, alpha)).orientable_genus <= 1, seed


@settings(max_examples=40, deadline=None)
@given(hyperelliptic_graphs())
def test_hyperelliptic_treewidth_at_most_two(gi):
    g, _ = gi
    assert treewidth_exact(g).value <= 2


# -- inductive frames -------------------------------------------------------------

@pytest.mark.parametrize("seed", range(30))
def test_frames_attach_each_component_once(seed):
    g, inv = random_hyperelliptic(seed)
    d = embed_hyperelliptic(g, inv)
    for frame in inductive_frames(g, inv, d):
        assert len(frame.attach_edges) == len(frame.components) == len(frame.psi)
        assert set(frame.psi) <= {0, 1}
        assert all(isinstance(f, bool) for f in frame.flips)


def test_trace_log_has_one_line_per_frame():
    g, inv = random_hyperelliptic(3)
    trace: list[str] = []
    embed_hyperelliptic(g, inv, trace)
    frames = inductive_frames(g, inv)
    assert len(trace) == len(frames)
    assert all(line.startswith("level=") for line in trace)
    assert [int(line.split()[0][6:]) for line in trace] == sorted(
        (f.level for f in frames), reverse=True)


def test_flip_recorded_only_with_drawing():
    g, inv = random_hyperelliptic(5)
    assert all(not any(f.flips) for f in inductive_frames(g, inv))
