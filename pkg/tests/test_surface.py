from __future__ import annotations

import math
import random
from itertools import permutations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperell.errors import BudgetExceeded, GraphError
from hyperell.families import complete_bipartite, complete_graph, cycle_graph, hypercube, path_graph
from hyperell.multigraph import MultiGraph
from hyperell.surface import (RotationSystem, genus_distribution, genus_lower_bound, is_planar, minimum_genus,
                              planar_rotation, rotation_count, trace_faces)
from strategies import multigraphs


def _genus_one_k5() -> RotationSystem:
    g = complete_graph(5)
    choices = []
    for v in g.vertices:
        ds = list(g.darts(v))
        choices.append([(v, (ds[0], *p)) for p in permutations(ds[1:])])
    for combo in product(*choices):
        rs = RotationSystem(g, dict(combo))
        if trace_faces(rs).orientable_genus == 1:
            return rs
    raise AssertionError("no genus one rotation for K_5")


def _random_rotation(g: MultiGraph, rng: random.Random) -> RotationSystem:
    rot = {}
    for v in g.vertices:
        ds = list(g.darts(v))
        rng.shuffle(ds)
        rot[v] = tuple(ds)
    return RotationSystem(g, rot)


def test_triangle_has_two_faces():
    rep = trace_faces(planar_rotation(cycle_graph(3)))
    assert rep.face_count == 2 and rep.orientable_genus == 0


def test_k4_planar_rotation_has_four_faces():
    rep = trace_faces(planar_rotation(complete_graph(4)))
    assert rep.face_count == 4 and rep.orientable_genus == 0


def test_k5_genus_one_rotation_has_five_faces():
    rep = trace_faces(_genus_one_k5())
    assert rep.face_count == 5 and rep.orientable_genus == 1


def test_single_vertex_and_loop():
    assert trace_faces(RotationSystem(MultiGraph([0]), {0: ()})).face_count == 1
    g = MultiGraph.from_edge_list(1, [(0, 0)])
    rep = trace_faces(RotationSystem(g, {0: ((0, 0), (0, 1))}))
    assert rep.face_count == 2 and rep.orientable_genus == 0


def test_trace_rejects_disconnected():
    g = MultiGraph([0, 1])
    with pytest.raises(GraphError):
        trace_faces(RotationSystem(g, {0: (), 1: ()}))


def test_rotation_must_list_every_dart():
    g = cycle_graph(3)
    with pytest.raises(GraphError):
        RotationSystem(g, {0: ((0, 0),), 1: (), 2: ()})


def test_reversed_rotation_is_same_embedding():
    rs = planar_rotation(complete_graph(4))
    assert rs.same_embedding(rs.reversed())
    assert not rs.same_embedding(rs.reversed(), up_to_reflection=False)


@pytest.mark.parametrize("g, genus", [
    (complete_bipartite(3, 3), 1),
    (complete_graph(5), 1),
    (complete_graph(4), 0),
    (path_graph(6), 0),
    (hypercube(3), 0),
    (MultiGraph.from_edge_list(2, [(0, 1)] * 4), 0),
])
def test_minimum_genus_examples(g, genus):
    assert minimum_genus(g) == genus


def test_genus_cap_raises():
    with pytest.raises(BudgetExceeded):
        minimum_genus(complete_graph(7), cap=1000)


def test_genus_distribution_halves_mirror_images():
    g = complete_bipartite(3, 3)
    dist = genus_distribution(g)
    assert sum(dist.values()) * 2 == rotation_count(g) == 64
    assert min(dist) == 1


def test_unfolded_distribution_counts_every_system():
    g = complete_bipartite(3, 3)
    folded, full = genus_distribution(g), genus_distribution(g, fold=False)
    assert sum(full.values()) == rotation_count(g)
    assert {k: 2 * v for k, v in folded.items()} == dict(full)


def test_lower_bound_examples():
    assert genus_lower_bound(complete_bipartite(3, 3)) == 1
    assert genus_lower_bound(complete_graph(5)) == 1
    assert genus_lower_bound(cycle_graph(5)) == 0


def test_is_planar_examples():
    assert is_planar(complete_graph(4))
    assert not is_planar(complete_bipartite(3, 3))


def test_planar_rotation_rejects_nonplanar():
    with pytest.raises(GraphError):
        planar_rotation(complete_graph(5))


@settings(max_examples=300, deadline=None)
@given(multigraphs(max_vertices=8, max_edges=12, connected=True), st.integers(0, 1000))
def test_euler_relation_on_random_rotations(g, seed):
    rep = trace_faces(_random_rotation(g, random.Random(seed)))
    assert g.num_vertices - g.num_edges + rep.face_count == 2 - 2 * rep.orientable_genus
    darts = [d for face in rep.faces for d in face]
    assert len(darts) == len(set(darts)) == 2 * g.num_edges


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=10, connected=True))
def test_planar_rotation_has_genus_zero(g):
    if is_planar(g):
        assert trace_faces(planar_rotation(g)).orientable_genus == 0


@settings(max_examples=100, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8, connected=True))
def test_minimum_genus_is_minimum_of_distribution(g):
    if rotation_count(g) <= 20000:
        dist = genus_distribution(g)
        assert minimum_genus(g) == min(dist) >= genus_lower_bound(g)


def test_planarity_agrees_with_brute_force_genus_on_census():
    count = 0
    for h in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(h) or max(d for _, d in h.degree()) > 4:
            continue
        g = MultiGraph.from_edge_list(h.number_of_nodes(), list(h.edges))
        assert is_planar(g) == (minimum_genus(g) == 0)
        count += 1
    assert count == 462


def test_rotation_count_formula():
    g = complete_graph(5)
    assert rotation_count(g) == math.factorial(3) ** 5 == 7776
