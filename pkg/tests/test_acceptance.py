"""End-to-end acceptance checks; each prints one PASS/FAIL line."""

from __future__ import annotations

import math
import time

import networkx as nx
import pytest

from hyperell.bounds import (ckk_bound, gonality_witnesses, grid_spectrum, is_nondegenerate, laplacian_spectrum,
                             series_parallel_check, treewidth_exact)
from hyperell.catalog import hecke_fixtures, parse_hecke, reduced_dual_graph
from hyperell.drawing import mirror, verify_drawing
from hyperell.embedder import embed_bielliptic, embed_hyperelliptic
from hyperell.errors import GraphError
from hyperell.families import complete_bipartite, complete_graph, grid_graph
from hyperell.generators import random_bielliptic, random_hyperelliptic
from hyperell.morphisms import detect_hyperelliptic, enumerate_mixing_involutions, is_harmonic, quotient
from hyperell.multigraph import MultiGraph, betti_genus
from hyperell.surface import genus_distribution, is_planar, minimum_genus, rotation_count

HYPER_SEEDS = range(500)
BIELL_SEEDS = range(200)
KDN = [(3, 3), (3, 4), (4, 4)]


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, elapsed: float) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {n:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}")
        assert ok, detail
    return emit


def test_criterion_01_hyperelliptic_corpus(report):
    t = time.perf_counter()
    problems = []
    for seed in HYPER_SEEDS:
        g, inv = random_hyperelliptic(seed)
        d = embed_hyperelliptic(g, inv)
        rep = verify_drawing(d)
        pairs = {o for o in inv.vertex_orbits() if len(o) == 2}
        certified = {tuple(sorted(vs)) for vs, _ in d.certificates}
        if rep.orientable_genus != 0 or not d.symmetric:
            problems.append((seed, "genus or symmetry"))
        elif any(d.points[inv(v)] != mirror(p) for v, p in d.points.items()):
            problems.append((seed, "mirror"))
        elif not pairs <= certified:
            problems.append((seed, "certificates"))
    elapsed = time.perf_counter() - t
    report(1, not problems and elapsed < 60, f"{len(HYPER_SEEDS)} seeds, problems={problems[:3]}", elapsed)


def test_criterion_02_bielliptic_torus(report):
    t = time.perf_counter()
    worst = max(verify_drawing(embed_bielliptic(*random_bielliptic(s))).orientable_genus for s in BIELL_SEEDS)
    k33 = complete_bipartite(3, 3)
    dist = genus_distribution(k33, fold=False)
    ok = worst <= 1 and rotation_count(k33) == 64 and sum(dist.values()) == 64 and min(dist) == 1 \
        and minimum_genus(k33) == 1
    elapsed = time.perf_counter() - t
    report(2, ok and elapsed < 60, f"max output genus {worst}, K33 distribution {dict(sorted(dist.items()))}",
           elapsed)


def test_criterion_03_bipartite_genus(report):
    t = time.perf_counter()
    got = {(d, n): minimum_genus(complete_bipartite(d, n)) for d, n in KDN}
    want = {(d, n): math.ceil((d - 2) * (n - 2) / 4) for d, n in KDN}
    elapsed = time.perf_counter() - t
    report(3, got == want and elapsed < 600, f"got {got} want {want}", elapsed)


def test_criterion_04_k5(report):
    t = time.perf_counter()
    k5 = complete_graph(5)
    res = enumerate_mixing_involutions(k5)
    bettis = sorted({betti_genus(quotient(i).quotient).betti for i in res.involutions})
    genus, count = minimum_genus(k5), rotation_count(k5)
    elapsed = time.perf_counter() - t
    ok = res.complete and 2 in bettis and genus == 1 and count == 7776 and elapsed < 1
    report(4, ok, f"quotient bettis {bettis}, genus {genus}, {count} rotation systems", elapsed)


def test_criterion_05_treewidth_and_witnesses(report):
    t = time.perf_counter()
    bad = []
    for d in (3, 4):
        for n in range(d, 7):
            g = grid_graph(d, n)
            if treewidth_exact(g).value != d:
                bad.append(("tw grid", d, n))
            deg, m = gonality_witnesses(g, "grid", d=d, n=n)[0]
            h = is_harmonic(m)
            if deg != d or not h.harmonic or h.constant or not is_nondegenerate(m):
                bad.append(("witness grid", d, n))
    for d, n in KDN:
        if treewidth_exact(complete_bipartite(d, n)).value != d:
            bad.append(("tw bipartite", d, n))
    elapsed = time.perf_counter() - t
    report(5, not bad and elapsed < 120, f"failures {bad}", elapsed)


def test_criterion_06_grid_spectrum(report):
    t = time.perf_counter()
    err = 0.0
    for d in range(2, 5):
        for n in range(2, 7):
            got, want = laplacian_spectrum(grid_graph(d, n)), grid_spectrum(d, n)
            err = max(err, max(abs(a - b) for a, b in zip(got, want)))
    report(6, err <= 1e-9, f"max deviation {err:.2e}", time.perf_counter() - t)


def test_criterion_07_ckk_decreasing(report):
    t = time.perf_counter()
    vals = [ckk_bound(grid_graph(3, n)) for n in (4, 8, 16, 32)]
    ok = all(a > b for a, b in zip(vals, vals[1:]))
    report(7, ok, "values " + ", ".join(f"{v:.6f}" for v in vals), time.perf_counter() - t)


def test_criterion_08_series_parallel(report):
    t = time.perf_counter()
    bad = [s for s in HYPER_SEEDS if not series_parallel_check(random_hyperelliptic(s)[0])]
    report(8, not bad, f"{len(HYPER_SEEDS)} outputs, failing seeds {bad[:5]}", time.perf_counter() - t)


def test_criterion_09_atlas(report):
    t = time.perf_counter()
    checked, counter, hyper = 0, [], 0
    for h in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(h):
            continue
        g = MultiGraph.from_edge_list(h.number_of_nodes(), list(h.edges))
        checked += 1
        det = detect_hyperelliptic(g)
        if det.verdict is None:
            counter.append((h.number_of_nodes(), list(h.edges), "truncated"))
        elif det.verdict:
            hyper += 1
            if not is_planar(g):
                counter.append((h.number_of_nodes(), list(h.edges)))
    report(9, not counter, f"{checked} graphs, {hyper} hyperelliptic, counterexamples {counter[:2]}",
           time.perf_counter() - t)


def test_criterion_10_fixtures(report):
    t = time.perf_counter()
    mismatches, rejected = [], 0
    fixtures = hecke_fixtures()
    for fx in fixtures:
        if fx.expected_planar is None:
            try:
                parse_hecke(fx.text)
                mismatches.append((fx.name, "accepted"))
            except GraphError:
                rejected += 1
            continue
        if is_planar(reduced_dual_graph(parse_hecke(fx.text))) != fx.expected_planar:
            mismatches.append(fx.name)
    ok = not mismatches and rejected >= 1
    report(10, ok, f"{len(fixtures)} fixtures, {rejected} rejected, mismatches {mismatches}",
           time.perf_counter() - t)
