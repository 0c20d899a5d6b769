"""Random double covers of trees and unicyclic graphs.

Every base vertex is either *fixed* (one vertex upstairs) or *split* (a pair
``a < b`` swapped by the involution).  Base edges lift as

* split-split: ``vertical`` (a-a', b-b') or ``cross`` (a-b', b-a'),
* fixed-split: a transfer pair f-a, f-b,
* fixed-fixed: two parallel edges swapped by the involution,

and a split vertex may carry horizontal edges a-b.  The involution swaps
the members of every pair and the two lifts of every base edge, and fixes
horizontal edges; it is mixing by construction and its quotient is the
base graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GraphError
from .morphisms import Involution
from .multigraph import MultiGraph, betti_genus

FIXED, SPLIT = "fixed", "split"
VERTICAL, CROSS = "vertical", "cross"


@dataclass
class Lift:
    """Bookkeeping of a lift: which upstairs vertices sit over which base vertex."""

    graph: MultiGraph
    involution: Involution
    over: dict[int, tuple[int, ...]]  # base vertex -> (f,) or (a, b)


def _lift(base: MultiGraph, marking: dict, choices: dict, horizontals: dict) -> Lift:
    over: dict[int, tuple[int, ...]] = {}
    nxt = 0
    for t in base.vertices:
        if marking[t] == FIXED:
            over[t] = (nxt,)
            nxt += 1
        else:
            over[t] = (nxt, nxt + 1)
            nxt += 2
    edges: dict[int, tuple[int, int]] = {}
    eperm: dict[int, int] = {}
    eid = 0

    def pair(p, q):
        nonlocal eid
        edges[eid], edges[eid + 1] = p, q
        eperm[eid], eperm[eid + 1] = eid + 1, eid
        eid += 2

    for e, (s, t) in base.edge_items():
        if s == t:
            raise GraphError("base graph must be loopless")
        ls, lt = over[s], over[t]
        if len(ls) == 1 and len(lt) == 1:
            pair((ls[0], lt[0]), (ls[0], lt[0]))
        elif len(ls) == 1 or len(lt) == 1:
            f, (a, b) = (ls[0], lt) if len(ls) == 1 else (lt[0], ls)
            pair((f, a), (f, b))
        else:
            kind = choices.get(e, VERTICAL)
            if kind == VERTICAL:
                pair((ls[0], lt[0]), (ls[1], lt[1]))
            elif kind == CROSS:
                pair((ls[0], lt[1]), (ls[1], lt[0]))
            else:
                raise GraphError(f"unknown lift type {kind!r} for edge {e}")
    for t in base.vertices:
        k = horizontals.get(t, 0)
        if k and marking[t] == FIXED:
            raise GraphError(f"fixed vertex {t} cannot carry horizontal edges")
        for _ in range(k):
            a, b = over[t]
            edges[eid] = (a, b)
            eperm[eid] = eid
            eid += 1
    g = MultiGraph(range(nxt), edges)
    vperm = {}
    for lv in over.values():
        if len(lv) == 1:
            vperm[lv[0]] = lv[0]
        else:
            vperm[lv[0]], vperm[lv[1]] = lv[1], lv[0]
    return Lift(g, Involution(g, vperm, eperm), over)


def _resolve(rng: random.Random, base: MultiGraph, marking, choices, horizontals, p_fixed: float):
    if marking is None:
        marking = {t: (FIXED if rng.random() < p_fixed else SPLIT) for t in base.vertices}
    else:
        marking = dict(marking)
        for t in base.vertices:
            if marking.get(t) not in (FIXED, SPLIT):
                raise GraphError(f"vertex {t} needs a fixed/split marking")
    if choices is None:
        choices = {e: rng.choice((VERTICAL, CROSS)) for e in base.edge_ids}
    if horizontals is None:
        horizontals = {t: (1 if marking[t] == SPLIT and rng.random() < 0.3 else 0) for t in base.vertices}
    return marking, dict(choices), dict(horizontals)


def _connect(rng, base, marking, choices, horizontals, explicit: bool) -> Lift:
    lift = _lift(base, marking, choices, horizontals)
    while not lift.graph.is_connected():
        if explicit:
            raise GraphError("the requested lift is disconnected")
        comp = lift.graph.components()[-1]
        cands = sorted(t for t, lv in lift.over.items() if len(lv) == 2 and (lv[0] in comp or lv[1] in comp))
        t = rng.choice(cands)
        horizontals[t] = horizontals.get(t, 0) + 1
        lift = _lift(base, marking, choices, horizontals)
    return lift


def _fixed_chains_ok(tree: MultiGraph, marking) -> bool:
    deg = {t: 0 for t in tree.vertices}
    for _, (s, t) in tree.edge_items():
        if marking[s] == FIXED and marking[t] == FIXED:
            deg[s] += 1
            deg[t] += 1
    return max(deg.values(), default=0) <= 2


def generate_hyperelliptic(seed, tree: MultiGraph, marking=None, choices=None, horizontals=None,
                           p_fixed: float = 0.3) -> tuple[MultiGraph, Involution]:
    """Hyperelliptic graph with its involution, double-covering ``tree``.

    Unspecified marking / lift choices / horizontal counts are drawn from
    ``seed``.  Fixed-fixed base edges must form paths (doubled chains).  When
    everything is given explicitly a disconnected lift is rejected; otherwise
    horizontal edges are added until the lift is connected.
    """
    if not betti_genus(tree).is_tree:
        raise GraphError("base must be a tree")
    rng = random.Random(seed)
    explicit = marking is not None and choices is not None and horizontals is not None
    marking, choices, horizontals = _resolve(rng, tree, marking, choices, horizontals, p_fixed)
    if not _fixed_chains_ok(tree, marking):
        if explicit:
            raise GraphError("fixed-fixed edges must form doubled chains")
        # demote fixed vertices of fixed-degree > 2 until the constraint holds
        while not _fixed_chains_ok(tree, marking):
            for t in tree.vertices:
                if marking[t] == FIXED and sum(
                        1 for s in tree.neighbors(t) if marking[s] == FIXED) > 2:
                    marking[t] = SPLIT
                    break
    lift = _connect(rng, tree, marking, choices, horizontals, explicit)
    return lift.graph, lift.involution


def generate_bielliptic(seed, base: MultiGraph, marking=None, choices=None, horizontals=None,
                        p_fixed: float = 0.3) -> tuple[MultiGraph, Involution]:
    """Same lift over a connected base of cycle rank one."""
    rep = betti_genus(base)
    if rep.betti != 1 or rep.component_count != 1:
        raise GraphError("base must be connected with cycle rank exactly 1")
    rng = random.Random(seed)
    explicit = marking is not None and choices is not None and horizontals is not None
    marking, choices, horizontals = _resolve(rng, base, marking, choices, horizontals, p_fixed)
    lift = _connect(rng, base, marking, choices, horizontals, explicit)
    return lift.graph, lift.involution


def random_tree(rng: random.Random, n: int) -> MultiGraph:
    """Uniform-ish random labelled tree by random attachment."""
    return MultiGraph(range(n), {i - 1: (rng.randrange(i), i) for i in range(1, n)})


def random_unicyclic(rng: random.Random, n: int) -> MultiGraph:
    """Random connected graph on ``n >= 2`` vertices with cycle rank one."""
    k = rng.randint(2, min(n, 6)) if n >= 3 else 2
    edges = {}
    if k == 2:
        edges[0], edges[1] = (0, 1), (0, 1)
    else:
        for i in range(k):
            edges[i] = (i, (i + 1) % k)
    nxt = len(edges)
    for i in range(k, n):
        edges[nxt] = (rng.randrange(i), i)
        nxt += 1
    return MultiGraph(range(n), edges)


def random_hyperelliptic(seed: int, max_tree_vertices: int = 12) -> tuple[MultiGraph, Involution]:
    rng = random.Random(seed)
    tree = random_tree(rng, rng.randint(1, max_tree_vertices))
    return generate_hyperelliptic(rng.randrange(2**32), tree)


def random_bielliptic(seed: int, max_base_vertices: int = 10) -> tuple[MultiGraph, Involution]:
    rng = random.Random(seed)
    base = random_unicyclic(rng, rng.randint(2, max_base_vertices))
    return generate_bielliptic(rng.randrange(2**32), base)
