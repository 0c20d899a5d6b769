"""Graph morphisms, mixing involutions and their quotients.

A morphism sends vertices to vertices and each edge either to an edge or to
a vertex (an edge whose endpoints land on the same target vertex is
collapsed).  Edge images are tagged tuples ``("e", edge_id)`` or
``("v", vertex_id)``.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .errors import BudgetExceeded, GraphError, NotMixingError
from .multigraph import MultiGraph, betti_genus

EdgeImage = tuple[str, int]

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class GraphMorphism:
    source: MultiGraph
    target: MultiGraph
    vertex_map: dict[int, int]
    edge_map: dict[int, EdgeImage]

    def __post_init__(self):
        src, tgt = self.source, self.target
        if set(self.vertex_map) != set(src.vertices):
            raise GraphError("vertex map must be defined on every source vertex")
        if set(self.edge_map) != set(src.edge_ids):
            raise GraphError("edge map must be defined on every source edge")
        for v, w in self.vertex_map.items():
            if not tgt.has_vertex(w):
                raise GraphError(f"vertex {v} maps to missing target vertex {w}")
        for e, (kind, x) in self.edge_map.items():
            u, v = src.endpoints(e)
            fu, fv = self.vertex_map[u], self.vertex_map[v]
            if kind == "e":
                if sorted((fu, fv)) != list(tgt.endpoints(x)):
                    raise GraphError(f"edge {e} maps to edge {x} with mismatched endpoints")
            elif kind == "v":
                if fu != x or fv != x:
                    raise GraphError(f"edge {e} collapses to {x} but its endpoints map to {fu}, {fv}")
            else:
                raise GraphError(f"bad edge image {kind!r}")

    def to_json(self) -> str:
        return json.dumps({
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "edge_map": {str(k): {"edge" if kind == "e" else "vertex": x}
                         for k, (kind, x) in sorted(self.edge_map.items())},
        }, sort_keys=True)


def identity_morphism(g: MultiGraph) -> GraphMorphism:
    return GraphMorphism(g, g, {v: v for v in g.vertices}, {e: ("e", e) for e in g.edge_ids})


def compose(first: GraphMorphism, second: GraphMorphism) -> GraphMorphism:
    """``second`` after ``first``."""
    if first.target != second.source:
        raise GraphError("morphisms are not composable")
    vmap = {v: second.vertex_map[w] for v, w in first.vertex_map.items()}
    emap = {}
    for e, (kind, x) in first.edge_map.items():
        emap[e] = ("v", second.vertex_map[x]) if kind == "v" else second.edge_map[x]
    return GraphMorphism(first.source, second.target, vmap, emap)


class HarmonicResult(NamedTuple):
    harmonic: bool
    degree: int

    @property
    def constant(self) -> bool:
        return self.degree == 0


def is_harmonic(m: GraphMorphism) -> HarmonicResult:
    """Check local constancy of edge counts at every source vertex.

    At a source vertex ``v`` the number of edges at ``v`` mapping onto a
    target edge ``e'`` at ``m(v)`` must not depend on ``e'``.  The degree is
    the number of preimages of any target edge; 0 for constant maps.
    """
    src, tgt = m.source, m.target
    for v in src.vertices:
        t = m.vertex_map[v]
        counts = Counter()
        for e in src.incident_edges(v):
            kind, x = m.edge_map[e]
            if kind == "e":
                counts[x] += 1
        target_edges = tgt.incident_edges(t)
        if not target_edges:
            continue
        values = {counts.get(x, 0) for x in target_edges}
        if len(values) > 1:
            return HarmonicResult(False, 0)
    pre = Counter(x for kind, x in m.edge_map.values() if kind == "e")
    if not pre:
        return HarmonicResult(True, 0)
    degrees = {pre.get(x, 0) for x in tgt.edge_ids}
    if len(degrees) != 1:
        return HarmonicResult(False, 0)
    return HarmonicResult(True, degrees.pop())


# -- involutions ------------------------------------------------------------

@dataclass(frozen=True)
class Involution:
    graph: MultiGraph
    vertex_perm: dict[int, int]
    edge_perm: dict[int, int]

    def __post_init__(self):
        g = self.graph
        vp, ep = self.vertex_perm, self.edge_perm
        if set(vp) != set(g.vertices) or set(ep) != set(g.edge_ids):
            raise GraphError("involution must be defined on every vertex and edge")
        for v, w in vp.items():
            if vp.get(w) != v:
                raise GraphError(f"vertex permutation is not an involution at {v}")
        for e, f in ep.items():
            if ep.get(f) != e:
                raise GraphError(f"edge permutation is not an involution at {e}")
            u, v = g.endpoints(e)
            if sorted((vp[u], vp[v])) != list(g.endpoints(f)):
                raise GraphError(f"edge {e} -> {f} does not respect endpoints")

    def __call__(self, v: int) -> int:
        return self.vertex_perm[v]

    def fixed_vertices(self) -> set[int]:
        return {v for v, w in self.vertex_perm.items() if v == w}

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.vertex_perm.items()) and all(k == v for k, v in self.edge_perm.items())

    def vertex_orbits(self) -> list[tuple[int, ...]]:
        return sorted({tuple(sorted({v, w})) for v, w in self.vertex_perm.items()})

    def edge_orbits(self) -> list[tuple[int, ...]]:
        return sorted({tuple(sorted({e, f})) for e, f in self.edge_perm.items()})

    def key(self) -> tuple:
        return (tuple(sorted(self.vertex_perm.items())), tuple(sorted(self.edge_perm.items())))

    def restricted(self, g: MultiGraph) -> "Involution":
        """Restriction to a stable subgraph ``g``."""
        return Involution(g, {v: self.vertex_perm[v] for v in g.vertices},
                          {e: self.edge_perm[e] for e in g.edge_ids})

    def format_lines(self) -> str:
        """The two permutation lines in index form (see ``format_graph``)."""
        vidx = {v: i for i, v in enumerate(self.graph.vertices)}
        eidx = {e: i for i, e in enumerate(self.graph.edge_ids)}
        vl = " ".join(str(vidx[self.vertex_perm[v]]) for v in self.graph.vertices)
        el = " ".join(str(eidx[self.edge_perm[e]]) for e in self.graph.edge_ids)
        return vl + "\n" + el + "\n"

    @classmethod
    def from_lines(cls, g: MultiGraph, vertex_images: list[int], edge_images: list[int]) -> "Involution":
        vs, es = g.vertices, g.edge_ids
        if len(vertex_images) != len(vs) or len(edge_images) != len(es):
            raise GraphError("permutation line lengths do not match the graph")
        return cls(g, {vs[i]: vs[j] for i, j in enumerate(vertex_images)},
                   {es[i]: es[j] for i, j in enumerate(edge_images)})


def vertex_swap_involution(g: MultiGraph, pairs: dict[int, int]) -> Involution:
    """Build the involution with the given vertex action, extending to edges.

    ``pairs`` may list each swapped pair once; unlisted vertices are fixed.
    Edges are extended canonically (see ``_canonical_edge_perm``); raises if
    no mixing extension exists.
    """
    perm = {v: v for v in g.vertices}
    for a, b in pairs.items():
        perm[a], perm[b] = b, a
    ep = _canonical_edge_perm(g, perm)
    if ep is None:
        raise NotMixingError("no mixing edge action extends this vertex permutation")
    return Involution(g, perm, ep)


def is_mixing(inv: Involution) -> bool:
    """Every edge fixed by the involution has its endpoints swapped."""
    g = inv.graph
    for e, f in inv.edge_perm.items():
        if e == f:
            u, v = g.endpoints(e)
            if inv.vertex_perm[u] != v:
                return False
    return True


@dataclass(frozen=True)
class QuotientResult:
    quotient: MultiGraph
    projection: GraphMorphism
    fixed_vertices: frozenset[int]


def quotient(inv: Involution) -> QuotientResult:
    """Quotient by a mixing involution.

    Quotient vertices are the vertex orbits, identified by their smallest
    member; quotient edges are the edge orbits with inequivalent endpoints,
    identified by their smallest edge id.  Edges joining ``v`` to its image
    collapse onto the quotient vertex.
    """
    if not is_mixing(inv):
        raise NotMixingError("quotient requires a mixing involution")
    g = inv.graph
    vp = inv.vertex_perm
    rep = {v: min(v, vp[v]) for v in g.vertices}
    qedges: dict[int, tuple[int, int]] = {}
    emap: dict[int, EdgeImage] = {}
    for e, (u, v) in g.edge_items():
        ru, rv = rep[u], rep[v]
        if ru == rv:
            emap[e] = ("v", ru)
            continue
        qid = min(e, inv.edge_perm[e])
        qedges[qid] = (ru, rv)
        emap[e] = ("e", qid)
    q = MultiGraph(set(rep.values()), qedges)
    proj = GraphMorphism(g, q, rep, emap)
    fixed = frozenset(v for v in g.vertices if vp[v] == v)
    return QuotientResult(q, proj, fixed)


# -- enumeration --------------------------------------------------------------

def _canonical_edge_perm(g: MultiGraph, perm: dict[int, int]) -> dict[int, int] | None:
    """Canonical mixing edge action over a vertex involution, or None.

    Parallel classes between swapped endpoints stay pointwise fixed; classes
    between two fixed endpoints are paired off in id order (odd size: no
    mixing extension); other classes map in id order onto their image class.
    """
    classes: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e, ends in g.edge_items():
        classes[ends].append(e)
    ep: dict[int, int] = {}
    for (u, v), ids in classes.items():
        img = tuple(sorted((perm[u], perm[v])))
        other = classes.get(img)
        if other is None or len(other) != len(ids):
            return None
        if img == (u, v):
            if u == v or perm[u] != u:
                # loops at a fixed vertex, or endpoints swapped: fixed edges are fine
                if u == v and perm[u] != u:
                    return None
                for e in ids:
                    ep[e] = e
            else:
                if len(ids) % 2:
                    return None
                for x, y in zip(ids[::2], ids[1::2]):
                    ep[x], ep[y] = y, x
        else:
            for x, y in zip(ids, other):
                ep[x] = y
    return ep


def _wl_colors(g: MultiGraph) -> dict[int, int]:
    """1-dimensional Weisfeiler-Leman colouring with edge multiplicities."""
    pc = g.pair_counts()
    nbr: dict[int, list[tuple[int, int]]] = defaultdict(list)
    loops = Counter()
    for (u, v), m in pc.items():
        if u == v:
            loops[u] = m
        else:
            nbr[u].append((v, m))
            nbr[v].append((u, m))
    color = {v: (g.degree(v), loops[v]) for v in g.vertices}
    for _ in range(g.num_vertices):
        sig = {v: (color[v], tuple(sorted((color[w], m) for w, m in nbr[v]))) for v in g.vertices}
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: palette[sig[v]] for v in g.vertices}
        if len(set(new.values())) == len(set(color.values())):
            color = new
            break
        color = new
    return color


def iter_mixing_involutions(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> Iterator[Involution]:
    """Yield every non-identity mixing involution (canonical edge action).

    Backtracks over order-two vertex permutations that preserve edge
    multiplicities, pruned by Weisfeiler-Leman colours.  Raises
    :class:`BudgetExceeded` once more than ``budget`` search nodes are used.
    Results come out in a deterministic order.
    """
    verts = list(g.vertices)
    if not verts:
        return
    color = _wl_colors(g)
    pc = g.pair_counts()

    def mult(a, b):
        return pc.get((a, b) if a <= b else (b, a), 0)

    # search order: breadth-first from a vertex in the rarest colour class
    freq = Counter(color.values())
    order: list[int] = []
    seen: set[int] = set()
    for s in sorted(verts, key=lambda v: (freq[color[v]], v)):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(g.neighbors(x)):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    nbrs = {v: g.neighbors(v) for v in verts}
    by_color: dict[int, list[int]] = defaultdict(list)
    for v in verts:
        by_color[color[v]].append(v)

    perm: dict[int, int] = {}
    nodes = 0

    def consistent(v: int, w: int) -> bool:
        # check multiplicities between v (and w) and all assigned vertices
        for x in nbrs[v] | nbrs[w]:
            if x in perm:
                if mult(v, x) != mult(w, perm[x]) or mult(w, x) != mult(v, perm[x]):
                    return False
        if mult(v, w) != mult(w, v):
            return False
        return True

    def rec(i: int) -> Iterator[dict[int, int]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"involution search exceeded budget {budget}")
        while i < len(order) and order[i] in perm:
            i += 1
        if i == len(order):
            yield dict(perm)
            return
        v = order[i]
        for w in by_color[color[v]]:
            if w in perm:
                continue
            if not consistent(v, w):
                continue
            # also the images of already assigned vertices must not conflict
            # with unassigned-vs-assigned multiplicities for w
            perm[v] = w
            perm[w] = v
            yield from rec(i + 1)
            del perm[v]
            if w != v:
                del perm[w]

    for p in rec(0):
        # final full check (cheap, guards the incremental test)
        if any(mult(a, b) != mult(p[a], p[b]) for (a, b) in pc):
            continue
        ep = _canonical_edge_perm(g, p)
        if ep is None:
            continue
        inv = Involution(g, p, ep)
        if inv.is_identity() or not is_mixing(inv):
            continue
        yield inv


@dataclass
class EnumerationResult:
    involutions: list[Involution] = field(default_factory=list)
    complete: bool = True


def enumerate_mixing_involutions(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    if not g.is_connected():
        raise GraphError("involution enumeration requires a connected graph")
    res = EnumerationResult()
    try:
        for inv in iter_mixing_involutions(g, budget):
            res.involutions.append(inv)
    except BudgetExceeded:
        res.complete = False
    return res


@dataclass(frozen=True)
class Detection:
    """``verdict`` is None when the search was truncated without a witness."""

    verdict: bool | None
    witness: Involution | None
    complete: bool


def _detect(g: MultiGraph, want_betti: int, budget: int) -> Detection:
    if not g.is_connected():
        raise GraphError("detection requires a connected graph")
    try:
        for inv in iter_mixing_involutions(g, budget):
            q = quotient(inv).quotient
            rep = betti_genus(q)
            if rep.betti == want_betti and rep.component_count == 1:
                return Detection(True, inv, True)
    except BudgetExceeded:
        return Detection(None, None, False)
    return Detection(False, None, True)


def detect_hyperelliptic(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> Detection:
    """Find a mixing involution whose quotient is a tree."""
    return _detect(g, 0, budget)


def detect_bielliptic(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> Detection:
    """Find a mixing involution whose quotient has cycle rank exactly one."""
    return _detect(g, 1, budget)


def hyperelliptic_witnesses(g: MultiGraph, budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    res = enumerate_mixing_involutions(g, budget)
    res.involutions = [i for i in res.involutions if betti_genus(quotient(i).quotient).is_tree]
    return res
