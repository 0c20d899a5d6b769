"""Edge classification of a hyperelliptic graph and the simplifying reductions.

Given the hyperelliptic involution, vertices split into the fixed set ``F``
and the swapped pairs ``(a_i, b_i)``.  Edges fall into seven classes:

====  ==========================================
E_A   both ends in A
E_B   both ends in B (the image of E_A)
E_F   both ends fixed
H     a_i - b_i   (horizontal)
C     a_i - b_j, i != j   (cross)
T_A   F - A   (transfer)
T_B   F - B
====  ==========================================
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass

from .errors import ContractViolation, GraphError, InvalidWitnessError
from .morphisms import Involution, is_mixing, quotient
from .multigraph import MultiGraph, betti_genus

CLASS_NAMES = ("E_A", "E_B", "E_F", "H", "C", "T_A", "T_B")


@dataclass(frozen=True)
class HyperellipticDecomposition:
    graph: MultiGraph
    involution: Involution
    fixed: frozenset[int]
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    classes: dict[str, frozenset[int]]

    @property
    def n(self) -> int:
        return len(self.side_a)

    def __getitem__(self, name: str) -> frozenset[int]:
        return self.classes[name]

    def to_json(self) -> str:
        return json.dumps({
            "fixed": sorted(self.fixed),
            "A": list(self.side_a),
            "B": list(self.side_b),
            "classes": {k: sorted(v) for k, v in self.classes.items()},
        }, sort_keys=True)


def _pair_depths(g: MultiGraph, iota: Involution) -> dict[int, int]:
    """Depth of each vertex's orbit in the quotient tree rooted at its smallest vertex."""
    q = quotient(iota)
    tree = q.quotient
    root = tree.vertices[0]
    depth = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(tree.neighbors(x)):
            if y not in depth:
                depth[y] = depth[x] + 1
                queue.append(y)
    rep = q.projection.vertex_map
    return {v: depth[rep[v]] for v in g.vertices}


def decompose(g: MultiGraph, iota: Involution, side_a=None) -> HyperellipticDecomposition:
    """Partition vertices and classify edges.

    ``side_a`` optionally picks which member of each pair goes to A (default:
    the smaller id).  Pairs are ordered by depth in the rooted quotient
    tree, so ``a_n`` is a deepest pair.
    """
    if iota.graph != g:
        raise GraphError("involution belongs to a different graph")
    if g.has_loops():
        raise GraphError("decompose requires a loopless graph")
    if not is_mixing(iota):
        raise InvalidWitnessError("involution is not mixing")
    if not betti_genus(quotient(iota).quotient).is_tree:
        raise InvalidWitnessError("quotient is not a tree")
    vp = iota.vertex_perm
    fixed = frozenset(v for v in g.vertices if vp[v] == v)
    chosen = set(side_a) if side_a is not None else None
    pairs = []
    for v in g.vertices:
        w = vp[v]
        if v < w:
            if chosen is None or v in chosen:
                pairs.append((v, w))
            elif w in chosen:
                pairs.append((w, v))
            else:
                raise GraphError(f"side_a contains neither {v} nor {w}")
    depth = _pair_depths(g, iota)
    pairs.sort(key=lambda p: (depth[p[0]], min(p)))
    side_a_t = tuple(a for a, _ in pairs)
    side_b_t = tuple(b for _, b in pairs)
    aset, bset = set(side_a_t), set(side_b_t)
    classes = {k: set() for k in CLASS_NAMES}
    for e, (u, v) in g.edge_items():
        if u in fixed and v in fixed:
            classes["E_F"].add(e)
        elif u in fixed or v in fixed:
            other = v if u in fixed else u
            classes["T_A" if other in aset else "T_B"].add(e)
        elif u in aset and v in aset:
            classes["E_A"].add(e)
        elif u in bset and v in bset:
            classes["E_B"].add(e)
        else:
            classes["H" if vp[u] == v else "C"].add(e)
    d = HyperellipticDecomposition(g, iota, fixed, side_a_t, side_b_t,
                                   {k: frozenset(v) for k, v in classes.items()})
    validate_decomposition(d)
    return d


def validate_decomposition(d: HyperellipticDecomposition) -> None:
    ep = d.involution.edge_perm
    g = d.graph
    seen = set()
    for name in CLASS_NAMES:
        if seen & d.classes[name]:
            raise ContractViolation("partition", f"class {name} overlaps another class")
        seen |= d.classes[name]
    if seen != set(g.edge_ids):
        raise ContractViolation("partition", "edge classes do not cover the edge set")

    def image(s):
        return frozenset(ep[e] for e in s)

    if image(d["E_A"]) != d["E_B"] or image(d["T_A"]) != d["T_B"]:
        raise ContractViolation("symmetry", "involution does not exchange the A and B classes")
    if image(d["E_F"]) != d["E_F"] or image(d["H"]) != d["H"] or image(d["C"]) != d["C"]:
        raise ContractViolation("symmetry", "involution does not preserve E_F, H or C")
    index = {a: i for i, a in enumerate(d.side_a)}
    index.update({b: i for i, b in enumerate(d.side_b)})
    for e in d["H"] | d["C"]:
        u, v = g.endpoints(e)
        same = index[u] == index[v]
        if same != (e in d["H"]):
            raise ContractViolation("classes", f"edge {e} misclassified between H and C")


def check_forest_lemma(d: HyperellipticDecomposition) -> bool:
    """(A, E_A) has no cycles (then neither has its mirror (B, E_B))."""
    g = d.graph
    sub = MultiGraph(d.side_a, {e: g.endpoints(e) for e in d["E_A"]})
    return betti_genus(sub).betti == 0


def check_chain_lemma(d: HyperellipticDecomposition) -> bool:
    """Every component of (F, E_F) is a point or a doubled path."""
    g = d.graph
    sub = MultiGraph(d.fixed, {e: g.endpoints(e) for e in d["E_F"]})
    counts = sub.pair_counts()
    if any(m != 2 or u == v for (u, v), m in counts.items()):
        return False
    simple = MultiGraph(d.fixed, dict(enumerate(counts)))
    for comp in simple.components():
        part = simple.induced(comp)
        if part.num_edges != len(comp) - 1:
            return False
        if any(part.degree(v) > 2 for v in comp):
            return False
    return True


# -- reductions -------------------------------------------------------------

def _contract_with_map(g: MultiGraph, iota: Involution, merge: dict[int, int], drop: set[int]):
    """Apply a vertex merge map (must commute with iota) and drop edges."""
    es = {}
    for e, (u, v) in g.edge_items():
        if e in drop:
            continue
        es[e] = (merge[u], merge[v])
    ng = MultiGraph(set(merge.values()), es)
    vp = {}
    for v, w in iota.vertex_perm.items():
        vp[merge[v]] = merge[w]
    ep = {e: iota.edge_perm[e] for e in ng.edge_ids}
    return ng, Involution(ng, vp, ep)


def reduce_fixed_components(d: HyperellipticDecomposition):
    """Contract every component of (F, E_F) to its smallest vertex."""
    if not check_chain_lemma(d):
        raise ContractViolation("chain lemma", "fixed components are not doubled chains")
    g = d.graph
    sub = MultiGraph(d.fixed, {e: g.endpoints(e) for e in d["E_F"]})
    merge = {v: v for v in g.vertices}
    for comp in sub.components():
        r = min(comp)
        for v in comp:
            merge[v] = r
    ng, ni = _contract_with_map(g, d.involution, merge, set(d["E_F"]))
    return ng, ni, merge


def reduce_side_components(d: HyperellipticDecomposition):
    """Contract each component of (A, E_A) and its mirror in (B, E_B)."""
    if not check_forest_lemma(d):
        raise ContractViolation("forest lemma", "(A, E_A) contains a cycle")
    g = d.graph
    vp = d.involution.vertex_perm
    sub = MultiGraph(d.side_a, {e: g.endpoints(e) for e in d["E_A"]})
    merge = {v: v for v in g.vertices}
    for comp in sub.components():
        r = min(comp)
        for v in comp:
            merge[v] = r
            merge[vp[v]] = vp[r]
    ng, ni = _contract_with_map(g, d.involution, merge, set(d["E_A"] | d["E_B"]))
    return ng, ni, merge


def eliminate_horizontal(d: HyperellipticDecomposition):
    """Subdivide every horizontal edge by a new fixed midpoint.

    The half at ``a_i`` keeps the old id; the involution swaps the halves.
    """
    g = d.graph
    es = g.edges
    vp = dict(d.involution.vertex_perm)
    ep = dict(d.involution.edge_perm)
    nv, ne = g.next_vertex_id(), g.next_edge_id()
    verts = set(g.vertices)
    aset = set(d.side_a)
    for h in sorted(d["H"]):
        u, v = g.endpoints(h)
        a, b = (u, v) if u in aset else (v, u)
        es[h] = (a, nv)
        es[ne] = (nv, b)
        ep[h], ep[ne] = ne, h
        vp[nv] = nv
        verts.add(nv)
        nv += 1
        ne += 1
    ng = MultiGraph(verts, es)
    return ng, Involution(ng, vp, ep)


@dataclass(frozen=True)
class ReductionResult:
    graph: MultiGraph
    involution: Involution
    decomposition: HyperellipticDecomposition
    vertex_merge: dict[int, int]  # original vertex -> reduced vertex


def reduce_all(g: MultiGraph, iota: Involution) -> ReductionResult:
    """Run the fixed-chain, side-forest and horizontal reductions in turn.

    Classes are recomputed from scratch after every step.
    """
    d = decompose(g, iota)
    g1, i1, m1 = reduce_fixed_components(d)
    a1 = [m1[a] for a in d.side_a]
    d1 = decompose(g1, i1, side_a=a1)
    g2, i2, m2 = reduce_side_components(d1)
    a2 = sorted({m2[a] for a in d1.side_a})
    d2 = decompose(g2, i2, side_a=a2)
    g3, i3 = eliminate_horizontal(d2)
    d3 = decompose(g3, i3, side_a=a2)
    merge = {v: m2[m1[v]] for v in g.vertices}
    return ReductionResult(g3, i3, d3, merge)
