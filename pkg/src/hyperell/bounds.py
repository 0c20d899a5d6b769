"""Lower and upper bounds for stable gonality.

Treewidth (of the underlying simple graph) bounds stable gonality from
below; explicit harmonic morphisms to trees bound it from above.  The
Laplacian spectrum feeds a pluggable spectral lower bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import GraphError, HyperellError, UnsupportedError
from .morphisms import GraphMorphism, compose, detect_hyperelliptic, is_harmonic, quotient
from .morphisms import Involution
from .multigraph import MultiGraph

DEFAULT_TW_BUDGET = 2_000_000


# -- treewidth -------------------------------------------------------------------

@dataclass(frozen=True)
class TreewidthResult:
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise HyperellError(f"treewidth only bounded: {self.lower}..{self.upper}")
        return self.lower


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


def _masks(h: nx.Graph) -> tuple[list[int], list]:
    nodes = sorted(h.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    adj = [0] * len(nodes)
    for u, v in h.edges:
        adj[idx[u]] |= 1 << idx[v]
        adj[idx[v]] |= 1 << idx[u]
    return adj, nodes


def _q(adj: list[int], elim: int, v: int) -> int:
    """Neighbours of ``v`` in the graph obtained by eliminating the set ``elim``."""
    seen = 1 << v
    frontier = 1 << v
    out = 0
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            f ^= low
            nb = adj[low.bit_length() - 1]
            out |= nb & ~elim
            nxt |= nb & elim & ~seen
        seen |= nxt
        frontier = nxt
    return out & ~(1 << v)


def _tw_at_most(adj: list[int], k: int, budget: _Budget) -> bool | None:
    """Is there an elimination ordering of width <= k?  None if out of budget."""
    n = len(adj)
    full = (1 << n) - 1
    failed: set[int] = set()

    def rec(elim: int) -> bool | None:
        rest = full & ~elim
        if bin(rest).count("1") <= k + 1:
            return True
        if elim in failed:
            return False
        if not budget.spend():
            return None
        degs = []
        r = rest
        while r:
            low = r & -r
            r ^= low
            v = low.bit_length() - 1
            nb = _q(adj, elim, v)
            d = bin(nb).count("1")
            if d <= k:
                degs.append((d, v, nb))
        degs.sort()
        # a vertex whose neighbourhood is a clique can be eliminated greedily
        for d, v, nb in degs:
            if _is_clique(adj, elim, nb):
                res = rec(elim | (1 << v))
                if res is False:
                    failed.add(elim)
                return res
        for d, v, nb in degs:
            res = rec(elim | (1 << v))
            if res is None or res:
                return res
        failed.add(elim)
        return False

    return rec(0)


def _is_clique(adj: list[int], elim: int, nb: int) -> bool:
    r = nb
    while r:
        low = r & -r
        r ^= low
        u = low.bit_length() - 1
        if (_q(adj, elim, u) | low) & nb != nb:
            return False
    return True


def _degeneracy_bound(h: nx.Graph) -> int:
    """Minor-min-width: repeatedly contract a min-degree vertex into its
    min-degree neighbour; the largest min degree seen is a lower bound."""
    h = nx.Graph(h)
    best = 0
    while h.number_of_nodes() > 1:
        v = min(h.nodes, key=lambda x: (h.degree(x), x))
        best = max(best, h.degree(v))
        nbrs = list(h.neighbors(v))
        if not nbrs:
            h.remove_node(v)
            continue
        u = min(nbrs, key=lambda x: (h.degree(x), x))
        h = nx.contracted_nodes(h, u, v, self_loops=False)
    return best


def treewidth_exact(g: MultiGraph, budget: int = DEFAULT_TW_BUDGET) -> TreewidthResult:
    """Treewidth of the underlying simple graph.

    A heuristic decomposition gives the upper bound and minor-min-width the
    lower bound; the gap is closed by a memoised search over elimination
    orderings.  If the budget runs out the result keeps honest bounds.
    """
    h = g.simple()
    if h.number_of_edges() == 0:
        return TreewidthResult(0, 0)
    upper = min(nx.approximation.treewidth_min_degree(h)[0], nx.approximation.treewidth_min_fill_in(h)[0])
    lower = max(1, _degeneracy_bound(h))
    adj, _ = _masks(h)
    spend = _Budget(budget)
    while lower < upper:
        res = _tw_at_most(adj, lower, spend)
        if res is None:
            break
        if res:
            upper = lower
        else:
            lower += 1
    return TreewidthResult(lower, upper)


def series_parallel_check(g: MultiGraph) -> bool:
    """Treewidth at most 2: repeatedly delete vertices of degree <= 1 and
    suppress vertices of degree 2 (merging the resulting parallel edges)."""
    h = g.simple()
    queue = [v for v in h.nodes if h.degree(v) <= 2]
    while queue:
        v = queue.pop()
        if v not in h or h.degree(v) > 2:
            continue
        nbrs = list(h.neighbors(v))
        h.remove_node(v)
        if len(nbrs) == 2:
            h.add_edge(*nbrs)
        queue.extend(w for w in nbrs if h.degree(w) <= 2)
    return h.number_of_edges() == 0


# -- harmonic morphism witnesses ----------------------------------------------------

def is_nondegenerate(m: GraphMorphism) -> bool:
    """Every source vertex has at least one edge mapping onto an edge."""
    for v in m.source.vertices:
        if not any(m.edge_map[e][0] == "e" for e in m.source.incident_edges(v)):
            return False
    return True


def _checked(m: GraphMorphism) -> tuple[int, GraphMorphism]:
    res = is_harmonic(m)
    if not res.harmonic or res.constant or not is_nondegenerate(m):
        raise HyperellError("constructed gonality witness fails the harmonic check")
    return res.degree, m


def grid_witness(g: MultiGraph, d: int, n: int, rows: bool = False) -> GraphMorphism:
    """Collapse the columns of the ``d x n`` grid onto a path with ``n`` vertices
    (degree ``d``), or with ``rows`` the rows onto a path with ``d`` vertices."""
    from .families import grid_graph, path_graph

    if g != grid_graph(d, n) or g.edges != grid_graph(d, n).edges:
        raise GraphError(f"graph is not the numbered {d}x{n} grid")
    target = path_graph(d if rows else n)
    vmap = {v: (v // n if rows else v % n) for v in g.vertices}
    emap = {}
    for e, (u, v) in g.edge_items():
        cu, cv = vmap[u], vmap[v]
        emap[e] = ("v", cu) if cu == cv else ("e", min(cu, cv))
    return GraphMorphism(g, target, vmap, emap)


def bipartite_witness(g: MultiGraph, d: int, n: int) -> GraphMorphism:
    """Collapse the size-``d`` side of ``K_{d,n}`` to the centre of an ``n``-star."""
    from .families import complete_bipartite, star_graph

    if g.edges != complete_bipartite(d, n).edges:
        raise GraphError(f"graph is not the numbered K_{d},{n}")
    vmap = {v: (0 if v < d else v - d + 1) for v in g.vertices}
    emap = {e: ("e", v - d) for e, (u, v) in g.edge_items()}
    return GraphMorphism(g, star_graph(n), vmap, emap)


def top_bit_involution(g: MultiGraph) -> Involution:
    """Flip the highest coordinate of a hypercube numbered by ``hypercube``."""
    n = max(1, (len(g.vertices) - 1).bit_length())
    bit = 1 << (n - 1)
    vp = {v: v ^ bit for v in g.vertices}
    index = {g.endpoints(e): e for e in g.edge_ids}
    ep = {}
    for e, (u, v) in g.edge_items():
        a, b = sorted((vp[u], vp[v]))
        ep[e] = index[(a, b)]
    return Involution(g, vp, ep)


def hypercube_chain(n: int) -> list[GraphMorphism]:
    """Successive degree-2 quotients ``Q_n -> Q_{n-1} -> ... -> Q_1``."""
    from .families import hypercube

    g = hypercube(n)
    steps = []
    for _ in range(n - 1):
        q = quotient(top_bit_involution(g))
        steps.append(q.projection)
        g, _ = q.quotient.relabeled()
        proj = steps[-1]
        relabel = _relabel_morphism(q.quotient, g)
        steps[-1] = compose(proj, relabel)
    return steps


def _relabel_morphism(src: MultiGraph, tgt: MultiGraph) -> GraphMorphism:
    vmap = {v: i for i, v in enumerate(src.vertices)}
    emap = {e: ("e", i) for i, e in enumerate(src.edge_ids)}
    return GraphMorphism(src, tgt, vmap, emap)


def vertex_collapse_witnesses(g: MultiGraph) -> list[GraphMorphism]:
    """For a vertex adjacent to all others: collapse the rest onto one vertex of ``K_2``."""
    from .families import path_graph

    out = []
    for v in g.vertices:
        others = set(g.vertices) - {v}
        if not others or set(g.neighbors(v)) != others:
            continue
        vmap = {w: (1 if w == v else 0) for w in g.vertices}
        emap = {}
        for e, (a, b) in g.edge_items():
            emap[e] = ("e", 0) if (a == v) != (b == v) else ("v", vmap[a])
        out.append(GraphMorphism(g, path_graph(2), vmap, emap))
    return out


def gonality_witnesses(g: MultiGraph, family: str | None = None, **params) -> list[tuple[int, GraphMorphism]]:
    """Verified non-degenerate harmonic morphisms to trees, sorted by degree.

    ``family`` may be ``"grid"`` (``d``, ``n``), ``"complete_bipartite"``
    (``d``, ``n``), ``"hypercube"`` (``n``) or ``"hyperelliptic"``; without
    a hint the generic vertex-collapse maps and a hyperelliptic search are
    tried.
    """
    found = []
    if family == "grid":
        d, n = params["d"], params["n"]
        # a collapse onto a single vertex is constant, so skip that direction
        found.extend(_checked(grid_witness(g, d, n, rows)) for rows, size in ((False, n), (True, d)) if size > 1)
    elif family == "complete_bipartite":
        found.append(_checked(bipartite_witness(g, params["d"], params["n"])))
    elif family == "hypercube":
        steps = hypercube_chain(params["n"])
        m = steps[0]
        for step in steps:
            _checked(step)
        for step in steps[1:]:
            m = compose(m, step)
        if m.source != g:
            raise GraphError("graph is not the numbered hypercube")
        found.append(_checked(m))
    elif family not in (None, "hyperelliptic"):
        raise UnsupportedError(f"unknown family hint {family!r}")
    if family in (None, "hyperelliptic"):
        det = detect_hyperelliptic(g) if g.is_connected() and not g.has_loops() else None
        if det is not None and det.verdict:
            proj = quotient(det.witness).projection
            if is_harmonic(proj).harmonic and not is_harmonic(proj).constant and is_nondegenerate(proj):
                found.append(_checked(proj))
        if family is None:
            found.extend(_checked(m) for m in vertex_collapse_witnesses(g))
    found.sort(key=lambda x: x[0])
    return found


# -- spectra ------------------------------------------------------------------------------

def laplacian_matrix(g: MultiGraph) -> np.ndarray:
    idx = {v: i for i, v in enumerate(g.vertices)}
    lap = np.zeros((len(idx), len(idx)))
    for u, v in g.edges.values():
        if u == v:
            continue
        i, j = idx[u], idx[v]
        lap[i, i] += 1
        lap[j, j] += 1
        lap[i, j] -= 1
        lap[j, i] -= 1
    return lap


def laplacian_spectrum(g: MultiGraph) -> list[float]:
    """Eigenvalues of degree minus adjacency (loops ignored), ascending."""
    if g.num_vertices == 0:
        return []
    vals = np.linalg.eigvalsh(laplacian_matrix(g))
    return sorted(0.0 if abs(x) < 1e-12 else float(x) for x in vals)


def grid_spectrum(d: int, n: int) -> list[float]:
    """Closed form for the ``d x n`` grid: 4 sin^2(j pi / 2n) + 4 sin^2(k pi / 2d)."""
    return sorted(4 * math.sin(j * math.pi / (2 * n)) ** 2 + 4 * math.sin(k * math.pi / (2 * d)) ** 2
                  for j in range(n) for k in range(d))


def ckk_bound(g: MultiGraph, spectrum: list[float] | None = None) -> float:
    """Spectral lower bound lambda_1 * |V| / (4 * max degree) on stable gonality."""
    spec = laplacian_spectrum(g) if spectrum is None else spectrum
    if len(spec) < 2:
        return 0.0
    dmax = max(sum(1 for e in g.incident_edges(v) if not g.is_loop(e)) for v in g.vertices)
    if dmax == 0:
        return 0.0
    return spec[1] * g.num_vertices / (4 * dmax)


SPECTRAL_FORMULAS = {"ckk": ckk_bound}


def spectral_lower_bound(g: MultiGraph, formula="ckk") -> float:
    """Evaluate a spectral gonality bound; ``formula`` is a name or a callable."""
    if formula is None:
        raise UnsupportedError("no spectral formula supplied")
    if callable(formula):
        return float(formula(g))
    if formula not in SPECTRAL_FORMULAS:
        raise UnsupportedError(f"unknown spectral formula {formula!r}")
    if not g.is_connected():
        raise GraphError("spectral bound requires a connected graph")
    return SPECTRAL_FORMULAS[formula](g)


# -- report --------------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    treewidth: TreewidthResult
    gonality_lower: int
    lower_source: str
    gonality_upper: int | None
    witness: GraphMorphism | None
    spectrum: list[float] = field(default_factory=list)
    spectral: float | None = None

    def to_json(self) -> str:
        return json.dumps({
            "treewidth": {"lower": self.treewidth.lower, "upper": self.treewidth.upper},
            "gonality_lower": self.gonality_lower,
            "lower_source": self.lower_source,
            "gonality_upper": self.gonality_upper,
            "upper_source": "witness" if self.witness is not None else None,
            "witness": json.loads(self.witness.to_json()) if self.witness is not None else None,
            "spectrum": self.spectrum,
            "spectral_bound": self.spectral,
        }, sort_keys=True)


def bounds_report(g: MultiGraph, family: str | None = None, budget: int = DEFAULT_TW_BUDGET,
                  formula="ckk", **params) -> BoundsReport:
    tw = treewidth_exact(g, budget)
    spec = laplacian_spectrum(g)
    spectral = spectral_lower_bound(g, formula) if g.is_connected() and formula is not None else None
    lower, source = tw.lower, "treewidth"
    if spectral is not None and math.ceil(spectral - 1e-9) > lower:
        lower, source = math.ceil(spectral - 1e-9), "spectral"
    witnesses = gonality_witnesses(g, family, **params)
    upper, witness = (witnesses[0] if witnesses else (None, None))
    return BoundsReport(tw, lower, source, upper, witness, spec, spectral)
