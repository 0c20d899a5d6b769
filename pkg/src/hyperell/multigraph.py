"""Undirected multigraphs with stable vertex and edge identities.

Vertices are integers.  Every edge carries its own integer id, so parallel
edges are distinct objects with equal endpoint pairs and a loop is an edge
whose two endpoints coincide.  Graph values are immutable; every operation
returns a new graph.

The text format read and written here is::

    mgraph <V> <E>
    u v            # E lines, 0-based vertex indices, loops as ``u u``

Lines starting with ``#`` are ignored.  Two optional trailing lines hold an
involution (vertex images, then edge images); see :mod:`hyperell.morphisms`.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import networkx as nx

from .errors import GraphError

Dart = tuple[int, int]  # (edge id, end index 0|1); the dart leaves that end


class MultiGraph:
    """Immutable multigraph.

    ``edges`` maps edge id -> (u, v) with ``u <= v``.
    """

    __slots__ = ("_vertices", "_edges", "_darts", "_canon")

    def __init__(self, vertices: Iterable[int], edges: Mapping[int, tuple[int, int]] | None = None):
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        es: dict[int, tuple[int, int]] = {}
        for eid, (u, v) in sorted((edges or {}).items()):
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid} references missing vertex ({u}, {v})")
            es[int(eid)] = (u, v) if u <= v else (v, u)
        self._vertices = vs
        self._edges = es
        self._darts: dict[int, tuple[Dart, ...]] | None = None
        self._canon = None

    @classmethod
    def from_edge_list(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "MultiGraph":
        """Vertices ``0..n-1``, edge ids ``0..m-1`` in list order."""
        return cls(range(n), dict(enumerate(pairs)))

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> dict[int, tuple[int, int]]:
        return dict(self._edges)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self._edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"no edge {e}") from None

    def edge_items(self) -> Iterator[tuple[int, tuple[int, int]]]:
        return iter(self._edges.items())

    def has_vertex(self, v) -> bool:
        return v in self._incidence()

    def has_edge(self, e) -> bool:
        return e in self._edges

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def _incidence(self) -> dict[int, tuple[Dart, ...]]:
        if self._darts is None:
            inc: dict[int, list[Dart]] = {v: [] for v in self._vertices}
            for e, (u, v) in self._edges.items():
                inc[u].append((e, 0))
                inc[v].append((e, 1))
            self._darts = {v: tuple(ds) for v, ds in inc.items()}
        return self._darts

    def darts(self, v: int) -> tuple[Dart, ...]:
        """Edge-ends at ``v``; a loop contributes both of its ends."""
        try:
            return self._incidence()[v]
        except KeyError:
            raise GraphError(f"no vertex {v}") from None

    def incident_edges(self, v: int) -> list[int]:
        return sorted({e for e, _ in self.darts(v)})

    def degree(self, v: int) -> int:
        return len(self.darts(v))

    def other_end(self, e: int, v: int) -> int:
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def dart_tail(self, d: Dart) -> int:
        return self._edges[d[0]][d[1]]

    def dart_head(self, d: Dart) -> int:
        return self._edges[d[0]][1 - d[1]]

    def neighbors(self, v: int) -> set[int]:
        return {self.other_end(e, v) for e, _ in self.darts(v)}

    def edges_between(self, u: int, v: int) -> list[int]:
        key = (u, v) if u <= v else (v, u)
        return sorted(e for e, ends in self._edges.items() if ends == key)

    def multiplicity(self, u: int, v: int) -> int:
        return len(self.edges_between(u, v))

    def pair_counts(self) -> Counter:
        return Counter(self._edges.values())

    # -- structure ---------------------------------------------------------

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for e, _ in self.darts(x):
                    y = self.other_end(e, x)
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def has_loops(self) -> bool:
        return any(u == v for u, v in self._edges.values())

    def next_vertex_id(self) -> int:
        return max(self._vertices, default=-1) + 1

    def next_edge_id(self) -> int:
        return max(self._edges, default=-1) + 1

    # -- derived graphs ----------------------------------------------------

    def without_edges(self, ids: Iterable[int]) -> "MultiGraph":
        drop = set(ids)
        return MultiGraph(self._vertices, {e: p for e, p in self._edges.items() if e not in drop})

    def induced(self, vertices: Iterable[int]) -> "MultiGraph":
        keep = set(vertices)
        return MultiGraph(keep, {e: (u, v) for e, (u, v) in self._edges.items() if u in keep and v in keep})

    def with_edges(self, pairs: Iterable[tuple[int, int]], extra_vertices: Iterable[int] = ()) -> tuple["MultiGraph", list[int]]:
        """Add edges (and optionally vertices); returns the new edge ids."""
        es = dict(self._edges)
        nxt = self.next_edge_id()
        new_ids = []
        for u, v in pairs:
            es[nxt] = (u, v)
            new_ids.append(nxt)
            nxt += 1
        return MultiGraph(set(self._vertices) | set(extra_vertices), es), new_ids

    def simple(self) -> nx.Graph:
        """The underlying simple graph: loops dropped, parallel edges merged."""
        h = nx.Graph()
        h.add_nodes_from(self._vertices)
        h.add_edges_from((u, v) for u, v in self._edges.values() if u != v)
        return h

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(self._vertices)
        for e, (u, v) in self._edges.items():
            h.add_edge(u, v, key=e)
        return h

    def relabeled(self) -> tuple["MultiGraph", dict[int, int]]:
        """Compact vertex ids to ``0..V-1`` and edge ids to ``0..E-1``."""
        vmap = {v: i for i, v in enumerate(self._vertices)}
        es = {i: (vmap[u], vmap[v]) for i, (u, v) in enumerate(self._edges.values())}
        return MultiGraph(range(len(vmap)), es), vmap

    # -- equality ----------------------------------------------------------

    def canonical_form(self) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
        if self._canon is None:
            self._canon = (self._vertices, tuple(sorted(self._edges.values())))
        return self._canon

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.canonical_form() == other.canonical_form()

    def __hash__(self) -> int:
        return hash(self.canonical_form())

    def __repr__(self) -> str:
        return f"MultiGraph(V={self.num_vertices}, E={self.num_edges})"


@dataclass(frozen=True)
class GenusReport:
    betti: int
    is_tree: bool
    component_count: int


def betti_genus(g: MultiGraph) -> GenusReport:
    """Cycle rank E - V + #components (the "genus" of a graph)."""
    c = len(g.components())
    b = g.num_edges - g.num_vertices + c
    return GenusReport(betti=b, is_tree=(b == 0 and c == 1), component_count=c)


def is_tree(g: MultiGraph) -> bool:
    return betti_genus(g).is_tree


def is_isomorphic(g: MultiGraph, h: MultiGraph) -> bool:
    """Multigraph isomorphism (edge multiplicities and loops respected)."""
    if (g.num_vertices, g.num_edges) != (h.num_vertices, h.num_edges):
        return False
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return False
    return nx.is_isomorphic(_weighted_simple(g), _weighted_simple(h),
                            node_match=lambda a, b: a["loops"] == b["loops"],
                            edge_match=lambda a, b: a["mult"] == b["mult"])


def _weighted_simple(g: MultiGraph) -> nx.Graph:
    h = nx.Graph()
    for v in g.vertices:
        h.add_node(v, loops=0)
    for (u, v), m in g.pair_counts().items():
        if u == v:
            h.nodes[u]["loops"] = m
        else:
            h.add_edge(u, v, mult=m)
    return h


def delete_loops(g: MultiGraph) -> MultiGraph:
    return g.without_edges(e for e, (u, v) in g.edge_items() if u == v)


def find_bridges(g: MultiGraph) -> set[int]:
    """Cut edges, by iterative lowpoint DFS keyed on edge ids."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[int] = set()
    t = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        # frame: (vertex, edge used to enter, iterator over darts)
        stack = [(root, None, iter(g.darts(root)))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e, _ in it:
                if e == via:
                    continue
                w = g.other_end(e, v)
                if w not in disc:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(g.darts(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    bridges.add(via)
    return bridges


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller id as representative so merged ids stay stable
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def contract_edges(g: MultiGraph, ids: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
    """Contract the given edges; each merged class keeps its smallest vertex id.

    Edges that become loops are dropped.  Returns the graph and the vertex
    merge map (old vertex -> new vertex).
    """
    ids = set(ids)
    uf = _UnionFind(g.vertices)
    for e in ids:
        u, v = g.endpoints(e)
        uf.union(u, v)
    merge = {v: uf.find(v) for v in g.vertices}
    es = {}
    for e, (u, v) in g.edge_items():
        if e in ids:
            continue
        a, b = merge[u], merge[v]
        if a == b and u != v:
            continue
        es[e] = (a, b)
    return MultiGraph(set(merge.values()), es), merge


def contract_bridges(g: MultiGraph) -> tuple[MultiGraph, dict[int, int]]:
    if not g.is_connected():
        raise GraphError("contract_bridges requires a connected graph")
    return contract_edges(g, find_bridges(g))


def subdivide_edge(g: MultiGraph, e: int) -> tuple[MultiGraph, int]:
    """Replace non-loop edge ``e`` by a path through a fresh vertex.

    The half at the smaller endpoint keeps id ``e``; the other half gets a
    fresh id.
    """
    if not g.has_edge(e):
        raise GraphError(f"no edge {e}")
    u, v = g.endpoints(e)
    if u == v:
        raise GraphError(f"edge {e} is a loop")
    w = g.next_vertex_id()
    es = g.edges
    es[e] = (u, w)
    es[g.next_edge_id()] = (w, v)
    return MultiGraph(set(g.vertices) | {w}, es), w


# -- text format ------------------------------------------------------------

def format_graph(g: MultiGraph) -> str:
    """Serialize with vertices/edges renumbered in sorted order."""
    vidx = {v: i for i, v in enumerate(g.vertices)}
    lines = [f"mgraph {g.num_vertices} {g.num_edges}"]
    for e, (u, v) in g.edge_items():
        lines.append(f"{vidx[u]} {vidx[v]}")
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> tuple[MultiGraph, list[list[int]]]:
    """Parse the text format; returns the graph and any trailing integer lines."""
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise GraphError("empty graph file")
    head = rows[0].split()
    if len(head) != 3 or head[0] != "mgraph":
        raise GraphError(f"bad header: {rows[0]!r}")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise GraphError(f"bad header: {rows[0]!r}") from None
    if len(rows) < 1 + m:
        raise GraphError(f"expected {m} edge lines, found {len(rows) - 1}")
    pairs = []
    for r in rows[1:1 + m]:
        parts = r.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {r!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
        pairs.append((u, v))
    extra = [[int(x) for x in r.split()] for r in rows[1 + m:]]
    return MultiGraph.from_edge_list(n, pairs), extra


def read_graph(path) -> MultiGraph:
    with open(path) as fh:
        return parse_graph_text(fh.read())[0]


def write_graph(g: MultiGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))


def adjacency_lists(g: MultiGraph) -> dict[int, list[int]]:
    adj = defaultdict(list)
    for v in g.vertices:
        adj[v]
    for _, (u, v) in g.edge_items():
        adj[u].append(v)
        if u != v:
            adj[v].append(u)
    return dict(adj)
