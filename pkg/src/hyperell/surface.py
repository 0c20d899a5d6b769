"""Rotation systems, face tracing and orientable genus.

A rotation system lists, for every vertex, the counterclockwise cyclic
order of the darts (edge-ends) leaving it.  Faces are the orbits of
``d -> rot_next(reverse(d))``; the genus follows from Euler's formula.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import permutations

import networkx as nx

from .errors import BudgetExceeded, GraphError
from .multigraph import Dart, MultiGraph

DEFAULT_GENUS_CAP = 5_000_000


@dataclass(frozen=True)
class RotationSystem:
    graph: MultiGraph
    rotation: dict[int, tuple[Dart, ...]]

    def __post_init__(self):
        g = self.graph
        seen = set()
        for v in g.vertices:
            ds = self.rotation.get(v, ())
            if sorted(ds) != sorted(g.darts(v)):
                raise GraphError(f"rotation at {v} does not list exactly its darts")
            seen.update(ds)
        if len(seen) != 2 * g.num_edges:
            raise GraphError("rotation system repeats a dart")

    def successor(self) -> dict[Dart, Dart]:
        nxt = {}
        for ds in self.rotation.values():
            for i, d in enumerate(ds):
                nxt[d] = ds[(i + 1) % len(ds)]
        return nxt

    def reversed(self) -> "RotationSystem":
        """The mirror-image embedding."""
        return RotationSystem(self.graph, {v: tuple(reversed(ds)) for v, ds in self.rotation.items()})

    def cyclic_key(self) -> dict[int, tuple[Dart, ...]]:
        """Rotation with every cyclic order started at its smallest dart."""
        out = {}
        for v, ds in self.rotation.items():
            if ds:
                i = ds.index(min(ds))
                ds = ds[i:] + ds[:i]
            out[v] = ds
        return out

    def same_embedding(self, other: "RotationSystem", up_to_reflection: bool = True) -> bool:
        if self.cyclic_key() == other.cyclic_key():
            return True
        return up_to_reflection and self.cyclic_key() == other.reversed().cyclic_key()


def reverse_dart(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


@dataclass(frozen=True)
class EmbeddingReport:
    face_count: int
    faces: list[list[Dart]]
    orientable_genus: int
    outer_face: int | None = None

    def face_vertices(self, g: MultiGraph, i: int) -> set[int]:
        return {g.dart_tail(d) for d in self.faces[i]}


def trace_faces(rs: RotationSystem) -> EmbeddingReport:
    g = rs.graph
    comps = len(g.components())
    if comps != 1:
        raise GraphError("face tracing requires a connected graph")
    if g.num_edges == 0:
        return EmbeddingReport(1, [[]], 0)
    nxt = rs.successor()
    faces: list[list[Dart]] = []
    seen: set[Dart] = set()
    for e in g.edge_ids:
        for s in (0, 1):
            d = (e, s)
            if d in seen:
                continue
            face = []
            x = d
            while x not in seen:
                seen.add(x)
                face.append(x)
                x = nxt[reverse_dart(x)]
            faces.append(face)
    chi = g.num_vertices - g.num_edges + len(faces)
    return EmbeddingReport(len(faces), faces, (2 - chi) // 2)


# -- brute force ------------------------------------------------------------

def _cyclic_orders(darts: list[int], halve: bool) -> list[list[int]]:
    if len(darts) <= 2:
        return [darts]
    first, rest = darts[0], darts[1:]
    out = []
    for p in permutations(rest):
        if halve and p[0] > p[-1]:
            continue
        out.append([first, *p])
    return out


def rotation_count(g: MultiGraph) -> int:
    return math.prod(math.factorial(max(g.degree(v) - 1, 0)) for v in g.vertices)


def _girth(g: MultiGraph) -> int | None:
    if g.has_loops():
        return 1
    if any(m > 1 for m in g.pair_counts().values()):
        return 2
    h = g.simple()
    try:
        return min(len(c) for c in nx.minimum_cycle_basis(h)) if h.number_of_edges() else None
    except (nx.NetworkXException, ValueError):
        return None


def genus_lower_bound(g: MultiGraph) -> int:
    """Euler bound: every face has at least ``girth`` darts."""
    girth = _girth(g)
    fmax = 1 if girth is None else max(1, (2 * g.num_edges) // girth)
    return max(0, math.ceil((2 - g.num_vertices + g.num_edges - fmax) / 2))


def _search(g: MultiGraph, cap: int, stop_at: int | None, fold: bool = True):
    if not g.is_connected():
        raise GraphError("genus search requires a connected graph")
    if g.num_edges == 0:
        yield 0
        return
    total = rotation_count(g)
    if total > cap:
        raise BudgetExceeded(f"{total} rotation systems exceed the cap {cap}")
    eidx = {e: i for i, e in enumerate(g.edge_ids)}
    n = 2 * g.num_edges
    options = []
    halved = not fold
    for v in g.vertices:
        ds = [2 * eidx[e] + s for e, s in g.darts(v)]
        halve = not halved and len(ds) >= 3
        halved = halved or halve
        options.append([[(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]
                        for c in _cyclic_orders(ds, halve)])
    succ = [0] * n
    V, E = g.num_vertices, g.num_edges
    nv = len(options)

    def count_faces() -> int:
        seen = bytearray(n)
        f = 0
        for d in range(n):
            if not seen[d]:
                f += 1
                x = d
                while not seen[x]:
                    seen[x] = 1
                    x = succ[x ^ 1]
        return f

    # iterative odometer over vertex options
    idx = [0] * nv
    for i in range(nv):
        for d, s in options[i][0]:
            succ[d] = s
    while True:
        yield (2 - V + E - count_faces()) // 2
        i = nv - 1
        while i >= 0:
            idx[i] += 1
            if idx[i] < len(options[i]):
                break
            idx[i] = 0
            for d, s in options[i][0]:
                succ[d] = s
            i -= 1
        if i < 0:
            return
        for d, s in options[i][idx[i]]:
            succ[d] = s


def minimum_genus(g: MultiGraph, cap: int = DEFAULT_GENUS_CAP) -> int:
    """Exact orientable genus by enumerating rotation systems.

    One vertex of degree >= 3 has its rotation fixed up to reversal (the
    mirror embedding has the same genus).  The search stops early once the
    Euler lower bound is attained.
    """
    lb = genus_lower_bound(g)
    best = None
    for genus in _search(g, cap, lb):
        if best is None or genus < best:
            best = genus
            if best <= lb:
                break
    return best


def genus_distribution(g: MultiGraph, cap: int = DEFAULT_GENUS_CAP, fold: bool = True) -> Counter:
    """Genus of every rotation system.

    With ``fold`` mirror pairs at one vertex are counted once; without it
    all ``rotation_count(g)`` systems are enumerated.
    """
    return Counter(_search(g, cap, None, fold))


def is_planar(g: MultiGraph) -> bool:
    """Planarity of the underlying simple graph (loops/parallels never matter)."""
    return nx.check_planarity(g.simple())[0]


def planar_rotation(g: MultiGraph) -> RotationSystem:
    """A genus-0 rotation system (raises GraphError if ``g`` is not planar).

    Parallel edges are laid side by side, in reverse order at the two ends;
    both ends of a loop are adjacent.
    """
    ok, emb = nx.check_planarity(g.simple())
    if not ok:
        raise GraphError("graph is not planar")
    by_pair: dict[tuple[int, int], list[int]] = {}
    loops: dict[int, list[int]] = {}
    for e, (u, v) in g.edge_items():
        if u == v:
            loops.setdefault(u, []).append(e)
        else:
            by_pair.setdefault((u, v), []).append(e)
    rot = {}
    for v in g.vertices:
        ds: list[Dart] = []
        nbrs = list(emb.neighbors_cw_order(v)) if v in emb else []
        for w in reversed(nbrs):  # counterclockwise
            if v < w:
                ds.extend((e, 0) for e in by_pair[(v, w)])
            else:
                ds.extend((e, 1) for e in reversed(by_pair[(w, v)]))
        for e in loops.get(v, []):
            ds.extend([(e, 0), (e, 1)])
        rot[v] = tuple(ds)
    return RotationSystem(g, rot)
