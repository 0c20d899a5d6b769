"""Standard graph families with fixed vertex and edge numbering."""

from __future__ import annotations

from .multigraph import MultiGraph


def path_graph(n: int) -> MultiGraph:
    return MultiGraph.from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> MultiGraph:
    if n < 1:
        raise ValueError("cycle needs at least one vertex")
    return MultiGraph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> MultiGraph:
    """Centre 0 and leaves 1..n."""
    return MultiGraph.from_edge_list(n + 1, [(0, i) for i in range(1, n + 1)])


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph.from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(d: int, n: int) -> MultiGraph:
    """Sides ``0..d-1`` and ``d..d+n-1``; edge ``i*n + j`` joins ``i`` and ``d + j``."""
    return MultiGraph.from_edge_list(d + n, [(i, d + j) for i in range(d) for j in range(n)])


def grid_graph(d: int, n: int) -> MultiGraph:
    """``d`` rows and ``n`` columns; vertex ``r*n + c``.

    Row edges come first (row by row), then column edges.
    """
    pairs = [(r * n + c, r * n + c + 1) for r in range(d) for c in range(n - 1)]
    pairs += [(r * n + c, (r + 1) * n + c) for r in range(d - 1) for c in range(n)]
    return MultiGraph.from_edge_list(d * n, pairs)


def hypercube(n: int) -> MultiGraph:
    pairs = [(v, v | (1 << b)) for v in range(1 << n) for b in range(n) if not v & (1 << b)]
    return MultiGraph.from_edge_list(1 << n, sorted(pairs))


def banana(n: int) -> MultiGraph:
    """Two vertices joined by ``n`` parallel edges."""
    return MultiGraph.from_edge_list(2, [(0, 1)] * n)
