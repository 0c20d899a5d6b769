"""Named example graphs with documented expected invariants, and Hecke fixtures.

Every expected value carries a provenance tag: ``paper`` for values stated
in the source literature, ``derived`` for values computed by this package
and frozen as regression oracles.

Hecke fixture format::

    hecke <d> <D> <p> <q>
    <d rows of d non-negative integers>

``reduced_dual_graph`` collapses nonzero entries to one edge and takes the
bipartite double of the resulting support: vertices ``0..2d-1`` with an edge
``(i, d + j)`` whenever entry ``(i, j)`` is nonzero.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

from .errors import GraphError
from .families import (banana, complete_bipartite, complete_graph, cycle_graph, grid_graph,
                       hypercube)
from .morphisms import Involution, vertex_swap_involution
from .multigraph import MultiGraph

PAPER, DERIVED = "paper", "derived"


@dataclass(frozen=True)
class Expected:
    value: object
    source: str


@dataclass
class CatalogEntry:
    name: str
    parameters: tuple[int, ...]
    graph: MultiGraph
    expected: dict[str, Expected] = field(default_factory=dict)
    involution: Involution | None = None
    positions: dict[int, tuple[int, int]] | None = None

    def value(self, key: str):
        return self.expected[key].value


# -- the 14-vertex example with a betti-2 quotient --------------------------

# (row, column) positions; the involution mirrors column c to 5 - c
_G2_POS = [(0, 2), (0, 3), (1, 1), (1, 4), (2, 2), (2, 3), (3, 0), (3, 5),
           (4, 2), (4, 3), (5, 1), (5, 4), (6, 2), (6, 3)]
_G2_EDGES = [((0, 2), (0, 3)), ((0, 2), (6, 3)), ((1, 1), (0, 2)), ((1, 1), (2, 2)),
             ((1, 4), (0, 3)), ((1, 4), (2, 3)), ((2, 2), (2, 3)), ((2, 2), (4, 3)),
             ((3, 0), (1, 1)), ((3, 0), (5, 1)), ((3, 0), (3, 5)), ((3, 5), (1, 4)),
             ((3, 5), (5, 4)), ((4, 2), (4, 3)), ((4, 2), (2, 3)), ((5, 1), (4, 2)),
             ((5, 1), (6, 2)), ((5, 4), (4, 3)), ((5, 4), (6, 3)), ((6, 2), (6, 3)),
             ((6, 2), (0, 3))]


def _genus2_example() -> CatalogEntry:
    idx = {p: i for i, p in enumerate(_G2_POS)}
    g = MultiGraph.from_edge_list(len(_G2_POS), [(idx[a], idx[b]) for a, b in _G2_EDGES])
    pairs = {idx[p]: idx[(p[0], 5 - p[1])] for p in _G2_POS if p[1] < 5 - p[1]}
    inv = vertex_swap_involution(g, pairs)
    expected = {
        "genus_at_most": Expected(2, PAPER),
        "quotient_betti": Expected(2, PAPER),
        "minimum_genus": Expected(1, DERIVED),
        "planar": Expected(False, DERIVED),
    }
    return CatalogEntry("paper-genus2-example", (), g, expected, inv, dict(enumerate(_G2_POS)))


def _kdn_genus(d: int, n: int) -> int:
    return math.ceil((d - 2) * (n - 2) / 4)


def _entry(name: str, params: tuple[int, ...]) -> CatalogEntry:
    if name == "grid":
        d, n = params
        k = min(d, n)
        exp = {"minimum_genus": Expected(0, DERIVED), "treewidth": Expected(k, PAPER if d <= n else DERIVED),
               "gonality": Expected(k, PAPER)}
        return CatalogEntry(name, params, grid_graph(d, n), exp)
    if name == "complete_bipartite":
        d, n = params
        exp = {"minimum_genus": Expected(_kdn_genus(d, n), PAPER),
               "treewidth": Expected(min(d, n), PAPER), "gonality": Expected(min(d, n), PAPER)}
        if (d, n) == (3, 3):
            exp["bielliptic"] = Expected(True, PAPER)
        return CatalogEntry(name, params, complete_bipartite(d, n), exp)
    if name == "complete":
        (n,) = params
        exp = {"minimum_genus": Expected(math.ceil(max(0, (n - 3) * (n - 4)) / 12), DERIVED),
               "treewidth": Expected(max(n - 1, 0), DERIVED)}
        if n == 5:
            exp["minimum_genus"] = Expected(1, PAPER)
            exp["mixing_quotient_betti"] = Expected(2, PAPER)
            exp["bielliptic"] = Expected(False, DERIVED)
        return CatalogEntry(name, params, complete_graph(n), exp)
    if name == "cycle":
        (n,) = params
        exp = {"minimum_genus": Expected(0, DERIVED), "hyperelliptic": Expected(True, DERIVED)}
        return CatalogEntry(name, params, cycle_graph(n), exp)
    if name == "banana":
        (n,) = params
        exp = {"minimum_genus": Expected(0, DERIVED), "hyperelliptic": Expected(True, PAPER)}
        return CatalogEntry(name, params, banana(n), exp)
    if name == "hypercube":
        (n,) = params
        genus = (n - 4) * 2 ** (n - 3) + 1 if n >= 2 else 0
        exp = {"minimum_genus": Expected(genus, DERIVED)}
        return CatalogEntry(name, params, hypercube(n), exp)
    if name == "paper-genus2-example":
        if params:
            raise GraphError("paper-genus2-example takes no parameters")
        return _genus2_example()
    raise GraphError(f"unknown catalog family {name!r}")


ARITY = {"grid": 2, "complete_bipartite": 2, "complete": 1, "cycle": 1, "banana": 1,
         "hypercube": 1, "paper-genus2-example": 0}


def catalog(name: str, *params: int) -> CatalogEntry:
    """Look up a named graph, e.g. ``catalog("grid", 3, 4)``."""
    if name not in ARITY:
        raise GraphError(f"unknown catalog family {name!r}; known: {', '.join(sorted(ARITY))}")
    if len(params) != ARITY[name]:
        raise GraphError(f"{name} takes {ARITY[name]} parameter(s), got {len(params)}")
    if any(int(p) < 1 for p in params):
        raise GraphError("catalog parameters must be positive")
    return _entry(name, tuple(int(p) for p in params))


# -- Hecke patterns ----------------------------------------------------------

@dataclass(frozen=True)
class HeckePattern:
    d: int
    matrix: tuple[tuple[int, ...], ...]
    D: int
    p: int
    q: int

    def __post_init__(self):
        if self.d < 1 or len(self.matrix) != self.d or any(len(r) != self.d for r in self.matrix):
            raise GraphError(f"matrix must be {self.d} x {self.d}")
        if any(x < 0 for r in self.matrix for x in r):
            raise GraphError("matrix entries must be non-negative")
        for i in range(self.d):
            for j in range(i + 1, self.d):
                if bool(self.matrix[i][j]) != bool(self.matrix[j][i]):
                    raise GraphError(f"support is not symmetric at ({i}, {j})")

    def support(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.d) for j in range(self.d) if self.matrix[i][j]]


def parse_hecke(text: str) -> HeckePattern:
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or rows[0][0] != "hecke" or len(rows[0]) != 5:
        raise GraphError("expected header 'hecke <d> <D> <p> <q>'")
    try:
        d, D, p, q = (int(x) for x in rows[0][1:])
        matrix = tuple(tuple(int(x) for x in r) for r in rows[1:])
    except ValueError as exc:
        raise GraphError(f"non-integer entry: {exc}") from None
    return HeckePattern(d, matrix, D, p, q)


def read_hecke(path) -> HeckePattern:
    with open(path) as fh:
        return parse_hecke(fh.read())


def reduced_dual_graph(h: HeckePattern) -> MultiGraph:
    return MultiGraph.from_edge_list(2 * h.d, [(i, h.d + j) for i, j in h.support()])


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    expected_planar: bool | None  # None marks a file that must be rejected
    source: str


def hecke_fixtures() -> list[Fixture]:
    """The packaged Hecke fixtures with their documented expectations."""
    base = resources.files("hyperell") / "data" / "hecke"
    manifest = json.loads((base / "manifest.json").read_text())
    return [Fixture(name, (base / name).read_text(), info["expected_planar"], info["source"])
            for name, info in sorted(manifest.items())]
