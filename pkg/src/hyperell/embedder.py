"""Symmetric planar embeddings of hyperelliptic graphs and torus embeddings
of bielliptic graphs.

The hyperelliptic drawing is built over the quotient tree ``T = G / iota``.
Orbits are numbered in depth-first preorder and orbit ``k`` sits at height
``y = -k``: fixed vertices on the mirror axis ``x = 0``, each swapped pair at
``x = -1/2`` and ``x = 1/2``.  Every tree edge is drawn in the left half-plane
as a rectangular arc whose width is the index distance of its ends, and then
mirrored.  Preorder intervals of a tree are nested or disjoint, so the arcs
never cross; horizontal edges cross the axis between two vertices' heights.
Every vertex on the last-child chain from the root sees the far left along
its own height, which puts that chain on the unbounded face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .drawing import PLANE, TORUS, Drawing, certify, mirror, planar_drawing, verify_drawing
from .errors import ContractViolation, GraphError, InvalidWitnessError
from .geometry import Point
from .morphisms import Involution, is_mixing, quotient
from .multigraph import MultiGraph, betti_genus
from .structure import decompose, reduce_all

SIGMA = Fraction(1, 4)
HALF = Fraction(1, 2)


# -- constraint and frame records -------------------------------------------------

@dataclass(frozen=True)
class FaceConstraint:
    """Vertex sets that must each lie on the boundary of one face."""

    sets: tuple[frozenset[int], ...]

    def check(self, g: MultiGraph) -> None:
        for s in self.sets:
            missing = [v for v in s if not g.has_vertex(v)]
            if missing:
                raise GraphError(f"constraint names unknown vertices {missing}")

    def satisfied(self, d: Drawing) -> bool:
        report = verify_drawing(d)
        g = d.graph
        faces = [report.face_vertices(g, i) if g.num_edges else set(g.vertices)
                 for i in range(report.face_count)]
        return all(any(s <= f for f in faces) for s in self.sets)


@dataclass(frozen=True)
class InductiveFrame:
    """One step of the induction on the number of swapped pairs."""

    level: int
    pair: tuple[int, int]
    components: tuple[frozenset[int], ...]
    psi: tuple[int, ...]
    attach_edges: tuple[int, ...]
    flips: tuple[bool, ...] = ()

    def log_line(self) -> str:
        return (f"level={self.level} pair={self.pair} components={len(self.components)} "
                f"psi={list(self.psi)} flips={[int(f) for f in self.flips]}")


# -- quotient tree ---------------------------------------------------------------

@dataclass
class _Tree:
    orbit: dict[int, int]              # vertex -> orbit key (smallest member)
    members: dict[int, tuple[int, ...]]
    adj: dict[int, dict[int, list[int]]]   # orbit -> neighbour orbit -> upstairs edges
    horizontals: dict[int, list[int]]


def _quotient_tree(g: MultiGraph, iota: Involution) -> _Tree:
    if iota.graph != g:
        raise InvalidWitnessError("involution belongs to a different graph")
    if g.has_loops():
        raise GraphError("embedding requires a loopless graph")
    if not g.is_connected():
        raise GraphError("embedding requires a connected graph")
    if not is_mixing(iota):
        raise InvalidWitnessError("involution is not mixing")
    if not betti_genus(quotient(iota).quotient).is_tree:
        raise InvalidWitnessError("quotient is not a tree")
    vp = iota.vertex_perm
    orbit = {v: min(v, vp[v]) for v in g.vertices}
    members = {}
    for v in g.vertices:
        members.setdefault(orbit[v], tuple(sorted({v, vp[v]})))
    adj = {k: {} for k in members}
    horizontals = {k: [] for k in members}
    for e, (u, v) in g.edge_items():
        ku, kv = orbit[u], orbit[v]
        if ku == kv:
            horizontals[ku].append(e)
        else:
            adj[ku].setdefault(kv, []).append(e)
            adj[kv].setdefault(ku, []).append(e)
    return _Tree(orbit, members, adj, horizontals)


def _tree_path(t: _Tree, root: int, target: int) -> list[int]:
    parent = {root: None}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in t.adj[x]:
            if y not in parent:
                parent[y] = x
                stack.append(y)
    path = [target]
    while path[-1] != root:
        path.append(parent[path[-1]])
    return path[::-1]


# -- the symmetric layout -----------------------------------------------------------

@dataclass
class _Layout:
    index: dict[int, int]      # orbit -> preorder index
    parent: dict[int, int | None]
    left: dict[int, int]       # orbit -> vertex drawn at x <= 0
    points: dict[int, Point]
    polylines: dict[int, tuple]
    width: int


def _arc(p: Point, q: Point, w: int) -> list[Point]:
    """Left-hand rectangular arc from ``p`` (higher) to ``q`` (lower)."""
    return [p, (Fraction(-w), p[1] - SIGMA), (Fraction(-w), q[1] + SIGMA), q]


def _oriented(g: MultiGraph, e: int, path: list[Point], points) -> tuple:
    u, _ = g.endpoints(e)
    return (tuple(path if points[u] == path[0] else path[::-1]),)


def _layout(g: MultiGraph, iota: Involution, t: _Tree, root: int, last: list[int]) -> _Layout:
    """Preorder layout rooted at ``root``; the orbits in ``last`` form a last-child chain."""
    vp = iota.vertex_perm
    chain_next = {a: b for a, b in zip(last, last[1:])}
    index, parent, order = {}, {root: None}, []
    stack = [root]
    while stack:
        x = stack.pop()
        index[x] = len(order)
        order.append(x)
        kids = sorted(y for y in t.adj[x] if y != parent[x])
        if x in chain_next:
            kids.remove(chain_next[x])
            kids.append(chain_next[x])
        for y in kids:
            parent[y] = x
        stack.extend(reversed(kids))
    left = {}
    for x in order:
        if len(t.members[x]) == 1:
            left[x] = x
            continue
        p = parent[x]
        if p is None or len(t.members[p]) == 1:
            left[x] = x
            continue
        lp = left[p]
        hit = [v for e in t.adj[x][p] for v in g.endpoints(e) if lp in g.endpoints(e) and v != lp]
        left[x] = hit[0]
    points = {}
    for x in order:
        y = Fraction(-index[x])
        if len(t.members[x]) == 1:
            points[x] = (Fraction(0), y)
        else:
            points[left[x]] = (-HALF, y)
            points[vp[left[x]]] = (HALF, y)
    polylines = {}
    width = 0
    for x in order:
        p = parent[x]
        if p is None:
            continue
        w = index[x] - index[p]
        width = max(width, w)
        es = sorted(t.adj[x][p])
        if len(t.members[x]) == 1 and len(t.members[p]) == 1:
            lefts = [es[0]]
        else:
            lefts = [e for e in es if left[p] in g.endpoints(e) and left[x] in g.endpoints(e)]
        for e in es:
            arc = _arc(points[left[p]], points[left[x]], w)
            if e not in lefts:
                arc = [mirror(q) for q in arc]
            polylines[e] = _oriented(g, e, arc, points)
    for x in order:
        hs = sorted(t.horizontals[x])
        if not hs:
            continue
        a = left[x]
        tau = SIGMA / (len(hs) + 1)
        for m, e in enumerate(hs):
            la, ra = points[a], points[vp[a]]
            path = [la, (Fraction(0), la[1] - m * tau), ra]
            u, _ = g.endpoints(e)
            polylines[e] = (tuple(path if u == a else path[::-1]),)
    return _Layout(index, parent, left, points, polylines, width)


def _orbit_of(t: _Tree, s) -> int:
    """Orbit key of a vertex, or of a pair given as a 2-sequence."""
    vs = {s} if isinstance(s, int) else set(s)
    if any(v not in t.orbit for v in vs):
        raise GraphError(f"unknown vertices in {sorted(vs)}")
    keys = {t.orbit[v] for v in vs}
    if len(keys) != 1 or (len(vs) > 1 and vs != set(t.members[next(iter(keys))])):
        raise GraphError(f"{sorted(vs)} is not a single orbit")
    return keys.pop()


# -- hyperelliptic embeddings --------------------------------------------------------

def _pair_groups(t: _Tree) -> list[tuple[int, ...]]:
    return [m for m in t.members.values() if len(m) == 2]


def embed_hyperelliptic(g: MultiGraph, iota: Involution, trace: list[str] | None = None) -> Drawing:
    """Mirror-symmetric plane drawing with every swapped pair on a common face.

    ``trace``, when given, receives one line per inductive step.
    """
    t = _quotient_tree(g, iota)
    root = t.orbit[g.vertices[0]]
    lay = _layout(g, iota, t, root, [root])
    d = Drawing(g, PLANE, lay.points, lay.polylines, iota, True)
    d = certify(d, _pair_groups(t))
    if trace is not None:
        for frame in inductive_frames(g, iota, d):
            trace.append(frame.log_line())
    return d


def embed_with_two_pairs(g: MultiGraph, iota: Involution, set1, set2) -> Drawing:
    """Symmetric drawing whose unbounded face contains both orbits ``set1`` and ``set2``.

    Each set is a swapped pair or a single fixed vertex.
    """
    t = _quotient_tree(g, iota)
    k1, k2 = _orbit_of(t, set1), _orbit_of(t, set2)
    path = _tree_path(t, k1, k2)
    lay = _layout(g, iota, t, k1, path)
    d = Drawing(g, PLANE, lay.points, lay.polylines, iota, True)
    both = tuple(sorted(set(t.members[k1]) | set(t.members[k2])))
    return certify(d, [both, *_pair_groups(t)])


# -- inductive frames -------------------------------------------------------------------

def inductive_frames(g: MultiGraph, iota: Involution, drawing: Drawing | None = None) -> list[InductiveFrame]:
    """Frames of the induction on the reduced graph, deepest pair first.

    At level ``n`` the pair ``(a_n, b_n)`` is removed; every iota-stable
    component of what remains that touched the pair must be attached to
    ``a_n`` by exactly one edge, a transfer edge (psi = 0) or a cross edge
    (psi = 1).  A flip is recorded when a cross edge lands at negative x in
    ``drawing``.
    """
    red = reduce_all(g, iota)
    rg, ri, dec = red.graph, red.involution, red.decomposition
    vp = ri.vertex_perm
    frames = []
    alive = set(rg.vertices)
    for n in range(dec.n, 0, -1):
        a, b = dec.side_a[n - 1], dec.side_b[n - 1]
        alive -= {a, b}
        rest = rg.induced(alive)
        touching = {w for x in (a, b) for w in rg.neighbors(x) if w in alive}
        groups = []
        for comp in rest.components():
            comp = set(comp)
            if not comp & touching:
                continue
            full = frozenset(comp | {vp[v] for v in comp})
            if full not in groups:
                groups.append(full)
        psi, attach, flips = [], [], []
        for gamma in groups:
            es = [e for e in rg.incident_edges(a) if rg.other_end(e, a) in gamma]
            if len(es) != 1:
                raise ContractViolation("attachment", f"component {sorted(gamma)} meets a_{n} in {len(es)} edges")
            target = rg.other_end(es[0], a)
            p = 0 if vp[target] == target else 1
            psi.append(p)
            attach.append(es[0])
            flip = False
            if drawing is not None and p == 1 and target in drawing.points:
                flip = drawing.points[target][0] < 0
            flips.append(flip)
        frames.append(InductiveFrame(n, (a, b), tuple(groups), tuple(psi), tuple(attach), tuple(flips)))
    return frames


# -- bielliptic graphs on the torus ---------------------------------------------------------

def _interleaved(walk: list[int], a, a2, b, b2) -> bool:
    """True if every choice of corners makes the chords a-b and a2-b2 cross."""
    if a == a2 or b == b2:
        return False
    pos = {v: [i for i, w in enumerate(walk) if w == v] for v in (a, a2, b, b2)}
    for ia, ib, ja, jb in product(pos[a], pos[b], pos[a2], pos[b2]):
        lo, hi = sorted((ia, ib))
        inside = [lo < j < hi for j in (ja, jb)]
        if inside[0] == inside[1] and lo not in (ja, jb) and hi not in (ja, jb):
            return False
    return True


def _path_to_edge(g: MultiGraph, e: int, start: int, pieces: list[list[Point]]) -> tuple:
    u, v = g.endpoints(e)
    if start == u and u != v:
        return tuple(tuple(p) for p in pieces)
    return tuple(tuple(p[::-1]) for p in pieces[::-1])


def embed_bielliptic(g: MultiGraph, alpha: Involution) -> Drawing:
    """Drawing on the torus square (or the plane when possible) of a bielliptic graph.

    One quotient edge on the cycle of ``G / alpha`` is lifted and removed;
    the rest is hyperelliptic and is drawn with both end orbits on the
    unbounded face.  The removed pair is put back in the plane when the
    boundary order allows it, and otherwise through the identified sides.
    """
    if alpha.graph != g:
        raise InvalidWitnessError("involution belongs to a different graph")
    if g.has_loops():
        raise GraphError("embedding requires a loopless graph")
    if not g.is_connected():
        raise GraphError("embedding requires a connected graph")
    if not is_mixing(alpha):
        raise InvalidWitnessError("involution is not mixing")
    q = quotient(alpha).quotient
    rep = betti_genus(q)
    if rep.betti != 1 or rep.component_count != 1:
        raise InvalidWitnessError("quotient does not have cycle rank 1")
    if betti_genus(g).betti <= 2:
        return planar_drawing(g)
    from .multigraph import find_bridges

    bridges = set(find_bridges(q))
    e = min(x for x in q.edge_ids if x not in bridges)
    e2 = alpha.edge_perm[e]
    g0 = g.without_edges({e, e2})
    if not g0.is_connected():
        raise ContractViolation("connected remainder", "removing the lifted cycle edge disconnects the graph")
    a0 = alpha.restricted(g0)
    t = _quotient_tree(g0, a0)
    ka, kb = t.orbit[g.endpoints(e)[0]], t.orbit[g.endpoints(e)[1]]
    lay = _layout(g0, a0, t, ka, _tree_path(t, ka, kb))
    vp = alpha.vertex_perm
    la, lb = lay.left[ka], lay.left[kb]
    # e1 is the lift whose end over ka is drawn on the left
    e1 = next((x for x in sorted((e, e2)) if la in g.endpoints(x)), min(e, e2))
    if vp[la] == la and vp[lb] != lb:
        e1 = next(x for x in sorted((e, e2)) if lb in g.endpoints(x))
    e1b = e2 if e1 == e else e
    far = next(v for v in g.endpoints(e1) if t.orbit[v] == kb)
    planar_case = far == lb
    base = Drawing(g0, PLANE, lay.points, lay.polylines, a0, True)
    report = verify_drawing(base)
    walk = [g0.dart_tail(dd) for dd in report.faces[report.outer_face]]
    if _interleaved(walk, la, vp[la], far, vp[far]) == planar_case:
        if planar_case:
            raise ContractViolation("boundary order", "outer walk disagrees with the layout")
        return planar_drawing(g)
    ya, yb = lay.points[la][1], lay.points[lb][1]
    x2 = Fraction(lay.width + 1)
    polylines = dict(lay.polylines)
    if planar_case:
        path = [lay.points[la], (-x2, ya), (-x2, yb), lay.points[lb]]
        polylines[e1] = _path_to_edge(g, e1, la, [path])
        polylines[e1b] = _path_to_edge(g, e1b, vp[la], [[mirror(p) for p in path]])
        return Drawing(g, PLANE, lay.points, polylines, alpha, True)
    xb, yb_box = Fraction(lay.width + 2), Fraction(len(lay.index) + 1)
    pa, pra = lay.points[la], lay.points[vp[la]]
    pb, prb = lay.points[lb], lay.points[vp[lb]]
    first = [[pa, (pa[0], ya + 1), (Fraction(0), yb_box)],
             [(Fraction(0), -yb_box), (x2, -yb_box + 1), (x2, yb), prb]]
    second = [[pra, (xb, ya)], [(-xb, ya), (-x2, yb), pb]]

    def scale(p):
        return (p[0] / xb, p[1] / yb_box)

    polylines = {x: tuple(tuple(scale(p) for p in piece) for piece in pcs) for x, pcs in polylines.items()}
    polylines[e1] = _path_to_edge(g, e1, la, [[scale(p) for p in pc] for pc in first])
    polylines[e1b] = _path_to_edge(g, e1b, vp[la], [[scale(p) for p in pc] for pc in second])
    points = {v: scale(p) for v, p in lay.points.items()}
    return Drawing(g, TORUS, points, polylines, alpha, False)
