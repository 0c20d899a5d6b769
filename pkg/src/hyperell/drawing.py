"""Geometric drawings on the plane or the torus square, and their verification.

Coordinates are exact fractions.  An edge is drawn as one or more polyline
pieces running from its first endpoint to its second; on the torus square
``[-1, 1]^2`` a piece may end on a side and the next piece start at the
identified point of the opposite side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import networkx as nx

from .errors import CertificateError, CrossingError, DrawingError, GenusError, GraphError, SymmetryError, UnsupportedError
from .geometry import Point, angle_key, on_segment, orient, pt, segment_intersection, signed_area2
from .morphisms import Involution
from .multigraph import Dart, MultiGraph
from .surface import EmbeddingReport, RotationSystem, trace_faces

PLANE, TORUS = "plane", "torus"

Piece = tuple[Point, ...]
Certificate = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class Drawing:
    graph: MultiGraph
    surface: str
    points: dict[int, Point]
    polylines: dict[int, tuple[Piece, ...]]
    involution: Involution | None = None
    symmetric: bool = False
    certificates: tuple[Certificate, ...] = field(default=())

    def dart_points(self, d: Dart) -> list[Point]:
        """Points along an edge in the direction of the dart (plane only)."""
        pts = [p for piece in self.polylines[d[0]] for p in piece]
        return pts if d[1] == 0 else pts[::-1]

    def with_certificates(self, certs) -> "Drawing":
        return replace(self, certificates=tuple((tuple(vs), f) for vs, f in certs))


def mirror(p: Point) -> Point:
    return (-p[0], p[1])


# -- verification ---------------------------------------------------------------

def _direction(d: Drawing, dart: Dart) -> Point:
    pieces = d.polylines[dart[0]]
    if dart[1] == 0:
        a, b = pieces[0][0], pieces[0][1]
    else:
        a, b = pieces[-1][-1], pieces[-1][-2]
    return (b[0] - a[0], b[1] - a[1])


def rotation_from_drawing(d: Drawing) -> RotationSystem:
    g = d.graph
    rot = {}
    for v in g.vertices:
        rot[v] = tuple(sorted(g.darts(v), key=lambda x: angle_key(_direction(d, x))))
    return RotationSystem(g, rot)


def _check_shape(d: Drawing) -> None:
    g = d.graph
    if d.surface not in (PLANE, TORUS):
        raise DrawingError(f"unknown surface {d.surface!r}")
    if set(d.points) != set(g.vertices):
        raise DrawingError("points must cover exactly the vertices")
    if set(d.polylines) != set(g.edge_ids):
        raise DrawingError("polylines must cover exactly the edges")
    one = Fraction(1)
    for v, p in d.points.items():
        if d.surface == TORUS and not (-one < p[0] < one and -one < p[1] < one):
            raise DrawingError(f"vertex {v} is not inside the open square")
    for e, pieces in d.polylines.items():
        u, v = g.endpoints(e)
        if not pieces or any(len(piece) < 2 for piece in pieces):
            raise DrawingError(f"edge {e} has an empty piece")
        if pieces[0][0] != d.points[u] or pieces[-1][-1] != d.points[v]:
            raise DrawingError(f"polyline of edge {e} does not join its endpoints")
        if d.surface == PLANE and len(pieces) != 1:
            raise DrawingError(f"plane edge {e} must be a single piece")
        for piece in pieces:
            for a, b in zip(piece, piece[1:]):
                if a == b:
                    raise DrawingError(f"edge {e} has a zero-length segment")
        if d.surface == TORUS:
            for piece in pieces:
                for q in piece[1:-1]:
                    if not (-one < q[0] < one and -one < q[1] < one):
                        raise DrawingError(f"edge {e} touches the boundary between pieces")
            for p, q in zip(pieces, pieces[1:]):
                if not _identified(p[-1], q[0]):
                    raise DrawingError(f"edge {e} does not re-enter at the identified point")


def _identified(p: Point, q: Point) -> bool:
    one = Fraction(1)
    if abs(p[0]) == one and abs(p[1]) == one:
        return False  # corners are not allowed
    if p[0] == -q[0] and abs(p[0]) == one and p[1] == q[1]:
        return True
    return p[1] == -q[1] and abs(p[1]) == one and p[0] == q[0]


def _seg_relation(a, b, c, d) -> int:
    """0 disjoint, 1 meet in one point, 2 overlap in a segment."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 == o2 == o3 == o4 == 0:
        k = 0 if a[0] != b[0] else 1
        lo = max(min(a[k], b[k]), min(c[k], d[k]))
        hi = min(max(a[k], b[k]), max(c[k], d[k]))
        return 2 if lo < hi else (1 if lo == hi else 0)
    return 1 if o1 * o2 <= 0 and o3 * o4 <= 0 else 0


def _check_crossings(d: Drawing) -> None:
    g = d.graph
    coords = [c for p in d.points.values() for c in p]
    coords += [c for pieces in d.polylines.values() for piece in pieces for p in piece for c in p]
    scale = math.lcm(*(c.denominator for c in coords)) if coords else 1

    def to_int(p):
        return (int(p[0] * scale), int(p[1] * scale))

    def back(p):
        return None if p is None else (Fraction(p[0], scale), Fraction(p[1], scale))

    vpos = {v: to_int(p) for v, p in d.points.items()}
    at_point: dict[tuple[int, int], int] = {}
    for v, p in vpos.items():
        if p in at_point:
            raise DrawingError(f"vertices {at_point[p]} and {v} share a position")
        at_point[p] = v
    # (xmin, xmax, ymin, ymax, a, b, edge, piece index, segment index, last index)
    segs = []
    for e, pieces in d.polylines.items():
        for k, piece in enumerate(pieces):
            ip = [to_int(p) for p in piece]
            for i in range(len(ip) - 1):
                a, b = ip[i], ip[i + 1]
                segs.append((min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]),
                             a, b, e, k, i, len(ip) - 2))
    npieces = {e: len(p) for e, p in d.polylines.items()}

    def ends_at(s, p) -> int | None:
        """Vertex whose edge-end this segment is, if it touches ``p`` there."""
        _, _, _, _, a, b, e, k, i, last = s
        u, v = g.endpoints(e)
        if k == 0 and i == 0 and a == p and vpos[u] == p:
            return u
        if k == npieces[e] - 1 and i == last and b == p and vpos[v] == p:
            return v
        return None

    def shared_point(s, t):
        common = {s[4], s[5]} & {t[4], t[5]}
        return next(iter(common)) if len(common) == 1 else None

    segs.sort(key=lambda s: s[0])
    active: list = []
    for s in segs:
        active = [t for t in active if t[1] >= s[0]]
        for t in active:
            if t[3] < s[2] or s[3] < t[2]:
                continue
            rel = _seg_relation(s[4], s[5], t[4], t[5])
            if rel == 0:
                continue
            p = shared_point(s, t)
            if rel == 1 and p is not None:
                if s[6] == t[6] and s[7] == t[7] and abs(s[8] - t[8]) == 1:
                    continue
                vs, vt = ends_at(s, p), ends_at(t, p)
                if vs is not None and vs == vt:
                    continue
            if p is None:
                hit = segment_intersection(*(back(q) for q in (s[4], s[5], t[4], t[5])))
                p_out = min(back(q) for q in (s[4], s[5], t[4], t[5]) if on_segment(back(q), back(s[4]), back(s[5]))
                            and on_segment(back(q), back(t[4]), back(t[5]))) if hit == "overlap" else hit
            else:
                p_out = back(p)
            raise CrossingError(s[6], t[6], p_out)
        active.append(s)
    for v, p in vpos.items():
        for s in segs:
            if s[0] <= p[0] <= s[1] and s[2] <= p[1] <= s[3] and orient(s[4], s[5], p) == 0:
                if ends_at(s, p) != v:
                    raise CrossingError(s[6], f"vertex {v}", back(p))


def _outer_face(d: Drawing, faces: list[list[Dart]]) -> int:
    best, best_area = 0, None
    for i, face in enumerate(faces):
        pts = [q for dart in face for q in d.dart_points(dart)[:-1]]
        area = signed_area2(pts) if pts else Fraction(0)
        if best_area is None or area > best_area:
            best, best_area = i, area
    return best


def check_symmetry(d: Drawing) -> None:
    if d.involution is None:
        raise SymmetryError("symmetric drawing without an involution")
    for v, p in d.points.items():
        if d.points[d.involution(v)] != mirror(p):
            raise SymmetryError(f"vertex {v} and its image are not mirror images")
    for e in d.graph.edge_ids:
        pts = [p for piece in d.polylines[e] for p in piece]
        img = [mirror(p) for piece in d.polylines[d.involution.edge_perm[e]] for p in piece]
        if pts != img and pts != img[::-1]:
            raise SymmetryError(f"edge {e} and its image are not mirror images")


def check_certificates(d: Drawing, report: EmbeddingReport) -> None:
    for vs, f in d.certificates:
        if not 0 <= f < report.face_count:
            raise CertificateError(f"certificate names unknown face {f}")
        on = report.face_vertices(d.graph, f)
        if d.graph.num_edges == 0:
            on = set(d.graph.vertices)
        if not set(vs) <= on:
            raise CertificateError(f"vertices {sorted(vs)} do not all lie on face {f}")


def verify_drawing(d: Drawing) -> EmbeddingReport:
    """Check a drawing and trace the faces of its rotation system.

    Raises CrossingError on any intersection other than shared endpoints,
    GenusError if the genus does not fit the surface, SymmetryError and
    CertificateError for failed symmetry or face claims.
    """
    _check_shape(d)
    _check_crossings(d)
    if d.surface == TORUS:
        seen = {}
        for e, pieces in d.polylines.items():
            for p in [q for piece in pieces[1:] for q in (piece[0],)] + [q for piece in pieces[:-1] for q in (piece[-1],)]:
                if p in seen and seen[p] != e:
                    raise CrossingError(seen[p], e, p)
                seen[p] = e
    report = trace_faces(rotation_from_drawing(d))
    if d.surface == PLANE:
        if report.orientable_genus != 0:
            raise GenusError(f"plane drawing traces to genus {report.orientable_genus}")
        report = replace(report, outer_face=_outer_face(d, report.faces))
    elif report.orientable_genus > 1:
        raise GenusError(f"torus drawing traces to genus {report.orientable_genus}")
    if d.symmetric:
        check_symmetry(d)
    check_certificates(d, report)
    return report


def face_containing(report: EmbeddingReport, g: MultiGraph, vertices) -> int | None:
    """Smallest face index whose boundary contains all ``vertices``."""
    want = set(vertices)
    for i in range(report.face_count):
        on = report.face_vertices(g, i) if g.num_edges else set(g.vertices)
        if want <= on:
            return i
    return None


def certify(d: Drawing, groups) -> Drawing:
    """Attach a face certificate for every vertex group (CertificateError if impossible)."""
    report = verify_drawing(replace(d, certificates=()))
    certs = []
    for vs in groups:
        f = face_containing(report, d.graph, vs)
        if f is None:
            raise CertificateError(f"no face contains {sorted(vs)}")
        certs.append((tuple(sorted(vs)), f))
    return d.with_certificates(certs)


# -- point location and re-drawing ---------------------------------------------

def locate_point(d: Drawing, report: EmbeddingReport, p: Point) -> int | None:
    """Face of a plane drawing containing ``p``; None if the leftward ray is degenerate.

    Faces lie to the right of the darts that bound them.
    """
    best = None
    for e, pieces in d.polylines.items():
        piece = pieces[0]
        for a, b in zip(piece, piece[1:]):
            if orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                    and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                return None
            if a[1] == b[1] or not (min(a[1], b[1]) <= p[1] <= max(a[1], b[1])):
                continue
            if p[1] in (a[1], b[1]):
                return None
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x < p[0] and (best is None or x > best[0]):
                best = (x, e, a, b)
    if best is None:
        return report.outer_face
    _, e, a, b = best
    dart = (e, 0) if orient(a, b, p) < 0 else (e, 1)
    for i, face in enumerate(report.faces):
        if dart in face:
            return i
    return None


def _interior_points(d: Drawing, face: list[Dart]):
    """Candidate points just to the right of the face's darts."""
    for dart in face:
        pts = d.dart_points(dart)
        a, b = pts[0], pts[1]
        mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        nx_, ny_ = (b[1] - a[1]), -(b[0] - a[0])
        eps = Fraction(1, 2)
        for _ in range(24):
            yield (mx + eps * nx_, my + eps * ny_)
            eps /= 2


def _axis_points(d: Drawing):
    ys = sorted({q[1] for pieces in d.polylines.values() for piece in pieces for q in piece}
                | {p[1] for p in d.points.values()})
    if not ys:
        return
    yield (Fraction(0), ys[0] - 1)
    for y0, y1 in zip(ys, ys[1:]):
        for t in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)):
            yield (Fraction(0), y0 + t * (y1 - y0))


SNAP_BITS = 40


def _snap(x: Fraction) -> Fraction:
    """Round to a multiple of 2**-SNAP_BITS; odd in ``x`` so mirror images stay exact."""
    m = (abs(x) * 2 ** SNAP_BITS + Fraction(1, 2)).__floor__()
    return Fraction(m if x >= 0 else -m, 2 ** SNAP_BITS)


def _invert(p: Point, c: Point) -> Point:
    # snapping keeps denominators bounded; the result is re-verified anyway
    dx, dy = p[0] - c[0], p[1] - c[1]
    r2 = dx * dx + dy * dy
    return (_snap(c[0] + dx / r2), _snap(c[1] + dy / r2))


def _clearance(d: Drawing, c: Point) -> float:
    """Distance from ``c`` to the nearest vertex or segment (floating point)."""
    cx, cy = float(c[0]), float(c[1])
    best = math.inf
    for pieces in d.polylines.values():
        for piece in pieces:
            for a, b in zip(piece, piece[1:]):
                ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
                dx, dy = bx - ax, by - ay
                t = max(0.0, min(1.0, ((cx - ax) * dx + (cy - ay) * dy) / (dx * dx + dy * dy)))
                best = min(best, math.hypot(ax + t * dx - cx, ay + t * dy - cy))
    for p in d.points.values():
        best = min(best, math.hypot(float(p[0]) - cx, float(p[1]) - cy))
    return best


def _chords(a: Point, b: Point, c: Point, h: float) -> list[Point]:
    """Points of segment ``ab`` (excluding ``a``) whose image chords stay within ``h`` of the arc.

    The subdivision is decided in floating point on dyadic parameters; the
    returned points are exact.
    """
    ax, ay = float(a[0] - c[0]), float(a[1] - c[1])
    dx, dy = float(b[0] - a[0]), float(b[1] - a[1])

    def image(t: float):
        x, y = ax + t * dx, ay + t * dy
        r2 = x * x + y * y
        return x / r2, y / r2

    ts = []
    stack = [(0, 1, 0)]  # (numerator of t0, numerator of t1, depth); t = num / 2**depth
    while stack:
        n0, n1, depth = stack.pop()
        scale = 2.0 ** depth
        p0, p1, pm = image(n0 / scale), image(n1 / scale), image((n0 + n1) / (2 * scale))
        # distance of the arc midpoint from the chord
        cx_, cy_ = p1[0] - p0[0], p1[1] - p0[1]
        length = math.hypot(cx_, cy_)
        mx, my = pm[0] - p0[0], pm[1] - p0[1]
        dev = abs(cx_ * my - cy_ * mx) / length if length else math.hypot(mx, my)
        if depth < 24 and dev > h:
            stack += [(2 * n0 + 1, 2 * n1, depth + 1), (2 * n0, 2 * n0 + 1, depth + 1)]
        else:
            ts.append(Fraction(n1, 2 ** depth))
    return [(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t) for t in ts]


def outer_face_inversion(d: Drawing, target: int) -> Drawing:
    """Redraw a plane drawing so that face ``target`` becomes the unbounded face.

    The drawing is inverted in a unit circle centred inside the target face
    and each segment is replaced by chords of its image arc, refined until
    the result is crossing-free and the target face comes out unbounded.
    The centre is taken on the mirror axis when the target face meets it,
    so symmetric drawings stay symmetric.
    """
    if d.surface != PLANE:
        raise UnsupportedError("outer face inversion needs a plane drawing")
    report = verify_drawing(d)
    if not 0 <= target < report.face_count:
        raise GraphError(f"unknown face id {target}")
    if target == report.outer_face:
        return d
    symmetric = False
    cands = []
    if d.symmetric:
        cands = [c for c in _axis_points(d) if locate_point(d, report, c) == target]
        symmetric = bool(cands)
    if not cands:
        cands = [c for c in _interior_points(d, report.faces[target]) if locate_point(d, report, c) == target]
    if not cands:
        raise DrawingError(f"could not find an interior point of face {target}")
    centre = max(cands, key=lambda c: _clearance(d, c))
    groups = [vs for vs, _ in d.certificates]
    want = {(e, 1 - s) for e, s in report.faces[target]}
    images = [_invert(p, centre) for p in d.points.values()]
    span = max((max(abs(float(p[0] - q[0])), abs(float(p[1] - q[1]))) for p in images for q in images), default=1.0)
    h = (span or 1.0) / 16
    for _ in range(12):
        polylines = {}
        for e, pieces in d.polylines.items():
            piece = pieces[0]
            out = [piece[0]]
            for a, b in zip(piece, piece[1:]):
                out += _chords(a, b, centre, h)
            inv = [_invert(q, centre) for q in out]
            polylines[e] = (tuple(q for i, q in enumerate(inv) if i == 0 or q != inv[i - 1]),)
        points = {v: _invert(p, centre) for v, p in d.points.items()}
        nd = Drawing(d.graph, PLANE, points, polylines, d.involution, symmetric and d.symmetric, ())
        h /= 4
        try:
            nd = certify(nd, groups)
        except CrossingError:
            continue
        # inversion reverses orientation, so the target face comes back with
        # reversed darts; coarse chords can still wrap the wrong way round
        r = verify_drawing(nd)
        if set(r.faces[r.outer_face]) == want or d.graph.num_edges == 0:
            return nd
    raise DrawingError("chord refinement did not converge")


def planar_drawing(g: MultiGraph, rotation: RotationSystem | None = None) -> Drawing:
    """Straight-line grid drawing of the graph with every edge subdivided once.

    Uses the Chrobak-Payne algorithm on the subdivided simple graph; edges
    become two-segment polylines through their subdivision points.
    """
    h = nx.Graph()
    h.add_nodes_from(("v", v) for v in g.vertices)
    for e, (u, v) in g.edge_items():
        if u == v:
            h.add_edges_from([(("v", u), ("e", e, 0)), (("e", e, 0), ("e", e, 1)), (("e", e, 1), ("v", u))])
        else:
            h.add_edges_from([(("v", u), ("e", e)), (("e", e), ("v", v))])
    if rotation is None:
        ok, emb = nx.check_planarity(h)
        if not ok:
            raise GraphError("graph is not planar")
    else:
        emb = nx.PlanarEmbedding()
        for v, ds in rotation.rotation.items():
            nbrs = [_first_hop(g, dart) for dart in ds]
            emb.add_node(("v", v))
            _set_cw(emb, ("v", v), list(reversed(nbrs)))
        for e, (u, v) in g.edge_items():
            if u == v:
                m0, m1 = ("e", e, 0), ("e", e, 1)
                _set_cw(emb, m0, [("v", u), m1])
                _set_cw(emb, m1, [m0, ("v", u)])
            else:
                _set_cw(emb, ("e", e), [("v", u), ("v", v)])
        emb.check_structure()
    pos = nx.combinatorial_embedding_to_pos(emb)
    points = {v: pt(*pos[("v", v)]) for v in g.vertices}
    polylines = {}
    for e, (u, v) in g.edge_items():
        if u == v:
            mids = [pt(*pos[("e", e, 0)]), pt(*pos[("e", e, 1)])]
        else:
            mids = [pt(*pos[("e", e)])]
        polylines[e] = ((points[u], *mids, points[v]),)
    d = Drawing(g, PLANE, points, polylines)
    verify_drawing(d)
    return d


def _first_hop(g: MultiGraph, dart: Dart):
    e, s = dart
    u, v = g.endpoints(e)
    if u == v:
        return ("e", e, s)
    return ("e", e)


def _set_cw(emb: nx.PlanarEmbedding, v, cw: list) -> None:
    prev = None
    for w in cw:
        if prev is None:
            emb.add_half_edge(v, w)
        else:
            emb.add_half_edge(v, w, cw=prev)
        prev = w


# -- import / export ----------------------------------------------------------

def _fr(q: Fraction) -> str:
    return str(q)


def drawing_to_json(d: Drawing) -> dict:
    g = d.graph
    edges = []
    for e, (u, v) in g.edge_items():
        pieces = d.polylines[e]
        item = {"id": e, "u": u, "v": v,
                "polyline": [[_fr(x), _fr(y)] for piece in pieces for x, y in piece]}
        if d.surface == TORUS:
            item["segments_on_torus"] = [[[_fr(x), _fr(y)] for x, y in piece] for piece in pieces]
        edges.append(item)
    out = {
        "surface": d.surface,
        "vertices": [{"id": v, "x": _fr(d.points[v][0]), "y": _fr(d.points[v][1])} for v in g.vertices],
        "edges": edges,
        "symmetric": d.symmetric,
        "certificates": [{"vertices": list(vs), "face": f} for vs, f in d.certificates],
    }
    if d.involution is not None:
        out["involution"] = {
            "vertices": [[v, w] for v, w in sorted(d.involution.vertex_perm.items())],
            "edges": [[e, f] for e, f in sorted(d.involution.edge_perm.items())],
        }
    return out


def drawing_from_json(data: dict) -> Drawing:
    verts = [item["id"] for item in data["vertices"]]
    g = MultiGraph(verts, {item["id"]: (item["u"], item["v"]) for item in data["edges"]})
    points = {item["id"]: (Fraction(item["x"]), Fraction(item["y"])) for item in data["vertices"]}
    polylines = {}
    for item in data["edges"]:
        if data["surface"] == TORUS:
            raw = item["segments_on_torus"]
        else:
            raw = [item["polyline"]]
        polylines[item["id"]] = tuple(tuple((Fraction(x), Fraction(y)) for x, y in piece) for piece in raw)
    inv = None
    if "involution" in data:
        inv = Involution(g, {v: w for v, w in data["involution"]["vertices"]},
                         {e: f for e, f in data["involution"]["edges"]})
    certs = tuple((tuple(c["vertices"]), c["face"]) for c in data.get("certificates", []))
    return Drawing(g, data["surface"], points, polylines, inv, bool(data.get("symmetric")), certs)


def drawing_to_svg(d: Drawing, size: int = 480, margin: int = 24) -> str:
    """SVG rendering; torus drawings show the square with a dashed boundary."""
    pts = [p for pieces in d.polylines.values() for piece in pieces for p in piece]
    pts += list(d.points.values())
    if d.surface == TORUS:
        pts += [pt(-1, -1), pt(1, 1)]
    if not pts:
        pts = [pt(0, 0)]
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    k = (size - 2 * margin) / span
    x0, y1 = min(xs), max(ys)

    def tr(p):
        return f"{margin + (float(p[0]) - x0) * k:.2f},{margin + (y1 - float(p[1])) * k:.2f}"

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    if d.surface == TORUS:
        corners = " ".join(tr(p) for p in (pt(-1, -1), pt(1, -1), pt(1, 1), pt(-1, 1)))
        lines.append(f'<polygon points="{corners}" fill="none" stroke="gray" stroke-dasharray="6,4"/>')
    for e in d.graph.edge_ids:
        for piece in d.polylines[e]:
            path = " ".join(tr(p) for p in piece)
            lines.append(f'<polyline points="{path}" fill="none" stroke="black"/>')
    for v, p in d.points.items():
        cx, cy = tr(p).split(",")
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="white" stroke="black"/>')
        lines.append(f'<text x="{cx}" y="{cy}" dx="6" dy="-6" font-size="11">{v}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
