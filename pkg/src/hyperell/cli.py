"""Command-line interface.

Exit codes: 0 success, 1 verification failure or rejected input,
2 usage error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .catalog import ARITY, catalog, parse_hecke, reduced_dual_graph
from .bounds import bounds_report
from .drawing import drawing_from_json, drawing_to_json, drawing_to_svg, planar_drawing, verify_drawing
from .embedder import embed_bielliptic, embed_hyperelliptic
from .errors import BudgetExceeded, HyperellError
from .generators import random_bielliptic, random_hyperelliptic
from .morphisms import DEFAULT_BUDGET, Involution, detect_bielliptic, detect_hyperelliptic, quotient
from .multigraph import MultiGraph, betti_genus, find_bridges, format_graph, parse_graph_text
from .surface import DEFAULT_GENUS_CAP, genus_lower_bound, is_planar, minimum_genus, rotation_count

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
FAMILY_HINTS = {"grid": ("d", "n"), "complete_bipartite": ("d", "n"), "hypercube": ("n",)}


class UsageError(Exception):
    pass


# -- input helpers -------------------------------------------------------------

def _read_text(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str | None) -> tuple[MultiGraph, Involution | None, str]:
    text = _read_text(path)
    g, extra = parse_graph_text(text)
    inv = Involution.from_lines(g, extra[0], extra[1]) if len(extra) >= 2 else None
    return g, inv, text


def _family_hint(text: str) -> tuple[str | None, dict]:
    """Read a ``# catalog <family> <params>`` comment written by ``gen``."""
    for line in text.splitlines():
        parts = line.strip().lstrip("#").split()
        if line.lstrip().startswith("#") and len(parts) >= 2 and parts[0] == "catalog":
            name, params = parts[1], parts[2:]
            keys = FAMILY_HINTS.get(name)
            if keys and len(keys) == len(params):
                return name, {k: int(v) for k, v in zip(keys, params)}
    return None, {}


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, sort_keys=True) + "\n" if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _verdict(det) -> str:
    return {True: "yes", False: "no", None: "unknown (budget)"}[det.verdict]


# -- subcommands ----------------------------------------------------------------

def cmd_analyze(args) -> int:
    g, _, text = _load_graph(args.graph)
    family, params = _family_hint(text)
    if args.hint:
        family, params = _family_hint("# catalog " + " ".join(args.hint))
        if family is None:
            raise UsageError(f"bad family hint {' '.join(args.hint)!r}; known: {FAMILY_HINTS}")
    rep = betti_genus(g)
    budget = args.budget or DEFAULT_BUDGET
    connected = g.is_connected()
    hyp = detect_hyperelliptic(g, budget) if connected else None
    bie = detect_bielliptic(g, budget) if connected else None
    bounds = bounds_report(g, family, **params) if connected else None
    payload = {
        "vertices": g.num_vertices, "edges": g.num_edges, "betti": rep.betti,
        "components": rep.component_count, "bridges": sorted(find_bridges(g)),
        "planar": is_planar(g),
        "hyperelliptic": hyp.verdict if hyp else None,
        "bielliptic": bie.verdict if bie else None,
        "bounds": json.loads(bounds.to_json()) if bounds else None,
    }
    lines = [f"vertices       {g.num_vertices}", f"edges          {g.num_edges}",
             f"betti          {rep.betti}", f"components     {rep.component_count}",
             f"bridges        {payload['bridges']}", f"planar         {payload['planar']}"]
    if connected:
        lines += [f"hyperelliptic  {_verdict(hyp)}", f"bielliptic     {_verdict(bie)}"]
        tw = bounds.treewidth
        lines.append(f"treewidth      {tw.lower}" if tw.exact else f"treewidth      {tw.lower}..{tw.upper}")
        lines.append(f"gonality >=    {bounds.gonality_lower} ({bounds.lower_source})")
        if bounds.gonality_upper is not None:
            lines.append(f"gonality <=    {bounds.gonality_upper} (witness degree {bounds.gonality_upper})")
        if bounds.spectral is not None:
            lines.append(f"spectral bound {bounds.spectral:.6g}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def _choose_embedding(g: MultiGraph, inv: Involution | None, budget: int):
    if inv is not None:
        b = betti_genus(quotient(inv).quotient).betti
        if b == 0:
            return embed_hyperelliptic(g, inv), "hyperelliptic"
        if b == 1:
            return embed_bielliptic(g, inv), "bielliptic"
        raise HyperellError(f"supplied involution has a quotient of cycle rank {b}")
    truncated = False
    for detect, embed, label in ((detect_hyperelliptic, embed_hyperelliptic, "hyperelliptic"),
                                 (detect_bielliptic, embed_bielliptic, "bielliptic")):
        det = detect(g, budget)
        if det.verdict:
            return embed(g, det.witness), label
        truncated = truncated or det.verdict is None
    if is_planar(g):
        return planar_drawing(g), "planar"
    if truncated:
        raise BudgetExceeded("involution search truncated and the graph is not planar")
    raise HyperellError("graph is neither planar, hyperelliptic nor bielliptic")


def _dump_drawing(d) -> str:
    return json.dumps(drawing_to_json(d), indent=1, sort_keys=True) + "\n"


def cmd_embed(args) -> int:
    g, inv, _ = _load_graph(args.graph)
    d, how = _choose_embedding(g, inv, args.budget or DEFAULT_BUDGET)
    report = verify_drawing(d)
    payload = {"method": how, "surface": d.surface, "genus": report.orientable_genus,
               "faces": report.face_count, "verified": True}
    text = (f"method   {how}\nsurface  {d.surface}\ngenus    {report.orientable_genus}\n"
            f"faces    {report.face_count}\nverified yes\n")
    if args.out:
        out = Path(args.out)
        out.write_text(_dump_drawing(d))
        out.with_suffix(".svg").write_text(drawing_to_svg(d))
        payload["files"] = [str(out), str(out.with_suffix(".svg"))]
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n" if args.format == "json" else text)
    else:
        sys.stdout.write(_dump_drawing(d))
        sys.stderr.write(text)
    return EXIT_OK


def cmd_quotient(args) -> int:
    g, inline, _ = _load_graph(args.graph)
    if args.involution:
        rows = [[int(x) for x in ln.split()] for ln in _read_text(args.involution).splitlines()
                if ln.split("#", 1)[0].strip()]
        if len(rows) != 2:
            raise UsageError("involution file needs two lines: vertex images, then edge images")
        inv = Involution.from_lines(g, rows[0], rows[1])
    elif inline is not None:
        inv = inline
    else:
        raise UsageError("no involution given")
    res = quotient(inv)
    q, _ = res.quotient.relabeled()
    rep = betti_genus(res.quotient)
    payload = {"quotient": format_graph(q), "betti": rep.betti, "is_tree": rep.is_tree,
               "fixed_vertices": sorted(res.fixed_vertices),
               "projection": json.loads(res.projection.to_json())}
    text = f"# quotient betti {rep.betti}, fixed vertices {sorted(res.fixed_vertices)}\n" + format_graph(q)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_genus(args) -> int:
    g, _, _ = _load_graph(args.graph)
    cap = args.budget or DEFAULT_GENUS_CAP
    genus = minimum_genus(g, cap)
    payload = {"genus": genus, "lower_bound": genus_lower_bound(g), "rotation_systems": rotation_count(g)}
    _emit(args, payload, f"genus {genus}\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    inv = None
    if args.family in ("hyperelliptic", "bielliptic"):
        if len(args.params) > 1:
            raise UsageError(f"{args.family} takes at most one size parameter")
        size = args.params[0] if args.params else (12 if args.family == "hyperelliptic" else 10)
        make = random_hyperelliptic if args.family == "hyperelliptic" else random_bielliptic
        g, inv = make(args.seed, size)
        header = f"# {args.family} seed {args.seed}\n"
    else:
        entry = catalog(args.family, *args.params)
        g, inv = entry.graph, entry.involution
        header = f"# catalog {args.family} {' '.join(map(str, args.params))}".rstrip() + "\n"
    text = header + format_graph(g) + (inv.format_lines() if inv is not None else "")
    payload = {"graph": format_graph(g), "involution": inv.format_lines() if inv else None}
    _emit(args, payload, text)
    return EXIT_OK


def cmd_dualgraph(args) -> int:
    h = parse_hecke(_read_text(args.matrix))
    g = reduced_dual_graph(h)
    planar = is_planar(g)
    payload = {"D": h.D, "p": h.p, "q": h.q, "graph": format_graph(g), "planar": planar}
    text = f"# hecke D {h.D} p {h.p} q {h.q} planar {str(planar).lower()}\n" + format_graph(g)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    raw = _read_text(args.drawing)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"drawing is not valid JSON: {exc}") from None
    d = drawing_from_json(data)
    report = verify_drawing(d)
    canonical = _dump_drawing(d) == raw
    payload = {"surface": d.surface, "genus": report.orientable_genus, "faces": report.face_count,
               "verified": True, "canonical": canonical}
    _emit(args, payload, f"verified: {d.surface}, genus {report.orientable_genus}, "
                         f"{report.face_count} faces\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--budget", type=int, help="search budget (0 = module default)", **(kw or {"default": 0}))
    p.add_argument("--seed", type=int, help="random seed", **(kw or {"default": 0}))
    p.add_argument("--format", choices=("text", "json"), **(kw or {"default": "text"}))
    p.add_argument("--out", help="output path", **(kw or {"default": None}))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperell", description="Hyperelliptic graph toolkit.")
    _common(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp, True)
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", cmd_analyze, "invariants, detection verdicts and bounds")
    sp.add_argument("graph", nargs="?", help="graph file (default stdin)")
    sp.add_argument("--hint", nargs="+", metavar="ARG",
                    help="family hint for gonality witnesses, e.g. --hint grid 3 5")
    sp = add("embed", cmd_embed, "constructive embedding with verification")
    sp.add_argument("graph", nargs="?")
    sp = add("quotient", cmd_quotient, "quotient by an involution")
    sp.add_argument("graph")
    sp.add_argument("involution", nargs="?")
    sp = add("genus", cmd_genus, "minimum orientable genus by brute force")
    sp.add_argument("graph", nargs="?")
    sp = add("gen", cmd_gen, "print a catalog or random graph")
    sp.add_argument("family", choices=sorted(ARITY) + ["bielliptic", "hyperelliptic"])
    sp.add_argument("params", nargs="*", type=int)
    sp = add("dualgraph", cmd_dualgraph, "reduced dual graph of a Hecke matrix file")
    sp.add_argument("matrix", nargs="?")
    sp = add("verify", cmd_verify, "check a drawing JSON file")
    sp.add_argument("drawing", nargs="?")
    return p


def _fail(args, code: int, exc: BaseException) -> int:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        sys.stdout.write(json.dumps({"ok": False, "error": type(exc).__name__,
                                     "message": str(exc), "exit": code}, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    random.seed(args.seed)
    try:
        return args.func(args)
    except UsageError as exc:
        return _fail(args, EXIT_USAGE, exc)
    except BudgetExceeded as exc:
        return _fail(args, EXIT_BUDGET, exc)
    except HyperellError as exc:
        return _fail(args, EXIT_FAIL, exc)


def cli_main() -> None:
    sys.exit(main())
