"""Command-line entry point.

Every subcommand writes one JSON report (or CSV for Betti tables) holding the
tool version, the configuration it ran with and the result.  Exit codes:
0 ok, 1 a violation was found, 2 bad configuration or input, 3 a size limit
was hit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .errors import GraphMinorError, TooLarge

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_LIMIT = 0, 1, 2, 3


class ConfigError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def _graph(path: str):
    from .graphs import graph_from_json

    return graph_from_json(_read_json(path))


def _range(text: str) -> list[int]:
    """``"0..3"`` -> [0, 1, 2, 3]; ``"2"`` -> [2]; ``"0,2"`` -> [0, 2]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r}") from exc


def _window(text: str) -> tuple[int, int]:
    r = _range(text)
    if len(r) < 2:
        raise ConfigError(f"window {text!r} needs at least two values")
    return r[0], r[-1]


def _builder(kind: str, d: int):
    from .complexes import Builder

    try:
        return Builder.from_kind(kind, d)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# -- subcommands ---------------------------------------------------------------------


def cmd_complex(args) -> tuple[dict, bool]:
    delta = _builder(args.kind, args.d)(_graph(args.graph))
    return {
        "complex": delta.to_json(),
        "dimension": None if delta.is_void() else delta.dimension,
        "f_vector": delta.f_vector(),
    }, True


def cmd_homology(args) -> tuple[dict, bool]:
    from .complexes import complex_from_json
    from .homology import homology_report, uct_consistency

    if bool(args.graph) == bool(args.complex):
        raise ConfigError("give exactly one of --graph and --complex")
    if args.complex:
        delta = complex_from_json(_read_json(args.complex))
    else:
        delta = _builder(args.kind, args.d)(_graph(args.graph))
    reduced = not args.unreduced
    reports = [homology_report(delta, i, args.coeff, reduced) for i in _range(args.degrees)]
    ok = True
    if args.check_uct:
        for rep in reports:
            rep["uct"] = {str(p): uct_consistency(delta, rep["degree"], p, reduced) for p in (2, 3, 5, 7)}
            ok &= all(rep["uct"].values())
    return {"homology": reports}, ok


def cmd_morphisms(args) -> tuple[dict, bool]:
    from .minors import enumerate_minor_morphisms, morphism_from_json, validate

    source, target = _graph(args.source), _graph(args.target)
    if args.action == "validate":
        if not args.morphism:
            raise ConfigError("validate needs --morphism")
        phi = morphism_from_json(source, target, _read_json(args.morphism))
        violations = validate(phi)
        return {"valid": not violations, "violations": [str(v) for v in violations]}, not violations
    homs = enumerate_minor_morphisms(source, target, limit=args.limit)
    out = {"count": len(homs)}
    if args.action == "enumerate":
        items = sorted((h.to_json() for h in homs), key=lambda m: json.dumps(m, sort_keys=True))
        out["morphisms"] = items
    return out, True


def cmd_betti(args) -> tuple[dict, bool]:
    from .commalg import betti_table, edge_ideal_lc

    g = _graph(args.graph)
    res = betti_table(g, args.max_i, args.char, oracle=args.oracle)
    if args.oracle:
        table, oracle = res
        agree = table.entries == oracle.entries
        out = {"ideal": edge_ideal_lc(g).to_json(), "hochster": table.to_json(), "koszul": oracle.to_json(), "agree": agree}
        if args.format == "csv":
            out["csv"] = table.to_csv()
        return out, agree
    out = {"ideal": edge_ideal_lc(g).to_json(), "hochster": res.to_json()}
    if args.format == "csv":
        out["csv"] = res.to_csv()
    return out, True


def cmd_conf(args) -> tuple[dict, bool]:
    from .arrangements import conf_poincare, os_presentation, os_rank_check

    g = _graph(args.graph)
    pv = conf_poincare(g, args.d)
    out = {"poincare": pv.to_json(args.max_degree)}
    ok = True
    if args.presentation:
        out["presentation"] = os_presentation(g, args.d).to_json()
    if args.check:
        rep = os_rank_check(g, args.d, args.max_degree)
        out["rank_check"] = rep.to_json()
        ok = rep.ok
    return out, ok


def cmd_scan(args) -> tuple[dict, bool]:
    from . import families

    if args.scan == "torsion":
        rep = families.torsion_scan(args.kind, args.i, args.d, args.max_edges, args.only, args.max_n, jobs=args.jobs)
    elif args.scan == "generation":
        try:
            module = families.module_by_name(args.module)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        rep = families.generation_scan(module, args.N, args.max_edges)
        # Deficits are observations here, not invariant violations.
        return rep.to_json(), True
    elif args.scan == "bound":
        from .graphs import point

        target = _graph(args.target) if args.target else point()
        rep = families.dimension_bound_check(target, args.max_edges)
    elif args.scan == "betti":
        rep = families.betti_degree_scan(args.max_edges, args.max_i, args.char)
    elif args.scan == "growth":
        base = _graph(args.base)
        if bool(args.sprout) == bool(args.subdivide):
            raise ConfigError("give exactly one of --sprout and --subdivide")
        direction = "sprout" if args.sprout else "subdivide"
        targets = (args.sprout or args.subdivide).split(",")
        try:
            module = families.module_by_name(args.module)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        fit = families.growth_fit(module, base, direction, targets, _window(args.window), args.checks)
        return {"kind": "growth", "module": module.name, "direction": direction, "targets": targets, "fit": fit.to_json()}, True
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown scan {args.scan}")
    return rep.to_json(), rep.ok


def cmd_convert(args) -> tuple[dict, bool]:
    from .graphs import edges_from_text, standard_graph

    if args.standard:
        kind, *params = args.standard
        g = standard_graph(kind, *(int(p) for p in params))
    elif args.input:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {args.input}: {exc}") from exc
        g = edges_from_text(text)
    else:
        raise ConfigError("give --input or --standard")
    return g.to_json(), True


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    common.add_argument("--seed", type=int, default=0, help="random seed, recorded in the report")

    p = argparse.ArgumentParser(prog="graphminor", description="Minor morphisms, matching complexes and their homology.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("complex", parents=[common], help="build a complex on the edges of a graph")
    c.add_argument("action", nargs="?", default="build", choices=["build"])
    c.add_argument("--graph", required=True)
    c.add_argument("--kind", default="matching", choices=["matching", "dmatching", "flag"])
    c.add_argument("--d", type=int, default=1, help="degree bound for dmatching")
    c.set_defaults(func=cmd_complex)

    h = sub.add_parser("homology", parents=[common], help="homology of a complex")
    h.add_argument("--graph")
    h.add_argument("--complex")
    h.add_argument("--kind", default="matching", choices=["matching", "dmatching", "flag"])
    h.add_argument("--d", type=int, default=1)
    h.add_argument("--degrees", default="0..1", help="e.g. 0..2 or 1,3")
    h.add_argument("--coeff", default="Z", help="Z, Q or a prime p")
    h.add_argument("--unreduced", action="store_true")
    h.add_argument("--check-uct", action="store_true", help="also check universal coefficients for p=2,3,5,7")
    h.set_defaults(func=cmd_homology)

    m = sub.add_parser("morphisms", parents=[common], help="minor morphisms between two graphs")
    m.add_argument("action", choices=["enumerate", "count", "validate"])
    m.add_argument("--source", required=True)
    m.add_argument("--target", required=True)
    m.add_argument("--morphism", help="morphism JSON for validate")
    m.add_argument("--limit", type=int, default=12, help="maximum source edges to enumerate")
    m.set_defaults(func=cmd_morphisms)

    b = sub.add_parser("betti", parents=[common], help="Betti numbers of the complement line graph edge ideal")
    b.add_argument("--graph", required=True)
    b.add_argument("--max-i", type=int, default=2)
    b.add_argument("--char", type=int, default=0)
    b.add_argument("--oracle", action="store_true", help="also run the Koszul complex oracle and compare")
    b.add_argument("--format", choices=["json", "csv"], default="json")
    b.set_defaults(func=cmd_betti)

    f = sub.add_parser("conf", parents=[common], help="cohomology ranks of the configuration space")
    f.add_argument("--graph", required=True)
    f.add_argument("--d", type=int, default=1)
    f.add_argument("--max-degree", type=int, default=6)
    f.add_argument("--presentation", action="store_true")
    f.add_argument("--check", action="store_true", help="compare presentation ranks with chromatic ranks")
    f.set_defaults(func=cmd_conf)

    s = sub.add_parser("scan", parents=[common], help="scans over families of graphs")
    s.add_argument("scan", choices=["torsion", "generation", "bound", "betti", "growth"])
    s.add_argument("--max-edges", type=int, default=5)
    s.add_argument("--kind", default="matching", choices=["matching", "dmatching"])
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--only", default="all", choices=["all", "simple", "complete"])
    s.add_argument("--max-n", type=int, help="largest complete graph (defaults to --max-edges)")
    s.add_argument("--module", default="matching-h0")
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--target", help="target graph JSON for the bound scan (default: one vertex)")
    s.add_argument("--max-i", type=int, default=2)
    s.add_argument("--char", type=int, default=0)
    s.add_argument("--base", help="base graph JSON for growth")
    s.add_argument("--sprout", help="comma-separated vertices")
    s.add_argument("--subdivide", help="comma-separated edges")
    s.add_argument("--window", default="2..5")
    s.add_argument("--checks", type=int, default=2)
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("convert", parents=[common], help="edge-list text or a named family to graph JSON")
    v.add_argument("--input")
    v.add_argument("--standard", nargs="+", metavar="KIND N", help="e.g. complete 5")
    v.set_defaults(func=cmd_convert)
    return p


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "output")}


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        result, ok = args.func(args)
        status = EXIT_OK if ok else EXIT_VIOLATION
    except ConfigError as exc:
        return EXIT_CONFIG, json.dumps({"error": str(exc), "kind": "config"}, sort_keys=True)
    except TooLarge as exc:
        return EXIT_LIMIT, json.dumps({"error": str(exc), "kind": "limit"}, sort_keys=True)
    except (GraphMinorError, ValueError) as exc:
        return EXIT_CONFIG, json.dumps({"error": str(exc), "kind": type(exc).__name__}, sort_keys=True)
    if args.command == "convert":
        text = json.dumps(result, indent=2, sort_keys=True)
    else:
        report = {
            "tool": "graphminor",
            "version": __version__,
            "command": args.command,
            "config": _config(args),
            "seed": args.seed,
            "status": status,
            "result": result,
        }
        text = json.dumps(report, indent=2, sort_keys=True)
    if args.output:
        try:
            Path(args.output).parent.mkdir(parents=True, exist_ok=True)
            Path(args.output).write_text(text + "\n")
        except OSError as exc:
            return EXIT_CONFIG, json.dumps({"error": str(exc), "kind": "io"}, sort_keys=True)
        return status, ""
    return status, text


def main(argv: list[str] | None = None) -> int:
    status, text = run(argv)
    if text:
        stream = sys.stderr if status in (EXIT_CONFIG, EXIT_LIMIT) else sys.stdout
        print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
