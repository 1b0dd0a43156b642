"""Command line interface: ``c5census <subcommand> ...``.

Every document written carries a manifest (schema version, subcommand,
parameters, seed, threads, tool version, wall time).  JSON output puts the
manifest fields at the top level; CSV and graph-text output start with a
``# {...}`` comment line holding it.

Exit codes: 0 success (or "is a member" for ``recognize``), 1 "not a member",
2 bad arguments, 3 budget exceeded, 4 unreadable or invalid input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
import warnings

from . import __version__
from .census import (
    CURVE_HEADER,
    BudgetExceeded,
    dangerous_pair_probability,
    edges_from_density,
    exact_census,
    exponent_curve,
    monte_carlo_census,
)
from .entropy import h_exponent, h_minus_r, r_rate, subgraph_exponent
from .generators import InfeasibleConstruction, sample
from .graphcore import (
    GraphFormatError,
    complement,
    complete_graph,
    format_graph,
    parse_graph,
    parse_graphs,
    parse_partition,
)
from .homsets import (
    AcceptanceTooLow,
    hom_distribution_experiment,
    max_clique,
    p3_packing_trichotomy,
    verify_certificate,
)
from .recognizers import (
    find_induced_cycle,
    find_induced_p3,
    find_perfect_obstruction,
    generalised_split_witness,
    predicate_from_name,
)
from .types import BudgetExceeded as TypeBudgetExceeded
from .types import TypeParams, extract_type

SCHEMA_VERSION = 1

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def _load_graph(path: str):
    try:
        return parse_graph(_read_text(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}")


def _load_graphs(path: str):
    try:
        graphs = parse_graphs(_read_text(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}")
    if not graphs:
        raise InputError(f"{path}: no graph found")
    return graphs


def _params(args) -> dict:
    skip = {"func", "config", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _manifest(args, wall: float, seed=None, threads=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": args.command,
        "params": _params(args),
        "seed": seed,
        "threads": threads,
        "tool_version": __version__,
        "wall_time_s": round(wall, 6),
    }


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv_text(manifest: dict, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(manifest, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _g17(x) -> str:
    return "" if x is None else f"{float(x):.17g}"


def _resolve_m(args, n: int) -> int:
    if args.m is not None and args.c is not None:
        raise UsageError("give either --m or --c, not both")
    if args.m is not None:
        return args.m
    if args.c is not None:
        return edges_from_density(n, args.c)
    raise UsageError("one of --m or --c is required")


def _predicate(args):
    pattern = None
    if args.cls == "nosubgraph":
        pattern = _load_graph(args.pattern) if args.pattern else complete_graph(3)
    return predicate_from_name(args.cls, pattern)


def _default_threads(value):
    return value if value is not None else (os.cpu_count() or 1)


# -- subcommands ----------------------------------------------------------------

def cmd_census(args) -> int:
    start = time.perf_counter()
    m = _resolve_m(args, args.n)
    pred = _predicate(args)
    threads = _default_threads(args.threads)
    if args.mode == "exact":
        res = exact_census(args.n, m, pred, threads=threads, force=args.force)
    else:
        res = monte_carlo_census(args.n, m, pred, args.samples, args.seed, threads=threads)
    manifest = _manifest(args, time.perf_counter() - start, seed=args.seed if args.mode == "mc" else None,
                         threads=res.threads)
    result = {
        "n": res.n,
        "m": res.m,
        "class": res.predicate,
        "mode": res.mode,
        "count_str": res.as_dict()["count_str"],
        "total_str": str(res.total),
        "log2_count": None if res.log2_count == -math.inf else res.log2_count,
        "exponent": None if res.exponent == -math.inf else res.exponent,
    }
    if res.mode == "mc":
        result.update(samples=res.samples, hits=res.hits, ci95_low=res.ci_low, ci95_high=res.ci_high)
    if args.csv is not None:
        header = list(result)
        _emit(_csv_text(manifest, header, [[_cell(result[k]) for k in header]]), args.csv)
    if args.json is not None or args.csv is None:
        _emit(_json_text({**manifest, "result": result}), args.json)
    return EXIT_OK


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return _g17(v)
    return str(v)


def cmd_curve(args) -> int:
    start = time.perf_counter()
    warnings.simplefilter("ignore")
    if args.n is None:
        c_values = args.c if args.c is not None else [f"{i / 100:g}" for i in range(1, 100)]
        rows = []
        for c in c_values:
            x = float(c)
            rows.append([c, _g17(h_exponent(x)), _g17(r_rate(x)), _g17(h_minus_r(x)), _g17(subgraph_exponent(3, x))])
        manifest = _manifest(args, time.perf_counter() - start)
        _emit(_csv_text(manifest, ["c", "h", "r", "h_minus_r", "subgraph_r3"], rows), args.out)
        return EXIT_OK
    if args.c is None:
        raise UsageError("--c is required together with --n")
    pred = _predicate(args)
    threads = _default_threads(args.threads)
    curve = exponent_curve(args.n, args.c, pred, mode=args.mode, samples=args.samples, seed=args.seed,
                           threads=threads, force=args.force)
    manifest = _manifest(args, time.perf_counter() - start, seed=args.seed if args.mode == "mc" else None,
                         threads=threads)
    _emit(_csv_text(manifest, CURVE_HEADER, [row.as_csv_row() for row in curve]), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    start = time.perf_counter()
    m = _resolve_m(args, args.n)
    graphs = [sample(args.kind, args.n, m, args.seed, stream=i) for i in range(args.count)]
    manifest = _manifest(args, time.perf_counter() - start, seed=args.seed, threads=1)
    body = "\n".join(format_graph(g) for g in graphs)
    _emit("# " + json.dumps(manifest, sort_keys=True) + "\n" + body, args.out)
    return EXIT_OK


def _recognize_one(g, cls: str) -> tuple[bool, str, object]:
    if cls == "c5free":
        cyc = find_induced_cycle(g, 5) if g.n >= 5 else None
        return cyc is None, "contains induced C5", [list(cyc)] if cyc else None
    if cls == "perfect":
        hole = find_perfect_obstruction(g)
        if hole is None:
            return True, "", None
        where = "complement" if hole.in_complement else "graph"
        return False, f"contains odd hole of length {len(hole.vertices)} in the {where}", [list(hole.vertices)]
    if cls == "gensplit":
        w = generalised_split_witness(g)
        if w is None:
            return False, "not a generalised split graph", None
        return True, "", [list(b) for b in w.all_blocks()]
    if cls == "cluster":
        p3 = find_induced_p3(g)
        return p3 is None, "contains induced P3", [list(p3)] if p3 else None
    raise UsageError(f"unknown class {cls!r}")


def cmd_recognize(args) -> int:
    start = time.perf_counter()
    graphs = _load_graphs(args.input)
    verdicts = []
    for g in graphs:
        try:
            member, message, witness = _recognize_one(g, args.cls)
        except ValueError as exc:
            raise UsageError(str(exc))
        verdicts.append((member, message, witness))
    if args.json is not None:
        doc = _manifest(args, time.perf_counter() - start)
        doc["results"] = [
            {"member": mem, "message": msg or None, "witness": wit if args.witness else None}
            for mem, msg, wit in verdicts
        ]
        _emit(_json_text(doc), args.json)
    else:
        lines = []
        for mem, msg, wit in verdicts:
            lines.append(f"{args.cls}: yes" if mem else f"{args.cls}: no, {msg}")
            if args.witness and wit is not None:
                lines.extend(" ".join(str(v) for v in block) for block in wit)
        _emit("\n".join(lines) + "\n", None)
    return EXIT_OK if all(v[0] for v in verdicts) else EXIT_NO


def _packing_one(g):
    try:
        cert = p3_packing_trichotomy(g)
    except ValueError as exc:
        raise UsageError(str(exc))
    return cert, verify_certificate(g, cert)


def cmd_packing(args) -> int:
    start = time.perf_counter()
    graphs = _load_graphs(args.input)
    found = [_packing_one(g) for g in graphs]
    if args.json is None:
        blocks = []
        for cert, _ in found:
            lines = [f"{cert.outcome.value} (target {cert.target})"]
            if cert.homogeneous is not None:
                lines.append(cert.homogeneous.kind.value + " " + " ".join(map(str, cert.homogeneous.vertices)))
            lines.extend(" ".join(map(str, t)) for t in cert.triples)
            blocks.append("\n".join(lines))
        _emit("\n\n".join(blocks) + "\n", None)
    else:
        doc = _manifest(args, time.perf_counter() - start)
        doc["results"] = [{"certificate": cert.as_dict(), "verified": ok} for cert, ok in found]
        _emit(_json_text(doc), args.json)
    return EXIT_OK


def _hom_one(g) -> dict:
    clique = max_clique(g)
    indep = max_clique(complement(g))
    return {
        "n": g.n,
        "hom": max(len(clique), len(indep)),
        "clique_number": len(clique),
        "independence_number": len(indep),
        "clique": list(clique),
        "independent_set": list(indep),
    }


def cmd_hom(args) -> int:
    start = time.perf_counter()
    results = [_hom_one(g) for g in _load_graphs(args.input)]
    doc = _manifest(args, time.perf_counter() - start)
    doc["results"] = results
    _emit(_json_text(doc), args.json)
    return EXIT_OK


def cmd_homdist(args) -> int:
    start = time.perf_counter()
    m = _resolve_m(args, args.n)
    try:
        dist = hom_distribution_experiment(args.n, m, args.samples, args.seed)
    except AcceptanceTooLow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    manifest = _manifest(args, time.perf_counter() - start, seed=args.seed, threads=1)
    rows = dist.rows()
    if args.csv is not None:
        header = list(rows[0]) if rows else ["hom"]
        _emit(_csv_text(manifest, header, [[_cell(r[k]) for k in header] for r in rows]), args.csv)
    else:
        doc = {**manifest, "accepted": dist.accepted, "mean_overall": dist.mean_overall,
               "mean_c5free": None if dist.accepted == 0 else dist.mean_conditioned, "rows": rows}
        _emit(_json_text(doc), args.json)
    return EXIT_OK


def cmd_typecheck(args) -> int:
    start = time.perf_counter()
    graphs = _load_graphs(args.graph)
    try:
        part = parse_partition(_read_text(args.partition))
        for g in graphs:
            part.check_within(g.n)
    except (GraphFormatError, ValueError) as exc:
        raise InputError(f"{args.partition}: {exc}")
    try:
        params = TypeParams(eps=args.eps, eps_sub=args.eps_sub, d=args.d, k_sub=args.k_sub,
                            mu_proxy=args.mu_proxy, trials=args.trials, seed=args.seed)
        found = [extract_type(g, part, params) for g in graphs]
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.json is None:
        # one coloured graph per line
        _emit("".join(res.type.to_json() + "\n" for res in found), None)
    else:
        doc = _manifest(args, time.perf_counter() - start, seed=args.seed, threads=1)
        doc["results"] = [res.as_dict() for res in found]
        _emit(_json_text(doc), args.json)
    return EXIT_OK


def cmd_dangerous_pair(args) -> int:
    start = time.perf_counter()
    kinds = ["P3", "AntiP3"]
    pairs = [(a, b) for a in kinds for b in kinds] if args.kind1 is None else [(args.kind1, args.kind2 or args.kind1)]
    p_values = args.p if args.p is not None else [f"{i / 100:g}" for i in range(1, 100)]
    rows = []
    for k1, k2 in pairs:
        for p in p_values:
            try:
                res = dangerous_pair_probability(k1, k2, p)
            except ValueError as exc:
                raise UsageError(str(exc))
            rows.append(res)
    manifest = _manifest(args, time.perf_counter() - start)
    if args.csv is not None:
        body = [[r.kind1, r.kind2, str(r.p), str(r.q_exact), _g17(r.q_exact), _g17(r.lower_bound)] for r in rows]
        _emit(_csv_text(manifest, ["kind1", "kind2", "p", "q_exact", "q", "lower_bound"], body), args.csv)
    else:
        _emit(_json_text({**manifest, "results": [r.as_dict() for r in rows]}), args.json)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

CLASSES = ["all", "c5free", "perfect", "gensplit", "cluster", "nosubgraph"]


def _add_output(p, csv_too: bool = False) -> None:
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                   help="write JSON (to PATH, or standard output)")
    if csv_too:
        p.add_argument("--csv", nargs="?", const="-", default=None, metavar="PATH",
                       help="write CSV (to PATH, or standard output)")


def _add_density(p) -> None:
    p.add_argument("--m", type=int, help="number of edges")
    p.add_argument("--c", type=str, help="edge density; m = round(c * C(n,2)), ties to even")


def _add_class(p, default="c5free") -> None:
    p.add_argument("--class", dest="cls", choices=CLASSES, default=default)
    p.add_argument("--pattern", help="pattern graph file for --class nosubgraph (default: triangle)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="c5census", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"c5census {__version__} (output schema {SCHEMA_VERSION})")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def command(name, func, help, aliases=()):
        p = sub.add_parser(name, help=help, aliases=list(aliases))
        p.add_argument("--config", help="key=value file supplying defaults for the flags below")
        p.set_defaults(func=func, command=name)
        return p

    p = command("census", cmd_census, "count labelled graphs of a class with n vertices and m edges")
    p.add_argument("--n", type=int, required=True)
    _add_density(p)
    _add_class(p)
    p.add_argument("--mode", choices=["exact", "mc"], default="exact")
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int)
    p.add_argument("--force", action="store_true", help="ignore the exact-census budget")
    _add_output(p, csv_too=True)

    p = command("curve", cmd_curve, "entropy exponents, or normalised census exponents with --n")
    p.add_argument("--n", type=_int_list, help="comma-separated vertex counts")
    p.add_argument("--c", type=_str_list, help="comma-separated densities")
    _add_class(p)
    p.add_argument("--mode", choices=["exact", "mc"], default="exact")
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int)
    p.add_argument("--force", action="store_true")
    p.add_argument("--out", help="output CSV path (default: standard output)")

    p = command("generate", cmd_generate, "sample split-graph constructions or G(n, m)", aliases=["sample"])
    p.add_argument("--kind", choices=["bipartite", "kpartite", "high", "gnm"], required=True)
    p.add_argument("--n", type=int, required=True)
    _add_density(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", help="output path (default: standard output)")

    p = command("recognize", cmd_recognize, "test class membership; exit 0 if a member, 1 if not")
    p.add_argument("--in", dest="input", default="-", help="graph file (default: standard input)")
    p.add_argument("--class", dest="cls", choices=["c5free", "perfect", "gensplit", "cluster"], required=True)
    p.add_argument("--witness", action="store_true")
    _add_output(p)

    p = command("packing", cmd_packing, "disjoint induced P3 / anti-P3 packing or a large homogeneous set")
    p.add_argument("--in", dest="input", default="-")
    _add_output(p)

    p = command("hom", cmd_hom, "largest clique and independent set")
    p.add_argument("--in", dest="input", default="-")
    _add_output(p)

    p = command("homdist", cmd_homdist, "distribution of hom(G) over G(n, m), with and without induced C5")
    p.add_argument("--n", type=int, required=True)
    _add_density(p)
    p.add_argument("--samples", type=int, default=10**4)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p, csv_too=True)

    p = command("typecheck", cmd_typecheck, "coloured reduced graph of a graph and a partition")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--d", type=float, default=0.1)
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--eps-sub", dest="eps_sub", type=float, default=0.3)
    p.add_argument("--k-sub", dest="k_sub", type=int, default=2)
    p.add_argument("--mu-proxy", dest="mu_proxy", type=float, default=0.25)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)

    p = command("dangerous-pair", cmd_dangerous_pair, "exact induced-C5 probability for a P3/anti-P3 pair")
    p.add_argument("--kind1", choices=["P3", "AntiP3"])
    p.add_argument("--kind2", choices=["P3", "AntiP3"])
    p.add_argument("--p", type=_str_list, help="comma-separated probabilities (default: 0.01..0.99)")
    _add_output(p, csv_too=True)

    return parser


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def _apply_config(parser, args, argv) -> argparse.Namespace:
    """Re-parse with defaults from ``--config``; explicit flags still win."""
    text = _read_text(args.config)
    sub = _subparser(parser, args.command)
    by_dest = {a.dest: a for a in sub._actions if a.option_strings}
    defaults = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{args.config}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        dest = key.lstrip("-").replace("-", "_")
        dest = "cls" if dest == "class" else "input" if dest == "in" else dest
        action = by_dest.get(dest)
        if action is None or dest == "config":
            raise UsageError(f"{args.config}:{lineno}: unknown key {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[dest] = value.lower() in ("1", "true", "yes", "on")
        else:
            defaults[dest] = value
    sub.set_defaults(**defaults)
    for dest in defaults:
        by_dest[dest].required = False
    return parser.parse_args(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv) if "--config" not in " ".join(argv) else _parse_with_config(parser, argv)
    try:
        if args.config:
            args = _apply_config(parser, args, argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, TypeBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleConstruction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _parse_with_config(parser, argv) -> argparse.Namespace:
    # required flags may come from the config file, so relax them for the first pass
    saved = []
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                for a in sp._actions:
                    if a.required and a.option_strings:
                        saved.append(a)
                        a.required = False
    args = parser.parse_args(argv)
    for a in saved:
        a.required = True
    return args


if __name__ == "__main__":
    sys.exit(main())
