"""Command-line front end.

Subcommands mirror the library: algebra validation and TQFT values, graph
counting/evaluation/Hom-sets, the topological recursion, intersection
numbers, and the quantum-curve residual check.  All numeric output is
exact-fraction strings; results go to stdout, diagnostics to stderr.

Exit codes: 0 on success, 1 when a requested check fails (e.g. the two
counting methods disagree), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalan, cellgraph, eco, frobenius, groups, spectral, wkb, zoo

CHECK_FAILED = 1
INPUT_ERROR = 2


def _load_algebra(spec: str) -> frobenius.FrobeniusAlgebra:
    if spec.startswith("zoo:"):
        return zoo.preset_algebra(spec)
    with open(spec) as fh:
        return frobenius.from_json_dict(json.load(fh))


def _load_graph(path: str) -> cellgraph.CellGraph:
    with open(path) as fh:
        return cellgraph.from_json_dict(json.load(fh))


def _parse_vectors(alg, text):
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
        raise ValueError("vectors must be a JSON list of coefficient lists")
    vs = [tuple(Fraction(str(c)) for c in v) for v in data]
    for v in vs:
        if len(v) != alg.dim:
            raise ValueError("coefficient vector has wrong length")
    return vs


def _emit(payload, fmt: str, table_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in table_lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_algebra_validate(args) -> int:
    alg = _load_algebra(args.algebra)
    rep = frobenius.validate(alg)
    payload = {
        "dim": alg.dim,
        "associative": rep.associative,
        "unit": [str(c) for c in rep.unit] if rep.unit else None,
        "commutative": rep.commutative,
        "nondegenerate": rep.nondegenerate,
        "eta": [[str(c) for c in row] for row in rep.eta],
        "eta_inverse": ([[str(c) for c in row] for row in rep.eta_inv]
                        if rep.eta_inv else None),
        "ok": rep.ok,
        "messages": list(rep.messages),
    }
    lines = [f"{k}: {payload[k]}" for k in
             ("dim", "associative", "unit", "commutative", "nondegenerate", "ok")]
    _emit(payload, args.format, lines)
    return 0 if rep.ok else CHECK_FAILED


def cmd_algebra_tqft(args) -> int:
    alg = _load_algebra(args.algebra)
    if args.vectors:
        vs = _parse_vectors(alg, args.vectors)
        value = frobenius.omega(alg, args.genus, vs)
    else:
        value = frobenius.surface_invariant(alg, args.genus)
    _emit({"genus": args.genus, "value": str(value)}, args.format, [str(value)])
    return 0


def cmd_algebra_zoo(args) -> int:
    alg = zoo.preset_algebra(args.name)
    print(frobenius.dumps(alg))
    return 0


def cmd_graphs_count(args) -> int:
    mu = tuple(int(x) for x in args.degrees.split(","))
    n = len(mu)
    results = {}
    if args.method in ("recursion", "both"):
        results["recursion"] = eco.count(args.genus, n, mu)
    if args.method in ("brute", "both"):
        results["brute"] = cellgraph.count_brute(args.genus, n, mu)
    payload = {"g": args.genus, "n": n, "mu": list(mu),
               **{k: str(v) for k, v in results.items()}}
    lines = [f"{k}: {v}" for k, v in results.items()]
    _emit(payload, args.format, lines)
    if len(results) == 2 and results["recursion"] != results["brute"]:
        print("methods disagree", file=sys.stderr)
        return CHECK_FAILED
    return 0


def cmd_graphs_hom(args) -> int:
    src = _load_graph(args.source)
    dst = _load_graph(args.target)
    morphisms = cellgraph.hom_set(src, dst)
    payload = {"size": len(morphisms),
               "morphisms": [sorted(map(str, m.collapsed)) for m in morphisms]}
    _emit(payload, args.format, [f"hom-set size: {len(morphisms)}"])
    return 0


def cmd_graphs_eval(args) -> int:
    graph = _load_graph(args.graph)
    alg = _load_algebra(args.algebra)
    colors = _parse_vectors(alg, args.colors)
    if len(colors) != graph.n_vertices:
        raise ValueError("need one color per vertex")
    value = eco.evaluate_graph(alg, graph, colors)
    _emit({"value": str(value)}, args.format, [str(value)])
    return 0


def _resolve_curve(args) -> spectral.LocalSpectralCurve:
    if args.curve_preset == "airy":
        return spectral.airy_curve(args.truncation)
    if args.curve_preset == "catalan":
        return catalan.catalan_local_curve(args.truncation)
    if args.curve:
        with open(args.curve) as fh:
            return spectral.curve_from_json_dict(json.load(fh))
    raise ValueError("give --curve FILE or --curve-preset airy|catalan")


def cmd_toprec_run(args) -> int:
    curve = _resolve_curve(args)
    if args.algebra:
        alg = _load_algebra(args.algebra)
        table = spectral.twisted_toprec_run(curve, alg,
                                            max_complexity=args.max_complexity)
        payload = {}
        lines = []
        for (g, n), per_disc in sorted(table.per_disc.items()):
            entries = []
            for alpha, slots in enumerate(per_disc):
                for btuple, coeffs in sorted(slots.items()):
                    for exps, c in sorted(coeffs.items()):
                        entries.append({"discs": [alpha] * n,
                                        "basis": list(btuple),
                                        "exponents": list(exps),
                                        "value": str(c)})
                        lines.append(f"W[{g},{n}] disc {alpha} basis {btuple} "
                                     f"z^{exps}: {c}")
            payload[f"{g},{n}"] = entries
    else:
        table = spectral.toprec_run(curve, max_complexity=args.max_complexity)
        payload = spectral.correlators_to_json_dict(table)
        lines = []
        for key, entries in payload.items():
            for e in entries:
                lines.append(f"W[{key}] disc {e['discs'][0]} "
                             f"z^{e['exponents']}: {e['value']}")
    _emit(payload, args.format, lines)
    return 0


def cmd_intersect(args) -> int:
    table = catalan.intersection_numbers(args.g, args.n,
                                         degree_bound=args.degree_bound)
    payload = [{"g": args.g, "n": args.n, "d": list(ds), "value": str(v)}
               for ds, v in sorted(table.items())]
    lines = [f"<tau_{'.'.join(map(str, ds))}> = {v}"
             for ds, v in sorted(table.items())]
    _emit(payload, args.format, lines)
    return 0


def cmd_wkb_verify(args) -> int:
    orders = wkb.wkb_residual(args.order)
    payload = []
    lines = []
    ok = True
    for o in orders:
        entry = {"order": o.order, "vanishes": o.vanishes}
        if not o.vanishes:
            entry["residual"] = repr(o.residual)
            ok = False
        payload.append(entry)
        lines.append(f"hbar^{o.order} vanishes: {str(o.vanishes).lower()}")
    _emit(payload, args.format, lines)
    return 0 if ok else CHECK_FAILED


# ---------------------------------------------------------------------------
# argument grammar
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="celltqft",
        description="Exact 2D TQFT, cell-graph counting, topological "
                    "recursion, and quantum-curve checks.")
    parser.add_argument("--format", choices=("json", "table"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    algebra = sub.add_parser("algebra").add_subparsers(dest="sub", required=True)
    v = algebra.add_parser("validate")
    v.add_argument("algebra", help="JSON file or zoo:NAME")
    v.set_defaults(func=cmd_algebra_validate)
    t = algebra.add_parser("tqft")
    t.add_argument("algebra", help="JSON file or zoo:NAME")
    t.add_argument("--genus", type=int, required=True)
    t.add_argument("--vectors", help="JSON list of coefficient lists")
    t.set_defaults(func=cmd_algebra_tqft)
    z = algebra.add_parser("zoo")
    z.add_argument("name")
    z.set_defaults(func=cmd_algebra_zoo)

    graphs = sub.add_parser("graphs").add_subparsers(dest="sub", required=True)
    c = graphs.add_parser("count")
    c.add_argument("--genus", type=int, required=True)
    c.add_argument("--degrees", required=True, help="comma-separated")
    c.add_argument("--method", choices=("recursion", "brute", "both"),
                   default="recursion")
    c.set_defaults(func=cmd_graphs_count)
    h = graphs.add_parser("hom")
    h.add_argument("source")
    h.add_argument("target")
    h.set_defaults(func=cmd_graphs_hom)
    e = graphs.add_parser("eval")
    e.add_argument("graph")
    e.add_argument("--algebra", required=True)
    e.add_argument("--colors", required=True)
    e.set_defaults(func=cmd_graphs_eval)

    toprec = sub.add_parser("toprec").add_subparsers(dest="sub", required=True)
    r = toprec.add_parser("run")
    r.add_argument("--curve")
    r.add_argument("--curve-preset", choices=("airy", "catalan"))
    r.add_argument("--max-complexity", type=int, required=True)
    r.add_argument("--algebra", help="twist by this algebra")
    r.add_argument("--truncation", type=int,
                   default=spectral_default_truncation())
    r.set_defaults(func=cmd_toprec_run)

    i = sub.add_parser("intersect")
    i.add_argument("--g", type=int, required=True)
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--degree-bound", type=int, default=None)
    i.set_defaults(func=cmd_intersect)

    w = sub.add_parser("wkb").add_subparsers(dest="sub", required=True)
    wv = w.add_parser("verify")
    wv.add_argument("--order", type=int, required=True)
    wv.set_defaults(func=cmd_wkb_verify)

    return parser


def spectral_default_truncation() -> int:
    import os
    return int(os.environ.get("CELLTQFT_TRUNCATION", "30"))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, matching our input-error code
        return exc.code if isinstance(exc.code, int) else INPUT_ERROR
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
