"""Command-line interface.

    lpcycles count --complete 4 --kmax 3
    lpcycles bounds --graph k5.edges --kmax 5 --format csv
    lpcycles exceptional --pmax 12
    lpcycles probe eq4 --complete 5 --p 5 --strict
    lpcycles verify thm2 --n 4 --vmax 6

JSON documents have the shape {command, params, results, meta}.  Exit codes:
0 success, 1 violations (or a discrepancy under --strict), 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__, bounds, cycles, graph, oracle, powersum, spectral, symfun
from .errors import BudgetExceeded, LpCyclesError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, symfun.SymPolyInE):
        return {"n": obj.n, "k": obj.k, "terms": obj.to_json(), "text": repr(obj)}
    if isinstance(obj, graph.Graph):
        return {"vertex_count": obj.vertex_count, "edges": [list(e) for e in obj.edges]}
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _dumps(doc) -> str:
    # floats go through repr, the shortest string that round-trips exactly
    return json.dumps(doc, default=_jsonable, allow_nan=False, indent=2, sort_keys=False)


# -- argument grammar ---------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--no-meta", action="store_true", help="omit timestamps and timings")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--budget", type=int, default=cycles.DEFAULT_NODE_BUDGET,
                   help="node-expansion budget for cycle enumeration")
    p.add_argument("--strict", action="store_true",
                   help="exit 1 when a probe finds a discrepancy")


def _graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="edge-list file")
    src.add_argument("--complete", type=int, metavar="N", help="use K_N")
    src.add_argument("--cycle", type=int, metavar="N", help="use the N-cycle")
    src.add_argument("--path", type=int, metavar="N", help="use the path on N vertices")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpcycles", description=__doc__.split("\n")[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help):
        p = sub.add_parser(name, help=help, allow_abbrev=False)
        _common(p)
        return p

    p = cmd("count", "triangle, cycle and trace counts of a graph")
    _graph_source(p)
    p.add_argument("--kmax", type=int, default=3)

    p = cmd("bounds", "exact counts next to every edge-count bound")
    _graph_source(p)
    p.add_argument("--kmax", type=int, default=3)

    p = cmd("spectrum", "adjacency eigenvalues")
    _graph_source(p)
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
    p.add_argument("--kmax", type=int, default=4, help="trace powers to compare")

    p = cmd("extremal", "maximiser of sum x_i^p on the unit sphere with zero sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--splits", action="store_true", help="list every two-level stationary point")
    p.add_argument("--numeric", action="store_true", help="also run the gradient explorer")
    p.add_argument("--mode", choices=(powersum.SIGNED, powersum.ABSOLUTE), default=powersum.SIGNED)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=5000)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--tol", type=float, default=1e-9)

    p = cmd("newton", "power sums as polynomials in e3 (and e4)")
    p.add_argument("--n", type=int, choices=(3, 4), default=3)
    p.add_argument("--kmax", type=int, default=7)

    p = cmd("exceptional", "threshold table and exceptional (n, p) pairs")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--certify", action="store_true", help="run the check that settles each pair")

    p = cmd("probe", "discrepancy probes")
    probes = p.add_subparsers(dest="probe", required=True, parser_class=_Parser)
    q = probes.add_parser("eq4", help="tr A^p versus 2p C_p", allow_abbrev=False)
    _common(q)
    _graph_source(q)
    q.add_argument("--p", type=int, required=True)
    q = probes.add_parser("thm4", help="sharp p-cycle bound on K_n", allow_abbrev=False)
    _common(q)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int, required=True)

    p = cmd("verify", "exhaustive sweeps")
    checks = p.add_subparsers(dest="check", required=True, parser_class=_Parser)
    q = checks.add_parser("thm2", help="average triangles per edge", allow_abbrev=False)
    _common(q)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--vmax", type=int, default=oracle.FULL_SWEEP_VERTICES)
    q.add_argument("--allow-large", action="store_true")
    q = checks.add_parser("eq5", help="closed-walk class sandwich", allow_abbrev=False)
    _common(q)
    q.add_argument("--vmax", type=int, default=5)
    q.add_argument("--kmax", type=int, default=6)
    q = checks.add_parser("traces", help="tr A, tr A^2, tr A^3 identities", allow_abbrev=False)
    _common(q)
    q.add_argument("--vmax", type=int, default=oracle.FULL_SWEEP_VERTICES)
    q = checks.add_parser("maxtri", help="triangle-maximal graphs with E edges", allow_abbrev=False)
    _common(q)
    q.add_argument("--edges", type=int, required=True)
    q.add_argument("--vmax", type=int, default=oracle.TARGETED_SWEEP_VERTICES)
    q.add_argument("--allow-large", action="store_true")
    return parser


# -- subcommands --------------------------------------------------------------
# Each returns (results, exit_code, table) where table is a list of dict rows
# for CSV output, or None when the result is not tabular.


def _load_graph(args) -> graph.Graph:
    if args.graph:
        try:
            return graph.read_edge_list(args.graph)
        except OSError as exc:
            raise LpCyclesError(f"cannot read {args.graph}: {exc.strerror}") from None
    if args.complete is not None:
        return graph.complete(args.complete)
    if args.cycle is not None:
        return graph.cycle(args.cycle)
    return graph.path(args.path)


def _count(args):
    g = _load_graph(args)
    kmax = min(args.kmax, g.vertex_count)
    counts = cycles.cycle_counts(g, kmax, args.budget) if kmax >= 3 else None
    results = {
        "vertex_count": g.vertex_count,
        "edge_count": g.edge_count,
        "triangle_count": cycles.count_triangles(g),
        "by_length": {str(k): c for k, c in (counts.by_length if counts else {}).items()},
        "trace_powers": {str(k): spectral.trace_power(g, k) for k in range(1, max(args.kmax, 3) + 1)},
    }
    table = [{"k": k, "simple_cycles": c} for k, c in (counts.by_length if counts else {}).items()]
    return results, EXIT_OK, table


def _bounds(args):
    g = _load_graph(args)
    report = bounds.bound_report(g, args.kmax, args.budget)
    results = asdict(report)
    return results, EXIT_OK, results["rows"]


def _spectrum(args):
    g = _load_graph(args)
    s = spectral.adjacency_spectrum(g, args.tol)
    rows = [
        {"k": k, "spectral_trace": spectral.spectral_trace(s, k), "trace_power": spectral.trace_power(g, k)}
        for k in range(1, args.kmax + 1)
    ]
    results = {
        "eigenvalues": list(s.eigenvalues),
        "tolerance": s.tolerance,
        "spectral_radius": s.spectral_radius,
        "traces": rows,
    }
    return results, EXIT_OK, rows


def _solution(sol: powersum.ExtremalSolution) -> dict:
    return asdict(sol)


def _extremal(args):
    n, p = args.n, args.p
    results = {}
    if args.mode == powersum.SIGNED:
        if p != int(p):
            raise LpCyclesError("signed mode needs an integer --p")
        p = int(p)
        sol = powersum.extremal_point(n, p)
        results["closed_form"] = _solution(sol)
        results["proof"] = powersum.certify(n, p)
        if args.splits:
            results["two_level_solutions"] = [_solution(s) for s in powersum.two_level_solutions(n, p)]
    if args.numeric or args.mode == powersum.ABSOLUTE:
        problem = powersum.PowerSumProblem(n, p, args.mode)
        sol = powersum.numeric_maximize(problem, args.seed, args.iterations, args.tol, args.restarts)
        results["numeric"] = _solution(sol)
    table = None
    if args.splits and "two_level_solutions" in results:
        table = [
            {k: s[k] for k in ("n1", "n2", "alpha1", "alpha2", "lambda1", "lambda2", "objective")}
            for s in results["two_level_solutions"]
        ]
    return results, EXIT_OK, table


def _newton(args):
    ts = [
        symfun.t_in_e3_n3(k) if args.n == 3 else symfun.t_in_e_n4(k)
        for k in range(1, args.kmax + 1)
    ]
    results = {"n": args.n, "power_sums": ts}
    if args.n == 3:
        results["coefficients_nonnegative"] = symfun.coefficient_positivity_check(max(args.kmax, 3))
    else:
        results["identities"] = {str(k): v for k, v in symfun.n4_identities().items()}
        results["e4_min_at_e3_max"] = symfun.e4_min_at_e3_max(4)
    table = [{"k": t.k, "polynomial": repr(t)} for t in ts]
    return results, EXIT_OK, table


def _exceptional(args):
    pairs = sorted(powersum.exceptional_set(args.pmax), key=lambda t: (t[1], t[0]))
    rows = [asdict(powersum.g_threshold(p)) for p in range(3, args.pmax + 1)]
    results = {"p_max": args.pmax, "pairs": [list(t) for t in pairs], "thresholds": rows}
    code = EXIT_OK
    if args.certify:
        certs = [powersum.certify(n, p) for n, p in pairs]
        results["certificates"] = certs
        if not all(c["holds"] for c in certs):
            code = EXIT_VIOLATION
    table = [{**r, "exceptional_n": " ".join(map(str, r["exceptional_n"]))} for r in rows]
    return results, code, table


def _probe(args):
    if args.probe == "eq4":
        g = _load_graph(args)
        tr = spectral.trace_power(g, args.p)
        c = cycles.count_simple_cycles(g, args.p, args.budget)
        gap = tr - 2 * args.p * c
        record = {
            "probe": "eq4",
            "claim": "tr A^p = 2p C_p(G)",
            "vertex_count": g.vertex_count,
            "edge_count": g.edge_count,
            "p": args.p,
            "trace": tr,
            "simple_cycles": c,
            "gap": gap,
            "discrepancy": gap != 0,
        }
    else:
        r = oracle.verify_thm4_equality(args.n, args.p, args.budget)
        exact = r["exact"]
        record = {
            "probe": "thm4",
            "claim": "C_p(K_n) equals the sharp p-cycle bound; printed constant bounds C_p",
            **r,
            "printed_below_exact": r["printed_bound"] < exact,
            "discrepancy": (not r["equal"]) or r["printed_bound"] < exact,
        }
    code = EXIT_VIOLATION if args.strict and record["discrepancy"] else EXIT_OK
    return record, code, None


def _verify(args):
    if args.check == "thm2":
        report = oracle.verify_theorem2(args.n, args.vmax, args.jobs, args.allow_large)
    elif args.check == "eq5":
        report = oracle.verify_eq5(args.vmax, args.kmax, args.jobs)
    elif args.check == "traces":
        report = oracle.verify_trace_identities(args.vmax, args.jobs)
    else:
        best, witnesses = oracle.max_triangles_for_edges(args.edges, args.vmax, args.jobs, args.allow_large)
        results = {"edges": args.edges, "vertex_max": args.vmax, "max_T": best, "witnesses": witnesses}
        return results, EXIT_OK, None
    code = EXIT_OK if report.status == "verified" else EXIT_VIOLATION
    return report.to_dict(meta=not args.no_meta), code, None


COMMANDS = {
    "count": _count,
    "bounds": _bounds,
    "spectrum": _spectrum,
    "extremal": _extremal,
    "newton": _newton,
    "exceptional": _exceptional,
    "probe": _probe,
    "verify": _verify,
}

_NON_PARAMS = {"command", "format", "no_meta"}


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


def _text(results, indent: str = "") -> str:
    lines = []
    items = results.items() if isinstance(results, dict) else enumerate(results)
    for k, v in items:
        if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, float, str)) for x in v):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        results, code, table = COMMANDS[args.command](args)
    except (LpCyclesError, BudgetExceeded) as exc:
        print(f"lpcycles {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE

    if args.format == "csv":
        if not table:
            print(f"lpcycles {args.command}: no tabular output for this command", file=stderr)
            return EXIT_USAGE
        stdout.write(_csv(table))
        return code
    if args.format == "text":
        stdout.write(_text(json.loads(_dumps(results))) + "\n")
        return code

    params = {k: v for k, v in vars(args).items() if k not in _NON_PARAMS}
    meta = {"version": __version__}
    if not args.no_meta:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat()
        meta["wall_time"] = time.perf_counter() - started
    doc = {"command": args.command, "params": params, "results": results, "meta": meta}
    stdout.write(_dumps(doc) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
