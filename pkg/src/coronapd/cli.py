"""Command-line interface.

Exit status: 0 all computed / passed, 1 failure found (guarded claim failure,
non-resolving set or partition), 2 usage error, 3 inconclusive results present.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .constructions import (
    ConstructionError,
    construct_from_resolving_set,
    construct_path_empty_partition,
    construct_star_partition,
    construct_sum_partition,
)
from .corona import corona, parse_spec_full
from .graphs import GraphError, format_edgelist
from .resolvability import (
    format_partition,
    format_vertex_set,
    parse_partition,
    parse_vertex_set,
    resolving_partition_conflict,
    resolving_set_conflict,
)
from .solvers import (
    BudgetExceeded,
    SolverError,
    metric_dimension,
    metric_dimension_oracle,
    partition_dimension,
    partition_dimension_oracle,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _graph(spec):
    try:
        return parse_spec_full(spec)
    except (GraphError, OSError) as exc:
        raise UsageError(str(exc)) from None


def cmd_dim(args, out):
    g, _ = _graph(args.graph)
    res = metric_dimension_oracle(g) if args.oracle else metric_dimension(g, args.budget)
    print(f"dim = {res.value}", file=out)
    print(f"witness: {format_vertex_set(res.witness)}", file=out)
    return EXIT_OK


def cmd_pd(args, out):
    g, cg = _graph(args.graph)
    if args.oracle:
        res = partition_dimension_oracle(g)
    else:
        order = cg.search_order() if cg is not None else None
        res = partition_dimension(g, args.budget, order=order, workers=args.threads)
    print(f"pd = {res.value}", file=out)
    print(f"witness: {format_partition(res.witness)}", file=out)
    return EXIT_OK


def cmd_corona(args, out):
    g, _ = _graph(args.g)
    h, _ = _graph(args.h)
    cg = corona(g, h)
    if args.emit == "summary":
        print(f"order = {cg.graph.order}", file=out)
        print(f"edges = {len(cg.graph.edges)}", file=out)
        return EXIT_OK
    header = [f"corona({args.g},{args.h})"]
    header += [f"center {i}: {v}" for i, v in enumerate(cg.centers)]
    header += [f"copy {i}: {format_vertex_set(c)}" for i, c in enumerate(cg.copies)]
    out.write(format_edgelist(cg.graph, header))
    return EXIT_OK


def cmd_verify_set(args, out):
    g, _ = _graph(args.graph)
    try:
        s = parse_vertex_set(args.set)
    except ValueError as exc:
        raise UsageError(f"bad --set: {exc}") from None
    if any(not 0 <= v < g.order for v in s):
        raise UsageError(f"--set has a vertex outside 0..{g.order - 1}")
    conflict = resolving_set_conflict(g.distances, s)
    if conflict is None:
        print("resolving", file=out)
        return EXIT_OK
    print(f"not resolving: conflict {conflict[0]} {conflict[1]}", file=out)
    return EXIT_FAIL


def cmd_verify_partition(args, out):
    g, _ = _graph(args.graph)
    try:
        p = parse_partition(args.partition)
    except ValueError as exc:
        raise UsageError(f"bad --partition: {exc}") from None
    if not p.covers(g.order):
        raise UsageError(f"--partition must cover exactly the vertices 0..{g.order - 1}")
    conflict = resolving_partition_conflict(g.distances, p)
    if conflict is None:
        print("resolving", file=out)
        return EXIT_OK
    print(f"not resolving: conflict {conflict[0]} {conflict[1]}", file=out)
    return EXIT_FAIL


def cmd_construct(args, out):
    kind, params = args.kind, args.params
    try:
        if kind == "path-empty":
            if len(params) != 2:
                raise UsageError("path-empty takes N1 N2")
            built = construct_path_empty_partition(int(params[0]), int(params[1]))
        else:
            if len(params) != 2:
                raise UsageError(f"{kind} takes G_SPEC H_SPEC")
            g, _ = _graph(params[0])
            h, _ = _graph(params[1])
            cg = corona(g, h)
            if kind == "star":
                built = construct_star_partition(cg)
            elif kind == "sum":
                built = construct_sum_partition(
                    cg, partition_dimension(g, args.budget).witness, partition_dimension(h, args.budget).witness
                )
            else:
                s = metric_dimension(cg.graph, args.budget).witness
                built = construct_from_resolving_set(cg, s, partition_dimension(g, args.budget).witness)
    except ValueError as exc:
        if isinstance(exc, (ConstructionError, GraphError)):
            raise UsageError(str(exc)) from None
        raise UsageError(f"bad parameters: {exc}") from None
    print(f"# construction: {built.provenance}", file=out)
    print(f"# blocks: {built.size}", file=out)
    print("# verified: resolving", file=out)
    print(format_partition(built.partition), file=out)
    return EXIT_OK


def _emit_rows(rows, out, timing):
    for r in rows:
        print(r.to_json(timing), file=out)


def cmd_check(args, out):
    _graph(args.g)
    _graph(args.h)
    ids = harness.CLAIM_IDS if args.claim == "all" else (args.claim,)
    try:
        claims = [harness.get_claim(cid) for cid in ids]
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    inv = harness.Invariants(args.budget)
    rows = [harness.evaluate_claim(c.id, args.g, args.h, inv) for c in claims]
    _emit_rows(rows, out, not args.no_timing)
    return harness.summarize(rows).exit_status


def cmd_sweep(args, out, err):
    if args.grid == "default":
        grid = harness.default_grid()
    else:
        try:
            grid = harness.read_grid(args.grid)
        except (OSError, ValueError) as exc:
            raise UsageError(f"bad --grid: {exc}") from None
    claims = None
    if args.claims != "all":
        claims = [c.strip() for c in args.claims.split(",") if c.strip()]
        for cid in claims:
            if cid not in harness.CLAIM_IDS:
                raise UsageError(f"unknown claim {cid!r}")
    try:
        rows = harness.run_sweep(grid, claims, budget=args.budget, workers=args.threads)
    except (GraphError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    timing = not args.no_timing
    if args.out:
        with open(args.out, "w") as fh:
            _emit_rows(rows, fh, timing)
    else:
        _emit_rows(rows, out, timing)
    summary = harness.summarize(rows)
    print(
        f"instances={len(grid)} rows={len(rows)} pass={summary.passed} fail={len(summary.failed)} "
        f"skipped={summary.skipped} inconclusive={len(summary.inconclusive)} "
        f"informational_violations={len(summary.informational_violations)}",
        file=err,
    )
    for r in summary.failed:
        print(f"FAIL {r.claim_id} g={r.g_spec} h={r.h_spec} lhs={r.lhs} rhs={r.rhs} witness={r.witness}", file=err)
    for r in summary.inconclusive:
        print(f"INCONCLUSIVE {r.claim_id} g={r.g_spec} h={r.h_spec}: {r.note}", file=err)
    return summary.exit_status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coronapd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def solver_opts(p):
        p.add_argument("--budget", type=int, default=None, help="search node budget (default $CORONAPD_BUDGET or 1e9)")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("dim", help="metric dimension")
    p.add_argument("graph", help="family spec, corona(SPEC,SPEC) or edge-list file")
    p.add_argument("--oracle", action="store_true", help="use plain subset enumeration")
    solver_opts(p)

    p = sub.add_parser("pd", help="partition dimension")
    p.add_argument("graph")
    p.add_argument("--oracle", action="store_true", help="use plain partition enumeration")
    solver_opts(p)

    p = sub.add_parser("corona", help="emit G⊙H with its labeling")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--emit", choices=["edgelist", "summary"], default="edgelist")

    p = sub.add_parser("verify-set", help="check a resolving set")
    p.add_argument("graph")
    p.add_argument("--set", required=True)

    p = sub.add_parser("verify-partition", help="check a resolving partition")
    p.add_argument("graph")
    p.add_argument("--partition", required=True)

    p = sub.add_parser("construct", help="build an explicit resolving partition of a corona")
    p.add_argument("kind", choices=["thm2", "sum", "star", "path-empty"])
    p.add_argument("params", nargs="+")
    solver_opts(p)

    p = sub.add_parser("check", help="evaluate one claim (or all) on one instance")
    p.add_argument("claim")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--no-timing", action="store_true", help="report millis as 0 for reproducible output")
    solver_opts(p)

    p = sub.add_parser("sweep", help="evaluate claims over a grid of instances")
    p.add_argument("--grid", default="default")
    p.add_argument("--claims", default="all")
    p.add_argument("--out")
    p.add_argument("--no-timing", action="store_true")
    solver_opts(p)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.verb == "sweep":
            return cmd_sweep(args, out, err)
        handler = {
            "dim": cmd_dim,
            "pd": cmd_pd,
            "corona": cmd_corona,
            "verify-set": cmd_verify_set,
            "verify-partition": cmd_verify_partition,
            "construct": cmd_construct,
            "check": cmd_check,
        }[args.verb]
        return handler(args, out)
    except UsageError as exc:
        print(f"coronapd: error: {exc}", file=err)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"coronapd: error: {exc}", file=err)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"coronapd: inconclusive: {exc}", file=err)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
