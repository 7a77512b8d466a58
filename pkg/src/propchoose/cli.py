"""Command line interface: ``propchoose <subcommand> ...``.

Exit codes: 0 success / choosable / coloring found, 1 definitive negative,
2 usage or input error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .assignment import DEFAULT_CAP, AssignmentError, EnumerationCapError, ListAssignment, index_to_assignment
from .classifier import KNOWN_NO, classify
from .graph import GraphError, parse_graph_spec
from .runs import RunReport, SelfCheckError, reproduce_p7, survey
from .solver import find_proportional_coloring
from .verifier import default_jobs, verify_choosable
from .witnesses import EmbeddingError, check_witness, named_witness

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _write_report(report: RunReport, target: str | None) -> None:
    if target is None:
        return
    if target == "-":
        print(report.to_json())
    else:
        Path(target).write_text(report.to_json() + "\n", encoding="utf-8")


def _load_assignment(args, g) -> ListAssignment:
    if args.assignment is not None:
        L = ListAssignment.from_json(Path(args.assignment).read_text(encoding="utf-8"))
    elif args.assignment_index is not None:
        L = index_to_assignment(g, args.k, args.ell, args.assignment_index)
    else:
        raise AssignmentError("give --assignment FILE or --assignment-index N")
    L.check_graph(g)
    return L


def cmd_solve(args) -> int:
    g = parse_graph_spec(args.graph)
    L = _load_assignment(args, g)
    t0 = time.perf_counter()
    out = find_proportional_coloring(g, L, order=args.order, count_all=args.count)
    ms = (time.perf_counter() - t0) * 1000
    if args.emit_coloring == "json":
        print(json.dumps(out.coloring.to_dict() if out.found else None))
    elif out.found:
        print(f"proportional coloring found ({out.nodes_explored} nodes): {list(out.coloring.colors)}")
    else:
        print(f"no proportional coloring ({out.nodes_explored} nodes)")
    if args.count:
        print(f"proportional colorings: {out.count}", file=sys.stderr)
    inputs = {"graph": args.graph, "assignment": L.to_dict(), "order": args.order}
    _write_report(RunReport("solve", inputs, out.to_dict(), ms), args.report)
    return EXIT_OK if out.found else EXIT_NO


def cmd_verify(args) -> int:
    g = parse_graph_spec(args.graph)
    v = verify_choosable(
        g,
        args.k,
        args.ell,
        args.mode,
        jobs=args.jobs,
        cap=args.cap,
        force=args.force,
        exhaustive=args.exhaustive,
        order=args.order,
        progress=not args.quiet,
    )
    if v.choosable:
        print(f"{args.graph}: proportionally ({args.k},{args.ell})-choosable; {v.assignments_checked} assignments checked")
    else:
        print(
            f"{args.graph}: NOT proportionally ({args.k},{args.ell})-choosable; "
            f"witness #{v.witness_index}: {[list(s) for s in v.witness.lists]}"
        )
    inputs = {"graph": args.graph, "k": args.k, "ell": args.ell, "mode": args.mode, "jobs": args.jobs}
    _write_report(RunReport("verify", inputs, v.to_dict(args.graph), v.duration * 1000), args.report)
    return EXIT_OK if v.choosable else EXIT_NO


def cmd_classify(args) -> int:
    g = parse_graph_spec(args.graph)
    t0 = time.perf_counter()
    c = classify(g, args.ell)
    print(f"{args.graph} at ell={args.ell}: {c.status}" + (f" [{c.rule}]" if c.rule else ""))
    if args.explain:
        for line in c.explanation:
            print(f"  - {line}")
        for key, val in c.certificate.items():
            print(f"  {key}: {val}")
    inputs = {"graph": args.graph, "ell": args.ell}
    _write_report(RunReport("classify", inputs, c.to_dict(), (time.perf_counter() - t0) * 1000), args.report)
    return EXIT_NO if c.status == KNOWN_NO else EXIT_OK


def cmd_witness(args) -> int:
    g = parse_graph_spec(args.graph) if args.graph else None
    w = named_witness(args.name, g)
    payload = w.to_dict()
    if args.check:
        payload["verified"] = check_witness(w)
    text = json.dumps(payload, indent=2)
    if args.out and args.out != "-":
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {w.name} ({w.graph.n} vertices) to {args.out}")
    else:
        print(text)
    if args.check and not payload["verified"]:
        return EXIT_NO
    return EXIT_OK


def cmd_reproduce(args) -> int:
    try:
        r = reproduce_p7(args.mode, args.jobs)
    except SelfCheckError as exc:
        print(f"self-check failed: {exc}", file=sys.stderr)
        return EXIT_NO
    res = r.result
    print(f"P7 is proportionally (2,4)-choosable: {res['assignments_checked']} assignments checked ({args.mode} mode)")
    _write_report(r, args.report)
    return EXIT_OK


def cmd_survey(args) -> int:
    r = survey(args.max_n, args.k, tuple(args.ell), args.mode, args.jobs)
    for ell, s in sorted(r.result["per_ell"].items(), key=lambda kv: int(kv[0])):
        print(
            f"ell={ell}: {s['graphs']} graphs, {s['choosable']} choosable, "
            f"{s['unknown']} unknown ({s['unknown_rate']:.1%}), {s['disagreements']} disagreements"
        )
    _write_report(r, args.report)
    return EXIT_NO if r.result["disagreements"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propchoose", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kl=True):
        sp.add_argument("--graph", required=True, help="graph spec, e.g. path:7, cycle:4, union:path:3+path:3")
        if kl:
            sp.add_argument("-k", type=int, default=2)
            sp.add_argument("-l", "--ell", type=int, default=4)
        sp.add_argument("--report", help="write a JSON report to this file ('-' for stdout)")

    sp = sub.add_parser("solve", help="search for a proportional coloring of one assignment")
    common(sp)
    sp.add_argument("--assignment", help="assignment JSON file")
    sp.add_argument("--assignment-index", type=int, help="assignment by enumeration index")
    sp.add_argument("--order", choices=("smart", "appendix"), default="smart")
    sp.add_argument("--emit-coloring", choices=("json",))
    sp.add_argument("--count", action="store_true", help="also count all proportional colorings")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="exhaustively check proportional (k,ell)-choosability")
    common(sp)
    sp.add_argument("--mode", choices=("full", "canonical"), default="full")
    sp.add_argument("--jobs", type=int, default=default_jobs())
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--force", action="store_true", help="ignore the enumeration cap")
    sp.add_argument("--exhaustive", action="store_true", help="count every failing assignment")
    sp.add_argument("--order", choices=("smart", "appendix"), default="smart")
    sp.add_argument("--quiet", action="store_true", help="no progress lines on stderr")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="classify (2,ell)-choosability from known results")
    sp.add_argument("--graph", required=True)
    sp.add_argument("-l", "--ell", type=int, default=3)
    sp.add_argument("--explain", action="store_true")
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("witness", help="emit a named bad assignment")
    sp.add_argument("--name", required=True, help="star23, evencycle24:<n>, doubleclaw25, p3p3, p9, cycle23:<n>, oddcycle:<n>")
    sp.add_argument("--graph", help="host graph (embedding found automatically or spanning transplant)")
    sp.add_argument("--out", help="output file ('-' or omitted for stdout)")
    sp.add_argument("--check", action="store_true", help="confirm by exhaustive search")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("reproduce", help="verify that P7 is proportionally (2,4)-choosable")
    sp.add_argument("--mode", choices=("full", "canonical"), default="full")
    sp.add_argument("--jobs", type=int, default=default_jobs())
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("survey", help="compare the classifier with exhaustive search on small graphs")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("-k", type=int, default=2)
    sp.add_argument("-l", "--ell", type=int, nargs="+", default=[2, 3, 4])
    sp.add_argument("--mode", choices=("full", "canonical"), default="canonical")
    sp.add_argument("--jobs", type=int, default=default_jobs())
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_survey)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapError as exc:
        print(f"error: {exc} (use --force or raise --cap)", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, AssignmentError, EmbeddingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
