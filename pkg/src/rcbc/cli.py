"""Command-line front end.

Exit codes: 0 success, 1 verification or retrieval failure, 2 usage error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constructions import NoKnownConstruction, construct_optimal, predicted_weight
from .core import (
    CodeParams,
    ColumnUnionWitness,
    RowContainmentWitness,
    ServiceWitness,
    cross_check,
    validate_params,
    verify,
    weight,
)
from .graphs import graph_from_code, max_edges_with_girth, render_graph
from .matrixio import parse_matrix, render_matrix
from .retrieval import InfeasibleDemand, plan_retrieval
from .search import DEFAULT_BUDGET, SearchBudget, exact_min_weight

__all__ = ["main"]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--params", help="packed parameters n,k,m,r")
    sub.add_argument("--n", type=int, help="number of files")
    sub.add_argument("--k", type=int, help="batch size")
    sub.add_argument("--m", type=int, help="number of servers")
    sub.add_argument("--r", type=int, help="tolerated server outages")


def _add_budget_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--node-limit",
        type=int,
        default=DEFAULT_BUDGET.node_limit,
        help="search node cap (default %(default)s)",
    )
    sub.add_argument(
        "--time-limit",
        type=float,
        default=DEFAULT_BUDGET.time_limit,
        help="search seconds cap (default %(default)s)",
    )


def _resolve_params(args: argparse.Namespace) -> CodeParams:
    if args.params is not None:
        if any(getattr(args, f) is not None for f in "nkmr"):
            raise ValueError("--params cannot be combined with --n/--k/--m/--r")
        fields = args.params.split(",")
        if len(fields) != 4:
            raise ValueError(f"--params needs four comma-separated integers, got {args.params!r}")
        try:
            n, k, m, r = (int(f) for f in fields)
        except ValueError:
            raise ValueError(f"--params needs integers, got {args.params!r}") from None
    else:
        for f in "nkmr":
            if getattr(args, f) is None:
                raise ValueError(f"missing --{f} (or pass --params n,k,m,r)")
        n, k, m, r = args.n, args.k, args.m, args.r
    p = CodeParams(n, k, m, r)
    validate_params(p)
    return p


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(node_limit=args.node_limit, time_limit=args.time_limit)


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(f) for f in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _parse_range(text: str) -> list[int]:
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise ValueError(f"bad range {text!r}, expected LO:HI") from None
    return _int_list(text)


def _describe(witness) -> str:
    if isinstance(witness, ColumnUnionWitness):
        return (
            f"columns {list(witness.columns)} span only servers "
            f"{list(witness.span)} ({len(witness.span)} of the required "
            f"r + {len(witness.columns)})"
        )
    if isinstance(witness, RowContainmentWitness):
        return (
            f"servers {list(witness.rows)} fully contain columns "
            f"{list(witness.columns)} ({len(witness.columns)} exceeds "
            f"{len(witness.rows)} - r)"
        )
    if isinstance(witness, ServiceWitness):
        return (
            f"demand {list(witness.demand)} with servers {list(witness.available)} "
            f"available: files {list(witness.hall_set)} reach fewer than "
            f"{len(witness.hall_set)} servers"
        )
    return str(witness)


def _cmd_construct(args: argparse.Namespace) -> int:
    p = _resolve_params(args)
    try:
        code, prediction = construct_optimal(p, budget=_budget(args))
    except NoKnownConstruction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3 if exc.budget_limited else 2
    text = (
        f"# regime: {prediction.regime}\n"
        f"# weight: {prediction.value}\n" + render_matrix(code)
    )
    _emit(text, args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    p = _resolve_params(args)
    code = parse_matrix(_read_text(args.file))
    if args.strategy == "all":
        report = cross_check(code, p)
        shown = "all strategies agree"
    else:
        report = verify(code, p, args.strategy)
        shown = report.strategy
    if report.ok:
        print(f"ok ({shown})")
        return 0
    print(f"fail ({report.strategy}): {_describe(report.witness)}", file=sys.stderr)
    return 1


def _cmd_retrieve(args: argparse.Namespace) -> int:
    p = _resolve_params(args)
    code = parse_matrix(_read_text(args.file))
    demand = _int_list(args.demand)
    down = set(_int_list(args.down))
    available = sorted(set(range(1, p.m + 1)) - down)
    try:
        plan = plan_retrieval(code, p, demand, available)
    except InfeasibleDemand as exc:
        print(
            f"infeasible: files {list(exc.hall_set)} reach fewer than "
            f"{len(exc.hall_set)} of the available servers",
            file=sys.stderr,
        )
        return 1
    print(" ".join(f"{f}->{s}" for f, s in plan.assignment))
    return 0


def _cmd_optimal(args: argparse.Namespace) -> int:
    p = _resolve_params(args)
    result = exact_min_weight(p, _budget(args))
    if result.exact:
        text = (
            f"# weight: {result.value}\n"
            f"# exact: yes\n"
            f"# nodes: {result.nodes}\n" + render_matrix(result.witness)
        )
        _emit(text, args.out)
        return 0
    lines = [
        f"# weight-lower-bound: {result.value}",
        "# exact: no",
        f"# nodes: {result.nodes}",
    ]
    text = "\n".join(lines) + "\n"
    if result.witness is not None:
        text += f"# best-found-weight: {weight(result.witness)}\n"
        text += render_matrix(result.witness)
    _emit(text, args.out)
    return 3


def _table_item(item: tuple[int, int, int, int, int, float]):
    n, k, m, r, node_limit, time_limit = item
    budget = SearchBudget(node_limit=node_limit, time_limit=time_limit)
    p = CodeParams(n, k, m, r)
    prediction = predicted_weight(p, budget=budget)
    oracle = exact_min_weight(p, budget)
    return (
        n,
        k,
        m,
        r,
        prediction.regime or "unknown",
        "" if prediction.value is None else prediction.value,
        oracle.value,
        oracle.exact,
    )


def _cmd_table(args: argparse.Namespace) -> int:
    items = []
    for n in _parse_range(args.n):
        for k in _parse_range(args.k):
            for m in _parse_range(args.m):
                for r in _parse_range(args.r):
                    try:
                        p = CodeParams(n, k, m, r)
                    except ValueError:
                        continue
                    if p.is_valid:
                        items.append((n, k, m, r, args.node_limit, args.time_limit))
    print("n,k,m,r,regime,predicted,oracle,exact")
    if args.jobs > 1:
        from multiprocessing import Pool

        with Pool(args.jobs) as pool:
            rows = pool.map(_table_item, items)
    else:
        rows = [_table_item(item) for item in items]
    all_exact = True
    for n, k, m, r, regime, predicted, oracle, exact in rows:
        all_exact &= exact
        flag = "true" if exact else "false"
        print(f"{n},{k},{m},{r},{regime},{predicted},{oracle},{flag}")
    return 0 if all_exact else 3


def _cmd_girth_search(args: argparse.Namespace) -> int:
    if args.m is None or args.girth is None:
        raise ValueError("girth-search needs --m and --girth")
    result = max_edges_with_girth(args.m, args.girth, _budget(args))
    graph = graph_from_code(result.witness)
    text = (
        f"# max-edges: {result.value}\n"
        f"# exact: {'yes' if result.exact else 'no'}\n" + render_graph(graph)
    )
    sys.stdout.write(text)
    return 0 if result.exact else 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcbc",
        description="Redundant batch codes: construct, verify, plan retrieval, search.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("construct", help="emit an optimal code for a covered regime")
    _add_param_flags(sub)
    _add_budget_flags(sub)
    sub.add_argument("--out", help="output file (default stdout)")
    sub.set_defaults(handler=_cmd_construct)

    sub = subs.add_parser("verify", help="check a matrix file against parameters")
    _add_param_flags(sub)
    sub.add_argument(
        "--strategy",
        choices=["auto", "definitional", "column-union", "row-containment", "all"],
        default="auto",
        help="verification strategy; 'all' cross-checks the three",
    )
    sub.add_argument("file", help="matrix file, or - for stdin")
    sub.set_defaults(handler=_cmd_verify)

    sub = subs.add_parser("retrieve", help="plan one server per demanded file")
    _add_param_flags(sub)
    sub.add_argument("--demand", required=True, help="files to fetch, e.g. 1,4")
    sub.add_argument("--down", default="", help="unavailable servers, e.g. 1,2,3")
    sub.add_argument("file", help="matrix file, or - for stdin")
    sub.set_defaults(handler=_cmd_retrieve)

    sub = subs.add_parser("optimal", help="exact minimum weight by branch and bound")
    _add_param_flags(sub)
    _add_budget_flags(sub)
    sub.add_argument("--out", help="output file (default stdout)")
    sub.set_defaults(handler=_cmd_optimal)

    sub = subs.add_parser("table", help="CSV sweep comparing formulas to the oracle")
    sub.add_argument("--n", required=True, help="range: N, LO:HI, or comma list")
    sub.add_argument("--k", required=True, help="range: N, LO:HI, or comma list")
    sub.add_argument("--m", required=True, help="range: N, LO:HI, or comma list")
    sub.add_argument("--r", required=True, help="range: N, LO:HI, or comma list")
    sub.add_argument("--jobs", type=int, default=1, help="parallel workers")
    _add_budget_flags(sub)
    sub.set_defaults(handler=_cmd_table)

    sub = subs.add_parser(
        "girth-search", help="most edges of an m-vertex graph with girth >= bound"
    )
    sub.add_argument("--m", type=int, required=True, help="number of vertices")
    sub.add_argument("--girth", type=int, required=True, help="minimum girth")
    _add_budget_flags(sub)
    sub.set_defaults(handler=_cmd_girth_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
