"""Command-line front end: batch computations on network JSON files.

Exit codes: 0 success, 1 invariant or claim failure, 2 bad input,
3 search budget exceeded.  All randomness flows from ``--seed``; given
identical invocations the JSON output is byte-identical across machines.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .capreport import ReportOptions, ReportInvariantError, bounds_report, report_to_obj
from .codingsearch import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    SearchConfig,
    c1_exact,
    exhaustive_achievable,
    protocol_to_obj,
)
from .netmodel import (
    NetworkError,
    load_network,
    min_cut,
    network_to_obj,
    scale,
    tensor_power,
)
from .reproduce import CLAIMS, run_all, run_claim
from .tnrank import PrimeField, estimate_r1
from .transforms import SplitSpec, round_networks, split_cycle_edge

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _read_network(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return load_network(fh.read())
    except (OSError, NetworkError) as exc:
        raise _fail(EXIT_BAD_INPUT, f"error: {exc}")


def _fail(code, message):
    print(message, file=sys.stderr)
    return SystemExit(code)


def _budget(args) -> int:
    env = os.environ.get("ENTCAP_BUDGET")
    if env is not None:
        return int(env)
    return args.budget


def cmd_mincut(args) -> int:
    net = _read_network(args.file)
    cut = min_cut(net)
    _emit({"min_cut": cut.value, "witness": sorted(cut.s_side)})
    return EXIT_OK


def cmd_rank(args) -> int:
    net = _read_network(args.file)
    est = estimate_r1(
        net, PrimeField(args.prime), trials=args.trials, seed=args.seed
    )
    _emit(
        {
            "r1_lower": est.r1_lower,
            "mc_upper": est.mc_upper,
            "failure_bound": str(est.failure_bound),
            "trials": est.trials,
            "witness_seed": est.witness_seed,
        }
    )
    return EXIT_OK


def cmd_c1(args) -> int:
    net = _read_network(args.file)
    cfg = SearchConfig(
        alphabet_size=max(args.l or 1, 1),
        budget=_budget(args),
        fix_source_bijection=args.fix_source_bijection,
        shard=(args.shard_index, args.shard_count),
    )
    try:
        if args.exact_up_to is not None:
            value = c1_exact(net, args.exact_up_to, cfg)
            _emit({"c1": value, "l_max": args.exact_up_to})
            return EXIT_OK
        result = exhaustive_achievable(net, cfg)
    except BudgetExceededError as exc:
        raise _fail(EXIT_BUDGET, f"error: {exc} (best known {exc.best_known})")
    if result.status == "budget_exceeded":
        raise _fail(EXIT_BUDGET, "error: search budget exceeded")
    out = {
        "l": cfg.alphabet_size,
        "status": result.status,
        "assignments": result.assignments,
    }
    if result.witness is not None:
        out["witness"] = protocol_to_obj(result.witness)
    _emit(out)
    return EXIT_OK


def _parse_op(op: str):
    parts = op.split(":")
    kind = parts[0]
    if kind == "split" and len(parts) == 4:
        return "split", SplitSpec(parts[1], int(parts[2]), int(parts[3]))
    if kind in ("power", "scale", "round") and len(parts) == 2:
        return kind, int(parts[1])
    raise ValueError(f"bad --op value {op!r}")


def cmd_transform(args) -> int:
    net = _read_network(args.file)
    try:
        kind, arg = _parse_op(args.op)
    except ValueError as exc:
        raise _fail(EXIT_BAD_INPUT, f"error: {exc}")
    if kind == "split":
        _emit(network_to_obj(split_cycle_edge(net, arg)))
    elif kind == "power":
        _emit(network_to_obj(tensor_power(net, arg)))
    elif kind == "scale":
        _emit(network_to_obj(scale(net, arg)))
    else:
        pair = round_networks(net, arg)
        _emit(
            {
                "lower": network_to_obj(pair.lower),
                "upper": network_to_obj(pair.upper),
                "c1": pair.c1,
                "c2": pair.c2,
            }
        )
    return EXIT_OK


def cmd_bounds(args) -> int:
    net = _read_network(args.file)
    splits = []
    for spec in args.split or ():
        splits.append(SplitSpec(*_split_args(spec)))
    options = ReportOptions(
        splits=tuple(splits),
        rank_trials=args.trials,
        seed=args.seed,
        coding_budget=_budget(args),
        r1_exact=args.r1_exact,
        full_orientations=args.full_orientations,
    )
    try:
        report = bounds_report(net, options)
    except ReportInvariantError as exc:
        raise _fail(EXIT_FAIL, f"error: {exc}")
    _emit(report_to_obj(report))
    return EXIT_OK


def _split_args(spec: str):
    eid, a, b = spec.split(":")
    return eid, int(a), int(b)


def cmd_reproduce(args) -> int:
    if args.claim is not None:
        if args.claim not in CLAIMS:
            raise _fail(
                EXIT_BAD_INPUT,
                f"error: unknown claim {args.claim!r}; known: {', '.join(CLAIMS)}",
            )
        results = [run_claim(args.claim, budget=_budget(args), seed=args.seed)]
    else:
        results = run_all(budget=_budget(args), seed=args.seed)
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_ok &= r.passed
        print(f"{r.name:<{width}}  {status}  {r.seconds:7.2f}s  {r.computed}")
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entcap",
        description="Exact capacities and bounds for entanglement networks.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker threads; results are independent of this by construction",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mincut", help="exact multiplicative min-cut of a network file")
    p.add_argument("file")
    p.set_defaults(func=cmd_mincut)

    p = sub.add_parser("rank", help="randomized one-shot tensor-network capacity")
    p.add_argument("file")
    p.add_argument("--prime", type=int, default=PrimeField().p)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("c1", help="one-shot coding search on a directed acyclic network")
    p.add_argument("file")
    p.add_argument("--l", type=int, default=None, help="alphabet size to test")
    p.add_argument("--exact-up-to", type=int, default=None, help="scan for the largest achievable l")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--fix-source-bijection", action="store_true")
    p.add_argument("--shard-index", type=int, default=0)
    p.add_argument("--shard-count", type=int, default=1)
    p.set_defaults(func=cmd_c1)

    p = sub.add_parser("transform", help="apply split/power/scale/round to a network")
    p.add_argument("file")
    p.add_argument("--op", required=True, help="split:EDGE:a:b | power:n | scale:k | round:n")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("bounds", help="full capacity report with bound orderings")
    p.add_argument("file")
    p.add_argument("--split", action="append", help="EDGE:a:b split variant (repeatable)")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--r1-exact", action="store_true", help="trust the rank estimate as exact")
    p.add_argument("--full-orientations", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reproduce", help="re-derive the headline numbers")
    p.add_argument("--claim", default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NetworkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
