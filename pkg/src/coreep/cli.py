"""Command-line front end.

Four verbs: ``compute`` (any catalog inverse on matrix files), ``verify``
(run theorem suites), ``randgen`` (write a random weighted pair), and
``report`` (run every suite and write the combined JSON report).

Machine contract: JSON payloads on standard output and the exit code
(0 success, 1 I/O or validation error, 2 inverse does not exist).
Human-readable messages go to standard error.  All flags are long-form;
unknown flags are errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .certificate import InverseCertificate
from .classic import core, core_ep, drazin, group, moore_penrose, one_three
from .harness import SUITE_LABELS, WEIGHT_MODES, GeneratorSpec, generate_pair, run_suite
from .matio import MatrixFormatError, load_matrix, save_matrix
from .matrix import ToleranceConfig
from .weighted import (
    WeightedPair,
    bc_inverse,
    w_core,
    w_core_ep_13w,
    w_core_ep_direct,
    w_core_ep_gdrazin,
    w_gdrazin,
    w_one_three,
)

_UNWEIGHTED: dict[str, Callable] = {
    "moore-penrose": moore_penrose,
    "group": group,
    "drazin": drazin,
    "core": core,
    "core-ep": core_ep,
    "one-three": one_three,
}

_WEIGHTED: dict[str, Callable] = {
    "w-gdrazin": w_gdrazin,
    "w-core": w_core,
    "w-one-three": w_one_three,
}

_ROUTES: dict[str, Callable] = {
    "direct": w_core_ep_direct,
    "gdrazin": w_core_ep_gdrazin,
    "13w": w_core_ep_13w,
}

KINDS = (*_UNWEIGHTED, *_WEIGHTED, "w-core-ep", "bc")


class _Parser(argparse.ArgumentParser):
    """Argument errors exit with status 1; 2 is reserved for exists=False."""

    def error(self, message: str):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_tol_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rank-rtol", type=float, default=None, help="relative rank threshold")
    p.add_argument("--eq-atol", type=float, default=1e-10, help="absolute equality tolerance")
    p.add_argument("--eq-rtol", type=float, default=1e-8, help="relative equality tolerance")


def _tol_from(args: argparse.Namespace) -> ToleranceConfig:
    return ToleranceConfig(rank_rtol=args.rank_rtol, eq_atol=args.eq_atol, eq_rtol=args.eq_rtol)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coreep", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_compute = sub.add_parser("compute", help="compute a generalized inverse")
    p_compute.add_argument("--kind", required=True, choices=KINDS)
    p_compute.add_argument("--matrix", required=True, help="input matrix JSON file")
    p_compute.add_argument("--weight", help="weight matrix JSON file (weighted kinds)")
    p_compute.add_argument("--b", help="b matrix JSON file (bc kind)")
    p_compute.add_argument("--c", help="c matrix JSON file (bc kind)")
    p_compute.add_argument("--route", choices=tuple(_ROUTES), default="direct",
                           help="construction route for w-core-ep")
    p_compute.add_argument("--out", required=True, help="output matrix JSON file")
    _add_tol_flags(p_compute)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", required=True,
                          help=f"suite label or 'all'; labels: {', '.join(SUITE_LABELS)}")
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    _add_tol_flags(p_verify)

    p_rand = sub.add_parser("randgen", help="generate a random weighted pair")
    p_rand.add_argument("--n", type=int, required=True)
    p_rand.add_argument("--index", type=int, required=True)
    p_rand.add_argument("--weight-mode", choices=WEIGHT_MODES, default="random_invertible")
    p_rand.add_argument("--seed", type=int, default=0)
    p_rand.add_argument("--condition-cap", type=float, default=100.0)
    p_rand.add_argument("--out-prefix", required=True)

    p_report = sub.add_parser("report", help="run all suites and write a combined report")
    p_report.add_argument("--trials", type=int, default=100)
    p_report.add_argument("--seed", type=int, default=0)
    p_report.add_argument("--out", required=True, help="output JSON file")
    _add_tol_flags(p_report)

    return parser


def _cmd_compute(args: argparse.Namespace) -> int:
    tol = _tol_from(args)
    a = load_matrix(args.matrix)
    extra = {}
    if args.kind in _UNWEIGHTED:
        cert: InverseCertificate = _UNWEIGHTED[args.kind](a, tol)
    elif args.kind in _WEIGHTED or args.kind == "w-core-ep":
        if not args.weight:
            print("error: --weight is required for weighted kinds", file=sys.stderr)
            return 1
        w = load_matrix(args.weight)
        pair = WeightedPair(a, w)
        if args.kind == "w-core-ep":
            cert = _ROUTES[args.route](pair, tol)
            extra["route"] = args.route
        else:
            cert = _WEIGHTED[args.kind](pair, tol)
    else:  # bc
        if not args.b or not args.c:
            print("error: --b and --c are required for the bc kind", file=sys.stderr)
            return 1
        cert = bc_inverse(a, load_matrix(args.b), load_matrix(args.c), tol)
    save_matrix(args.out, cert.value)
    payload = {"kind": args.kind, **extra, "exists": cert.exists, "residuals": cert.residuals}
    print(json.dumps(payload))
    print(f"wrote {args.out} (exists={cert.exists})", file=sys.stderr)
    return 0 if cert.exists else 2


def _cmd_verify(args: argparse.Namespace) -> int:
    tol = _tol_from(args)
    if args.suite == "all":
        labels = SUITE_LABELS
    elif args.suite in SUITE_LABELS:
        labels = (args.suite,)
    else:
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return 1
    if args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return 1
    all_pass = True
    for label in labels:
        rep = run_suite(label, trials=args.trials, seed=args.seed, tol=tol)
        print(rep.to_json())
        all_pass = all_pass and rep.failures == 0
    return 0 if all_pass else 1


def _cmd_randgen(args: argparse.Namespace) -> int:
    try:
        spec = GeneratorSpec(
            n=args.n,
            target_index=args.index,
            weight_mode=args.weight_mode,
            seed=args.seed,
            condition_cap=args.condition_cap,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    pair = generate_pair(spec)
    a_path = f"{args.out_prefix}A.json"
    w_path = f"{args.out_prefix}W.json"
    save_matrix(a_path, pair.A)
    save_matrix(w_path, pair.W)
    print(json.dumps({"A": a_path, "W": w_path, "n": args.n, "target_index": args.index,
                      "weight_mode": args.weight_mode, "seed": args.seed}))
    print(f"wrote {a_path}, {w_path}", file=sys.stderr)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    tol = _tol_from(args)
    if args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return 1
    reports = [run_suite(label, trials=args.trials, seed=args.seed, tol=tol) for label in SUITE_LABELS]
    payload = [json.loads(r.to_json()) for r in reports]
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    for rep in reports:
        print(rep.to_json())
    print(f"wrote {args.out}", file=sys.stderr)
    return 0 if all(r.failures == 0 for r in reports) else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.verb == "compute":
            return _cmd_compute(args)
        if args.verb == "verify":
            return _cmd_verify(args)
        if args.verb == "randgen":
            return _cmd_randgen(args)
        return _cmd_report(args)
    except (MatrixFormatError, OSError, ValueError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
