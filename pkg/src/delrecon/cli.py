"""Command-line interface.

Subcommands:

  simulate     draw traces from the deletion channel
  posterior    exact single-trace symbolwise posteriors
  reconstruct  run one reconstruction algorithm
  benchmark    Monte-Carlo comparison grid, CSV output
  verify       cross-check fast implementations against brute force

Exit codes: 0 on success, 1 on usage errors, 2 on verification failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import evaluate, oracle
from .baselines import bma
from .channel import ChannelConfig, joint_trace_distribution, transmit
from .editgraph import infiltration, infiltration_many
from .multi_trace import (
    grad_ascent_traces,
    independent_combination,
    ml_exhaustive_traces,
    smap_posteriors,
    smap_sequential,
)
from .seq_core import load_sequences, string_of, validate_binary
from .single_trace import coordinate_switch, map_single, posterior_single

RECONSTRUCT_ALGOS = (
    "smap1", "gradasc", "coordswitch", "mlexhaustive",
    "smapexact", "smapseq", "indcomb", "bma",
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the CLI contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="delrecon", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw traces from the deletion channel")
    p.add_argument("--n", type=int, default=None, help="input length for random inputs")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--input", default=None, help="file with inputs, one per line")

    p = sub.add_parser("posterior", help="single-trace symbolwise posteriors")
    p.add_argument("--trace", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--priors", default=None, help="file with one prior per line")

    p = sub.add_parser("reconstruct", help="run one reconstruction algorithm")
    p.add_argument("--algo", required=True, choices=RECONSTRUCT_ALGOS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trace", action="append", default=None, help="inline trace, repeatable")
    p.add_argument("--traces", default=None, help="file with traces, one per line")

    p = sub.add_parser("benchmark", help="Monte-Carlo comparison grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default="results.csv")

    p = sub.add_parser("verify", help="cross-check against brute force")
    p.add_argument(
        "--suite",
        action="append",
        default=None,
        choices=("binomial", "posterior", "infiltration", "equivalence"),
        help="suite to run, repeatable (default: all)",
    )
    return parser


def _cmd_simulate(args) -> int:
    cfg = ChannelConfig(delta=args.delta, t=args.t, seed=args.seed)
    rng = cfg.rng()
    if args.input is not None:
        inputs = load_sequences(args.input)
        for x in inputs:
            validate_binary(x)
    else:
        if args.n is None:
            raise SystemExit("simulate: need --n or --input")
        inputs = [string_of(rng.integers(0, 2, args.n))]
    first = True
    for x in inputs:
        if not first:
            print()
        first = False
        for y in (transmit(x, args.delta, rng) for _ in range(args.t)):
            print(y)
    return 0


def _cmd_posterior(args) -> int:
    if args.priors is not None:
        with open(args.priors) as fh:
            p = np.array([float(line) for line in fh if line.strip()])
        if p.size != args.n:
            raise SystemExit("posterior: priors file length does not match --n")
    else:
        p = np.full(args.n, 0.5)
    for qi in posterior_single(p, args.trace):
        print(f"{qi:.12g}")
    return 0


def _cmd_reconstruct(args) -> int:
    if args.trace:
        traces = tuple(args.trace)
        if args.traces:
            print("reconstruct: --trace given, ignoring --traces", file=sys.stderr)
    elif args.traces:
        traces = tuple(load_sequences(args.traces))
    else:
        raise SystemExit("reconstruct: need --trace or --traces")
    for y in traces:
        validate_binary(y)
    n = args.n
    single_only = {"smap1", "coordswitch"}
    if args.algo in single_only and len(traces) != 1:
        raise SystemExit(f"reconstruct: {args.algo} takes exactly one trace")
    if args.algo == "smap1":
        print(map_single(np.full(n, 0.5), traces[0]))
    elif args.algo == "gradasc":
        print(grad_ascent_traces(n, traces))
    elif args.algo == "coordswitch":
        print(coordinate_switch(np.full(n, 0.5), traces[0]))
    elif args.algo == "mlexhaustive":
        arg, _ = ml_exhaustive_traces(n, traces)
        for x in sorted(arg):
            print(x)
    elif args.algo == "smapexact":
        print(smap_posteriors(n, traces)[1])
    elif args.algo == "smapseq":
        print(smap_sequential(n, traces))
    elif args.algo == "indcomb":
        print(independent_combination(n, traces))
    elif args.algo == "bma":
        print(bma(n, traces))
    return 0


def _cmd_benchmark(args) -> int:
    cfg = evaluate.load_config(args.config)
    rows = evaluate.run_experiment(cfg)
    evaluate.rows_to_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _verify_binomial(rng) -> tuple[bool, str]:
    from .seq_core import binomial_coeff

    worst = 0
    for _ in range(300):
        n = int(rng.integers(0, 11))
        m = int(rng.integers(0, n + 1)) if n else 0
        f = string_of(rng.integers(0, 2, n))
        g = string_of(rng.integers(0, 2, m))
        dev = abs(binomial_coeff(f, g) - oracle.binomial_brute(f, g))
        worst = max(worst, dev)
    return worst == 0, f"max deviation {worst}"


def _verify_posterior(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(40):
        n = int(rng.integers(2, 11))
        x = string_of(rng.integers(0, 2, n))
        p = rng.uniform(0.05, 0.95, n)
        y = transmit(x, 0.3, rng)
        worst = max(worst, float(np.abs(posterior_single(p, y) - oracle.posterior_brute(p, (y,), n)).max()))
    for _ in range(20):
        n = int(rng.integers(2, 9))
        x = string_of(rng.integers(0, 2, n))
        traces = tuple(transmit(x, 0.3, rng) for _ in range(2))
        q, _ = smap_posteriors(n, traces)
        worst = max(worst, float(np.abs(q - oracle.posterior_brute(np.full(n, 0.5), traces, n)).max()))
    return worst < 1e-9, f"max deviation {worst:.3g}"


def _verify_infiltration(rng) -> tuple[bool, str]:
    ok = infiltration("ab", "ab") == {
        "ab": 1, "aab": 2, "abb": 2, "aabb": 4, "abab": 2,
    }
    poly = infiltration_many(["001", "101"])
    ok = ok and poly.get("101001", 0) == 1 and poly.get("01001", 0) == 2
    for _ in range(30):
        lens = [int(rng.integers(0, 5)) for _ in range(2)]
        traces = [string_of(rng.integers(0, 2, ln)) for ln in lens]
        poly = infiltration_many(traces)
        for w, c in poly.items():
            if c != oracle.infiltration_paths_brute(traces, w):
                return False, f"path count mismatch at {traces} -> {w}"
    return ok, "identities and path counts agree"


def _verify_equivalence(rng) -> tuple[bool, str]:
    for x in ("", "1", "10", "011", "0110"):
        cfg = ChannelConfig(delta=Fraction(3, 10), t=2)
        if joint_trace_distribution(x, cfg, "independent") != joint_trace_distribution(x, cfg, "cascade"):
            return False, f"distributions differ at x={x!r}"
    return True, "independent and cascade channels agree exactly"


_SUITES = {
    "binomial": _verify_binomial,
    "posterior": _verify_posterior,
    "infiltration": _verify_infiltration,
    "equivalence": _verify_equivalence,
}


def _cmd_verify(args) -> int:
    suites = args.suite or list(_SUITES)
    rng = np.random.default_rng(0)
    all_ok = True
    for name in suites:
        ok, detail = _SUITES[name](rng)
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        all_ok = all_ok and ok
    return 0 if all_ok else 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "simulate": _cmd_simulate,
        "posterior": _cmd_posterior,
        "reconstruct": _cmd_reconstruct,
        "benchmark": _cmd_benchmark,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        raise
    except (ValueError, OSError) as exc:
        print(f"delrecon: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
