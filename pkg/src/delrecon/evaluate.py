"""Monte-Carlo benchmark harness for the reconstructors.

Trials are paired: within one trial every algorithm sees the identical
input and traces.  Randomness is derived per (seed, trial, cell), so
results do not depend on the algorithm set or on execution order.
"""

from __future__ import annotations

import csv
import logging
import time
import zlib
from dataclasses import dataclass

import numpy as np

from .baselines import bma
from .channel import transmit
from .multi_trace import (
    grad_ascent_traces,
    independent_combination,
    ml_exhaustive_traces,
    smap_posteriors,
    smap_sequential,
)
from .seq_core import bits_of, string_of
from . import _kernels

logger = logging.getLogger(__name__)

SMAP_DEFAULT_MAX_T = 3
SMAP_DEFAULT_MAX_N = 40
ML_EXHAUSTIVE_MAX_N = 20

ALGORITHMS = {
    "smapexact": lambda n, traces: smap_posteriors(n, traces)[1],
    "smapseq": smap_sequential,
    "indcomb": independent_combination,
    "gradasc": lambda n, traces: grad_ascent_traces(n, traces),
    "bma": bma,
    "mlexhaustive": lambda n, traces: min(ml_exhaustive_traces(n, traces)[0]),
}


def hamming_error(x: str, xhat: str) -> float:
    """Fraction of differing positions; requires equal lengths."""
    if len(x) != len(xhat):
        raise ValueError("sequences must have equal length")
    if len(x) == 0:
        raise ValueError("sequences must be nonempty")
    return sum(a != b for a, b in zip(x, xhat)) / len(x)


def edit_error(x: str, xhat: str) -> float:
    """Edit distance normalized by the reference length |x|."""
    if len(x) == 0:
        raise ValueError("reference sequence must be nonempty")
    return int(_kernels.levenshtein(bits_of(x), bits_of(xhat))) / len(x)


@dataclass
class ExperimentConfig:
    """Grid of benchmark cells and budget caps."""

    n: int = 100
    deltas: tuple = (0.1,)
    ts: tuple = (2,)
    trials: int = 100
    algos: tuple = ("bma",)
    seed: int = 0
    smap_max_t: int = SMAP_DEFAULT_MAX_T
    smap_max_n: int = SMAP_DEFAULT_MAX_N


@dataclass
class ResultRow:
    algo: str
    n: int
    delta: float
    t: int
    trials: int
    hamming_error_rate: float
    edit_error_rate: float
    stderr_hamming: float
    stderr_edit: float
    seed: int
    wall_time_ms: float


def _cell_rng(seed: int, trial: int, delta: float, t: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial, int(round(delta * 10**9)), t])


def _skip_reason(algo: str, n: int, t: int, cfg: ExperimentConfig):
    if algo == "smapexact" and (t > cfg.smap_max_t or n > cfg.smap_max_n):
        return f"exact MAP capped at t <= {cfg.smap_max_t}, n <= {cfg.smap_max_n}"
    if algo == "mlexhaustive" and n > ML_EXHAUSTIVE_MAX_N:
        return f"exhaustive ML capped at n <= {ML_EXHAUSTIVE_MAX_N}"
    return None


def run_cell(n: int, delta: float, t: int, algos, trials: int, seed: int):
    """Run one (delta, t) cell; returns per-trial error arrays per algorithm.

    Returns {algo: (hamming[trials], edit[trials], wall_time_ms)}.
    """
    results = {a: (np.empty(trials), np.empty(trials), 0.0) for a in algos}
    times = {a: 0.0 for a in algos}
    for trial in range(trials):
        rng = _cell_rng(seed, trial, delta, t)
        x = string_of(rng.integers(0, 2, n))
        traces = tuple(transmit(x, delta, rng) for _ in range(t))
        logger.debug(
            "cell n=%d delta=%g t=%d trial=%d trace_hash=%08x",
            n, delta, t, trial, zlib.crc32("|".join(traces).encode()),
        )
        for algo in algos:
            start = time.perf_counter()
            xhat = ALGORITHMS[algo](n, traces)
            times[algo] += time.perf_counter() - start
            results[algo][0][trial] = hamming_error(x, xhat)
            results[algo][1][trial] = edit_error(x, xhat)
    return {a: (results[a][0], results[a][1], times[a] * 1000.0) for a in algos}


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    """Run every cell of the grid and aggregate per-algorithm rows."""
    unknown = [a for a in cfg.algos if a not in ALGORITHMS]
    if unknown:
        raise ValueError(f"unknown algorithms: {unknown}")
    rows = []
    for delta in cfg.deltas:
        for t in cfg.ts:
            active = []
            for algo in cfg.algos:
                reason = _skip_reason(algo, cfg.n, t, cfg)
                if reason is None:
                    active.append(algo)
                else:
                    logger.info("skipping %s at n=%d t=%d: %s", algo, cfg.n, t, reason)
            if not active:
                continue
            cell = run_cell(cfg.n, delta, t, active, cfg.trials, cfg.seed)
            for algo in active:
                ham, ed, ms = cell[algo]
                denom = np.sqrt(cfg.trials) if cfg.trials > 1 else 1.0
                rows.append(
                    ResultRow(
                        algo=algo,
                        n=cfg.n,
                        delta=delta,
                        t=t,
                        trials=cfg.trials,
                        hamming_error_rate=float(ham.mean()),
                        edit_error_rate=float(ed.mean()),
                        stderr_hamming=float(ham.std(ddof=1) / denom) if cfg.trials > 1 else 0.0,
                        stderr_edit=float(ed.std(ddof=1) / denom) if cfg.trials > 1 else 0.0,
                        seed=cfg.seed,
                        wall_time_ms=ms,
                    )
                )
    return rows


_CSV_FIELDS = [
    "algo", "n", "delta", "t", "trials",
    "hamming_error_rate", "edit_error_rate",
    "stderr_hamming", "stderr_edit", "seed", "wall_time_ms",
]


def rows_to_csv(rows, path) -> None:
    """Write result rows to CSV with 6 significant digits on the floats."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_FIELDS)
        for r in rows:
            writer.writerow([
                r.algo, r.n, f"{r.delta:g}", r.t, r.trials,
                f"{r.hamming_error_rate:.6g}", f"{r.edit_error_rate:.6g}",
                f"{r.stderr_hamming:.6g}", f"{r.stderr_edit:.6g}",
                r.seed, f"{r.wall_time_ms:.6g}",
            ])


def load_config(path) -> ExperimentConfig:
    """Parse a key=value config file into an ExperimentConfig.

    Recognized keys: n, trials, seed, smap_max_t, smap_max_n (ints);
    deltas (comma-separated floats); ts (comma-separated ints); algos
    (comma-separated ids).  '#' starts a comment.
    """
    cfg = ExperimentConfig()
    ints = {"n", "trials", "seed", "smap_max_t", "smap_max_n"}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ints:
                setattr(cfg, key, int(value))
            elif key == "deltas":
                cfg.deltas = tuple(float(v) for v in value.split(","))
            elif key == "ts":
                cfg.ts = tuple(int(v) for v in value.split(","))
            elif key == "algos":
                cfg.algos = tuple(v.strip() for v in value.split(","))
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    return cfg
