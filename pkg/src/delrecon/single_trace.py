"""Single-trace estimators: exact posterior, relaxation ascent, local search.

All estimators take the input length n, one trace y, and (where
relevant) per-position priors.  Estimates are binary strings obtained by
thresholding posteriors at 1/2, with ties going to '1'.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .seq_core import binomial_coeff, bits_of, string_of
from .relaxed import _as_prior, f_value

ML_EXHAUSTIVE_MAX_N = 24


@dataclass(frozen=True)
class AscentConfig:
    """Projected gradient ascent parameters.

    Steps are projected onto [clip_eps, 1 - clip_eps] rather than the
    closed unit box: at exact 0/1 corners a trace can have probability
    zero, which would make the per-trace normalization undefined.
    """

    step: float = 0.1
    max_iters: int = 100
    rel_tol: float = 1e-3
    clip_eps: float = 0.01


def threshold(q) -> str:
    """Binary string with '1' wherever q_i >= 1/2."""
    return string_of(np.asarray(q) >= 0.5)


def posterior_single(p, y: str) -> np.ndarray:
    """Exact symbolwise posteriors given one trace.

    p holds the prior probability of symbol 1 per position, y is the
    observed trace.  Uses the forward/reverse tables of the relaxed
    count; position i is scored by removing it from the prior and adding
    back the splits of y across a '1' at i.  Raises if the trace is
    longer than n or has probability zero under the prior.
    """
    p = _as_prior(p)
    n = p.size
    yb = bits_of(y)
    m = yb.size
    if m > n:
        raise ValueError(f"trace of length {m} cannot come from an input of length {n}")
    if m == 0:
        return p.copy()
    gfor, grev = _kernels.f_tables(p, yb)
    total = gfor[n, m]
    if not (np.isfinite(gfor).all() and np.isfinite(grev).all() and total > 0.0):
        # counts past the float64 range (or underflowed to zero): redo
        # the tables in the log domain
        q, ok = _kernels.posterior_log(p, yb)
        if not ok:
            raise ValueError("trace has probability zero under the given priors")
        return q
    # splits of y across position i, separated by the symbol read there
    pair = gfor[0:n, 0:m] * grev[1 : n + 1, 1 : m + 1]
    ones = yb.astype(np.float64)
    a = pair @ ones
    b = pair @ (1.0 - ones)
    base = total - p * a - (1.0 - p) * b
    q = p * (base + a) / total
    return np.clip(q, 0.0, 1.0)


def map_single(p, y: str) -> str:
    """Threshold estimate from the exact single-trace posteriors."""
    return threshold(posterior_single(p, y))


def ml_exhaustive(n: int, y: str):
    """All length-n inputs maximizing the subsequence count of y.

    Returns (argmax_set, max_count).  Guarded to n <= 24; the scan is
    exponential in n.
    """
    if n > ML_EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive scan limited to n <= {ML_EXHAUSTIVE_MAX_N}")
    best = -1
    arg: set[str] = set()
    for code in range(2**n):
        x = format(code, f"0{n}b")
        c = binomial_coeff(x, y)
        if c > best:
            best = c
            arg = {x}
        elif c == best:
            arg.add(x)
    return arg, best


def grad_ascent_single(n: int, y: str, cfg: AscentConfig | None = None, p0=None) -> str:
    """Projected gradient ascent on the relaxed count, then threshold.

    Starts from p0 (default all 1/2), takes normalized gradient steps
    clamped to [0, 1], and stops when the relative change of the
    objective drops below cfg.rel_tol or after cfg.max_iters steps.
    """
    return grad_ascent_traces(n, (y,), cfg, p0)


def grad_ascent_traces(n: int, traces, cfg: AscentConfig | None = None, p0=None) -> str:
    """Multi-trace gradient ascent: sum of per-trace normalized gradients."""
    if cfg is None:
        cfg = AscentConfig()
    p = np.full(n, 0.5) if p0 is None else _as_prior(p0).copy()
    if p.size != n:
        raise ValueError("p0 must have length n")
    ybits = [bits_of(y) for y in traces if len(y) > 0]
    for yb in ybits:
        if yb.size > n:
            raise ValueError("trace longer than the input length")
    if not ybits:
        return threshold(p)
    # Follow the average of the per-trace normalized gradients: with the
    # plain sum, the effective step grows with the number of traces and
    # the iteration oscillates instead of converging for large t.
    eff_step = cfg.step / len(ybits)
    prev_obj = None
    for _ in range(cfg.max_iters):
        step = np.zeros(n)
        obj = 0.0
        for yb in ybits:
            val, grad = _kernels.f_value_grad(p, yb)
            if val <= 0.0:
                raise ValueError("trace has probability zero under the current point")
            step += grad / val
            obj += val
        if prev_obj is not None and abs(obj - prev_obj) < cfg.rel_tol * prev_obj:
            break
        prev_obj = obj
        p = np.clip(p + eff_step * step, cfg.clip_eps, 1.0 - cfg.clip_eps)
    return threshold(p)


def coordinate_switch(p0, y: str) -> str:
    """Greedy lattice search along the most sensitive coordinates.

    Scores every coordinate by how much the objective differs between
    its two endpoints, then sweeps coordinates in decreasing score
    order, pinning each to its better endpoint (ties to 1).  Repeats
    until a sweep reproduces an already-seen lattice point.  The
    objective never decreases along the way.
    """
    p = _as_prior(p0).copy()
    n = p.size
    yb = bits_of(y)
    m = yb.size

    def endpoints(i, gfor, grev):
        # affine split of the objective in coordinate i
        total = gfor[n, m]
        coef1 = 0.0
        coef0 = 0.0
        for k in range(m):
            term = gfor[i, k] * grev[i + 1, k + 1]
            if yb[k] == 1:
                coef1 += term
            else:
                coef0 += term
        base = total - p[i] * coef1 - (1.0 - p[i]) * coef0
        return base + coef0, base + coef1

    seen: set[str] = set()
    current = f_value(p, y)
    while True:
        gfor, grev = _kernels.f_tables(p, yb)
        scores = np.empty(n)
        for i in range(n):
            lo, hi = endpoints(i, gfor, grev)
            scores[i] = abs(hi - lo)
        for i in np.argsort(-scores, kind="stable"):
            gfor, grev = _kernels.f_tables(p, yb)
            lo, hi = endpoints(i, gfor, grev)
            p[i] = 1.0 if hi >= lo else 0.0
            best = max(lo, hi)
            # pinning to the better endpoint of an affine slice cannot
            # lower the objective
            assert best >= current - 1e-9 * max(1.0, abs(current))
            current = best
        point = threshold(p)
        if point in seen:
            return point
        seen.add(point)
