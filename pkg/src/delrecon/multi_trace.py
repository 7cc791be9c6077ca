"""Multi-trace estimators: exact symbolwise posteriors and heuristics.

The exact posterior under uniform priors reduces to counting, over all
length-n inputs, the total subsequence-embedding weight of the trace
tuple, split by the symbol at each position.  Two interchangeable
backends compute it:

  * "exact": integer path counting on the edit graph of the traces,
    with the final division done once at the end.  Thresholding
    compares integers, so estimates carry no rounding error.
  * "fast": a float64 forward/backward sweep over the pointer grid with
    one extra dimension for the input position.  Same numbers, much
    faster at benchmark sizes; all intermediate values are integers
    representable in float64 for supported sizes.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np

from . import _kernels
from .editgraph import (
    build_edit_graph,
    forward_potentials,
    marked_path_counts,
    path_length_counts,
    reverse_potentials,
)
from .seq_core import binomial_coeff, bits_of, string_of
from .single_trace import AscentConfig, posterior_single, threshold
from .single_trace import grad_ascent_traces  # re-export for symmetry

__all__ = [
    "smap_exact",
    "smap_fast",
    "smap_posteriors",
    "remnant_posterior",
    "smap_sequential",
    "independent_combination",
    "grad_ascent_traces",
    "ml_exhaustive_traces",
]

ML_EXHAUSTIVE_TRACES_MAX_N = 20
_AUTO_EXACT_MAX_N = 40
_AUTO_EXACT_MAX_GRID = 100_000


def _check_traces(n: int, traces):
    traces = tuple(traces)
    if not traces:
        raise ValueError("need at least one trace")
    for y in traces:
        if len(y) > n:
            raise ValueError(f"trace of length {len(y)} cannot come from an input of length {n}")
    return traces


def smap_exact(n: int, traces):
    """Exact multi-trace posteriors by integer path counting.

    Returns (q, xhat): q float64[n] posterior of symbol 1 per position
    under uniform priors, xhat the thresholded estimate (decided on the
    exact integers).  Raises when the trace tuple is impossible for
    length n.
    """
    traces = _check_traces(n, traces)
    g = build_edit_graph(traces)
    fwd = forward_potentials(g, n)
    rev = reverse_potentials(g, n)
    counts = path_length_counts(g, fwd)
    marked = marked_path_counts(g, fwd, rev, n)
    # weight of a supersequence of length k, doubled to stay integral:
    # each of the 2^(n-k) free fillings contributes, and the C(n, k)
    # placements split between positions that read a path edge and
    # positions filled freely.
    den = 0
    for k in range(n + 1):
        den += 2 ** (n - k + 1) * comb(n, k) * counts[k]
    if den == 0:
        raise ValueError("trace tuple is impossible for the given input length")
    base_num = 0
    for k in range(n + 1):
        if counts[k]:
            base_num += 2 ** (n - k) * comb(n - 1, k) * counts[k]
    q = np.empty(n)
    xhat = []
    for i in range(1, n + 1):
        num = base_num
        for k in range(1, n + 1):
            for j in range(1, k + 1):
                mjk = marked[j][k]
                if mjk:
                    num += 2 ** (n - k + 1) * comb(i - 1, j - 1) * comb(n - i, k - j) * mjk
        q[i - 1] = float(Fraction(num, den))
        xhat.append("1" if 2 * num >= den else "0")
    return q, "".join(xhat)


def smap_fast(n: int, traces):
    """Float64 backend for the exact multi-trace posteriors."""
    traces = _check_traces(n, traces)
    m = np.array([len(y) for y in traces], dtype=np.int64)
    ycat = np.concatenate([bits_of(y) for y in traces] or [np.zeros(0, np.uint8)])
    if ycat.size == 0:
        ycat = np.zeros(1, np.uint8)  # numba needs a nonempty buffer
    ystart = np.zeros(len(traces), dtype=np.int64)
    np.cumsum(m[:-1], out=ystart[1:])
    q, den = _kernels.joint_posteriors(n, m, ycat, ystart)
    if den == 0.0:
        raise ValueError("trace tuple is impossible for the given input length")
    return q, threshold(q)


def smap_posteriors(n: int, traces, method: str = "auto"):
    """Dispatch between the exact and fast posterior backends.

    "auto" keeps the integer backend for small instances and switches
    to the float64 sweep when the pointer grid gets large.
    """
    traces = _check_traces(n, traces)
    if method == "auto":
        grid = 1
        for y in traces:
            grid *= len(y) + 1
        method = "exact" if n <= _AUTO_EXACT_MAX_N and grid <= _AUTO_EXACT_MAX_GRID else "fast"
    if method == "exact":
        return smap_exact(n, traces)
    if method == "fast":
        return smap_fast(n, traces)
    raise ValueError(f"unknown method {method!r}")


def remnant_posterior(n: int, traces) -> np.ndarray:
    """Symbolwise posteriors for the remnant channel, uniform priors.

    The input has length exactly n and every symbol reaches at least
    one trace, so only length-n paths of the edit graph matter:
    q_i = (length-n paths whose i-th edge reads '1') / (length-n paths).
    """
    traces = _check_traces(n, traces)
    g = build_edit_graph(traces)
    fwd = forward_potentials(g, n)
    rev = reverse_potentials(g, n)
    total = path_length_counts(g, fwd)[n]
    if total == 0:
        raise ValueError("no length-n joint embedding of the traces exists")
    marked = marked_path_counts(g, fwd, rev, n)
    return np.array([float(Fraction(marked[i][n], total)) for i in range(1, n + 1)])


def smap_sequential(n: int, traces, clip_eps: float = 1e-3) -> str:
    """Feed the single-trace posterior forward as the next trace's prior.

    Intermediate priors are clipped into [clip_eps, 1 - clip_eps]:
    posteriors can saturate after a few traces, and a saturated prior
    can assign probability zero (or underflow to zero) on a later
    conflicting trace.  The clip never moves a value across the 1/2
    threshold.
    """
    traces = _check_traces(n, traces)
    p = np.full(n, 0.5)
    for y in traces:
        p = np.clip(posterior_single(p, y), clip_eps, 1.0 - clip_eps)
    return threshold(p)


def independent_combination(n: int, traces) -> str:
    """Combine per-trace posteriors as if they were independent.

    Each trace yields posteriors from the uniform prior; position i is
    set to 1 when the product of its '1' posteriors is at least the
    product of its '0' posteriors.
    """
    traces = _check_traces(n, traces)
    qs = np.stack([posterior_single(np.full(n, 0.5), y) for y in traces])
    return string_of(np.prod(qs, axis=0) >= np.prod(1.0 - qs, axis=0))


def ml_exhaustive_traces(n: int, traces):
    """All length-n inputs maximizing the product of per-trace counts.

    Returns (argmax_set, max_value) with the exact integer maximum.
    Guarded to n <= 20.
    """
    traces = _check_traces(n, traces)
    if n > ML_EXHAUSTIVE_TRACES_MAX_N:
        raise ValueError(f"exhaustive scan limited to n <= {ML_EXHAUSTIVE_TRACES_MAX_N}")
    best = -1
    arg: set[str] = set()
    for code in range(2**n):
        x = format(code, f"0{n}b")
        val = 1
        for y in traces:
            val *= binomial_coeff(x, y)
            if val == 0:
                break
        if val > best:
            best = val
            arg = {x}
        elif val == best:
            arg.add(x)
    return arg, best
