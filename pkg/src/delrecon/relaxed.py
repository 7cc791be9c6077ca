"""Relaxed subsequence counting over independent per-position priors.

For a probability vector p of length n and a binary target v, the
relaxed count is the expectation of the subsequence-count binomial over
a random binary word whose position i is 1 with probability p_i,
independently.  At lattice points (p binary) it coincides with the
integer count.  The function is affine in every single coordinate of p,
which gives cheap per-coordinate decompositions and an exact gradient
from one pair of forward/reverse tables.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .seq_core import bits_of


def _as_prior(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1:
        raise ValueError("prior vector must be one-dimensional")
    if p.size and (p.min() < 0.0 or p.max() > 1.0):
        raise ValueError("prior entries must lie in [0, 1]")
    return p


def f_tables(p, v: str):
    """Forward and reverse DP tables for the relaxed count.

    Returns (gfor, grev) of shape (n+1, m+1); gfor[k, j] is the relaxed
    count of v[:j] within the first k positions, grev[k, j] the relaxed
    count of v[j:] within positions k..n-1.
    """
    p = _as_prior(p)
    return _kernels.f_tables(p, bits_of(v))


def f_value(p, v: str) -> float:
    """Relaxed count of v under the prior vector p."""
    p = _as_prior(p)
    vb = bits_of(v)
    if vb.size > p.size:
        return 0.0
    gfor, _ = _kernels.f_tables(p, vb)
    return float(gfor[p.size, vb.size])


def f_gradient(p, v: str) -> np.ndarray:
    """Gradient of the relaxed count with respect to p (exact)."""
    p = _as_prior(p)
    _, grad = _kernels.f_value_grad(p, bits_of(v))
    return grad


def f_value_and_gradient(p, v: str):
    """(value, gradient) in one pass; shares the DP tables."""
    p = _as_prior(p)
    val, grad = _kernels.f_value_grad(p, bits_of(v))
    return float(val), grad


def f_decompose(p, v: str, i: int):
    """Affine decomposition of the relaxed count in coordinate i (0-based).

    Returns (base, coef1, coef0) with

        F(p, v) = base + p_i * coef1 + (1 - p_i) * coef0

    where base is the relaxed count with position i removed, coef1 sums
    the forward/reverse splits across '1' symbols of v and coef0 across
    '0' symbols.
    """
    p = _as_prior(p)
    n = p.size
    if not 0 <= i < n:
        raise IndexError(f"coordinate {i} out of range for length {n}")
    vb = bits_of(v)
    m = vb.size
    gfor, grev = _kernels.f_tables(p, vb)
    coef1 = 0.0
    coef0 = 0.0
    for k in range(m):
        term = gfor[i, k] * grev[i + 1, k + 1]
        if vb[k] == 1:
            coef1 += term
        else:
            coef0 += term
    base = float(gfor[n, m]) - p[i] * coef1 - (1.0 - p[i]) * coef0
    return base, float(coef1), float(coef0)
