"""Numba kernels for the numeric hot paths.

Everything here is a plain function of numpy arrays so it can be jitted
with cache=True and reused across processes.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def f_tables(p, v):
    """Forward/reverse tables of the relaxed subsequence count.

    p is float64[n] (per-position probabilities of symbol 1), v is
    uint8[m] (target sequence bits).  Returns (gfor, grev), both
    float64[n+1, m+1]:

      gfor[k, j] = relaxed count of v[:j] inside the first k positions
      grev[k, j] = relaxed count of v[j:] inside positions k..n-1

    Out-of-range cells (fewer positions than symbols) are zero by
    construction; gfor[k, 0] = grev[k, m] = 1.
    """
    n = p.shape[0]
    m = v.shape[0]
    gfor = np.zeros((n + 1, m + 1))
    grev = np.zeros((n + 1, m + 1))
    for k in range(n + 1):
        gfor[k, 0] = 1.0
        grev[k, m] = 1.0
    for k in range(1, n + 1):
        pk = p[k - 1]
        for j in range(1, m + 1):
            w = pk if v[j - 1] == 1 else 1.0 - pk
            gfor[k, j] = gfor[k - 1, j] + w * gfor[k - 1, j - 1]
    for k in range(n - 1, -1, -1):
        pk = p[k]
        for j in range(m - 1, -1, -1):
            w = pk if v[j] == 1 else 1.0 - pk
            grev[k, j] = grev[k + 1, j] + w * grev[k + 1, j + 1]
    return gfor, grev


@njit(cache=True, inline="always")
def _logaddexp(a, b):
    if a == -np.inf:
        return b
    if b == -np.inf:
        return a
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


@njit(cache=True)
def posterior_log(p, v):
    """Symbolwise posteriors of symbol 1 given one trace, log domain.

    Same quantities as combining the f_tables splits, but the tables are
    kept as logarithms so inputs long enough to push raw counts past the
    float64 range still get finite posteriors.  Returns (q, ok); ok is
    False when the trace has probability zero under p.
    """
    n = p.shape[0]
    m = v.shape[0]
    lgf = np.full((n + 1, m + 1), -np.inf)
    lgr = np.full((n + 1, m + 1), -np.inf)
    for k in range(n + 1):
        lgf[k, 0] = 0.0
        lgr[k, m] = 0.0
    for k in range(1, n + 1):
        pk = p[k - 1]
        lw1 = math.log(pk) if pk > 0.0 else -np.inf
        lw0 = math.log(1.0 - pk) if pk < 1.0 else -np.inf
        for j in range(1, m + 1):
            lw = lw1 if v[j - 1] == 1 else lw0
            lgf[k, j] = _logaddexp(lgf[k - 1, j], lw + lgf[k - 1, j - 1])
    for k in range(n - 1, -1, -1):
        pk = p[k]
        lw1 = math.log(pk) if pk > 0.0 else -np.inf
        lw0 = math.log(1.0 - pk) if pk < 1.0 else -np.inf
        for j in range(m - 1, -1, -1):
            lw = lw1 if v[j] == 1 else lw0
            lgr[k, j] = _logaddexp(lgr[k + 1, j], lw + lgr[k + 1, j + 1])
    ltot = lgf[n, m]
    q = np.empty(n)
    if ltot == -np.inf:
        return q, False
    for i in range(n):
        r = 0.0
        for k in range(m):
            e = lgf[i, k] + lgr[i + 1, k + 1] - ltot
            if e == -np.inf:
                continue
            term = math.exp(e)
            if v[k] == 1:
                r += term
            else:
                r -= term
        qi = p[i] + p[i] * (1.0 - p[i]) * r
        if qi < 0.0:
            qi = 0.0
        elif qi > 1.0:
            qi = 1.0
        q[i] = qi
    return q, True


@njit(cache=True)
def f_value_grad(p, v):
    """Relaxed count F(p, v) together with its gradient in p."""
    gfor, grev = f_tables(p, v)
    n = p.shape[0]
    m = v.shape[0]
    grad = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for k in range(m):
            term = gfor[i, k] * grev[i + 1, k + 1]
            if v[k] == 1:
                acc += term
            else:
                acc -= term
        grad[i] = acc
    return gfor[n, m], grad


@njit(cache=True)
def levenshtein(a, b):
    """Edit distance (unit insert/delete/substitute costs) on uint8 arrays."""
    n = a.shape[0]
    m = b.shape[0]
    row = np.empty(m + 1, np.int64)
    for j in range(m + 1):
        row[j] = j
    for i in range(1, n + 1):
        prev_diag = row[0]
        row[0] = i
        for j in range(1, m + 1):
            cur = row[j]
            cost = 0 if a[i - 1] == b[j - 1] else 1
            best = prev_diag + cost
            if row[j] + 1 < best:
                best = row[j] + 1
            if row[j - 1] + 1 < best:
                best = row[j - 1] + 1
            row[j] = best
            prev_diag = cur
    return row[m]


@njit(cache=True)
def joint_posteriors(n, m, ycat, ystart):
    """Symbolwise posteriors given t traces of one length-n input, uniform prior.

    m is int64[t] with the trace lengths, ycat is uint8[sum m] with the
    trace bits concatenated, ystart int64[t] the start offsets.  Works on
    the t-dimensional grid of trace pointers: a forward pass counts
    weighted input prefixes consistent with each pointer combination, a
    backward pass counts suffixes, and position i is scored by joining
    the two across a '1' placed at i.  All quantities are exact integers
    represented in float64; they stay far below the float64 range for
    the supported sizes.

    Returns (q, denom): q float64[n] posterior of symbol 1 per position,
    denom the total weighted count (0 means the traces are impossible
    for length n).
    """
    t = m.shape[0]
    nverts = 1
    for j in range(t):
        nverts *= m[j] + 1
    stride = np.empty(t, np.int64)
    acc = 1
    for j in range(t - 1, -1, -1):
        stride[j] = acc
        acc *= m[j] + 1
    nmask = (1 << t) - 1
    moff = np.zeros(nmask + 1, np.int64)
    for mask in range(1, nmask + 1):
        off = 0
        for j in range(t):
            if mask & (1 << j):
                off += stride[j]
        moff[mask] = off

    # Per-vertex adjacency: which pointer increments are consistent with
    # a single input symbol.  dec_* look backward (used by the forward
    # pass), inc_* look forward (backward pass), inc1_* restricts to
    # increments reading symbol 1 (position scoring).
    dec_start = np.zeros(nverts + 1, np.int64)
    inc_start = np.zeros(nverts + 1, np.int64)
    inc1_start = np.zeros(nverts + 1, np.int64)
    coord = np.zeros(t, np.int64)
    for v in range(nverts):
        for mask in range(1, nmask + 1):
            ok = True
            b = -1
            for j in range(t):
                if mask & (1 << j):
                    if coord[j] == 0:
                        ok = False
                        break
                    c = ycat[ystart[j] + coord[j] - 1]
                    if b < 0:
                        b = c
                    elif c != b:
                        ok = False
                        break
            if ok:
                dec_start[v + 1] += 1
            ok = True
            b = -1
            for j in range(t):
                if mask & (1 << j):
                    if coord[j] >= m[j]:
                        ok = False
                        break
                    c = ycat[ystart[j] + coord[j]]
                    if b < 0:
                        b = c
                    elif c != b:
                        ok = False
                        break
            if ok:
                inc_start[v + 1] += 1
                if b == 1:
                    inc1_start[v + 1] += 1
        for j in range(t - 1, -1, -1):
            coord[j] += 1
            if coord[j] <= m[j]:
                break
            coord[j] = 0
    for v in range(nverts):
        dec_start[v + 1] += dec_start[v]
        inc_start[v + 1] += inc_start[v]
        inc1_start[v + 1] += inc1_start[v]
    dec_off = np.empty(dec_start[nverts], np.int64)
    inc_off = np.empty(inc_start[nverts], np.int64)
    inc1_off = np.empty(inc1_start[nverts], np.int64)
    dpos = 0
    ipos = 0
    i1pos = 0
    for j in range(t):
        coord[j] = 0
    for v in range(nverts):
        for mask in range(1, nmask + 1):
            ok = True
            b = -1
            for j in range(t):
                if mask & (1 << j):
                    if coord[j] == 0:
                        ok = False
                        break
                    c = ycat[ystart[j] + coord[j] - 1]
                    if b < 0:
                        b = c
                    elif c != b:
                        ok = False
                        break
            if ok:
                dec_off[dpos] = moff[mask]
                dpos += 1
            ok = True
            b = -1
            for j in range(t):
                if mask & (1 << j):
                    if coord[j] >= m[j]:
                        ok = False
                        break
                    c = ycat[ystart[j] + coord[j]]
                    if b < 0:
                        b = c
                    elif c != b:
                        ok = False
                        break
            if ok:
                inc_off[ipos] = moff[mask]
                ipos += 1
                if b == 1:
                    inc1_off[i1pos] = moff[mask]
                    i1pos += 1
        for j in range(t - 1, -1, -1):
            coord[j] += 1
            if coord[j] <= m[j]:
                break
            coord[j] = 0

    # Backward pass: beta[s, v] counts weighted suffixes x[s-1:] that
    # consume the remaining trace symbols past pointer v.  Row n+1 seeds
    # the terminal vertex.
    beta = np.zeros((n + 2, nverts))
    beta[n + 1, nverts - 1] = 1.0
    for s in range(n, 0, -1):
        prev = beta[s + 1]
        cur = beta[s]
        for v in range(nverts):
            a = 2.0 * prev[v]
            for idx in range(inc_start[v], inc_start[v + 1]):
                a += prev[v + inc_off[idx]]
            cur[v] = a
    denom = beta[1, 0]
    q = np.zeros(n)
    if denom == 0.0:
        return q, denom

    # Forward pass with rolling rows; alpha holds row i-1 when scoring
    # position i.
    alpha = np.zeros(nverts)
    alpha[0] = 1.0
    for i in range(1, n + 1):
        brow = beta[i + 1]
        num = 0.0
        for v in range(nverts):
            a = alpha[v]
            if a != 0.0:
                acc2 = brow[v]
                for idx in range(inc1_start[v], inc1_start[v + 1]):
                    acc2 += brow[v + inc1_off[idx]]
                num += a * acc2
        q[i - 1] = num / denom
        if i < n:
            nxt = np.zeros(nverts)
            for v in range(nverts):
                a = 2.0 * alpha[v]
                for idx in range(dec_start[v], dec_start[v + 1]):
                    a += alpha[v - dec_off[idx]]
                nxt[v] = a
            alpha = nxt
    return q, denom
