"""Brute-force oracles for cross-checking the production algorithms.

Everything here is deliberately naive: subset enumeration, full scans
over all inputs, DFS path counting.  The oracles share nothing with the
production modules beyond the string sequence representation, so an
agreement between the two is meaningful evidence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

MAX_BRUTE_SUBSETS = 10**7
POSTERIOR_BRUTE_MAX_N = 14


def binomial_brute(f: str, g: str):
    """Count subsequence embeddings by enumerating index subsets."""
    n, m = len(f), len(g)
    if m > n:
        return 0
    if m == 0:
        return 1
    total_subsets = 1
    for i in range(m):
        total_subsets = total_subsets * (n - i) // (i + 1)
    if total_subsets > MAX_BRUTE_SUBSETS:
        raise ValueError("too many subsets to enumerate")
    count = 0
    for idx in combinations(range(n), m):
        if all(f[i] == c for i, c in zip(idx, g)):
            count += 1
    return count


def binomial_table_brute(n: int, m: int) -> np.ndarray:
    """Subsequence counts for every pair of binary words of lengths n, m.

    Enumerates every index subset of size m once and tallies which word
    it spells inside every length-n word, vectorized over the words.
    Entry [fc, gc] is the count for the words whose bits (MSB first)
    encode fc and gc.  Independent of the counting recurrence.
    """
    if m > n:
        return np.zeros((2**n, 2**m), dtype=np.int64)
    fbits = ((np.arange(2**n)[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1).astype(np.int64)
    table = np.zeros((2**n, 2**m), dtype=np.int64)
    if m == 0:
        table[:, 0] = 1
        return table
    weights = 1 << (m - 1 - np.arange(m))
    for idx in combinations(range(n), m):
        codes = fbits[:, list(idx)] @ weights
        np.add.at(table, (np.arange(2**n), codes), 1)
    return table


def posterior_brute(priors, traces, n: int) -> np.ndarray:
    """Symbolwise posteriors by scanning all length-n inputs.

    priors is a length-n vector of per-position probabilities of symbol
    1 (use all 1/2 for uniform).  Likelihood of an input is the product
    over traces of its subsequence counts; channel constants cancel in
    the normalization.
    """
    if n > POSTERIOR_BRUTE_MAX_N:
        raise ValueError(f"brute posterior limited to n <= {POSTERIOR_BRUTE_MAX_N}")
    priors = np.asarray(priors, dtype=np.float64)
    traces = tuple(traces)
    uniform = bool(np.all(priors == 0.5))
    den = 0 if uniform else 0.0
    num = [0] * n if uniform else np.zeros(n)
    for code in range(2**n):
        x = format(code, f"0{n}b")
        like = 1
        for y in traces:
            like *= binomial_brute(x, y)
            if like == 0:
                break
        if like == 0:
            continue
        if uniform:
            w = like  # the constant prior cancels in the ratio
        else:
            pr = 1.0
            for i, c in enumerate(x):
                pr *= priors[i] if c == "1" else 1.0 - priors[i]
            w = like * pr
        den += w
        for i, c in enumerate(x):
            if c == "1":
                num[i] += w
    if den == 0:
        raise ValueError("trace tuple has probability zero")
    if uniform:
        return np.array([float(Fraction(v, den)) for v in num])
    return num / den


def infiltration_paths_brute(traces, w: str):
    """Number of edit-graph paths spelling w, by depth-first search."""
    traces = tuple(traces)
    t = len(traces)
    lens = tuple(len(y) for y in traces)

    def rec(v, pos):
        if pos == len(w):
            return 1 if v == lens else 0
        c = w[pos]
        total = 0
        for mask in range(1, 1 << t):
            u = list(v)
            ok = True
            for j in range(t):
                if mask & (1 << j):
                    if v[j] >= lens[j] or traces[j][v[j]] != c:
                        ok = False
                        break
                    u[j] = v[j] + 1
            if ok:
                total += rec(tuple(u), pos + 1)
        return total

    return rec((0,) * t, 0)
