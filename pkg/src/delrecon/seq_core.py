"""Sequences over a finite alphabet and the subsequence-counting binomial.

Sequences are plain Python strings, one character per symbol.  The channel
and estimator modules work over the binary alphabet '0'/'1'; the counting
utilities here accept any characters.  The empty string is the empty
sequence.  Counts are exact Python integers, so they never overflow.
"""

from __future__ import annotations

import numpy as np

BINARY_ALPHABET = "01"


def validate_binary(s: str) -> None:
    """Raise ValueError if s contains characters other than '0'/'1'."""
    for c in s:
        if c not in BINARY_ALPHABET:
            raise ValueError(f"expected a binary sequence, got symbol {c!r}")


def binomial_coeff(f: str, g: str):
    """Number of distinct index subsets of f that spell out g.

    Runs the standard O(|f|*|g|) counting recurrence with a single row
    updated in place.  Returns 1 when g is empty and 0 when |g| > |f|.
    """
    m = len(g)
    if m == 0:
        return 1
    if m > len(f):
        return 0
    row = [0] * (m + 1)
    row[0] = 1
    for a in f:
        for j in range(m, 0, -1):
            if a == g[j - 1]:
                row[j] += row[j - 1]
    return row[m]


def substitute(x, i: int, s):
    """Copy of x with position i (0-based) replaced by s.

    Works for strings (s is a one-character string) and for numeric
    vectors (lists, tuples, numpy arrays).
    """
    n = len(x)
    if not 0 <= i < n:
        raise IndexError(f"position {i} out of range for length {n}")
    if isinstance(x, str):
        return x[:i] + s + x[i + 1 :]
    if isinstance(x, np.ndarray):
        out = x.copy()
        out[i] = s
        return out
    out = list(x)
    out[i] = s
    return type(x)(out) if isinstance(x, tuple) else out


def bits_of(s: str) -> np.ndarray:
    """Binary string -> uint8 array of 0/1 values."""
    validate_binary(s)
    return np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")


def string_of(bits) -> str:
    """Iterable of 0/1 values -> binary string."""
    return "".join("1" if int(b) else "0" for b in bits)


def load_sequences(path) -> list[str]:
    """Read sequences from a text file, one per line.

    Blank lines separate trials and are dropped; surrounding whitespace
    is stripped.
    """
    with open(path) as fh:
        return [line.strip() for line in fh if line.strip()]
