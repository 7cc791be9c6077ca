"""Simple reference reconstructors."""

from __future__ import annotations


def bma(n: int, traces) -> str:
    """Bitwise majority alignment.

    Keeps one pointer per trace.  At each output position the traces
    with symbols left vote with their pointed symbol; the majority wins
    and the agreeing pointers advance.  Ties resolve to '1'; exhausted
    traces abstain, and when everyone abstains the position keeps the
    initialization value '1'.
    """
    traces = tuple(traces)
    if not traces:
        raise ValueError("need at least one trace")
    ptr = [0] * len(traces)
    out = []
    for _ in range(n):
        ones = 0
        zeros = 0
        for j, y in enumerate(traces):
            if ptr[j] < len(y):
                if y[ptr[j]] == "1":
                    ones += 1
                else:
                    zeros += 1
        if ones + zeros == 0:
            out.append("1")
            continue
        b = "1" if ones >= zeros else "0"
        out.append(b)
        for j, y in enumerate(traces):
            if ptr[j] < len(y) and y[ptr[j]] == b:
                ptr[j] += 1
    return "".join(out)
