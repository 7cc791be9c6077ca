"""I.i.d. deletion channel simulators and exact trace distributions.

Each symbol of the input is deleted independently with probability
delta.  The t-trace channel transmits the same input t times over
independent copies.  An equivalent two-stage form first applies a
deletion channel with parameter delta**t and then a remnant channel
that hands every surviving symbol to a uniformly weighted nonempty
subset of the t traces.

Exact joint distributions use fractions.Fraction throughout, so tests
can compare them without tolerances; pass delta as a Fraction to keep
everything rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .seq_core import binomial_coeff

MAX_JOINT_PATTERNS = 2**24


@dataclass(frozen=True)
class ChannelConfig:
    """Deletion probability, number of traces and optional sampler seed."""

    delta: object  # float or Fraction in [0, 1)
    t: int = 1
    seed: int | None = None

    def __post_init__(self):
        if not 0 <= self.delta < 1:
            raise ValueError("delta must lie in [0, 1)")
        if self.t < 1:
            raise ValueError("t must be at least 1")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def transmit(x: str, delta: float, rng: np.random.Generator) -> str:
    """One pass of x through the deletion channel."""
    if len(x) == 0:
        return ""
    keep = rng.random(len(x)) >= delta
    return "".join(c for c, k in zip(x, keep) if k)


def transmit_t(x: str, cfg: ChannelConfig, rng: np.random.Generator | None = None):
    """t independent traces of x."""
    if rng is None:
        rng = cfg.rng()
    return tuple(transmit(x, float(cfg.delta), rng) for _ in range(cfg.t))


def remnant_subset_probs(delta, t: int):
    """Probability of each nonempty trace subset in the remnant channel.

    Returns a list of (mask, prob) over masks 1..2**t-1; bit j of the
    mask means the symbol lands in trace j.  prob is a Fraction when
    delta is one, a float otherwise.
    """
    if not 0 <= delta < 1:
        raise ValueError("delta must lie in [0, 1)")
    norm = 1 - delta**t
    out = []
    for mask in range(1, 2**t):
        k = bin(mask).count("1")
        out.append((mask, delta ** (t - k) * (1 - delta) ** k / norm))
    return out


def transmit_remnant(z: str, cfg: ChannelConfig, rng: np.random.Generator | None = None):
    """Remnant stage: each symbol of z goes to a nonempty subset of traces."""
    if rng is None:
        rng = cfg.rng()
    t = cfg.t
    probs = np.array([float(p) for _, p in remnant_subset_probs(cfg.delta, t)])
    probs /= probs.sum()
    traces = [[] for _ in range(t)]
    if z:
        picks = rng.choice(2**t - 1, size=len(z), p=probs) + 1
        for c, mask in zip(z, picks):
            for j in range(t):
                if mask & (1 << j):
                    traces[j].append(c)
    return tuple("".join(tr) for tr in traces)


def transmit_cascade(x: str, cfg: ChannelConfig, rng: np.random.Generator | None = None):
    """Two-stage equivalent of the t-trace channel.

    First a deletion channel with parameter delta**t, then the remnant
    channel on the survivors.
    """
    if rng is None:
        rng = cfg.rng()
    z = transmit(x, float(cfg.delta) ** cfg.t, rng)
    return transmit_remnant(z, cfg, rng)


def likelihood(x: str, y: str, delta: float) -> float:
    """Pr(Y = y | X = x) for a single deletion-channel use."""
    d = len(x) - len(y)
    if d < 0:
        return 0.0
    return float(binomial_coeff(x, y)) * float(delta) ** d * (1 - float(delta)) ** len(y)


def joint_trace_distribution(x: str, cfg: ChannelConfig, mode: str = "independent"):
    """Exact joint distribution of the t traces of x.

    mode="independent" enumerates, per input symbol, the subset of
    traces that keep it.  mode="cascade" enumerates the two-stage
    channel.  Returns a dict mapping trace tuples to Fraction
    probabilities; the values sum to exactly 1.
    """
    t = cfg.t
    n = len(x)
    delta = Fraction(cfg.delta)
    keep = 1 - delta
    dist: dict[tuple, Fraction] = {}
    if mode == "independent":
        if (2**t) ** n > MAX_JOINT_PATTERNS:
            raise ValueError("joint distribution too large to enumerate")
        # probability of a symbol surviving exactly in trace subset S
        mask_prob = [delta ** (t - bin(m).count("1")) * keep ** bin(m).count("1") for m in range(2**t)]
        for masks in product(range(2**t), repeat=n):
            prob = Fraction(1)
            traces = [[] for _ in range(t)]
            for c, mask in zip(x, masks):
                prob *= mask_prob[mask]
                for j in range(t):
                    if mask & (1 << j):
                        traces[j].append(c)
            key = tuple("".join(tr) for tr in traces)
            dist[key] = dist.get(key, Fraction(0)) + prob
    elif mode == "cascade":
        if 2**n * (2**t - 1) ** n > MAX_JOINT_PATTERNS:
            raise ValueError("joint distribution too large to enumerate")
        d1 = delta**t
        sub = [(m, Fraction(p)) for m, p in remnant_subset_probs(delta, t)]
        for keepmask in range(2**n):
            z = "".join(c for i, c in enumerate(x) if keepmask & (1 << i))
            p1 = d1 ** (n - len(z)) * (1 - d1) ** len(z)
            for picks in product(sub, repeat=len(z)):
                prob = p1
                traces = [[] for _ in range(t)]
                for c, (mask, pm) in zip(z, picks):
                    prob *= pm
                    for j in range(t):
                        if mask & (1 << j):
                            traces[j].append(c)
                key = tuple("".join(tr) for tr in traces)
                dist[key] = dist.get(key, Fraction(0)) + prob
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return dist
