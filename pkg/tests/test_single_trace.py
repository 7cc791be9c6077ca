"""Tests for single-trace posteriors, relaxation ascent and local search."""

import numpy as np
import pytest

from delrecon.oracle import posterior_brute
from delrecon.relaxed import f_value
from delrecon.seq_core import binomial_coeff, string_of
from delrecon.single_trace import (
    AscentConfig,
    coordinate_switch,
    grad_ascent_single,
    map_single,
    ml_exhaustive,
    posterior_single,
    threshold,
)


def rand_bits(rng, n):
    return string_of(rng.integers(0, 2, n))


def test_threshold():
    assert threshold([0.4, 0.5, 0.6]) == "011"
    assert threshold(np.array([0.99, 0.0])) == "10"


def test_posterior_uniform_prior_example():
    # n=6, y=1010 under uniform priors
    q = posterior_single(np.full(6, 0.5), "1010")
    brute = posterior_brute(np.full(6, 0.5), ("1010",), 6)
    assert np.abs(q - brute).max() < 1e-12
    assert map_single(np.full(6, 0.5), "1010") == threshold(brute)


def test_posterior_matches_brute():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(1, 12))
        p = rng.uniform(0.05, 0.95, n)
        x = rand_bits(rng, n)
        keep = rng.uniform(0, 1, n) > 0.3
        y = "".join(c for c, k in zip(x, keep) if k)
        q = posterior_single(p, y)
        assert np.abs(q - posterior_brute(p, (y,), n)).max() < 1e-9


def test_posterior_empty_trace_returns_prior():
    p = np.array([0.2, 0.7, 0.5])
    assert posterior_single(p, "").tolist() == pytest.approx(p.tolist())


def test_posterior_symmetry_under_bit_flip():
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = int(rng.integers(1, 10))
        p = rng.uniform(0.1, 0.9, n)
        y = rand_bits(rng, int(rng.integers(0, n + 1)))
        yflip = "".join("1" if c == "0" else "0" for c in y)
        q = posterior_single(p, y)
        qflip = posterior_single(1.0 - p, yflip)
        assert np.abs(q - (1.0 - qflip)).max() < 1e-10


def test_posterior_rejects_bad_traces():
    with pytest.raises(ValueError):
        posterior_single(np.full(2, 0.5), "010")
    with pytest.raises(ValueError):
        posterior_single(np.array([1.0, 1.0]), "0")


def test_posterior_observed_symbols_pull_up():
    # seeing a 1 under a low prior must raise the belief somewhere
    p = np.full(5, 0.1)
    q = posterior_single(p, "1")
    assert q.max() > 0.1
    assert q.sum() > p.sum()


def test_ml_exhaustive_examples():
    arg, best = ml_exhaustive(5, "11")
    assert best == max(binomial_coeff(format(c, "05b"), "11") for c in range(32))
    for x in arg:
        assert binomial_coeff(x, "11") == best
    with pytest.raises(ValueError):
        ml_exhaustive(30, "1")


def test_ml_exhaustive_known_maximizers():
    arg, best = ml_exhaustive(10, "111101")
    assert arg == {"1111111001", "1111111011", "1111111101"}
    assert best == 70


def test_grad_ascent_reaches_good_points():
    # from many random starts, the ascent should usually find points
    # whose relaxed objective is close to the exhaustive maximum
    n, y = 10, "10111"
    _, best = ml_exhaustive(n, y)
    rng = np.random.default_rng(2)
    good = 0
    for _ in range(50):
        p0 = rng.uniform(0.2, 0.8, n)
        xhat = grad_ascent_single(n, y, p0=p0)
        if binomial_coeff(xhat, y) >= 0.8 * best:
            good += 1
    assert good >= 40


def test_grad_ascent_default_start_deterministic():
    assert grad_ascent_single(8, "0110") == grad_ascent_single(8, "0110")


def test_grad_ascent_config_validation():
    with pytest.raises(ValueError):
        grad_ascent_single(3, "0101")
    cfg = AscentConfig(step=0.05, max_iters=10)
    out = grad_ascent_single(6, "0101", cfg)
    assert len(out) == 6


def test_coordinate_switch_monotone_and_lattice():
    rng = np.random.default_rng(3)
    n, y = 8, "0110"
    for _ in range(30):
        p0 = rng.uniform(0.05, 0.95, n)
        xhat = coordinate_switch(p0, y)
        assert set(xhat) <= {"0", "1"}
        assert len(xhat) == n
        # the returned lattice point is at least as good as the start
        assert binomial_coeff(xhat, y) >= f_value(p0, y) - 1e-9


def test_coordinate_switch_beats_plain_threshold_on_average():
    rng = np.random.default_rng(4)
    n, y = 8, "1011"
    switch_vals, thresh_vals = [], []
    for _ in range(40):
        p0 = rng.uniform(0.05, 0.95, n)
        switch_vals.append(binomial_coeff(coordinate_switch(p0, y), y))
        thresh_vals.append(binomial_coeff(threshold(p0), y))
    assert np.mean(switch_vals) >= np.mean(thresh_vals)
