"""Acceptance suite: every release criterion, one PASS/FAIL line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines as
they complete.  The benchmark ordering criterion dominates the runtime
(hundreds of paired Monte-Carlo trials at n = 100).
"""

import time
from fractions import Fraction
from itertools import product

import numpy as np

from delrecon.baselines import bma
from delrecon.channel import ChannelConfig, joint_trace_distribution
from delrecon.editgraph import infiltration, infiltration_many
from delrecon.evaluate import run_cell
from delrecon.multi_trace import (
    independent_combination,
    smap_exact,
    smap_sequential,
)
from delrecon.oracle import (
    binomial_brute,
    binomial_table_brute,
    posterior_brute,
)
from delrecon.relaxed import f_decompose, f_value, f_value_and_gradient
from delrecon.seq_core import binomial_coeff, string_of
from delrecon.single_trace import (
    coordinate_switch,
    ml_exhaustive,
    posterior_single,
    threshold,
)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def rand_bits(rng, n):
    return string_of(rng.integers(0, 2, n))


def test_criterion_01_binomial_exhaustive():
    start = time.perf_counter()
    ok = binomial_coeff("apple", "ape") == 2
    mismatches = 0
    for n in range(0, 9):
        for fc in range(2**n):
            f = format(fc, f"0{n}b") if n else ""
            for m in range(n + 1):
                for gc in range(2**m):
                    g = format(gc, f"0{m}b") if m else ""
                    if binomial_coeff(f, g) != binomial_brute(f, g):
                        mismatches += 1
    for n in (9, 10):
        for m in range(n + 1):
            table = binomial_table_brute(n, m)
            for fc in range(2**n):
                f = format(fc, f"0{n}b")
                for gc in range(2**m):
                    g = format(gc, f"0{m}b") if m else ""
                    if binomial_coeff(f, g) != table[fc, gc]:
                        mismatches += 1
    elapsed = time.perf_counter() - start
    ok = ok and mismatches == 0 and elapsed < 60.0
    report(1, ok, f"all pairs |f| <= 10 agree with brute force, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_02_intro_example():
    start = time.perf_counter()
    q = posterior_single(np.full(6, 0.5), "1010")
    est = threshold(q)
    arg, _ = ml_exhaustive(6, "1010")
    elapsed = time.perf_counter() - start
    ok = est == "100110" and "101010" in arg and elapsed < 1.0
    report(2, ok, f"n=6 y=1010: posterior -> {est}, ML argmax contains 101010: {'101010' in arg}, {elapsed:.2f}s")


def test_criterion_03_ml_table():
    start = time.perf_counter()
    ok = True
    ok = ok and ml_exhaustive(10, "10111")[0] == {"1100111111"}
    ok = ok and ml_exhaustive(10, "1010")[0] == {"1101010100"}
    ok = ok and ml_exhaustive(10, "000100")[0] == {
        "0000001000", "0000010000", "0000011000",
    }
    # published references list only the first two maximizers for
    # y=111101; brute enumeration shows a third with the same count 70
    arg, best = ml_exhaustive(10, "111101")
    ok = ok and arg == {"1111111001", "1111111011", "1111111101"} and best == 70
    ok = ok and {"1111111001", "1111111011"} <= arg
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    report(3, ok, f"ML argmax sets exact (y=111101 has a third tied maximizer, count {best}), {elapsed:.2f}s")


def test_criterion_04_infiltration_identities():
    ok = infiltration("ab", "ab") == {
        "ab": 1, "aab": 2, "abb": 2, "aabb": 4, "abab": 2,
    }
    ok = ok and infiltration("ab", "ba") == {
        "aba": 1, "bab": 1, "abab": 1, "abba": 2, "baab": 2, "baba": 1,
    }
    poly = infiltration("001", "101")
    ok = ok and poly.get("101001", 0) == 1 and poly.get("01001", 0) == 2
    report(4, ok, "infiltration products match the reference polynomials term-for-term")


def test_criterion_05_product_expansion_identity():
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    failures = 0
    for _ in range(200):
        h = rand_bits(rng, int(rng.integers(0, 9)))
        mtraces = int(rng.integers(1, 4))
        traces = [rand_bits(rng, int(rng.integers(0, 5))) for _ in range(mtraces)]
        lhs = 1
        for y in traces:
            lhs *= binomial_coeff(h, y)
        rhs = sum(c * binomial_coeff(h, w) for w, c in infiltration_many(traces).items())
        if lhs != rhs:
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60.0
    report(5, ok, f"product-of-counts identity exact on 200 instances, {failures} failures, {elapsed:.1f}s")


def test_criterion_06_channel_equivalence():
    start = time.perf_counter()
    deltas = (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10))
    failures = 0
    for tmax, xmax in ((2, 5), (3, 3)):
        for delta in deltas:
            cfg = ChannelConfig(delta=delta, t=tmax)
            for n in range(xmax + 1):
                for code in range(2**n):
                    x = format(code, f"0{n}b") if n else ""
                    ind = joint_trace_distribution(x, cfg, "independent")
                    cas = joint_trace_distribution(x, cfg, "cascade")
                    if ind != cas:
                        failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 120.0
    report(6, ok, f"independent and cascade joint distributions identical (TV 0), {failures} failures, {elapsed:.1f}s")


def test_criterion_07_posterior_oracles():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 13))
        p = rng.uniform(0.05, 0.95, n)
        x = rand_bits(rng, n)
        keep = rng.uniform(0, 1, n) > 0.3
        y = "".join(c for c, k in zip(x, keep) if k)
        dev = np.abs(posterior_single(p, y) - posterior_brute(p, (y,), n)).max()
        worst = max(worst, float(dev))
    for t, nmax, count in ((2, 9, 100), (3, 7, 100)):
        for _ in range(count):
            n = int(rng.integers(2, nmax + 1))
            x = rand_bits(rng, n)
            traces = []
            for _ in range(t):
                keep = rng.uniform(0, 1, n) > 0.3
                traces.append("".join(c for c, k in zip(x, keep) if k))
            q, _ = smap_exact(n, tuple(traces))
            dev = np.abs(q - posterior_brute(np.full(n, 0.5), tuple(traces), n)).max()
            worst = max(worst, float(dev))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 300.0
    report(7, ok, f"single- and multi-trace posteriors match brute force, max dev {worst:.2e}, {elapsed:.1f}s")


def test_criterion_08_gradient_check():
    rng = np.random.default_rng(8)
    h = 1e-6
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 21))
        p = rng.uniform(0.05, 0.95, n)
        v = rand_bits(rng, int(rng.integers(1, n + 1)))
        _, grad = f_value_and_gradient(p, v)
        fd = np.empty(n)
        for i in range(n):
            hi = p.copy(); hi[i] += h
            lo = p.copy(); lo[i] -= h
            fd[i] = (f_value(hi, v) - f_value(lo, v)) / (2 * h)
        scale = max(1.0, float(np.abs(grad).max()))
        worst = max(worst, float(np.abs(grad - fd).max() / scale))
    ok = worst <= 1e-6
    report(8, ok, f"analytic gradient vs central differences, max rel err {worst:.2e}")


def test_criterion_09_lattice_optimality():
    rng = np.random.default_rng(9)
    worst_aff = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        p = rng.uniform(0, 1, n)
        v = rand_bits(rng, int(rng.integers(1, n + 1)))
        i = int(rng.integers(0, n))
        base, coef1, coef0 = f_decompose(p, v, i)
        for val in (0.0, 1.0, float(rng.uniform(0, 1))):
            q = p.copy()
            q[i] = val
            worst_aff = max(worst_aff, abs(base + val * coef1 + (1 - val) * coef0 - f_value(q, v)))
    n = 8
    attained = 0
    exceeded = 0
    points = 0
    for _ in range(10):
        y = rand_bits(rng, int(rng.integers(1, n + 1)))
        lattice_max = max(binomial_coeff(format(c, f"0{n}b"), y) for c in range(2**n))
        for _ in range(20):
            p0 = rng.uniform(0.05, 0.95, n)
            val = binomial_coeff(coordinate_switch(p0, y), y)
            points += 1
            if val > lattice_max:
                exceeded += 1
            if val == lattice_max:
                attained += 1
    ok = worst_aff < 1e-10 and exceeded == 0 and attained >= 1
    report(9, ok, f"affinity max dev {worst_aff:.2e}; lattice max attained {attained}/{points} starts, exceeded {exceeded}")


def test_criterion_10_expected_hamming_optimality():
    start = time.perf_counter()
    delta = Fraction(3, 10)
    algos = {
        "smapexact": lambda n, tr: smap_exact(n, tr)[1],
        "bma": bma,
        "indcomb": independent_combination,
        "smapseq": smap_sequential,
    }
    ok = True
    details = []
    for n in range(2, 6):
        cfg = ChannelConfig(delta=delta, t=2)
        cache: dict[tuple[str, ...], dict[str, str]] = {}
        errors = {a: Fraction(0) for a in algos}
        unif = Fraction(1, 2**n)
        for code in range(2**n):
            x = format(code, f"0{n}b")
            for traces, prob in joint_trace_distribution(x, cfg, "independent").items():
                if traces not in cache:
                    cache[traces] = {a: fn(n, traces) for a, fn in algos.items()}
                for a, xhat in cache[traces].items():
                    errors[a] += unif * prob * sum(c != d for c, d in zip(x, xhat))
        for a in ("bma", "indcomb", "smapseq"):
            if errors["smapexact"] > errors[a]:
                ok = False
        details.append(f"n={n}: smap {float(errors['smapexact'] / n):.4f}")
    elapsed = time.perf_counter() - start
    report(10, ok, "exact expected Hamming error of the symbolwise MAP is minimal (" + ", ".join(details) + f"), {elapsed:.1f}s")


def _paired_margin(best, others):
    # mean(other - best) must exceed twice its paired standard error
    ok = True
    margins = []
    for arr in others:
        diff = arr - best
        mean = diff.mean()
        se = diff.std(ddof=1) / np.sqrt(diff.size)
        margins.append(mean / se if se > 0 else np.inf)
        if not (mean > 2 * se):
            ok = False
    return ok, min(margins)


def test_criterion_11_benchmark_ordering():
    start = time.perf_counter()
    trials = 500
    ok = True
    details = []
    for delta, t in product((0.1, 0.2), (2, 3)):
        algos = ("smapexact", "smapseq", "indcomb", "gradasc", "bma")
        cell = run_cell(100, delta, t, algos, trials, seed=11)
        best = cell["smapexact"][0]
        cell_ok, margin = _paired_margin(best, [cell[a][0] for a in algos if a != "smapexact"])
        ok = ok and cell_ok
        details.append(f"ham d={delta} t={t} z={margin:.1f}")
    for delta, t in product((0.1, 0.2), (5, 10)):
        algos = ("smapseq", "indcomb", "gradasc", "bma")
        cell = run_cell(100, delta, t, algos, trials, seed=11)
        best = cell["gradasc"][1]
        cell_ok, margin = _paired_margin(best, [cell[a][1] for a in algos if a != "gradasc"])
        ok = ok and cell_ok
        details.append(f"edit d={delta} t={t} z={margin:.1f}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1800.0
    report(11, ok, f"{trials} paired trials at n=100: " + ", ".join(details) + f", {elapsed:.0f}s")


def test_criterion_12_complexity_smoke():
    rng = np.random.default_rng(12)
    x = rand_bits(rng, 2000)
    keep = rng.uniform(0, 1, 2000) > 0.1
    y = "".join(c for c, k in zip(x, keep) if k)
    start = time.perf_counter()
    q = posterior_single(np.full(2000, 0.5), y)
    t_post = time.perf_counter() - start
    ok = t_post < 5.0 and bool(np.isfinite(q).all())

    x = rand_bits(rng, 30)
    traces = []
    for _ in range(2):
        keep = rng.uniform(0, 1, 30) > 0.1
        traces.append("".join(c for c, k in zip(x, keep) if k))
    start = time.perf_counter()
    smap_exact(30, tuple(traces))
    t_smap = time.perf_counter() - start
    ok = ok and t_smap < 60.0
    report(12, ok, f"posterior n=2000 in {t_post:.2f}s (finite), exact MAP n=30 t=2 in {t_smap:.2f}s")
