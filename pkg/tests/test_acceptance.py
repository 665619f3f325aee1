"""Acceptance criteria 1-10, one PASS/FAIL line each."""
import math
import time

import numpy as np
import pytest

from zetabound import bounds, explicit_formula, extremal
from zetabound.extremal import ExtremalParams
from zetabound.zeros import find_zeros, load_zeros

from conftest import DATA

DELTAS = (0.25, 0.5, 1.0, 2.0, 4.0)
GRID = np.arange(-50_000, 50_001) * 1e-3
GRID = GRID[GRID != 0]


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {n:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_l1_value(capsys):
    start = time.perf_counter()
    worst = 0.0
    for d in DELTAS:
        p = ExtremalParams(d)
        closed = 2 * (math.log(2) - math.log(1 + math.exp(-4 * math.pi * d))) / d
        assert extremal.l1_distance(p) == pytest.approx(closed, rel=1e-14)
        worst = max(worst, abs(extremal.l1_numeric(p).value - closed) / closed)
    elapsed = time.perf_counter() - start
    report(capsys, 1, worst <= 1e-6 and elapsed <= 60,
           f"L1 integral vs closed form: max rel {worst:.2e} (<= 1e-6), {elapsed:.1f} s (<= 60 s)")


def test_criterion_02_minorant_property(capsys):
    worst = -math.inf
    fx = extremal.f(GRID)
    for d in DELTAS:
        worst = max(worst, float(np.max(extremal.g_values(ExtremalParams(d), GRID, method="series") - fx)))
    report(capsys, 2, worst <= 1e-9, f"max(g - f) on [-50, 50] step 1e-3: {worst:.2e} (<= 1e-9)")


def test_criterion_03_measure_identity(capsys):
    pairs = [(d, x) for d in (0.25, 0.5, 1.0, 2.0, 4.0) for x in (1.0, 0.3, 2.5, 7.0)]
    worst = 0.0
    for d, x in pairs:
        p = ExtremalParams(d)
        lhs = extremal.measure_integral(p, x).value
        rhs = math.log(1 + 4 * d * d / (x * x)) - math.log(1 + 4 * d * d)
        worst = max(worst, abs(lhs - rhs))
        if x == 1.0:
            assert lhs == 0.0 and extremal.f_delta(p, x) == 0.0
    report(capsys, 3, len(pairs) == 20 and worst <= 1e-8,
           f"measure identity at {len(pairs)} (delta, x) pairs: max diff {worst:.2e} (<= 1e-8)")


def test_criterion_04_fourier_support(capsys):
    out_worst, budget_worst, in_worst = 0.0, 0.0, 0.0
    for d in (0.5, 1.0, 2.0):
        p = ExtremalParams(d)
        for k in (1.05, 1.5):
            v, b = extremal.direct_transform(p, k * d)
            out_worst, budget_worst = max(out_worst, abs(v)), max(budget_worst, b)
        for k in (0.0, 0.25, 0.5):
            v, _ = extremal.direct_transform(p, k * d)
            in_worst = max(in_worst, abs(v - extremal.g_hat(p, k * d)))
    ok = out_worst <= 1e-3 and budget_worst <= 1e-3 and in_worst <= 1e-5
    report(capsys, 4, ok, f"|g_hat| outside support {out_worst:.2e} with budget {budget_worst:.2e} (<= 1e-3); "
                          f"direct vs kernel inside {in_worst:.2e} (<= 1e-5)")


def test_criterion_05_explicit_formula(capsys, zeros_75k, mangoldt):
    assert zeros_75k.height_covered >= 7.5e4
    start = time.perf_counter()
    res = []
    for t, d in ((30.0, 0.5), (50.0, 1.0), (100.0, 1.0)):
        led = explicit_formula.check_balance(ExtremalParams(d), t, zeros_75k, mangoldt(d))
        res.append(abs(led.residual))
    elapsed = time.perf_counter() - start
    report(capsys, 5, max(res) <= 5e-3 and elapsed <= 600,
           "explicit formula residuals " + ", ".join(f"{r:.2e}" for r in res)
           + f" (<= 5e-3) with {len(zeros_75k)} zeros, {elapsed:.1f} s")


def test_criterion_06_hadamard(capsys, zeros_75k):
    rng = np.random.default_rng(2024)
    g = zeros_75k.ordinates
    ts = []
    while len(ts) < 50:
        t = float(rng.uniform(20.0, 1000.0))
        if np.min(np.abs(g[:1000] - t)) > 0.05:
            ts.append(t)
    worst = 0.0
    fails = 0
    for t in ts:
        resid, budget = bounds.hadamard_check(t, zeros_75k, zeros_75k.height_covered - t)
        worst = max(worst, abs(resid) / budget)
        fails += abs(resid) > budget
    report(capsys, 6, fails == 0, f"hadamard residual within budget at {50 - fails}/50 t; "
                                  f"worst residual/budget {worst:.3f}")


def test_criterion_07_bound_validity(capsys, mangoldt):
    rng = np.random.default_rng(7)
    cfg = bounds.BoundConfig(delta=1.0, table=mangoldt(1.0))
    slacks = [bounds.compare(float(t), cfg).slack for t in rng.uniform(20.0, 5000.0, 200)]
    trend = []
    for k in range(2, 7):
        t = 10.0**k
        trend.append(bounds.main_bound(t, bounds.delta_rule(t), mode="asymptotic") / bounds.theorem_envelope(t))
    with capsys.disabled():
        print("\n  asymptotic bound / envelope at t = 1e2..1e6: " + ", ".join(f"{r:.4f}" for r in trend))
    report(capsys, 7, min(slacks) >= -1e-2,
           f"certified slack at 200 random t, delta = 1: min {min(slacks):.4f} (>= -1e-2)")


def test_criterion_08_alt_minorant(capsys):
    fx = extremal.f(GRID)
    worst = -math.inf
    margins = []
    for d in (0.5, 1.0, 2.0):
        p = ExtremalParams(d)
        assert 2 * math.pi * d >= 2
        worst = max(worst, float(np.max(extremal.alt_minorant(p, GRID) - fx)))
        r = extremal.alt_l1_numeric(p)
        margins.append(r.value - r.error_estimate - extremal.l1_distance(p))
    ok = worst <= 1e-9 and min(margins) > 0
    report(capsys, 8, ok, f"max(m - f) {worst:.2e} (<= 1e-9); L1 gap minus optimum "
                          + ", ".join(f"{m:.4f}" for m in margins) + " (> 0)")


def test_criterion_09_lambda0(capsys):
    lam = extremal.lambda0()
    resid = abs(math.exp(-lam) - lam - lam * lam / 2)
    report(capsys, 9, f"{lam:.4f}" == "0.4912" and resid <= 1e-12,
           f"lambda0 = {lam:.16f}, equation residual {resid:.1e} (<= 1e-12)")


def test_criterion_10_zeros(capsys):
    zl = find_zeros(100.0)
    g = zl.ordinates
    ref = load_zeros(DATA / "reference_zeros.txt")  # frozen from mpmath.zetazero
    diff = float(np.max(np.abs(g - ref.ordinates))) if len(g) == len(ref) else math.inf
    ok = len(g) == 29 and abs(g[0] - 14.134725) <= 1e-6 and diff <= 1e-6
    report(capsys, 10, ok, f"{len(g)} ordinates below 100 (== 29), gamma_1 = {g[0]:.9f}; "
                           f"max diff vs imported reference {diff:.1e} (<= 1e-6)")
