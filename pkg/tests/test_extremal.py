import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sp_integrate

from zetabound import kernels
from zetabound.errors import DomainError
from zetabound.extremal import (ExtremalParams, alt_direct_transform, alt_hat, alt_l1_closed,
                                alt_l1_numeric, alt_minorant, big_g, direct_transform, f,
                                f_antiderivative, f_delta, f_prime, g_delta, g_hat, g_hat_array,
                                g_hat_spectral, g_values, k_kernel, l1_distance, l1_numeric, lambda0,
                                lhat, lower_envelope_constant, measure_integral, minorant_gap)
from zetabound.numerics import Tolerance, integrate_semi_infinite

DELTAS = [0.25, 0.5, 1.0, 2.0, 4.0]
GRID = np.arange(-5000, 5001) * 1e-2
GRID = GRID[GRID != 0]


# --- f ---------------------------------------------------------------------

def test_f_at_two():
    assert f(2.0) == pytest.approx(math.log(2), abs=1e-15)


@pytest.mark.parametrize("x", [0.5, 1.0, 3.0, 10.0])
def test_f_below_inverse_square(x):
    assert f(x) <= 4 / x**2


def test_f_integral_is_4pi():
    # only the crude envelope f <= 4/x^2 is used for the tail
    r = integrate_semi_infinite(f, Tolerance(4e-7, 1e-12), tail=lambda L: 4.0 / L, max_length=1e9)
    assert 2 * r.value == pytest.approx(4 * math.pi, abs=1e-6)
    assert 2 * f_antiderivative(1e12) == pytest.approx(4 * math.pi, abs=1e-9)


def test_f_singular_at_zero():
    with pytest.raises(DomainError):
        f(0.0)


def test_f_prime():
    assert f_prime(2.0) == -0.5
    x = np.linspace(0.1, 20, 50)
    assert np.array_equal(f_prime(-x), -f_prime(x))


@pytest.mark.parametrize("x", [0.3, 1.0, 7.0])
def test_f_prime_vs_finite_differences(x):
    # Richardson on central differences
    h = 1e-3
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h / 2) - f(x - h / 2)) / h
    assert f_prime(x) == pytest.approx((4 * d2 - d1) / 3, abs=1e-7)


# --- measure identity --------------------------------------------------------

def test_f_delta_vanishes_at_one():
    p = ExtremalParams(1.3)
    assert f_delta(p, 1.0) == 0.0
    assert f_delta(p, -1.0) == 0.0


def test_f_delta_vs_measure_quadrature():
    p = ExtremalParams(1.0)
    r = measure_integral(p, 3.0)
    assert r.value == pytest.approx(f_delta(p, 3.0), abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(x=st.floats(0.01, 100), d=st.floats(0.1, 5))
def test_f_delta_even(x, d):
    p = ExtremalParams(d)
    assert f_delta(p, -x) == f_delta(p, x)


# --- the minorant -------------------------------------------------------------

@pytest.mark.parametrize("delta", [0.5, 1.0, 2.0])
def test_minorant_below_f(delta):
    p = ExtremalParams(delta)
    assert np.max(g_values(p, GRID, method="series") - f(GRID)) <= 1e-9


@pytest.mark.parametrize("delta", DELTAS)
def test_interpolates_at_nodes(delta):
    p = ExtremalParams(delta)
    nodes = (np.arange(0, 40) + 0.5) / delta
    assert np.max(np.abs(g_values(p, nodes, method="series") - f(nodes))) <= 1e-10
    # just off a node the near-node expansion must join smoothly
    for eps in (1e-5, 1e-7, 1e-9):
        assert np.max(np.abs(g_values(p, nodes + eps, method="series") - f(nodes + eps))) <= 1e-8


@pytest.mark.parametrize("delta", DELTAS)
def test_lower_envelope_constant(delta):
    p = ExtremalParams(delta)
    C = lower_envelope_constant(p, GRID)
    # recorded, not assumed; on these grids g stays non-negative
    assert 0.0 <= C < 1.0
    assert np.all(g_values(p, GRID, method="series") >= -C / (1 + GRID**2) - 1e-12)


def test_complex_growth():
    p = ExtremalParams(1.0)
    ratios = []
    for y in np.linspace(-3, 3, 61):
        v = g_delta(p, complex(0.0, y)).value
        ratios.append(abs(v) * (1 + abs(y)) / math.exp(2 * math.pi * abs(y)))
    # empirical constant C' of the growth bound
    assert max(ratios) < 10.0


def test_minorant_eval_fields():
    p = ExtremalParams(1.0)
    ev = g_delta(p, 2.3)
    assert isinstance(ev.value, float)
    assert ev.truncation_n > 0 and ev.tail_bound <= p.series_tol


def test_series_truncation_vs_longer():
    x = np.linspace(-40, 40, 801) + 1e-3
    coarse = kernels.minorant_series(x, 1.0, 1e-8)
    fine = kernels.minorant_series(x, 1.0, 1e-13)
    assert np.all(np.abs(coarse[0] - fine[0]) <= coarse[2] + 1e-13)


@pytest.mark.parametrize("delta", DELTAS)
def test_gap_identity_matches_series(delta):
    p = ExtremalParams(delta)
    x = np.linspace(1.0, 50.0, 997)
    series = f(x) - g_values(p, x, method="series")
    assert np.max(np.abs(minorant_gap(p, x) - series)) <= 1e-9
    assert np.max(np.abs(g_values(p, x) - g_values(p, x, method="series"))) <= 1e-9


@pytest.mark.parametrize("delta", DELTAS)
def test_scaling_relation_two_paths(delta):
    p = ExtremalParams(delta)
    x = np.linspace(-20, 20, 41) + 0.123
    direct = g_values(p, x, method="series")
    via_G = big_g(p, delta * x) + f(1 / delta)
    assert np.max(np.abs(direct - via_G)) <= 1e-9


@pytest.mark.parametrize("delta", DELTAS)
def test_sandwich(delta):
    p = ExtremalParams(delta)
    u = np.linspace(-30, 30, 301) + 0.0137
    C = lower_envelope_constant(p, GRID)
    G = big_g(p, u) + f(1 / delta)
    assert np.all(G <= f(u / delta) + 1e-9)
    assert np.all(G >= -C * delta**2 / (delta**2 + u**2) - 1e-9)


@pytest.mark.parametrize("delta", DELTAS)
def test_evenness(delta):
    p = ExtremalParams(delta)
    x = np.linspace(0.01, 30, 200)
    assert np.max(np.abs(g_values(p, -x) - g_values(p, x))) <= 1e-12
    xi = np.linspace(0, delta, 17)
    assert np.max(np.abs(g_hat_array(p, -xi) - g_hat_array(p, xi))) <= 1e-12


def test_backends_agree():
    x = np.linspace(-30, 30, 601) + 1e-4
    a = kernels.minorant_series(x, 1.0, 1e-11, backend="numba")[0]
    b = kernels.minorant_series(x, 1.0, 1e-11, backend="numpy")[0]
    # each is within the 1e-11 tail tolerance of the full series
    assert np.max(np.abs(a - b)) <= 2e-11
    z = x[:50] + 1.5j
    a, _, ta = kernels.minorant_series(z, 0.7, 1e-11, backend="numba")
    b, _, tb = kernels.minorant_series(z, 0.7, 1e-11, backend="numpy")
    assert np.all(np.abs(a - b) <= ta + tb)


# --- Fourier side ------------------------------------------------------------

def _lhat_scratch(lam, t):
    """The kernel in its sinh/cosh form."""
    if abs(t) >= 1:
        return 0.0
    sh, ch = math.sinh(lam / 2), math.cosh(lam / 2)
    num = (1 - abs(t)) * math.cos(math.pi * t) * sh + lam / (2 * math.pi) * abs(math.sin(math.pi * t)) * ch
    return num / (sh * sh + math.sin(math.pi * t) ** 2)


def test_lhat_at_zero():
    for lam in (0.1, 1.0, 10.0):
        assert lhat(lam, 0.0) == pytest.approx(1 / math.sinh(lam / 2), rel=1e-14)


def test_lhat_vanishes_at_edge():
    for lam in (0.1, 1.0, 10.0):
        assert lhat(lam, 1.0) == 0.0 and lhat(lam, -1.0) == 0.0
        assert abs(lhat(lam, 1 - 1e-9)) < 1e-7


@pytest.mark.parametrize("lam,t", [(1.0, 0.5), (0.3, -0.2), (5.0, 0.9), (40.0, 0.37)])
def test_lhat_two_paths(lam, t):
    assert lhat(lam, t) == pytest.approx(_lhat_scratch(lam, t), rel=1e-12)


def test_lhat_no_overflow():
    assert lhat(2000.0, 0.3) == 0.0 or math.isfinite(lhat(2000.0, 0.3))


@pytest.mark.parametrize("delta", [0.5, 1.0, 2.0])
def test_g_hat_support(delta):
    p = ExtremalParams(delta)
    assert g_hat(p, delta) == 0.0
    assert g_hat(p, 1.1 * delta) == 0.0
    assert abs(g_hat_spectral(p, 1.1 * delta)) < 1e-12


@pytest.mark.parametrize("delta", DELTAS)
def test_g_hat_at_zero(delta):
    p = ExtremalParams(delta)
    assert g_hat(p, 0.0) == pytest.approx(4 * math.pi - l1_distance(p), abs=1e-9)


@pytest.mark.parametrize("delta", DELTAS)
def test_g_hat_routes_agree(delta):
    p = ExtremalParams(delta)
    xi = np.linspace(0, delta, 13)[:-1]
    adaptive = np.array([g_hat(p, v) for v in xi])
    assert np.max(np.abs(g_hat_array(p, xi) - adaptive)) <= 1e-9
    assert np.max(np.abs(g_hat_spectral(p, xi) - adaptive)) <= 1e-9


def test_g_hat_direct_cross_check():
    p = ExtremalParams(1.0)
    v, budget = direct_transform(p, 0.5)
    assert abs(v - g_hat(p, 0.5)) <= 1e-5
    assert budget <= 1e-5


@pytest.mark.parametrize("delta", DELTAS)
def test_g_hat_bounded(delta):
    p = ExtremalParams(delta)
    xi = np.linspace(-1.2 * delta, 1.2 * delta, 241)
    sup = float(np.max(np.abs(g_hat_array(p, xi))))
    # recorded supremum; the maximum sits at xi = 0
    assert sup == pytest.approx(float(g_hat_array(p, 0.0)), rel=1e-12)


@pytest.mark.parametrize("delta", DELTAS)
def test_integral_of_g_is_g_hat_zero(delta):
    p = ExtremalParams(delta)
    integral_g = 4 * math.pi - l1_numeric(p).value
    assert integral_g == pytest.approx(g_hat(p, 0.0), abs=1e-6)


# --- L1 distance -------------------------------------------------------------

def test_l1_large_delta():
    p = ExtremalParams(10.0)
    assert l1_distance(p) == pytest.approx(2 * math.log(2) / 10, rel=1e-12)


def test_l1_small_delta():
    d = 1 / (4 * math.pi)
    p = ExtremalParams(d)
    expected = 4 * math.pi * (2 * math.log(2) - 2 * math.log1p(math.exp(-1)))
    assert l1_distance(p) == pytest.approx(expected, rel=1e-14)
    r = l1_numeric(p)
    assert abs(r.value - expected) / expected <= 1e-6


@pytest.mark.parametrize("delta", [0.25, 0.5, 1.0, 2.0])
def test_l1_numeric(delta):
    p = ExtremalParams(delta)
    r = l1_numeric(p)
    assert abs(r.value - l1_distance(p)) / l1_distance(p) <= 1e-6
    assert r.error_estimate / l1_distance(p) <= 1e-6


# --- K kernel and the alternative minorant -------------------------------------

def test_k_kernel_vs_quadrature():
    p = ExtremalParams(1.0)
    d, alpha, x = 1.0, 1.0, 2.0
    fn = lambda t: (1 - t / d) * math.exp(-2 * math.pi * alpha * t) * math.cos(2 * math.pi * t * x)
    val, _ = sp_integrate.quad(fn, 0, d, epsabs=1e-14, epsrel=1e-14, limit=200)
    assert k_kernel(p, alpha, x) == pytest.approx(4 * math.pi * val, abs=1e-9)


def test_k_kernel_even_and_nonnegative():
    p = ExtremalParams(1.0)
    x = np.linspace(0, 50, 2001)
    for alpha in (0.05, 0.5, 2.0):
        k = k_kernel(p, alpha, x)
        assert np.array_equal(k, k_kernel(p, alpha, -x))
        assert np.min(k) >= -1e-12


@pytest.mark.parametrize("delta", [0.5, 1.0, 2.0])
def test_alt_minorant_below_f(delta):
    p = ExtremalParams(delta)
    assert np.max(alt_minorant(p, GRID) - f(GRID)) <= 1e-9


@pytest.mark.parametrize("delta", [0.5, 1.0, 2.0])
def test_alt_envelope(delta):
    p = ExtremalParams(delta)
    x = np.linspace(-200, 200, 40001)
    assert np.max(np.abs(alt_minorant(p, x)) * (1 + x * x)) <= 12.0


def test_alt_gap_exceeds_optimum():
    p = ExtremalParams(1.0)
    r = alt_l1_numeric(p)
    assert r.value - r.error_estimate > l1_distance(p)
    assert r.value == pytest.approx(alt_l1_closed(p), abs=r.error_estimate)


def test_alt_direct_transform_support():
    p = ExtremalParams(1.0)
    v, budget = alt_direct_transform(p, 1.1)
    assert abs(v) <= 1e-3 and budget <= 1e-3
    v, budget = alt_direct_transform(p, 0.3)
    assert abs(v - alt_hat(p, 0.3)) <= budget


def test_alt_needs_large_delta():
    with pytest.raises(DomainError):
        alt_minorant(ExtremalParams(0.2), 1.0)


def test_alt_complex_continuation():
    from zetabound.explicit_formula import AltMinorant

    p = ExtremalParams(1.0)
    m = AltMinorant(p)
    x = np.linspace(-5, 5, 11) + 0.01
    cont = np.array([m.complex_value(complex(v)) for v in x])
    assert np.max(np.abs(cont - alt_minorant(p, x))) <= 1e-12
    # real on the real axis, conjugate-symmetric off it
    assert np.max(np.abs(cont.imag)) <= 1e-12
    z = 0.4 + 0.3j
    assert m.complex_value(z.conjugate()) == pytest.approx(m.complex_value(z).conjugate(), abs=1e-12)


# --- lambda0 -----------------------------------------------------------------

def test_lambda0():
    lam = lambda0()
    assert f"{lam:.4f}" == "0.4912"
    assert abs(math.exp(-lam) - lam - lam * lam / 2) <= 1e-12
    h = lambda v: math.exp(-v) - v - v * v / 2
    assert h(0.1) > 0 > h(1.0)


def test_params_validation():
    with pytest.raises(DomainError):
        ExtremalParams(0.0)
    with pytest.raises(DomainError):
        ExtremalParams(-1.0)
    with pytest.raises(DomainError):
        ExtremalParams(500.0)
