"""Both sides of the explicit formula for h(z) = g(t - z), term by term.

    sum_gamma h(gamma) = h(i/2) + h(-i/2) - h_hat(0) log(pi) / 2 pi
                         + (1/2 pi) int h(u) Re psi(1/4 + iu/2) du
                         - (1/2 pi) sum_n Lambda(n) n^{-1/2} (h_hat(log n/2 pi) + h_hat(-log n/2 pi))

with h_hat(xi) = g_hat(-xi) e^{-2 pi i xi t}.  The ledger records every
term and the residual of the zero side against the rest.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields

import numpy as np
from scipy.special import exp1, loggamma

from . import extremal as ex
from .arithmetic import MangoldtTable, prime_sum
from .errors import PrecisionError, TermError, ZetaBoundError
from .extremal import ExtremalParams
from .numerics import Tolerance, composite_gauss, integrate_semi_infinite
from .zeros import ZeroList, zeros_window
from .zetafn import digamma, digamma_re

PI = math.pi
QUAD_BUDGET = 1e-6  # declared allowance for all quadrature and series errors
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class ExplicitFormulaLedger:
    t: float
    delta: float
    zero_side: float
    zero_tail_bound: float
    pole_terms: float
    logpi_term: float
    arch_term: float
    prime_side: float
    residual: float

    @property
    def budget(self) -> float:
        return self.zero_tail_bound + QUAD_BUDGET

    @property
    def balanced(self) -> bool:
        return abs(self.residual) <= self.budget

    def to_dict(self):
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def header(cls):
        return [f.name for f in fields(cls)]

    def to_csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([f"{getattr(self, k):.12g}" for k in self.header()])
        return buf.getvalue()


# --- test functions -------------------------------------------------------------

class Minorant:
    """h(z) = g(t - z) with g the optimal minorant."""

    name = "minorant"

    def __init__(self, params: ExtremalParams):
        self.params = params
        self.envelope_c = 0.0  # measured: g >= 0 on every sampled grid

    def values(self, x):
        return ex.g_values(self.params, x)

    def complex_value(self, z):
        return ex.g_delta(self.params, z).value

    def hat(self, xi):
        return ex.g_hat_array(self.params, xi)

    def hat0(self):
        return ex.g_hat(self.params, 0.0)


class AltMinorant:
    """h(z) = m(t - z) with m the alternative minorant built from K."""

    name = "alt"

    def __init__(self, params: ExtremalParams):
        self.params = params
        self.c = 2 * PI * params.delta
        self.a0 = ex.lambda0() / self.c
        # |m(x)| (1 + x^2) is at most this on the real line (checked in tests)
        self.envelope_c = 12.0

    def values(self, x):
        return ex.alt_minorant(self.params, x)

    def complex_value(self, z):
        """Analytic continuation of the closed form (Re F(x) -> (F(x) + conj F(conj x))/2)."""
        z = complex(z)
        c, a0, d = self.c, self.a0, self.params.delta
        hp = ex._h_primitive

        def cre(F, zz):
            return 0.5 * (F(zz) + np.conj(F(np.conj(zz))))

        def integral_part(zz):
            return hp(2.0 + 1j * zz, c) - hp(a0 + 1j * zz, c)

        def k2_part(zz):
            w = 2.0 + 1j * zz
            return -np.expm1(-c * w) / (w * w)

        val = (np.log((4.0 + z * z) / (a0 * a0 + z * z)) - cre(integral_part, z) / (PI * d)
               - (4.0 / (4.0 + z * z) - cre(k2_part, z) / (PI * d)) / (c - 1.0))
        return complex(val)

    def hat(self, xi):
        return ex.alt_hat(self.params, xi)

    def hat0(self):
        return float(ex.alt_hat(self.params, 0.0))


def _test_function(params, kind):
    if kind == "minorant":
        return Minorant(params)
    if kind == "alt":
        return AltMinorant(params)
    raise ValueError(f"unknown test function {kind!r}")


# --- zero side -------------------------------------------------------------------

def density_tail(t: float, G: float, envelope: float) -> float:
    """Bound for sum over zeros outside |gamma - t| <= G of |h|.

    |h(x)| <= envelope / x^2 beyond the window and zeros have density at most
    log(x + |t| + 3)/(2 pi) at distance x, on both sides of t; a further
    2 envelope / G^2 per side covers the bounded fluctuation of the count.
    """
    if G <= 0:
        return math.inf
    a = abs(t) + 3.0
    integral = math.log(G + a) / G + math.log((G + a) / G) / a
    return 2.0 * envelope * (integral / (2 * PI) + 2.0 / (G * G))


def zero_side(params: ExtremalParams, t: float, zl: ZeroList, G: float, kind: str = "minorant"):
    """(sum of h over the window of signed ordinates, tail bound)."""
    tf = _test_function(params, kind)
    window = zeros_window(zl, t, G)
    vals = tf.values(t - window) if window.size else np.empty(0)
    total = math.fsum(vals.tolist())
    return total, density_tail(t, G, 4.0 + tf.envelope_c)


def pole_terms(params: ExtremalParams, t: float, kind: str = "minorant") -> float:
    """h(i/2) + h(-i/2) = g(t - i/2) + g(t + i/2)."""
    tf = _test_function(params, kind)
    total = tf.complex_value(complex(t, 0.5)) + tf.complex_value(complex(t, -0.5))
    scale = max(1.0, abs(total))
    if abs(total.imag) > IMAG_TOL * scale:
        raise PrecisionError(f"pole terms not real: imaginary part {total.imag:.3g}", achievable=abs(total.imag))
    return float(total.real)


def logpi_term(params: ExtremalParams, kind: str = "minorant") -> float:
    return _test_function(params, kind).hat0() * math.log(PI) / (2 * PI)


# --- archimedean term --------------------------------------------------------------

def _pole_sum_terms(omega):
    k_max = int(math.ceil(40.0 / (2.0 * omega))) + 2
    y = 2.0 * np.arange(k_max) + 0.5
    return y, np.exp(-omega * y)


def arch_exact(params: ExtremalParams, t: float) -> float:
    """(1/2 pi) int g(t - u) Re psi(1/4 + iu/2) du in closed form plus s-integrals.

    With g = f - R - R cos(2 pi delta x) each piece is integrated against the
    digamma weight exactly: the f part through log-gamma, the R parts through
    digamma values along s in [0, 2].  Needs |t| >= 1.
    """
    t = abs(float(t))
    if t < 1.0:
        raise PrecisionError("closed-form archimedean route needs |t| >= 1", achievable=math.inf)
    d = params.delta
    omega = 2 * PI * d
    a_f = 4 * PI * (loggamma(1.25 + 0.5j * t).real - loggamma(0.25 + 0.5j * t).real)
    s, w = ex.sech2_rule(float(d))
    psi_plus = digamma(0.25 + 0.5 * s + 0.5j * t)
    a_r = PI * float(np.dot(w, psi_plus.real))
    psi_minus = digamma(0.25 - 0.5 * s - 0.5j * t)
    y, ey = _pole_sum_terms(omega)
    phase = np.exp(1j * omega * t)
    poles = (phase * ey[None, :] / ((t + 1j * y[None, :]) ** 2 + (s * s)[:, None])).sum(axis=1)
    damp = np.exp(-omega * s)
    s_i = 0.5 * (PI * damp * psi_plus).real + 0.5 * (PI * damp * psi_minus - 4 * PI * s * poles).real
    a_c = float(np.dot(w, s_i))
    return float((a_f - a_r - a_c) / (2 * PI))


def arch_fourier(hat, hat0: float, delta: float, t: float, panels_per_unit: float | None = None) -> float:
    """Archimedean term from the transform alone.

    Uses psi(z) = int_0^inf (e^{-x}/x - e^{-zx}/(1 - e^{-x})) dx, so that
    2 pi arch = int_0^X (hat0 e^{-x}/x - e^{-x/4} cos(tx/2) hat(x/4pi)/(1 - e^{-x})) dx
    + hat0 E1(X) with X = 4 pi delta, beyond which hat vanishes.
    """
    t = abs(float(t))
    X = 4 * PI * delta
    h = min(0.25, 2.0 / max(t, 1.0)) if panels_per_unit is None else 1.0 / panels_per_unit
    geo = X * 2.0 ** np.arange(-40, 0)
    geo = geo[geo < h]
    edges = np.concatenate([[0.0], geo, np.arange(h, X, h), [X]])
    edges = np.unique(edges)
    x, w = composite_gauss(edges, 16)
    hv = np.asarray(hat(x / (4 * PI)), dtype=float)
    integrand = hat0 * np.exp(-x) / x - np.exp(-0.25 * x) * np.cos(0.5 * t * x) * hv / (-np.expm1(-x))
    return (float(np.dot(w, integrand)) + hat0 * float(exp1(X))) / (2 * PI)


def arch_window(params: ExtremalParams, t: float, U: float = 2000.0):
    """(1/2 pi) int_{|u - t| <= U} g(t - u) Re psi(1/4 + iu/2) du plus tail.

    Returns ``(value, budget)``.  Beyond the window g = f - R - R cos(2 pi delta x);
    the non-oscillating part is integrated numerically to infinity and the
    oscillating part is bounded by parts.
    """
    t = float(t)
    d = params.delta
    panel = 0.25 / max(1.0, d)
    edges = np.linspace(-U, U, int(math.ceil(2 * U / panel)) + 1)
    x, w = composite_gauss(edges, 16)
    body = float(np.dot(w, ex.g_values(params, x) * digamma_re(t - x)))

    def smooth(xx):
        return (np.log1p(4.0 / (xx * xx)) - ex.r_kernel(xx, d)) * (digamma_re(t + xx) + digamma_re(t - xx))

    def env(L):
        # integrand ~ 8 log(x/2)/x^2 for x >> |t|
        est = 8.0 * (math.log(L / 2.0) + 1.0) / L
        return est, 50.0 * (abs(t) + 10.0) * math.log(L) / (L * L)

    tail = integrate_semi_infinite(smooth, Tolerance(1e-10, 1e-10), tail=env, start=U, max_length=1e12)
    r_u = float(ex.r_kernel(np.array([U]), d)[0])
    osc = 4.0 * r_u * (math.log(abs(t) + U + 3.0) + 2.0) / (2 * PI * d)
    value = (body + tail.value) / (2 * PI)
    return value, (tail.error_estimate + osc + 1e-12 * U) / (2 * PI)


def arch_term(params: ExtremalParams, t: float, method: str = "exact", kind: str = "minorant") -> float:
    if kind == "alt":
        tf = AltMinorant(params)
        return arch_fourier(tf.hat, tf.hat0(), params.delta, t)
    if method == "exact":
        if abs(t) >= 1.0:
            return arch_exact(params, t)
        method = "fourier"
    if method == "fourier":
        return arch_fourier(lambda xi: ex.g_hat_spectral(params, xi), ex.g_hat(params, 0.0), params.delta, t)
    if method == "window":
        return arch_window(params, t)[0]
    raise ValueError(f"unknown method {method!r}")


# --- prime side -------------------------------------------------------------------

def prime_side(params: ExtremalParams, t: float, table: MangoldtTable, kind: str = "minorant") -> float:
    """(1/2 pi) sum Lambda(n) n^{-1/2} h_hat(log n/2 pi) 2 cos(t log n)."""
    if kind == "minorant":
        return 2.0 * prime_sum(params, t, table)
    tf = _test_function(params, kind)
    keep = table.n < params.prime_cutoff
    n = table.n[keep].astype(float)
    if n.size == 0:
        return 0.0
    logn = np.log(n)
    hv = tf.hat(logn / (2 * PI))
    return float(np.dot(table.values[keep] / np.sqrt(n) * hv, 2.0 * np.cos(t * logn)) / (2 * PI))


def check_balance(params: ExtremalParams, t: float, zl: ZeroList, table: MangoldtTable,
                  G: float | None = None, kind: str = "minorant") -> ExplicitFormulaLedger:
    """Evaluate every term and the residual; G defaults to the widest window available."""
    t = float(t)
    if G is None:
        G = zl.height_covered - abs(t)
    parts = {}
    for name, fn in (("zero_side", lambda: zero_side(params, t, zl, G, kind)),
                     ("pole_terms", lambda: pole_terms(params, t, kind)),
                     ("logpi_term", lambda: logpi_term(params, kind)),
                     ("arch_term", lambda: arch_term(params, t, kind=kind)),
                     ("prime_side", lambda: prime_side(params, t, table, kind))):
        try:
            parts[name] = fn()
        except ZetaBoundError as exc:
            raise TermError(name, exc) from exc
    zs, tail = parts["zero_side"]
    rhs = parts["pole_terms"] - parts["logpi_term"] + parts["arch_term"] - parts["prime_side"]
    return ExplicitFormulaLedger(t, params.delta, zs, tail, parts["pole_terms"], parts["logpi_term"],
                                 parts["arch_term"], parts["prime_side"], zs - rhs)


def right_side(params: ExtremalParams, t: float, table: MangoldtTable) -> float:
    """pole - log pi + arch - prime: the zero sum of g(t - gamma) without any zeros."""
    return (pole_terms(params, t) - logpi_term(params) + arch_term(params, t)
            - prime_side(params, t, table))
