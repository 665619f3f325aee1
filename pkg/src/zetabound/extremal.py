"""The target f(x) = log((4 + x^2)/x^2), its optimal minorant g and relatives.

Notation: ``delta`` is the Fourier support half-width, so ``g`` has exponential
type 2 pi delta and ``g_hat`` vanishes outside [-delta, delta].  Fourier
transforms use ``h_hat(xi) = int h(x) exp(-2 pi i x xi) dx``.

Besides the interpolation series, ``g`` satisfies

    f(x) - g(x) = 2 cos^2(pi delta x) R(x),
    R(x) = int_0^2 s sech^2(pi delta s) / (x^2 + s^2) ds,

which gives a cheap evaluation for large |x|, explicit tails for integrals
over the real line, and a closed form for ``g_hat`` used as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import exp1

from . import kernels
from .errors import DomainError
from .numerics import (QuadResult, Tolerance, bisect, composite_gauss, integrate,
                       integrate_semi_infinite)

PI = math.pi
LOG2 = math.log(2.0)
GAP_SWITCH = 8.0  # |x| beyond which g_values uses the gap identity


@dataclass(frozen=True)
class ExtremalParams:
    delta: float
    series_tol: float = 1e-11
    quad_tol: Tolerance = field(default_factory=lambda: Tolerance(1e-10, 1e-10))

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise DomainError(f"delta must be positive and finite, got {self.delta}")
        if 2 * PI * self.delta > 700:
            raise DomainError("delta too large: prime cutoff exp(2 pi delta) overflows")
        if not self.series_tol > 0:
            raise DomainError("series_tol must be positive")

    @property
    def prime_cutoff(self) -> float:
        """Integers n >= exp(2 pi delta) have g_hat(log n / 2 pi) = 0."""
        return math.exp(2 * PI * self.delta)


@dataclass(frozen=True)
class MinorantEval:
    x: complex
    value: complex
    truncation_n: int
    tail_bound: float


def _nonzero(x):
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise DomainError("f is singular at x = 0")
    return x


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def f(x):
    """log((4 + x^2) / x^2)."""
    x = _nonzero(x)
    return _out(np.log1p(4.0 / (x * x)))


def f_prime(x):
    x = _nonzero(x)
    return _out(-8.0 / (x * (4.0 + x * x)))


def f_antiderivative(x):
    """An antiderivative of f on x > 0, tending to 2 pi as x -> inf."""
    x = np.asarray(x, dtype=float)
    return _out(x * np.log1p(4.0 / (x * x)) + 4.0 * np.arctan(x / 2.0))


def f_delta(params: ExtremalParams, x):
    """f(x / delta) - f(1 / delta); vanishes at x = +-1."""
    x = _nonzero(x)
    d = params.delta
    return _out(np.log1p(4.0 * d * d / (x * x)) - math.log1p(4.0 * d * d))


def measure_integral(params: ExtremalParams, x: float, tol: Tolerance | None = None) -> QuadResult:
    """int_0^inf (e^{-lam |x|} - e^{-lam}) 2 (1 - cos 2 delta lam) / lam d lam by quadrature."""
    ax = abs(float(x))
    if ax == 0:
        raise DomainError("f is singular at x = 0")
    d = params.delta
    tol = tol or params.quad_tol

    def integrand(lam):
        # e^{-a lam} - e^{-lam} without cancellation, 1 - cos = 2 sin^2
        diff = np.exp(-lam) * np.expm1((1.0 - ax) * lam)
        return diff * 4.0 * np.sin(d * lam) ** 2 / lam

    def tail(L):
        return 4.0 * (math.exp(-L * ax) / (ax * L) + math.exp(-L) / L)

    return integrate_semi_infinite(integrand, tol, tail=tail, period=PI / d)


# --- the minorant -----------------------------------------------------------

def g_delta(params: ExtremalParams, z) -> MinorantEval:
    """g at one real or complex point via the interpolation series."""
    z = complex(z) if isinstance(z, complex) or np.iscomplexobj(z) else float(z)
    vals, used, tails = kernels.minorant_series(np.array([z]), params.delta, params.series_tol)
    v = vals[0]
    value = float(v) if isinstance(z, float) else complex(v)
    return MinorantEval(z, value, int(used[0]), float(tails[0]))


def g_series(params: ExtremalParams, x, backend=None):
    """Vectorised series values (no gap identity)."""
    vals, _, _ = kernels.minorant_series(x, params.delta, params.series_tol, backend=backend)
    return vals


def g_values(params: ExtremalParams, x, method: str = "auto"):
    """g on a real array: series near the origin, gap identity for |x| >= 8."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    if method == "series":
        return g_series(params, flat).reshape(x.shape)
    if method not in ("auto", "gap"):
        raise DomainError(f"unknown method {method!r}")
    out = np.empty_like(flat)
    far = np.abs(flat) >= (1.0 if method == "gap" else GAP_SWITCH)
    if np.any(far):
        xf = flat[far]
        out[far] = np.log1p(4.0 / (xf * xf)) - _gap_identity(xf, params.delta)
    if np.any(~far):
        out[~far] = g_series(params, flat[~far])
    return out.reshape(x.shape)


def _sech2(a):
    e = np.exp(-2.0 * np.abs(a))
    return 4.0 * e / (1.0 + e) ** 2


@lru_cache(maxsize=32)
def sech2_rule(delta: float, n: int = 20):
    """Gauss nodes s and weights w * sech^2(pi delta s) on [0, 2].

    Panels are narrower than the distance 1/(2 delta) from the real axis to
    the poles of sech^2, so the rule converges geometrically.
    """
    h = min(0.125, 0.25 / delta)
    edges = np.linspace(0.0, 2.0, int(math.ceil(2.0 / h)) + 1)
    s, w = composite_gauss(edges, n)
    w = w * _sech2(PI * delta * s)
    s.setflags(write=False)
    w.setflags(write=False)
    return s, w


def r_kernel(x, delta: float, chunk: int = 20000):
    """R(x) = int_0^2 s sech^2(pi delta s)/(x^2 + s^2) ds for |x| >= 1."""
    x = np.asarray(x, dtype=float)
    s, w = sech2_rule(float(delta))
    sw = s * w
    s2 = s * s
    flat = x.ravel()
    out = np.empty_like(flat)
    for i in range(0, flat.size, chunk):
        xx = flat[i:i + chunk]
        out[i:i + chunk] = (sw[None, :] / (xx[:, None] ** 2 + s2[None, :])).sum(axis=1)
    return out.reshape(x.shape)


def _gap_identity(x, delta):
    c = np.cos(PI * delta * x)
    return 2.0 * c * c * r_kernel(x, delta)


def minorant_gap(params: ExtremalParams, x):
    """f(x) - g(x) >= 0; identity route for |x| >= 1, series below."""
    x = _nonzero(x)
    flat = x.ravel()
    out = np.empty_like(flat)
    far = np.abs(flat) >= 1.0
    if np.any(far):
        out[far] = _gap_identity(flat[far], params.delta)
    if np.any(~far):
        xn = flat[~far]
        out[~far] = np.log1p(4.0 / (xn * xn)) - g_series(params, xn)
    return _out(out.reshape(x.shape))


def big_g(params: ExtremalParams, u, pairs: int = 20000):
    """G(u) = sum sinc^2(u - m) [f_delta(m) + (u - m) f_delta'(m)] by plain summation.

    Second code path for the scaling relation g(x) = G(delta x) + f(1/delta).
    The constant -f(1/delta) in the node values is summed in closed form,
    using sum_m sinc^2(u - m) = 1 over all half-integers.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    d = params.delta
    m = np.arange(pairs) + 0.5
    a = m / d
    shift = math.log1p(4.0 * d * d)
    f0 = np.log1p(4.0 / (a * a))
    fdp = -8.0 / (a * (4.0 + a * a)) / d
    out = np.empty_like(u)
    for i, ui in enumerate(u):
        s2 = math.sin(PI * (ui - 0.5)) ** 2 / PI**2
        wp, wm = ui - m, ui + m
        if np.min(np.abs(wp)) < 1e-8 or np.min(np.abs(wm)) < 1e-8:
            raise DomainError("big_g is not defined on the nodes themselves")
        varying = np.sum(f0 / wp**2 + fdp / wp) + np.sum(f0 / wm**2 - fdp / wm)
        out[i] = s2 * varying - shift
    return out


def lower_envelope_constant(params: ExtremalParams, x) -> float:
    """Smallest C >= 0 with g(x) >= -C/(1 + x^2) on the sample points."""
    x = np.asarray(x, dtype=float)
    g = g_values(params, x, method="series")
    return float(max(0.0, np.max(-g * (1.0 + x * x))))


# --- Fourier side -------------------------------------------------------------

def lhat(lam, t):
    """The Fourier kernel L-hat(lam, t); zero for |t| >= 1.

    Written with E = exp(-lam/2) so that no sinh or cosh is formed; this is the
    log-space form and stays finite for any lam > 0.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise DomainError("lambda must be positive")
    t = np.asarray(t, dtype=float)
    at = np.abs(t)
    E = np.exp(-0.5 * lam)
    one_m = -np.expm1(-lam)  # 1 - E^2
    sp = np.sin(PI * np.minimum(at, 1.0))
    num = 2.0 * E * ((1.0 - at) * np.cos(PI * t) * one_m + lam / (2 * PI) * np.abs(sp) * (1.0 + E * E))
    den = one_m * one_m + 4.0 * E * E * sp * sp
    return _out(np.where(at < 1.0, num / den, 0.0))


def _ghat_integrand(params, xi):
    d = params.delta
    t = xi / d

    def h(lam):
        return lhat(lam, t) * 4.0 * np.sin(d * lam) ** 2 / lam
    return h


def _ghat_tail(L):
    # |L-hat| <= 5 E (1 + lam/pi) once lam >= 1 and the measure weight is <= 4/lam
    if L < 1:
        return 1e300
    return 40.0 * (1.0 / L + 1.0 / PI) * math.exp(-L / 2) + 80.0 / PI * math.exp(-L / 2)


def g_hat(params: ExtremalParams, xi: float, tol: Tolerance | None = None) -> float:
    """g_hat(xi) from the kernel integral; exactly 0 for |xi| >= delta."""
    d = params.delta
    xi = abs(float(xi))
    if xi >= d:
        return 0.0
    tol = tol or params.quad_tol
    res = integrate_semi_infinite(_ghat_integrand(params, xi), tol, tail=_ghat_tail, period=PI / d)
    return res.value / d


@lru_cache(maxsize=16)
def _ghat_lambda_rule(delta: float, lam_max: float = 90.0, n: int = 20):
    geo = 2.0 ** np.arange(-30, 1)
    h = min(0.5, PI / (4.0 * delta))
    lin = np.arange(1.0, lam_max + h, h)
    edges = np.concatenate([[0.0], geo[:-1], lin])
    lam, w = composite_gauss(edges, n)
    meas = w * 4.0 * np.sin(delta * lam) ** 2 / lam
    lam.setflags(write=False)
    meas.setflags(write=False)
    return lam, meas


def g_hat_array(params: ExtremalParams, xi, method: str = "kernel", chunk: int = 256):
    """g_hat on an array of frequencies.

    ``kernel`` integrates the L-hat representation on a fixed composite rule;
    ``spectral`` uses the closed form from the gap identity.
    """
    xi = np.asarray(xi, dtype=float)
    flat = np.abs(xi.ravel())
    d = params.delta
    if method == "spectral":
        return g_hat_spectral(params, xi)
    if method != "kernel":
        raise DomainError(f"unknown method {method!r}")
    lam, meas = _ghat_lambda_rule(float(d))
    out = np.zeros_like(flat)
    inside = np.nonzero(flat < d)[0]
    for i in range(0, inside.size, chunk):
        idx = inside[i:i + chunk]
        vals = lhat(lam[None, :], (flat[idx] / d)[:, None])
        out[idx] = vals @ meas / d
    return _out(out.reshape(xi.shape))


def g_hat_spectral(params: ExtremalParams, xi):
    """g_hat = f_hat - r_hat with r = R (1 + cos 2 pi delta x).

    f_hat(xi) = (1 - e^{-4 pi |xi|})/|xi| and R_hat(xi) = pi int_0^2
    sech^2(pi delta s) e^{-2 pi s |xi|} ds.  Outside the support the two cancel
    up to rounding.
    """
    xi = np.asarray(xi, dtype=float)
    a = np.abs(xi.ravel())
    d = params.delta
    s, w = sech2_rule(float(d))
    safe = np.where(a == 0, 1.0, a)
    fhat = np.where(a == 0, 4 * PI, -np.expm1(-4 * PI * a) / safe)

    def rhat(v):
        return PI * (np.exp(-2 * PI * np.abs(v)[:, None] * s[None, :]) @ w)
    out = fhat - rhat(a) - 0.5 * rhat(a - d) - 0.5 * rhat(a + d)
    return _out(out.reshape(xi.shape))


def l1_distance(params: ExtremalParams) -> float:
    """int (f - g) over the real line, in closed form."""
    d = params.delta
    return 2.0 * (LOG2 - math.log1p(math.exp(-4 * PI * d))) / d


def _node_point(delta, x_min):
    """Smallest X >= x_min with cos(2 pi delta X) = -1 (a node of g)."""
    k = math.ceil(delta * x_min - 0.5)
    return (k + 0.5) / delta


def r_tail_integral(delta: float, X: float) -> float:
    """int_X^inf R(x) dx = int_0^2 sech^2(pi delta s) atan(s/X) ds."""
    s, w = sech2_rule(float(delta))
    return float(np.arctan(s / X) @ w)


def r_prime(x: float, delta: float) -> float:
    s, w = sech2_rule(float(delta))
    return float(-2.0 * x * (s * w / (x * x + s * s) ** 2).sum())


def l1_numeric(params: ExtremalParams, window: float | None = None,
               tol: Tolerance | None = None) -> QuadResult:
    """2 int_0^inf (f - g) with g from the series on [0, X] and an explicit tail.

    X is a node of g, where cos(2 pi delta X) = -1.  Beyond X, f - g = R +
    R cos(2 pi delta x); the first part integrates exactly and the second by
    parts, with remainder at most |R'(X)| / (2 pi delta)^2.
    """
    d = params.delta
    tol = tol or Tolerance(1e-12, 1e-11)
    X = _node_point(d, window or 40.0 * max(1.0, 1.0 / d))

    def gap(x):
        return np.log1p(4.0 / (x * x)) - g_series(params, x)

    pts = [(k + 0.5) / d for k in range(int(d * X)) if (k + 0.5) / d < X]
    res = integrate(gap, 0.0, X, tol, points=pts)
    omega = 2 * PI * d
    rp = r_prime(X, d)
    tail = r_tail_integral(d, X) + rp / omega**2
    bound = abs(rp) / omega**2
    return QuadResult(2.0 * (res.value + tail), 2.0 * (res.error_estimate + bound), res.evaluations)


def windowed_cosine_transform(h, xi: float, X: float, panel: float, n: int = 16) -> float:
    """2 int_0^X h(x) cos(2 pi xi x) dx on a composite Gauss rule."""
    edges = np.linspace(0.0, X, int(math.ceil(X / panel)) + 1)
    x, w = composite_gauss(edges, n)
    return 2.0 * float(np.dot(w, h(x) * np.cos(2 * PI * xi * x)))


def _cos_tail(h0, h1, mu, X):
    """int_X^inf h(x) cos(mu x) dx for h -> 0 monotone with convex tail.

    Two integration-by-parts terms; the remainder is at most |h'(X)|/mu^2.
    """
    est = -h0 * math.sin(mu * X) / mu - h1 * math.cos(mu * X) / mu**2
    return est, abs(h1) / mu**2


def direct_transform(params: ExtremalParams, xi: float, window: float | None = None):
    """int g(x) e^{-2 pi i x xi} dx by windowed quadrature of the series.

    Returns ``(value, budget)``.  The window integral uses series values of g;
    the tail beyond the node X uses g = f - R - R cos(2 pi delta x), each
    piece integrated exactly (frequency 0) or by parts with a remainder bound.
    """
    d = params.delta
    xi = abs(float(xi))
    nu = 2 * PI * xi
    omega = 2 * PI * d
    if window is None:
        window = 600.0 / max(d, 0.5)
    X = _node_point(d, window)
    panel = 0.25 / max(1.0, d + xi)
    body = windowed_cosine_transform(lambda x: g_series(params, x), xi, X, panel)

    f0, f1 = math.log1p(4.0 / (X * X)), -8.0 / (X * (4.0 + X * X))
    s, w = sech2_rule(float(d))
    r0 = float((s * w / (X * X + s * s)).sum())
    r1 = r_prime(X, d)
    tail = 0.0
    budget = 0.0
    # f part
    if nu == 0:
        tail += 4.0 * math.atan(2.0 / X) - X * f0
    else:
        e, b = _cos_tail(f0, f1, nu, X)
        tail += e
        budget += b
    # -R part
    if nu == 0:
        tail -= r_tail_integral(d, X)
    else:
        e, b = _cos_tail(r0, r1, nu, X)
        tail -= e
        budget += b
    # -R cos(omega x) cos(nu x) = -R/2 [cos((omega-nu)x) + cos((omega+nu)x)]
    for mu in (abs(omega - nu), omega + nu):
        if mu == 0:
            tail -= 0.5 * r_tail_integral(d, X)
        else:
            e, b = _cos_tail(r0, r1, mu, X)
            tail -= 0.5 * e
            budget += 0.5 * b
    # quadrature error of the window: series truncation plus rounding
    budget = 2.0 * budget + 2.0 * X * params.series_tol + 1e-12 * X
    return body + 2.0 * tail, budget


# --- alternative minorant ---------------------------------------------------

def lambda0() -> float:
    """The positive root of exp(-lam) = lam + lam^2/2."""
    return bisect(lambda lam: math.exp(-lam) - lam - 0.5 * lam * lam, 0.1, 1.0, tol=1e-13)


def k_kernel(params: ExtremalParams, alpha, x):
    """K(alpha, x) = 2 pi int_{-delta}^{delta} (1 - |t|/delta) e^{-2 pi alpha |t| - 2 pi i t x} dt."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha <= 0):
        raise DomainError("alpha must be positive")
    x = np.asarray(x, dtype=float)
    d = params.delta
    w = alpha + 1j * x
    val = 2.0 * alpha / (alpha * alpha + x * x) - (-np.expm1(-2 * PI * d * w) / (w * w)).real / (PI * d)
    return _out(val)


def _h_primitive(w, c):
    """A primitive of (1 - e^{-c w}) / w^2 in w."""
    return -(-np.expm1(-c * w)) / w - c * exp1(c * w)


def alt_minorant(params: ExtremalParams, x):
    """m(x) = int_{a0}^2 K(alpha, x) d alpha - K(2, x)/(2 pi delta - 1), a0 = lambda0/(2 pi delta)."""
    d = params.delta
    c = 2 * PI * d
    if c < 2:
        raise DomainError(f"alternative minorant needs 2 pi delta >= 2, got {c:.6g}")
    x = np.asarray(x, dtype=float)
    a0 = lambda0() / c
    x2 = x * x
    integral = (np.log((4.0 + x2) / (a0 * a0 + x2))
                - (_h_primitive(2.0 + 1j * x, c) - _h_primitive(a0 + 1j * x, c)).real / (PI * d))
    return _out(integral - k_kernel(params, 2.0, x) / (c - 1.0))


def alt_l1_closed(params: ExtremalParams) -> float:
    """int (f - m) = lambda0/delta + 2 pi/(2 pi delta - 1)."""
    d = params.delta
    return lambda0() / d + 2 * PI / (2 * PI * d - 1.0)


def alt_tail(params: ExtremalParams, X: float):
    """Estimate and bound for int_X^inf (f - m).

    Non-oscillating parts integrate exactly; the oscillating remainder
    (terms carrying e^{-2 pi i delta x}) is bounded by integration by parts.
    """
    d = params.delta
    c = 2 * PI * d
    a0 = lambda0() / c

    def log_tail(a):
        return 2 * a * math.atan(a / X) - X * math.log1p(a * a / (X * X))

    est = log_tail(a0)
    # -(1/(pi d)) Re[H(2+ix) - H(a0+ix)], non-oscillating part -Re 1/w
    est += (-math.atan(2.0 / X) + math.atan(a0 / X)) / (PI * d)
    # K(2, x)/(c - 1): 4/(4+x^2) - Re[1/w^2]/(pi d) + oscillating
    est += (2.0 * math.atan(2.0 / X) + X / (4.0 + X * X) / (PI * d)) / (c - 1.0)
    osc = 0.0
    for beta in (2.0, a0):
        osc += 2.0 * math.exp(-c * beta) * (2.0 / X + 2.0 / (c * X)) / c / (PI * d)
    osc += 2.0 * math.exp(-2 * c) / (c * X * X) / (PI * d) / (c - 1.0)
    return est, 2.0 * osc


def alt_l1_numeric(params: ExtremalParams, window: float = 400.0) -> QuadResult:
    """2 int_0^inf (f - m) by quadrature on [0, X] plus the tail of ``alt_tail``."""
    d = params.delta
    X = math.ceil(window * d) / d

    def gap(x):
        return np.log1p(4.0 / (x * x)) - alt_minorant(params, x)

    pts = list(np.arange(1, int(round(X * d))) / d)
    res = integrate(gap, 0.0, X, Tolerance(1e-9, 1e-9), points=pts)
    est, bound = alt_tail(params, X)
    return QuadResult(2.0 * (res.value + est), 2.0 * (res.error_estimate + bound), res.evaluations)


def alt_hat(params: ExtremalParams, xi):
    """Fourier transform of m, from K_hat(alpha, xi) = 2 pi (1 - |xi|/delta) e^{-2 pi alpha |xi|}."""
    d = params.delta
    c = 2 * PI * d
    a0 = lambda0() / c
    xi = np.abs(np.asarray(xi, dtype=float))
    tri = np.clip(1.0 - xi / d, 0.0, None)
    b = 2 * PI * xi
    safe = np.where(b == 0, 1.0, b)
    integral = np.where(b == 0, 2.0 - a0, np.exp(-2.0 * b) * np.expm1((2.0 - a0) * b) / safe)
    return _out(2 * PI * tri * (integral - np.exp(-2.0 * b) / (c - 1.0)))


def _alt_parts(params: ExtremalParams, x):
    """Split m = s + Re Z with s free of oscillation and Z = e^{-2 pi i delta x} O(1/x^2).

    Uses E1(z) = e^{-z} phi(z) with phi(z) = e^z E1(z) ~ 1/z, so that
    H(w) = -1/w + e^{-c w} (1/w - c phi(c w)).
    """
    d = params.delta
    c = 2 * PI * d
    a0 = lambda0() / c
    x = np.asarray(x, dtype=float)
    x2 = x * x
    w2, wa = 2.0 + 1j * x, a0 + 1j * x
    s = (np.log((4.0 + x2) / (a0 * a0 + x2)) - (-1.0 / w2 + 1.0 / wa).real / (PI * d)
         - (4.0 / (4.0 + x2) - (1.0 / (w2 * w2)).real / (PI * d)) / (c - 1.0))

    def osc(w):
        phi = np.exp(c * w) * exp1(c * w)
        return np.exp(-c * w) * (1.0 / w - c * phi)
    Z = -(osc(w2) - osc(wa)) / (PI * d) - np.exp(-c * w2) / (w2 * w2) / (PI * d * (c - 1.0))
    return s, Z


def alt_direct_transform(params: ExtremalParams, xi: float, window: float = 2000.0):
    """int m(x) e^{-2 pi i x xi} dx by windowed quadrature; returns ``(value, budget)``.

    Beyond X the smooth part s ~ 1/x^2 is monotone, so its cosine integral is
    at most 2|s(X)|/nu (second mean value theorem), or X |s(X)| at nu = 0.
    The oscillating part is bounded by int_X^inf |Z| ~ X |Z(X)|.
    """
    d = params.delta
    xi = abs(float(xi))
    nu = 2 * PI * xi
    X = float(window)
    panel = 0.25 / max(1.0, d + xi)
    body = windowed_cosine_transform(lambda x: alt_minorant(params, x), xi, X, panel)
    s, Z = _alt_parts(params, X)
    s_tail = X * abs(s) if nu == 0 else min(X * abs(s), 2.0 * abs(s) / nu)
    budget = 2.0 * (s_tail + X * abs(Z)) + 1e-12 * X
    return body, float(budget)
