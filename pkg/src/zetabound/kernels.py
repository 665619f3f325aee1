"""Hot loops: the half-integer interpolation series and the Riemann-Siegel sum.

Each kernel exists as a numba-compiled loop (``*_loop``) and a vectorised
numpy version (``*_numpy``).  The public dispatchers pick one according to
``zetabound._accel.BACKEND``; both stay importable for benchmarking.
"""
from __future__ import annotations

import math
from functools import lru_cache

import mpmath
import numpy as np

from . import _accel
from ._accel import njit

PI = math.pi
TWO_PI = 2.0 * math.pi
NEAR_NODE = 1e-4

# ---------------------------------------------------------------------------
# Interpolation series
#
#   g(z) = sum_m sinc^2(D z - m) [ f(m/D) + (D z - m)/D * f'(m/D) ],  m in Z + 1/2
#
# with sinc^2(w) = sin^2(pi w) / (pi w)^2 and sin^2(pi (u - m)) independent of
# the half-integer m.  Terms are paired as +m / -m.  Truncating at |m| <= K - 1/2
# with K + 1/2 >= 2|D z| leaves a tail bounded by 64 D^2 |C| / (3 K^3), where
# C = sin^2(pi w*) / pi^2 for the nearest node offset w*.
# ---------------------------------------------------------------------------


def series_terms_needed(delta, u_abs, c_abs, tol):
    """Pairs K so that K + 1/2 >= 2|u| and the tail bound is <= tol."""
    k_tail = (64.0 * delta * delta * max(c_abs, 1e-300) / (3.0 * tol)) ** (1.0 / 3.0)
    return int(max(math.ceil(2.0 * u_abs), math.ceil(k_tail), 2))


def series_tail_bound(delta, c_abs, k):
    return 64.0 * delta * delta * c_abs / (3.0 * k**3)


def node_data(delta, k):
    """f and f' at the positive nodes (j + 1/2)/delta, j < k."""
    m = np.arange(k) + 0.5
    a = m / delta
    return np.log1p(4.0 / (a * a)), -8.0 / (a * (4.0 + a * a))


@njit
def _sinc2_small(w):
    pw2 = (PI * w) * (PI * w)
    s = 1.0 - pw2 / 6.0 + pw2 * pw2 / 120.0 - pw2 * pw2 * pw2 / 5040.0
    return s * s


@njit
def _series_real_loop(x, delta, tol, fa, fpa):
    n = x.size
    out = np.empty(n)
    used = np.empty(n, dtype=np.int64)
    tails = np.empty(n)
    inv_delta = 1.0 / delta
    kmax = fa.size
    for i in range(n):
        u = delta * x[i]
        wstar = u - (math.floor(u) + 0.5)
        s = math.sin(PI * wstar)
        c = s * s / (PI * PI)
        k_tail = (64.0 * delta * delta * max(c, 1e-300) / (3.0 * tol)) ** (1.0 / 3.0)
        k = int(max(math.ceil(2.0 * abs(u)), math.ceil(k_tail), 2.0))
        if k > kmax:
            k = kmax
        acc = 0.0
        near = 0.0
        for j in range(k):
            m = j + 0.5
            f0 = fa[j]
            f1 = fpa[j] * inv_delta
            w = u - m
            if abs(w) < NEAR_NODE:
                near += _sinc2_small(w) * (f0 + w * f1)
            else:
                acc += f0 / (w * w) + f1 / w
            w = u + m
            if abs(w) < NEAR_NODE:
                near += _sinc2_small(w) * (f0 - w * f1)
            else:
                acc += f0 / (w * w) - f1 / w
        out[i] = c * acc + near
        used[i] = k
        tails[i] = 64.0 * delta * delta * c / (3.0 * k * k * k)
    return out, used, tails


@njit
def _series_complex_loop(z, delta, tol, fa, fpa):
    n = z.size
    out = np.empty(n, dtype=np.complex128)
    used = np.empty(n, dtype=np.int64)
    tails = np.empty(n)
    inv_delta = 1.0 / delta
    kmax = fa.size
    for i in range(n):
        u = delta * z[i]
        wstar = u - (math.floor(u.real) + 0.5)
        s = np.sin(PI * wstar)
        c = s * s / (PI * PI)
        cabs = abs(c)
        # tolerance scales with the exponential type growth off the axis
        scale = math.exp(TWO_PI * abs(u.imag))
        k_tail = (64.0 * delta * delta * max(cabs, 1e-300) / (3.0 * tol * scale)) ** (1.0 / 3.0)
        k = int(max(math.ceil(2.0 * abs(u)), math.ceil(k_tail), 2.0))
        if k > kmax:
            k = kmax
        acc = 0.0 + 0.0j
        near = 0.0 + 0.0j
        for j in range(k):
            m = j + 0.5
            f0 = fa[j]
            f1 = fpa[j] * inv_delta
            w = u - m
            if abs(w) < NEAR_NODE:
                near += _sinc2_small(w) * (f0 + w * f1)
            else:
                acc += f0 / (w * w) + f1 / w
            w = u + m
            if abs(w) < NEAR_NODE:
                near += _sinc2_small(w) * (f0 - w * f1)
            else:
                acc += f0 / (w * w) - f1 / w
        out[i] = c * acc + near
        used[i] = k
        tails[i] = 64.0 * delta * delta * cabs / (3.0 * k * k * k)
    return out, used, tails


def _series_numpy(z, delta, tol, fa, fpa, chunk_elems=2_000_000):
    """Vectorised series; every point of a chunk shares the chunk's largest K."""
    z = np.asarray(z)
    is_complex = np.iscomplexobj(z)
    out = np.empty(z.shape, dtype=complex if is_complex else float)
    used = np.empty(z.shape, dtype=np.int64)
    tails = np.empty(z.shape)
    u_all = delta * z
    wstar_all = u_all - (np.floor(u_all.real) + 0.5)
    c_all = np.sin(PI * wstar_all) ** 2 / PI**2
    cabs_all = np.abs(c_all)
    scale_all = np.exp(TWO_PI * np.abs(np.imag(u_all)))
    k_all = np.maximum.reduce([
        np.ceil(2.0 * np.abs(u_all)),
        np.ceil((64.0 * delta**2 * np.maximum(cabs_all, 1e-300) / (3.0 * tol * scale_all)) ** (1 / 3)),
        np.full(z.shape, 2.0),
    ]).astype(np.int64)
    k_all = np.minimum(k_all, fa.size)
    order = np.argsort(k_all, kind="stable")
    pos = 0
    while pos < z.size:
        rows = max(1, chunk_elems // int(k_all[order[pos]]))
        while rows > 1 and int(k_all[order[min(pos + rows, z.size) - 1]]) * rows > chunk_elems:
            rows //= 2
        idx = order[pos:pos + rows]
        kk = int(k_all[idx].max())
        u = u_all[idx][:, None]
        m = (np.arange(kk) + 0.5)[None, :]
        f0 = fa[None, :kk]
        f1 = fpa[None, :kk] / delta
        part = np.zeros(idx.size, dtype=out.dtype)
        for sign in (1.0, -1.0):
            w = u - sign * m
            near = np.abs(w) < NEAR_NODE
            ws = np.where(near, 1.0, w)
            pw2 = (PI * w) ** 2
            sinc2 = (1.0 - pw2 / 6.0 + pw2**2 / 120.0 - pw2**3 / 5040.0) ** 2
            generic = c_all[idx][:, None] * (f0 / ws**2 + sign * f1 / ws)
            nearterm = sinc2 * (f0 + sign * w * f1)
            part += np.where(near, nearterm, generic).sum(axis=1)
        out[idx] = part
        used[idx] = kk
        tails[idx] = 64.0 * delta**2 * cabs_all[idx] / (3.0 * kk**3)
        pos += idx.size
    return out, used, tails


@lru_cache(maxsize=32)
def _node_cache(delta, k):
    fa, fpa = node_data(delta, k)
    fa.setflags(write=False)
    fpa.setflags(write=False)
    return fa, fpa


def minorant_series(z, delta, tol, backend=None):
    """Evaluate the interpolation series at real or complex points.

    Returns ``(values, pairs_used, tail_bounds)``.
    """
    z = np.atleast_1d(np.asarray(z))
    is_complex = np.iscomplexobj(z)
    z = z.astype(complex if is_complex else float)
    u_abs = delta * np.abs(z)
    scale = np.exp(TWO_PI * delta * np.abs(np.imag(z))) if is_complex else 1.0
    cmax = float(np.max(np.cosh(PI * delta * np.abs(np.imag(z))) ** 2 / PI**2)) if is_complex else 1 / PI**2
    kmax = series_terms_needed(delta, float(u_abs.max(initial=0.0)), cmax,
                               tol * float(np.min(scale)) if is_complex else tol)
    kmax = 1 << max(4, math.ceil(math.log2(kmax + 1)))
    fa, fpa = _node_cache(float(delta), kmax)
    backend = backend or _accel.BACKEND
    if backend == "numba":
        flat = np.ascontiguousarray(z.ravel())
        if is_complex:
            vals, used, tails = _series_complex_loop(flat, float(delta), float(tol), fa, fpa)
        else:
            vals, used, tails = _series_real_loop(flat, float(delta), float(tol), fa, fpa)
        return vals.reshape(z.shape), used.reshape(z.shape), tails.reshape(z.shape)
    return _series_numpy(z, float(delta), float(tol), fa, fpa)


# ---------------------------------------------------------------------------
# Riemann-Siegel
# ---------------------------------------------------------------------------

THETA_COEFFS = (1.0 / 48.0, 7.0 / 5760.0, 31.0 / 80640.0, 127.0 / 430080.0, 511.0 / 1216512.0)
RS_TERMS = 5  # C0 .. C4


@lru_cache(maxsize=1)
def rs_correction_polys(n_even=40):
    """Coefficients (in u = p - 1/2, ascending) of C0..C4.

    Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) = -cos(2 pi u^2 - 5 pi/8) / cos(2 pi u)
    is even and entire; its Taylor series comes from exact power series
    division carried out in 60-digit arithmetic.
    """
    with mpmath.workdps(60):
        a = 2 * mpmath.pi
        b = 5 * mpmath.pi / 8
        num = []
        for k in range(n_even):
            trig = mpmath.cos(b) if k % 2 == 0 else mpmath.sin(b)
            num.append(-((-1) ** (k // 2)) * a**k / mpmath.factorial(k) * trig)
        den = [(-1) ** k * (2 * mpmath.pi) ** (2 * k) / mpmath.factorial(2 * k) for k in range(n_even)]
        c = []
        for k in range(n_even):
            c.append(num[k] - mpmath.fsum(c[j] * den[k - j] for j in range(k)))
    psi = np.zeros(2 * n_even)
    psi[::2] = [float(v) for v in c]
    P = np.polynomial.Polynomial(psi)
    d = [P.deriv(k) if k else P for k in range(13)]
    pi2, pi4, pi6, pi8 = PI**2, PI**4, PI**6, PI**8
    polys = [
        d[0],
        -d[3] / (96 * pi2),
        d[2] / (64 * pi2) + d[6] / (18432 * pi4),
        -d[1] / (64 * pi2) - d[5] / (3840 * pi4) - d[9] / (5308416 * pi6),
        d[0] / (128 * pi2) + 19 * d[4] / (24576 * pi4) + 11 * d[8] / (5898240 * pi6)
        + d[12] / (2038431744 * pi8),
    ]
    width = max(len(p.coef) for p in polys)
    table = np.zeros((len(polys), width))
    for i, p in enumerate(polys):
        table[i, :len(p.coef)] = p.coef
    # drop coefficients that cannot matter for |u| <= 1/2
    keep = width
    while keep > 1 and np.all(np.abs(table[:, keep - 1]) * 0.5 ** (keep - 1) < 1e-20):
        keep -= 1
    out = np.ascontiguousarray(table[:, :keep])
    out.setflags(write=False)
    return out


@njit
def theta_asymptotic(t):
    t2 = t * t
    s = (0.5 * t * math.log(t / TWO_PI) - 0.5 * t - PI / 8.0
         + (1.0 / 48.0) / t + (7.0 / 5760.0) / (t * t2) + (31.0 / 80640.0) / (t * t2 * t2)
         + (127.0 / 430080.0) / (t * t2 * t2 * t2) + (511.0 / 1216512.0) / (t * t2 * t2 * t2 * t2))
    return s


@njit
def _rs_z_loop(t, polys, logn, rsqrtn):
    n = t.size
    out = np.empty(n)
    nterms = polys.shape[0]
    deg = polys.shape[1]
    for i in range(n):
        tt = t[i]
        a = tt / TWO_PI
        sa = math.sqrt(a)
        N = int(sa)
        p = sa - N
        th = theta_asymptotic(tt)
        acc = 0.0
        for k in range(N):
            acc += rsqrtn[k] * math.cos(th - tt * logn[k])
        u = p - 0.5
        rem = 0.0
        pw = 1.0
        inv_sqrt_a = 1.0 / sa
        for j in range(nterms):
            v = 0.0
            for q in range(deg - 1, -1, -1):
                v = v * u + polys[j, q]
            rem += v * pw
            pw *= inv_sqrt_a
        sign = 1.0 if (N - 1) % 2 == 0 else -1.0
        out[i] = 2.0 * acc + sign * rem / math.sqrt(sa)
    return out


def _rs_z_numpy(t, polys, logn, rsqrtn, chunk_elems=2_000_000):
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    a = t / TWO_PI
    sa = np.sqrt(a)
    N = sa.astype(np.int64)
    p = sa - N
    t2 = t * t
    th = (0.5 * t * np.log(a) - 0.5 * t - PI / 8 + THETA_COEFFS[0] / t + THETA_COEFFS[1] / (t * t2)
          + THETA_COEFFS[2] / (t * t2**2) + THETA_COEFFS[3] / (t * t2**3) + THETA_COEFFS[4] / (t * t2**4))
    nmax = int(N.max(initial=1))
    rows = max(1, chunk_elems // max(nmax, 1))
    for start in range(0, t.size, rows):
        sl = slice(start, start + rows)
        kk = int(N[sl].max(initial=1))
        ph = th[sl, None] - t[sl, None] * logn[None, :kk]
        mask = np.arange(kk)[None, :] < N[sl, None]
        out[sl] = 2.0 * np.sum(np.where(mask, rsqrtn[None, :kk] * np.cos(ph), 0.0), axis=1)
    u = p - 0.5
    rem = np.zeros_like(t)
    pw = np.ones_like(t)
    for j in range(polys.shape[0]):
        rem += np.polynomial.polynomial.polyval(u, polys[j]) * pw
        pw = pw / sa
    sign = np.where((N - 1) % 2 == 0, 1.0, -1.0)
    return out + sign * rem / np.sqrt(sa)


@lru_cache(maxsize=8)
def _dirichlet_tables(nmax):
    n = np.arange(1, nmax + 1, dtype=float)
    logn, rsqrtn = np.log(n), 1.0 / np.sqrt(n)
    logn.setflags(write=False)
    rsqrtn.setflags(write=False)
    return logn, rsqrtn


def rs_z(t, backend=None):
    """Riemann-Siegel Z(t) for t > 0 with corrections C0..C4 (no error check)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    nmax = int(math.sqrt(float(t.max()) / TWO_PI)) + 2
    nmax = 1 << max(4, math.ceil(math.log2(nmax)))
    logn, rsqrtn = _dirichlet_tables(nmax)
    polys = rs_correction_polys()
    backend = backend or _accel.BACKEND
    flat = np.ascontiguousarray(t.ravel())
    if backend == "numba":
        return _rs_z_loop(flat, polys, logn, rsqrtn).reshape(t.shape)
    return _rs_z_numpy(flat, polys, logn, rsqrtn).reshape(t.shape)
