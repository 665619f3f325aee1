"""zeta on and near the critical line, Hardy's Z, theta and the digamma factor."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli, loggamma

from . import kernels
from .errors import DomainError, PrecisionError

RS_SWITCH = 30.0
THETA_SWITCH = 10.0
DEFAULT_ZETA_TOL = 1e-5
IMAG_RESIDUE_TOL = 1e-9


@dataclass(frozen=True)
class CriticalLineValue:
    t: float
    value: complex
    method: str  # "euler_maclaurin" | "riemann_siegel"
    est_abs_err: float


def rs_theta(t):
    """Riemann-Siegel theta, arg Gamma(1/4 + it/2) - (t/2) log pi.

    Uses the asymptotic series for |t| >= 10 and the continuous branch of
    complex log-gamma below that.
    """
    t = np.asarray(t, dtype=float)
    at = np.abs(t)
    out = np.empty_like(at)
    big = at >= THETA_SWITCH
    if np.any(big):
        out[big] = _theta_series(at[big])
    small = ~big
    if np.any(small):
        ts = at[small]
        out[small] = loggamma(0.25 + 0.5j * ts).imag - 0.5 * ts * math.log(math.pi)
    out = np.sign(t) * out
    return float(out) if out.ndim == 0 else out


def _theta_series(t):
    t2 = t * t
    c = kernels.THETA_COEFFS
    return (0.5 * t * np.log(t / (2 * math.pi)) - 0.5 * t - math.pi / 8 + c[0] / t + c[1] / (t * t2)
            + c[2] / (t * t2**2) + c[3] / (t * t2**3) + c[4] / (t * t2**4))


# --- digamma ---------------------------------------------------------------

_STIRLING_B = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510)


def digamma(z):
    """Complex digamma by upward recurrence to |z| >= 10 and Re z >= 1/2, then Stirling."""
    z = np.asarray(z, dtype=complex)
    shift = np.zeros_like(z)
    w = z.copy()
    for _ in range(1000):
        small = (np.abs(w) < 10.0) | (w.real < 0.5)
        if not np.any(small):
            break
        shift = np.where(small, shift + 1.0 / np.where(small, w, 1.0), shift)
        w = np.where(small, w + 1.0, w)
    inv2 = 1.0 / (w * w)
    series = np.zeros_like(w)
    p = inv2
    for k, b in enumerate(_STIRLING_B, start=1):
        series += b / (2 * k) * p
        p = p * inv2
    out = np.log(w) - 0.5 / w - series - shift
    return complex(out) if out.ndim == 0 else out


def digamma_re(u):
    """Re psi(1/4 + iu/2), the weight of the archimedean term."""
    u = np.asarray(u, dtype=float)
    out = np.asarray(digamma(0.25 + 0.5j * u)).real
    return float(out) if out.ndim == 0 else out


def re_loggamma(z):
    out = loggamma(np.asarray(z, dtype=complex)).real
    return float(out) if np.ndim(out) == 0 else out


# --- Euler-Maclaurin -------------------------------------------------------

@lru_cache(maxsize=1)
def _bernoulli_even(k_max=14):
    b = bernoulli(2 * k_max + 2)
    return tuple(float(b[2 * k]) / math.factorial(2 * k) for k in range(1, k_max + 2))


def zeta_em(s, n_terms=None, k_terms=12):
    """zeta(s) by Euler-Maclaurin; returns ``(value, error_bound)`` arrays.

    The remainder bound is the first omitted term times |s+2K+1|/(sigma+2K+1),
    valid for sigma > -(2K+1).
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    sigma = s.real
    if np.any(np.abs(s - 1) < 1e-12):
        raise DomainError("zeta has a pole at s = 1")
    if n_terms is None:
        n_terms = int(np.max(np.abs(s.imag))) // 3 + 15
    N = n_terms
    n = np.arange(1, N, dtype=float)
    logn = np.log(n)
    head = np.exp(-s[:, None] * logn[None, :]).sum(axis=1)
    logN = math.log(N)
    NmS = np.exp(-s * logN)
    total = head + N * NmS / (s - 1) + 0.5 * NmS
    coeffs = _bernoulli_even(k_terms)
    poch = s.copy()  # s (s+1) ... (s+2k-2)
    power = NmS / N  # N^{-s-1}
    for k in range(1, k_terms + 1):
        total = total + coeffs[k - 1] * poch * power
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        power = power / (N * N)
    nxt = np.abs(coeffs[k_terms] * poch * power)
    err = nxt * np.abs(s + 2 * k_terms + 1) / (sigma + 2 * k_terms + 1)
    err = err + 1e-16 * N
    return total, err


def zeta_critical(t: float, tol: float = DEFAULT_ZETA_TOL, switch: float = RS_SWITCH) -> CriticalLineValue:
    """zeta(1/2 + it) with an error estimate."""
    t = float(t)
    at = abs(t)
    if at < switch:
        val, err = zeta_em(0.5 + 1j * at)
        value, est, method = complex(val[0]), float(err[0]), "euler_maclaurin"
    else:
        z = float(kernels.rs_z(np.array([at]))[0])
        value = z * complex(math.cos(rs_theta(at)), -math.sin(rs_theta(at)))
        est = rs_error_estimate(at)
        method = "riemann_siegel"
    if est > tol:
        raise PrecisionError(
            f"zeta(1/2+{t}i): achievable error {est:.2e} exceeds requested {tol:.2e}", achievable=est)
    if t < 0:
        value = value.conjugate()
    return CriticalLineValue(t, value, method, est)


def rs_error_estimate(t):
    """Empirical envelope of the C0..C4 truncation plus phase rounding."""
    t = np.asarray(t, dtype=float)
    a = t / (2 * math.pi)
    return 1e-4 * a ** -2.75 + 4e-16 * t * np.log(t) * np.sqrt(np.sqrt(a))


def hardy_Z(t, switch: float = RS_SWITCH):
    """Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t; accepts arrays."""
    t = np.asarray(t, dtype=float)
    at = np.abs(np.atleast_1d(t))
    out = np.empty_like(at)
    low = at < switch
    if np.any(low):
        val, _ = zeta_em(0.5 + 1j * at[low])
        rot = np.exp(1j * rs_theta(at[low])) * val
        resid = np.max(np.abs(rot.imag))
        if resid > IMAG_RESIDUE_TOL:
            raise PrecisionError(f"Z(t) imaginary residue {resid:.2e} too large", achievable=resid)
        out[low] = rot.real
    if np.any(~low):
        out[~low] = kernels.rs_z(at[~low])
    out = out.reshape(np.shape(t)) if t.ndim else out
    return float(out[0]) if t.ndim == 0 else out


def log_abs_zeta_right(sigma: float, t: float) -> float:
    """log|zeta(sigma - it)| for sigma >= 2."""
    if sigma < 2:
        raise DomainError(f"sigma must be >= 2, got {sigma}")
    val, err = zeta_em(complex(sigma, -t))
    v = complex(val[0])
    if float(err[0]) > 1e-10 * abs(v):
        raise PrecisionError("Euler-Maclaurin remainder too large", achievable=float(err[0]))
    return math.log(abs(v))
