"""Quadrature, root bracketing and certified series summation.

Integrands are expected to be vectorised: they receive a 1-D float array and
return an array of the same shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, QuadratureError

# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15), non-negative half.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-point node set on [-1, 1] and matching weights.
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[1:7:2] = _WG[:3]
_GWEIGHTS[7] = _WG[3]
_GWEIGHTS[9:15:2] = _WG[2::-1]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 50

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be at least 1")

    def target(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be non-negative")
        if self.evaluations < 1:
            raise ValueError("evaluations must be positive")


def _gk15_batch(f, a, b):
    """Apply the 7/15 pair to each interval [a[i], b[i]]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise QuadratureError("integrand returned a non-finite value")
    kron = fx @ _KWEIGHTS
    gauss = fx @ _GWEIGHTS
    mean = 0.5 * kron
    resabs = np.abs(fx) @ _KWEIGHTS
    resasc = np.abs(fx - mean[:, None]) @ _KWEIGHTS
    err = np.abs((kron - gauss) * half)
    resabs = resabs * np.abs(half)
    resasc = resasc * np.abs(half)
    scaled = np.where(
        (resasc != 0) & (err != 0),
        resasc * np.minimum(1.0, (200.0 * err / np.where(resasc == 0, 1, resasc)) ** 1.5),
        err,
    )
    scaled = np.maximum(scaled, 50 * _EPS * resabs)
    return kron * half, scaled


def integrate(f: Callable, a: float, b: float, tol: Tolerance = DEFAULT_TOL,
              points=None) -> QuadResult:
    """Globally adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    Endpoints are never evaluated, so integrable endpoint singularities are
    fine.  ``points`` are optional interior breakpoints.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got [{a}, {b}]")
    edges = [a]
    if points is not None:
        edges.extend(sorted(p for p in points if a < p < b))
    edges.append(b)
    lo = np.array(edges[:-1], dtype=float)
    hi = np.array(edges[1:], dtype=float)
    depth = np.zeros(lo.size, dtype=int)
    val, err = _gk15_batch(f, lo, hi)
    evals = 15 * lo.size

    while True:
        total = float(np.sum(val))
        total_err = float(np.sum(err))
        target = tol.target(total)
        if total_err <= target:
            return QuadResult(total, total_err, evals)
        # bisect the worst intervals until what is left fits in half the target
        order = np.argsort(-err)
        order = order[depth[order] < tol.max_depth]
        if order.size == 0:
            raise QuadratureError(
                f"no convergence on [{a}, {b}] within depth {tol.max_depth}: "
                f"error estimate {total_err:.3g} > {target:.3g}",
                partial=total, error_estimate=total_err)
        remaining = total_err - np.cumsum(err[order])
        k = int(np.searchsorted(-remaining, -0.5 * target)) + 1
        bad = np.zeros(lo.size, dtype=bool)
        bad[order[:k]] = True
        blo, bhi, bdep = lo[bad], hi[bad], depth[bad] + 1
        bmid = 0.5 * (blo + bhi)
        nlo = np.concatenate([blo, bmid])
        nhi = np.concatenate([bmid, bhi])
        nval, nerr = _gk15_batch(f, nlo, nhi)
        evals += 15 * nlo.size
        keep = ~bad
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        depth = np.concatenate([depth[keep], bdep, bdep])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])


def _unpack_tail(res, where):
    if isinstance(res, tuple):
        estimate, bound = res
    else:
        estimate, bound = 0.0, res
    estimate, bound = float(estimate), float(bound)
    if not (math.isfinite(estimate) and math.isfinite(bound)) or bound < 0:
        raise DomainError(f"invalid tail envelope at {where}: ({estimate}, {bound})")
    return estimate, bound


def integrate_semi_infinite(f: Callable, tol: Tolerance = DEFAULT_TOL, tail=None,
                            period: float | None = None, start: float = 0.0,
                            max_length: float = 1e7, points=None) -> QuadResult:
    """Integrate ``f`` over ``[start, inf)``.

    The range is cut into panels (multiples of ``period`` when the integrand
    oscillates, otherwise geometrically growing panels) and summed until
    ``tail(L)`` certifies the remainder.  ``tail(L)`` returns either a bound
    on ``|int_L^inf f|`` or a pair ``(estimate, bound)`` where ``estimate`` is
    added to the result and ``bound`` limits its error.
    """
    if tail is None:
        raise DomainError("a tail envelope is required for semi-infinite integrals")
    if period is not None and not period > 0:
        raise DomainError("period must be positive")

    total = 0.0
    total_err = 0.0
    evals = 0
    left = start
    step = period if period is not None else 1.0
    panel_tol = Tolerance(tol.abs_tol / 4, tol.rel_tol / 4, tol.max_depth)
    pts = sorted(points) if points else []
    while True:
        right = left + step
        inner = [p for p in pts if left < p < right]
        res = integrate(f, left, right, panel_tol, points=inner)
        total += res.value
        total_err += res.error_estimate
        evals += res.evaluations
        left = right
        if period is None:
            step *= 2.0
        estimate, bound = _unpack_tail(tail(left), left)
        if bound <= tol.target(total) / 2:
            value = total + estimate
            return QuadResult(value, total_err + bound, evals)
        if left - start > max_length:
            raise QuadratureError(
                f"tail bound {bound:.3g} still above tolerance at L={left:.6g}",
                partial=total + estimate, error_estimate=total_err + bound)


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12,
           max_iter: int = 400) -> float:
    """Root of a continuous scalar ``f`` inside a sign-changing bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise DomainError(f"no sign change on [{lo}, {hi}]: f={flo:.3g}, {fhi:.3g}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            return mid
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise ConvergenceError("bisection did not reach the bracket tolerance", partial=0.5 * (lo + hi))


def sum_with_tail(term: Callable, tail_bound: Callable[[int], float], tol: float,
                  start: int = 1, max_terms: int = 10**8) -> float:
    """Sum ``term(n)`` for ``n >= start`` until ``tail_bound(N) <= tol``.

    ``tail_bound(N)`` must bound ``|sum_{n > N} term(n)|``.  ``term`` may be
    vectorised; it is called on integer arrays when possible.
    """
    n_stop = start
    while tail_bound(n_stop) > tol:
        n_stop = 2 * n_stop + 1
        if n_stop - start > max_terms:
            raise ConvergenceError(
                f"tail bound still {tail_bound(n_stop):.3g} after {max_terms} terms")
    lo, hi = start, n_stop
    while lo < hi:
        mid = (lo + hi) // 2
        if tail_bound(mid) <= tol:
            hi = mid
        else:
            lo = mid + 1
    n_stop = lo
    idx = np.arange(start, n_stop + 1)
    try:
        vals = np.asarray(term(idx), dtype=float)
        if vals.shape != idx.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([term(int(n)) for n in idx], dtype=float)
    return math.fsum(vals)


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_gauss(edges, n: int = 16):
    """Nodes and weights of an ``n``-point Gauss-Legendre rule on each panel."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights
