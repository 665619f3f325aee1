"""The conditional upper bound for log|zeta(1/2 + it)| and its checks.

From the functional equation and the product over zeros (all on the critical
line),

    log|zeta(1/2 + it)| = P(t) - (1/2) sum_gamma f(t - gamma),

where P(t) collects log|zeta(5/2 - it)|, the gamma factors, the power of pi
and the polynomial factors.  Replacing f by its minorant g and evaluating the
zero sum of g through the explicit formula gives a bound with no unknown
constants (``certified`` mode).
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields

import numpy as np
from scipy.special import loggamma

from .arithmetic import MangoldtTable, prime_sum, required_limit, sieve_mangoldt
from .errors import DomainError, TermError, ZetaBoundError
from .explicit_formula import density_tail, right_side
from .extremal import ExtremalParams, f
from .zeros import ZeroList, zeros_window
from .zetafn import hardy_Z, log_abs_zeta_right, rs_error_estimate, zeta_critical

PI = math.pi
NEAR_ZERO = 1e-3


@dataclass(frozen=True)
class BoundReport:
    t: float
    delta: float
    bound_certified: float
    bound_asymptotic: float
    log_abs_zeta_actual: float
    slack: float
    envelope: float

    @classmethod
    def header(cls):
        return [fl.name for fl in fields(cls)]

    def to_dict(self):
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: float(d[k]) for k in cls.header()})

    def to_csv_row(self, digits: int | None = 12) -> str:
        fmt = (lambda v: f"{v:.{digits}g}") if digits else repr
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([fmt(float(getattr(self, k))) for k in self.header()])
        return buf.getvalue()


def exact_prefactor(t: float) -> float:
    """P(t): everything in log|zeta(1/2 + it)| except -(1/2) sum f(t - gamma)."""
    t = float(t)
    if abs(t) < 1:
        raise DomainError("exact_prefactor needs |t| >= 1")
    at = abs(t)
    val = (log_abs_zeta_right(2.5, at)
           + loggamma(1.25 - 0.5j * at).real - loggamma(0.25 + 0.5j * at).real
           - math.log(PI)
           + math.log(abs(complex(2.5, -at) * complex(1.5, -at)))
           - math.log(abs(complex(0.5, at) * complex(-0.5, at))))
    return float(val)


def hadamard_check(t: float, zl: ZeroList, G: float):
    """(residual, budget) of P(t) - (1/2) sum_window f(t - gamma) against log|Z(t)|."""
    t = float(t)
    window = zeros_window(zl, t, G)
    dist = np.min(np.abs(window - t)) if window.size else math.inf
    if dist < NEAR_ZERO:
        raise DomainError(f"t = {t} lies within {NEAR_ZERO} of an ordinate")
    zsum = math.fsum(f(t - window).tolist()) if window.size else 0.0
    z = abs(hardy_Z(t))
    resid = exact_prefactor(t) - 0.5 * zsum - math.log(z)
    zeta_err = 1e-14 if abs(t) < 30 else float(rs_error_estimate(abs(t)))
    budget = 0.5 * density_tail(t, G, 4.0) + zeta_err / z + 1e-10
    return resid, budget


def delta_rule(t: float | None = None, *, log_t: float | None = None, clamp: bool = True) -> float:
    """Delta with pi Delta = log log t - 3 log log log t, clamped below at pi Delta = 1.

    Every float t gives a rule value below 1 (log t <= 709), so ``log_t`` is the
    way to reach the unclamped regime.  ``clamp=False`` returns the raw rule.
    """
    if log_t is None:
        if t is None:
            raise DomainError("delta_rule needs t or log_t")
        t = float(t)
        if t <= math.e:
            raise DomainError(f"delta_rule needs t > e, got {t}")
        log_t = math.log(t)
    elif log_t <= 1.0:
        raise DomainError(f"delta_rule needs log t > 1, got {log_t}")
    ll = math.log(log_t)
    lll = math.log(ll) if ll > 0 else -math.inf
    rule = ll - 3.0 * lll
    return (max(1.0, rule) if clamp else rule) / PI


def leading_coefficient(delta: float) -> float:
    """(1/2 pi Delta) log(2 / (1 + e^{-4 pi Delta})), the coefficient of log t."""
    return math.log(2.0 / (1.0 + math.exp(-4 * PI * delta))) / (2 * PI * delta)


def main_bound(t: float, delta: float, zl: ZeroList | None = None, table: MangoldtTable | None = None,
               mode: str = "certified") -> float:
    """Upper bound for log|zeta(1/2 + it)|.

    ``asymptotic`` drops every O-term; ``certified`` is exact_prefactor(t) minus
    half of the explicit-formula evaluation of sum g(t - gamma), which needs no
    zeros at all (``zl`` is accepted for symmetry and ignored).
    """
    params = ExtremalParams(delta)
    if table is None:
        table = sieve_mangoldt(max(2, required_limit(params)))
    if mode == "asymptotic":
        return math.log(abs(t)) * leading_coefficient(delta) + prime_sum(params, t, table)
    if mode != "certified":
        raise DomainError(f"unknown mode {mode!r}")
    return exact_prefactor(t) - 0.5 * right_side(params, t, table)


def theorem_envelope(t: float) -> float:
    """(log 2 / 2) log t / log log t."""
    t = float(t)
    if t <= math.e:
        raise DomainError(f"envelope needs t > e, got {t}")
    lt = math.log(t)
    return 0.5 * math.log(2.0) * lt / math.log(lt)


def secondary_term(t: float) -> float:
    """log t log log log t / (log log t)^2, the shape of the next-order correction."""
    lt = math.log(t)
    ll = math.log(lt)
    return lt * math.log(ll) / (ll * ll)


@dataclass
class BoundConfig:
    delta: float | None = None
    table: MangoldtTable | None = None
    zeta_tol: float = 1e-5


def compare(t: float, config: BoundConfig | None = None) -> BoundReport:
    config = config or BoundConfig()
    t = float(t)
    stage = "delta"
    try:
        delta = config.delta if config.delta is not None else delta_rule(t)
        params = ExtremalParams(delta)
        table = config.table
        if table is None or table.limit < math.ceil(params.prime_cutoff):
            table = sieve_mangoldt(max(2, required_limit(params)))
        stage = "bound_certified"
        cert = main_bound(t, delta, table=table, mode="certified")
        stage = "bound_asymptotic"
        asym = main_bound(t, delta, table=table, mode="asymptotic")
        stage = "log_abs_zeta_actual"
        val = zeta_critical(t, tol=config.zeta_tol).value
        actual = math.log(abs(val)) if val != 0 else -math.inf
        stage = "envelope"
        env = theorem_envelope(abs(t)) if abs(t) > math.e else math.nan
    except ZetaBoundError as exc:
        raise TermError(stage, exc) from exc
    return BoundReport(t, delta, cert, asym, actual, cert - actual, env)
