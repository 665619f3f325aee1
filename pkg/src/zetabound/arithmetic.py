"""von Mangoldt values and the prime sum of the bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CoverageError, DomainError
from .extremal import ExtremalParams, g_hat_array


@dataclass(frozen=True, eq=False)
class MangoldtTable:
    """Prime powers n <= limit with Lambda(n) = log p, ascending in n."""

    limit: int
    n: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.n.size and (self.n[-1] > self.limit or np.any(np.diff(self.n) <= 0)):
            raise DomainError("table entries must be ascending and <= limit")

    @property
    def entries(self):
        return list(zip(self.n.tolist(), self.values.tolist()))

    def __len__(self):
        return int(self.n.size)

    def lookup(self, k: int) -> float:
        i = np.searchsorted(self.n, k)
        if i < self.n.size and self.n[i] == k:
            return float(self.values[i])
        return 0.0


def primes_upto(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0]


def sieve_mangoldt(N: int) -> MangoldtTable:
    N = int(N)
    if N < 2:
        raise DomainError(f"sieve limit must be >= 2, got {N}")
    ns, vals = [], []
    for p in primes_upto(N).tolist():
        lp = math.log(p)
        q = p
        while q <= N:
            ns.append(q)
            vals.append(lp)
            q *= p
    order = np.argsort(ns, kind="stable")
    n = np.asarray(ns, dtype=np.int64)[order]
    v = np.asarray(vals, dtype=float)[order]
    n.setflags(write=False)
    v.setflags(write=False)
    return MangoldtTable(N, n, v)


def required_limit(params: ExtremalParams) -> int:
    """Sieve limit that covers every n with g_hat(log n / 2 pi) possibly non-zero."""
    return int(math.ceil(params.prime_cutoff)) + 1


@lru_cache(maxsize=16)
def _weights(params: ExtremalParams, table: MangoldtTable):
    """(log n, Lambda(n) n^{-1/2} g_hat(log n / 2 pi) / 2 pi) for n below the cutoff."""
    keep = table.n < params.prime_cutoff
    n = table.n[keep].astype(float)
    logn = np.log(n)
    gh = g_hat_array(params, logn / (2 * math.pi))
    w = table.values[keep] / np.sqrt(n) * gh / (2 * math.pi)
    return logn, w


def prime_sum(params: ExtremalParams, t: float, table: MangoldtTable) -> float:
    """(1/2 pi) Re sum Lambda(n) n^{-1/2 - it} g_hat(log n / 2 pi)."""
    need = required_limit(params)
    if table.limit < math.ceil(params.prime_cutoff):
        raise CoverageError(f"Mangoldt table to {table.limit} is too short; need limit >= {need}",
                            required=need)
    logn, w = _weights(params, table)
    if logn.size == 0:
        return 0.0
    return float(np.dot(w, np.cos(t * logn)))


def prime_sum_abs(params: ExtremalParams, table: MangoldtTable) -> float:
    """(1/2 pi) sum Lambda(n) n^{-1/2} |g_hat(log n / 2 pi)|, a bound over all t."""
    _, w = _weights(params, table)
    return float(np.abs(w).sum())


def chebyshev_psi(table: MangoldtTable, x: float) -> float:
    return float(table.values[table.n <= x].sum())
