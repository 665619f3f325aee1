"""Ordinates of nontrivial zeros: sign changes of Z, file import/export, windows."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CoverageError, DomainError, ZeroFileError
from .zetafn import hardy_Z, rs_theta

log = logging.getLogger(__name__)

BLOCK = 50.0
MAX_REFINE = 2
POLISH_BELOW = 100.0  # bisect on the Euler-Maclaurin route here; RS error shifts roots by ~1e-6


@dataclass(frozen=True, eq=False)
class ZeroList:
    ordinates: np.ndarray
    height_covered: float
    source: str  # "computed" | "imported"

    def __post_init__(self):
        g = np.asarray(self.ordinates, dtype=float)
        if g.ndim != 1:
            raise DomainError("ordinates must be one-dimensional")
        if g.size and (g[0] <= 0 or np.any(np.diff(g) <= 0)):
            raise DomainError("ordinates must be positive and strictly increasing")
        if g.size and g[-1] > self.height_covered:
            raise DomainError("ordinate above height_covered")
        if self.source not in ("computed", "imported"):
            raise DomainError(f"unknown source {self.source!r}")
        g.setflags(write=False)
        object.__setattr__(self, "ordinates", g)

    def __len__(self):
        return int(self.ordinates.size)

    def count_below(self, T: float) -> int:
        return int(np.searchsorted(self.ordinates, T, side="right"))


def smooth_count(T):
    """theta(T)/pi + 1, the main term of the zero counting function."""
    return rs_theta(T) / math.pi + 1.0


def _bisect_brackets(lo, hi, zlo, tol):
    lo = lo.copy()
    hi = hi.copy()
    slo = np.sign(zlo)
    while lo.size:
        width = hi - lo
        if np.max(width) <= tol:
            break
        mid = 0.5 * (lo + hi)
        zm = hardy_Z(mid, switch=POLISH_BELOW)
        left = np.sign(zm) == slo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _brackets(t, z):
    """Sign-change brackets of sampled Z, plus any revealed by dips of |Z|."""
    s = np.sign(z)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    lo, hi, zlo = [t[idx]], [t[idx + 1]], [z[idx]]
    # interior local minima of |Z| inside a same-sign run may hide a close pair
    a = np.abs(z)
    mid = np.arange(1, z.size - 1)
    dip = mid[(a[mid] < a[mid - 1]) & (a[mid] <= a[mid + 1])
              & (s[mid - 1] == s[mid]) & (s[mid] == s[mid + 1])]
    if dip.size:
        sub = 32
        frac = np.linspace(0.0, 1.0, sub + 1)
        tt = t[dip - 1][:, None] + (t[dip + 1] - t[dip - 1])[:, None] * frac[None, :]
        zz = hardy_Z(tt.ravel()).reshape(tt.shape)
        ss = np.sign(zz)
        r, c = np.nonzero(ss[:, :-1] * ss[:, 1:] < 0)
        if r.size:
            lo.append(tt[r, c])
            hi.append(tt[r, c + 1])
            zlo.append(zz[r, c])
    lo, hi, zlo = np.concatenate(lo), np.concatenate(hi), np.concatenate(zlo)
    order = np.argsort(lo)
    return lo[order], hi[order], zlo[order]


def _zeros_on(a, b, step, tol):
    n = max(2, int(math.ceil((b - a) / step)) + 1)
    t = np.linspace(a, b, n)
    z = hardy_Z(t)
    lo, hi, zlo = _brackets(t, z)
    if lo.size == 0:
        return lo
    return np.unique(_bisect_brackets(lo, hi, zlo, tol))


def find_zeros(t_max: float, tol: float = 1e-9, block: float = BLOCK) -> ZeroList:
    """All sign changes of Z on (0, t_max], bisected to ``tol``.

    The grid step is 0.5/log(t_max).  After each block the running count is
    compared with theta(T)/pi + 1; a mismatch beyond 2 triggers up to two
    refinements of that block before giving up.
    """
    t_max = float(t_max)
    if t_max < 15:
        raise DomainError(f"t_max must be >= 15, got {t_max}")
    step0 = 0.5 / math.log(t_max)
    edges = np.append(np.arange(0.0, t_max, block), t_max)
    found = []
    count = 0
    for a, b in zip(edges[:-1], edges[1:]):
        step = step0
        for attempt in range(MAX_REFINE + 1):
            zs = _zeros_on(a, b, step, tol)
            # count check at the block end; b itself is generically not a zero
            mismatch = count + zs.size - smooth_count(b)
            if abs(mismatch) <= 2:
                break
            log.info("zero count off by %.2f on [%g, %g]; refining grid", mismatch, a, b)
            step /= 4.0
        else:
            raise CoverageError(
                f"zero count on [{a:g}, {b:g}] disagrees with theta(T)/pi + 1 by {mismatch:.2f} "
                f"after {MAX_REFINE} refinements", required=b)
        found.append(zs)
        count += zs.size
    g = np.concatenate(found) if found else np.empty(0)
    g = g[g > 0]
    return ZeroList(g, t_max, "computed")


def load_zeros(path) -> ZeroList:
    """Read one ordinate per line (blank lines ignored)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ZeroFileError(f"cannot read {path}: {exc.strerror}", line=0) from exc
    vals = []
    prev = -math.inf
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s:
            continue
        try:
            v = float(s)
        except ValueError:
            raise ZeroFileError(f"not a number: {s[:40]!r}", line=lineno) from None
        if not math.isfinite(v) or v <= 0:
            raise ZeroFileError(f"ordinate must be positive and finite: {s!r}", line=lineno)
        if v <= prev:
            raise ZeroFileError(f"ordinates not ascending ({v} after {prev})", line=lineno)
        vals.append(v)
        prev = v
    if not vals:
        raise ZeroFileError(f"{path} contains no ordinates", line=0)
    return ZeroList(np.array(vals), vals[-1], "imported")


def save_zeros(zl: ZeroList, path) -> None:
    with open(path, "w") as fh:
        for g in zl.ordinates:
            fh.write(f"{g:.12f}\n")


def zeros_window(zl: ZeroList, t: float, G: float) -> np.ndarray:
    """Signed ordinates +-gamma with |+-gamma - t| <= G, ascending."""
    if G < 0:
        raise DomainError("window half-width must be non-negative")
    need = abs(t) + G
    if need > zl.height_covered * (1 + 1e-12):
        raise CoverageError(f"window needs zeros up to height {need:g}; list covers "
                            f"{zl.height_covered:g}", required=need)
    g = zl.ordinates
    pos = g[(g >= t - G) & (g <= t + G)]
    neg = -g[(g >= -t - G) & (g <= -t + G)]
    return np.sort(np.concatenate([neg, pos]))
