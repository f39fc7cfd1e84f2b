"""Critical-line zeros via the Hardy Z function, plus zero-table ingestion.

Z(t) = exp(i theta(t)) zeta(1/2 + it) is real for real t and changes sign
at each critical-line zero.  zeta on the critical line is evaluated through
the alternating Dirichlet eta series accelerated with Borwein's
Chebyshev-coefficient scheme; theta comes from the log-Gamma function.
The evaluator is desk-scale: accuracy is guaranteed only up to t ~ 250,
which covers the first 100 zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, pi

import numpy as np
from scipy.special import loggamma

from .errors import CapacityError, InputError

MAX_COMPUTED_ZEROS = 100
SCAN_STEP = 0.05
BISECTION_TOL = 1e-8
_SCAN_START = 3.0  # Z has no zeros below the first one near t = 14.13


def siegel_theta(t) -> np.ndarray:
    """Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi."""
    t = np.asarray(t, dtype=float)
    return loggamma(0.25 + 0.5j * t).imag - 0.5 * t * np.log(pi)


def _borwein_coefficients(n: int) -> np.ndarray:
    # ratios (d_k - d_n) / d_n with d_k = n * sum_{j<=k} (n+j-1)! 4^j / ((n-j)! (2j)!),
    # accumulated exactly in rational arithmetic
    d = []
    acc = Fraction(0)
    for j in range(n + 1):
        acc += Fraction(factorial(n + j - 1) * 4**j, factorial(n - j) * factorial(2 * j))
        d.append(n * acc)
    dn = d[n]
    return np.array([float((d[k] - dn) / dn) for k in range(n)], dtype=float)


@lru_cache(maxsize=8)
def _eta_terms(n: int) -> np.ndarray:
    coeffs = _borwein_coefficients(n)
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return -signs * coeffs  # term k multiplies (k+1)^(-s)


def zeta_half_line(t) -> np.ndarray:
    """zeta(1/2 + it) for real t, vectorized."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    # term count from Borwein's error bound, quantized for coefficient reuse
    n = int(0.9 * float(np.abs(t).max())) + 30
    n = 64 * ((n + 63) // 64)
    weights = _eta_terms(n)  # (n,)
    k = np.arange(1, n + 1, dtype=float)
    s = 0.5 + 1j * t
    # (k+0)^(-s) = exp(-s log k), shaped (t, n)
    powers = np.exp(-np.outer(s, np.log(k)))
    eta = powers @ weights
    return eta / (1.0 - 2.0 ** (1.0 - s))


def hardy_z(t) -> np.ndarray:
    """The real-valued Hardy Z function on the critical line."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return (np.exp(1j * siegel_theta(t)) * zeta_half_line(t)).real


@dataclass(frozen=True)
class ZetaZeroSet:
    """Ordered imaginary parts of critical-line zeros."""

    values: np.ndarray
    source: str  # "file" or "computed"

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.size == 0:
            raise InputError("zero set must be non-empty")
        if (arr <= 0).any():
            raise InputError("zeros must be positive")
        if (np.diff(arr) <= 0).any():
            raise InputError("zeros must be strictly increasing")

    @property
    def count(self) -> int:
        return int(np.asarray(self.values).size)


def parse_zeros(path) -> ZetaZeroSet:
    """Read an ascending one-float-per-line zero table; '#' lines are comments."""
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                v = float(stripped)
            except ValueError:
                raise InputError(f"{path}: unparsable value at line {lineno}")
            if not np.isfinite(v) or v <= 0:
                raise InputError(f"{path}: non-positive zero at line {lineno}")
            if values and v <= values[-1]:
                raise InputError(f"{path}: non-monotone zero at line {lineno}")
            values.append(v)
    if not values:
        raise InputError(f"{path}: no zeros found")
    return ZetaZeroSet(values=np.array(values), source="file")


def _bisect_zero(lo: float, hi: float, z_lo: float) -> float:
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        z_mid = float(hardy_z(mid)[0])
        if z_mid == 0.0:
            return mid
        if (z_mid < 0) == (z_lo < 0):
            lo, z_lo = mid, z_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def compute_zeros(count: int) -> ZetaZeroSet:
    """Locate the first ``count`` zeros by sign-change scan plus bisection."""
    count = int(count)
    if count < 1:
        raise InputError("zero count must be >= 1")
    if count > MAX_COMPUTED_ZEROS:
        raise CapacityError(
            f"desk-scale evaluator computes at most {MAX_COMPUTED_ZEROS} zeros; "
            "ingest a published table for more"
        )
    zeros: list[float] = []
    lo = _SCAN_START
    batch = 512
    while len(zeros) < count:
        grid = lo + SCAN_STEP * np.arange(batch + 1)
        z = hardy_z(grid)
        flips = np.nonzero(np.signbit(z[:-1]) != np.signbit(z[1:]))[0]
        for i in flips:
            zeros.append(_bisect_zero(float(grid[i]), float(grid[i + 1]), float(z[i])))
            if len(zeros) == count:
                break
        lo = float(grid[-1])
    return ZetaZeroSet(values=np.array(zeros[:count]), source="computed")
