"""Bessel-J kernel: values, derivative, and positive zeros of real order.

Values and derivatives are delegated to scipy's AMOS-backed routines; the
zero tables are built here (McMahon estimates refined by safeguarded
Newton, with a sign-scan fallback for the low-index zone where McMahon's
ordering is unreliable).  Tables are immutable once built and cached, so
everything in this module is safe for concurrent use.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.special import jv, jvp

from .errors import ConvergenceError, DomainError
from .series import mcmahon_estimate

NU_MAX = 200.0

# test hook: selftest fault injection adds this offset to freshly built
# tables (bypassing the cache); must stay 0.0 in normal operation
_test_zero_perturbation = 0.0

_table_lock = threading.Lock()
_table_cache: dict[float, np.ndarray] = {}


def _validate_order(nu: float) -> float:
    nu = float(nu)
    if not np.isfinite(nu) or nu < 0.0:
        raise DomainError(f"Bessel order must satisfy nu >= 0, got {nu}")
    if nu > NU_MAX:
        raise DomainError(f"Bessel order {nu} exceeds supported range nu <= {NU_MAX}")
    return nu


def bessel_j(nu: float, x):
    """J_nu(x) for real order 0 <= nu <= 200 and x >= 0 (scalar or array)."""
    nu = _validate_order(nu)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("bessel_j requires finite x")
    if np.any(x < 0.0):
        raise DomainError("bessel_j requires x >= 0")
    out = jv(nu, x)
    return float(out) if out.ndim == 0 else out


def bessel_j_prime(nu: float, x):
    """d/dx J_nu(x) on the same domain as :func:`bessel_j`."""
    nu = _validate_order(nu)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x < 0.0):
        raise DomainError("bessel_j_prime requires finite x >= 0")
    out = jvp(nu, x)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class BesselZeroTable:
    """Ordered positive zeros j_{nu,1} < j_{nu,2} < ... of J_nu."""

    order: float
    zeros: np.ndarray = field(repr=False)

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=float)
        z.setflags(write=False)
        object.__setattr__(self, "zeros", z)
        if z.size and (np.any(z <= 0.0) or np.any(np.diff(z) <= 0.0)):
            raise DomainError("zero table must be positive and strictly increasing")

    @property
    def count(self) -> int:
        return int(self.zeros.size)

    def __getitem__(self, l: int) -> float:
        # 1-based index, matching j_{nu,l}
        if not 1 <= l <= self.count:
            raise DomainError(f"zero index l={l} outside table of {self.count}")
        return float(self.zeros[l - 1])


def _newton_refine_vector(nu: float, x, lo, hi):
    """Vectorized Newton on J_nu, each iterate clipped to its bracket."""
    x = np.array(x, dtype=float)
    for _ in range(60):
        f = jv(nu, x)
        fp = jvp(nu, x)
        step = np.where(fp != 0.0, f / np.where(fp == 0.0, 1.0, fp), 0.0)
        xn = np.clip(x - step, lo, hi)
        done = np.abs(xn - x) <= 1e-15 * np.abs(xn)
        x = xn
        if np.all(done):
            break
    return x


def _newton_refine_scalar(nu: float, lo: float, hi: float) -> float:
    """Safeguarded Newton inside a sign-changing bracket [lo, hi]."""
    flo, fhi = jv(nu, lo), jv(nu, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise ConvergenceError(
            f"no sign change of J_{nu} in bracket [{lo}, {hi}]"
        )
    x = 0.5 * (lo + hi)
    for _ in range(100):
        f = jv(nu, x)
        if f == 0.0:
            return float(x)
        if np.sign(f) == np.sign(flo):
            lo = x
        else:
            hi = x
        fp = jvp(nu, x)
        xn = x - f / fp if fp != 0.0 else 0.5 * (lo + hi)
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-15 * abs(xn):
            return float(xn)
        x = xn
    raise ConvergenceError(f"Newton failed to converge for J_{nu} zero")


def _zeros_by_scan(nu: float, count: int) -> np.ndarray:
    """First `count` zeros located by a unit-step sign scan from x = nu.

    J_nu has no positive zeros below nu and consecutive zeros are separated
    by more than 2.9, so a step of 1 cannot skip a zero.
    """
    zeros = []
    x = max(0.5, nu)
    fx = jv(nu, x)
    while fx == 0.0:  # pathological grid point
        x *= 1.0 + 1e-12
        fx = jv(nu, x)
    guard = 0
    while len(zeros) < count:
        y = x + 1.0
        fy = jv(nu, y)
        if fy == 0.0 or np.sign(fy) != np.sign(fx):
            zeros.append(_newton_refine_scalar(nu, x, y))
        x, fx = y, fy
        guard += 1
        if guard > 100 * count + 10_000:
            raise ConvergenceError(
                f"sign scan found only {len(zeros)}/{count} zeros of J_{nu}"
            )
    return np.array(zeros)


def _build_zeros(nu: float, count: int) -> np.ndarray:
    # low-index zone where McMahon ordering is unreliable: scan it
    n_scan = min(count, int(np.ceil(nu)) + 4)
    low = _zeros_by_scan(nu, n_scan)
    if n_scan >= count:
        return low[:count]

    l = np.arange(n_scan + 1, count + 1, dtype=float)
    guess = mcmahon_estimate(nu, l)
    lo = guess - 0.5 * np.pi
    hi = guess + 0.5 * np.pi
    high = _newton_refine_vector(nu, guess, lo, hi)

    zeros = np.concatenate([low, high])
    resid = np.abs(jv(nu, zeros))
    scale = np.maximum(1.0, np.abs(jvp(nu, zeros)))
    bad = np.nonzero(resid > 1e-11 * scale)[0]
    for i in bad:  # rare: redo with a bisection-safeguarded bracket
        b = mcmahon_estimate(nu, float(i + 1))
        zeros[i] = _newton_refine_scalar(nu, b - 0.5 * np.pi, b + 0.5 * np.pi)

    if np.any(np.diff(zeros) <= 0.0):
        raise ConvergenceError(
            f"zero table for nu={nu} is not strictly increasing; "
            "refinement did not converge to the labelled zeros"
        )
    return zeros


def bessel_zeros(nu: float, count: int) -> BesselZeroTable:
    """Table of the first `count` positive zeros of J_nu."""
    nu = _validate_order(nu)
    count = int(count)
    if count < 1:
        raise DomainError("bessel_zeros requires count >= 1")
    if _test_zero_perturbation != 0.0:
        z = _build_zeros(nu, count) + _test_zero_perturbation
        return BesselZeroTable(order=nu, zeros=z)
    with _table_lock:
        cached = _table_cache.get(nu)
    if cached is None or cached.size < count:
        z = _build_zeros(nu, count)
        z.setflags(write=False)
        with _table_lock:
            cached = _table_cache.get(nu)
            if cached is None or cached.size < z.size:
                _table_cache[nu] = z
                cached = z
    return BesselZeroTable(order=nu, zeros=cached[:count])


def bessel_zero(nu: float, l: int) -> float:
    """The l-th positive zero j_{nu,l}, relative accuracy ~1e-13."""
    nu = _validate_order(nu)
    l = int(l)
    if l < 1:
        raise DomainError("bessel_zero requires l >= 1")
    if l <= int(np.ceil(nu)) + 4:
        return bessel_zeros(nu, l)[l]
    b = float(mcmahon_estimate(nu, float(l)))
    x = float(_newton_refine_vector(nu, b, b - 0.5 * np.pi, b + 0.5 * np.pi))
    if abs(jv(nu, x)) > 1e-11 * max(1.0, abs(jvp(nu, x))):
        raise ConvergenceError(f"Newton did not converge for j_({nu},{l})")
    return x
