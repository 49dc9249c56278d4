"""Spectral zeta data for the free disk operator and the eta invariant.

The free determinant quotient needs f_nu(0) and f'_nu(0), where
f_nu(s) = sum_l j_{nu,l}^{-s} is the zeta function of the positive zeros
of J_nu.  f_nu(0) = -nu/2 - 1/4 in closed form; f'_nu(0) is assembled from

    f'_nu(0) = -ln(2)/2 + ((2 nu - 1)/4)(ln pi - gamma) - S_nu,
    S_nu = sum_l ln[ j_{nu,l}/(l pi) * e^{-(2 nu - 1)/(4 l)} ],

with the series summed over explicitly computed zeros plus an analytic
McMahon tail.  The boundary operator's spectral asymmetry eta(0) and the
index relations live here too, each with a numeric-continuation
counterpart used as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .flux import level_k
from .series import (
    hurwitz_zeta,
    neville_extrapolate,
    terms_for_tail_tolerance,
    zero_log_series_tail,
)
from .specfun import bessel_zeros

EULER_GAMMA = float(np.euler_gamma)

_TAIL_TOL = 1e-9

# extrapolation nodes for the numeric continuations; chosen away from the
# Hurwitz pole at s = 1 and dense enough that Neville reaches ~1e-8 at 0
_S_GRID = np.array([0.08, 0.16, 0.26, 0.38, 0.52, 0.68, 0.86, 1.06, 1.28, 1.52])
# the Bessel-zero zeta has larger high-order derivatives near 0 (they grow
# with the order), so its continuation uses a tighter cluster of nodes
_F_S_GRID = np.linspace(0.04, 0.7, 12)


@dataclass(frozen=True)
class ZetaValues:
    """f_nu(0) and f'_nu(0) with the bookkeeping behind the series."""

    order: float
    f0: float
    fprime0: float
    terms_used: int
    tail_estimate: float

    def __post_init__(self):
        if self.f0 != -0.5 * self.order - 0.25:
            raise DomainError("f0 must store the closed form -nu/2 - 1/4")
        if not self.tail_estimate <= _TAIL_TOL:
            raise ConvergenceError(
                f"tail estimate {self.tail_estimate} exceeds {_TAIL_TOL}"
            )


@dataclass(frozen=True)
class EtaData:
    """eta(0) of the boundary operator plus the APS index bookkeeping."""

    kappa: float
    k: int
    h: int
    eta0: float
    index: int

    def __post_init__(self):
        if self.eta0 != 2.0 * (self.kappa - self.k) - 1.0 - self.h:
            raise DomainError("eta0 must equal 2(kappa - k) - 1 - h")
        if self.index != self.k + 1:
            raise DomainError(
                f"APS index {self.index} != k+1 = {self.k + 1}: inconsistent"
            )


def f_zero(nu: float) -> float:
    """f_nu(0) = -nu/2 - 1/4 (closed form)."""
    if nu < 0.0:
        raise DomainError("f_zero requires nu >= 0")
    return -0.5 * nu - 0.25


def _s_series(nu: float, tol: float) -> tuple[float, int, float]:
    """S_nu by explicit zeros up to an adaptive L plus the McMahon tail."""
    L = terms_for_tail_tolerance(nu, tol)
    zeros = bessel_zeros(nu, L).zeros
    l = np.arange(1, L + 1, dtype=float)
    terms = np.log(zeros / (l * np.pi)) - (2.0 * nu - 1.0) / (4.0 * l)
    tail, bound = zero_log_series_tail(nu, L)
    # pairwise summation keeps the rounding well under the analytic bound
    estimate = bound + 1e-15 * float(np.sum(np.abs(terms)))
    if estimate > tol:
        raise ConvergenceError(
            f"S_{nu} tail estimate {estimate} exceeds tolerance {tol}"
        )
    return float(np.sum(terms) + tail), L, estimate


def f_prime_zero(nu: float, tol: float = _TAIL_TOL) -> float:
    """f'_nu(0), absolute accuracy ~tol (default 1e-9)."""
    if nu < 0.0:
        raise DomainError("f_prime_zero requires nu >= 0")
    s_nu, _, _ = _s_series(nu, tol)
    return (
        -0.5 * math.log(2.0)
        + ((2.0 * nu - 1.0) / 4.0) * (math.log(math.pi) - EULER_GAMMA)
        - s_nu
    )


def zeta_values(nu: float, tol: float = _TAIL_TOL) -> ZetaValues:
    """The (f_nu(0), f'_nu(0)) pair with terms/tail bookkeeping."""
    if nu < 0.0:
        raise DomainError("zeta_values requires nu >= 0")
    s_nu, terms_used, tail_estimate = _s_series(nu, tol)
    fprime0 = (
        -0.5 * math.log(2.0)
        + ((2.0 * nu - 1.0) / 4.0) * (math.log(math.pi) - EULER_GAMMA)
        - s_nu
    )
    return ZetaValues(
        order=float(nu),
        f0=f_zero(nu),
        fprime0=fprime0,
        terms_used=terms_used,
        tail_estimate=tail_estimate,
    )


def f_zero_numeric(nu: float, num_zeros: int = 10_000) -> float:
    """Numeric continuation of f_nu(s) to s = 0 from computed zeros.

    Each zero is paired with its McMahon estimate beta_l = (l + nu/2 - 1/4) pi;
    the paired sum converges for s > 0 and the beta part is a Hurwitz zeta
    evaluated by Euler-Maclaurin.  The pole of f at s = 1 is subtracted
    before Neville extrapolation to 0.  Must reproduce -nu/2 - 1/4.
    """
    if nu < 0.0:
        raise DomainError("f_zero_numeric requires nu >= 0")
    if num_zeros < 100:
        raise DomainError("f_zero_numeric needs at least 100 zeros")
    a = 0.5 * nu - 0.25
    L = int(num_zeros)
    zeros = bessel_zeros(nu, L).zeros
    l = np.arange(1, L + 1, dtype=float)
    beta = (l + a) * np.pi
    c = np.log(zeros / beta)
    p = (4.0 * nu * nu - 1.0) / 8.0

    values = []
    for s in _F_S_GRID:
        paired = float(np.sum(beta ** (-s) * np.expm1(-s * c)))
        tail_corr = s * p * math.pi ** (-s - 2.0) * hurwitz_zeta(s + 2.0, L + 1 + a)
        hpart = math.pi ** (-s) * hurwitz_zeta(s, 1.0 + a, minus_pole=True)
        values.append(paired + tail_corr + hpart)
    # add back the subtracted pole term pi^{-s}/(s-1) at s = 0
    return neville_extrapolate(_F_S_GRID, values, 0.0) - 1.0


def free_quotient(k: int, radius: float) -> complex:
    """ln of the free determinant ratio, Det(i dslash + P_0)_k over kappa = 0.

    Equals -2 [ f'_nu(0) - f'_0(0) + (ln R - i pi/2)(f_nu(0) - f_0(0)) ]
    with nu = |k+1|; the imaginary part is exactly -|k+1| pi / 2.
    """
    k = _validate_level(k)
    if radius <= 0.0:
        raise DomainError("free_quotient requires radius > 0")
    nu = abs(k + 1)
    if nu == 0:
        return 0.0 + 0.0j
    dfp = f_prime_zero(float(nu)) - f_prime_zero(0.0)
    df = f_zero(float(nu)) - f_zero(0.0)  # = -nu/2
    return -2.0 * (dfp + (math.log(radius) - 0.5j * math.pi) * df)


def free_quotient_series(k: int, radius: float, tol: float = 1e-10) -> complex:
    """The same quotient via the Bessel-ratio series presentation

        -|k+1| [ i pi/2 - gamma - ln(R/pi) ]
        + 2 sum_l ln[ (j_{|k+1|,l} / j_{0,l}) e^{-|k+1|/(2l)} ],

    summed directly with its own McMahon tail.  Cross-checks
    :func:`free_quotient` at ~1e-8.
    """
    k = _validate_level(k)
    if radius <= 0.0:
        raise DomainError("free_quotient_series requires radius > 0")
    nu = abs(k + 1)
    if nu == 0:
        return 0.0 + 0.0j
    L = max(
        terms_for_tail_tolerance(float(nu), 0.5 * tol),
        terms_for_tail_tolerance(0.0, 0.5 * tol),
    )
    z_nu = bessel_zeros(float(nu), L).zeros
    z_0 = bessel_zeros(0.0, L).zeros
    l = np.arange(1, L + 1, dtype=float)
    ratio_terms = np.log(z_nu / z_0) - nu / (2.0 * l)
    tail_nu, bound_nu = zero_log_series_tail(float(nu), L)
    tail_0, bound_0 = zero_log_series_tail(0.0, L)
    if bound_nu + bound_0 > tol:
        raise ConvergenceError("ratio-series tail exceeds tolerance")
    series = float(np.sum(ratio_terms)) + tail_nu - tail_0
    prefactor = -nu * (0.5j * math.pi - EULER_GAMMA - math.log(radius / math.pi))
    return prefactor + 2.0 * series


def boundary_eigenvalue(n: int, kappa: float, radius: float) -> float:
    """Eigenvalue a_n = (n - kappa)/R of the boundary operator."""
    if radius <= 0.0:
        raise DomainError("boundary_eigenvalue requires radius > 0")
    return (n - kappa) / radius


def eta_zero(kappa: float) -> EtaData:
    """eta(0) = 2(kappa - k) - 1 - h in closed form, plus the APS index.

    h = dim Ker of the boundary operator: 1 when kappa is an integer
    (exact test on the computed kappa), else 0.  The index
    kappa + [1 - h - eta(0)]/2 must come out equal to k + 1.
    """
    kappa = float(kappa)
    k = level_k(kappa)
    h = 1 if kappa.is_integer() else 0
    eta0 = 2.0 * (kappa - k) - 1.0 - h
    index_value = kappa + 0.5 * (1.0 - h - eta0)
    index = round(index_value)
    if abs(index_value - index) > 1e-9 or index != k + 1:
        raise ConvergenceError(
            f"APS index {index_value} does not reproduce k+1 = {k + 1}"
        )
    return EtaData(kappa=kappa, k=k, h=h, eta0=eta0, index=index)


def eta_zero_numeric(kappa: float, cutoff: int = 2000) -> float:
    """Numeric continuation of the eta series to s = 0.

    Eigenvalues are paired symmetrically around kappa, which turns the
    conditionally convergent series into an absolutely convergent one for
    s > 0; the remainder beyond `cutoff` pairs is a difference of Hurwitz
    zetas (poles cancel), and Neville extrapolation reaches s = 0.
    """
    if cutoff < 1000:
        raise DomainError("eta_zero_numeric requires cutoff >= 1000")
    kappa = float(kappa)
    k = level_k(kappa)
    x = kappa - k  # in (0, 1]
    m = np.arange(1, cutoff + 1, dtype=float)
    pos = m - x  # offsets of eigenvalues above kappa
    neg = m - 1.0 + x  # magnitudes of offsets below kappa
    pos_mask = pos > 0.0  # drops the zero eigenvalue when kappa is integer

    values = []
    for s in _S_GRID:
        partial = float(np.sum(pos[pos_mask] ** (-s)) - np.sum(neg ** (-s)))
        tail = hurwitz_zeta(s, cutoff + 1.0 - x, minus_pole=True) - hurwitz_zeta(
            s, cutoff + x, minus_pole=True
        )
        values.append(partial + tail)
    return neville_extrapolate(_S_GRID, values, 0.0)


def _validate_level(k) -> int:
    k = int(k)
    if k < -1:
        raise DomainError(
            f"level k={k} < -1: the opposite-chirality sector is unsupported"
        )
    return k
