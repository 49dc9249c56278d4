"""Axially symmetric gauge background and every field-dependent quantity.

A profile is the scalar potential phi(r) on [0, R] in Lorentz gauge, so
A_theta = -phi'(r).  From it we get the flux kappa = -R phi'(R), the level
k (the integer with k < kappa <= k+1), zero-mode normalizations, the bulk
Schwinger integral, and the interacting determinant quotient

    ln[Det(D+P_1)_k / Det(i dslash + P_0)_k]
        = -int_0^R r phi'(r)^2 dr  -  2(k+1) phi(R)
          + sum_{n=0}^{k} ln[ 2(n+1) q_n(R;1) / R^{2(n+1)} ].

Profiles are immutable; every operation here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .errors import ConvergenceError, DomainError

_QUAD_EPSREL = 1e-12


@dataclass(frozen=True)
class FluxProfile:
    """Smooth bounded phi(r) on [0, R] with derivative access.

    Use the :meth:`polynomial` / :meth:`tabulated` constructors; both
    guarantee phi'(0) = 0, which regularity of A_theta at the origin
    requires.
    """

    radius: float
    phi: Callable[[float], float]
    phi_prime: Callable[[float], float]
    kind: str

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0.0):
            raise DomainError(f"radius must be positive, got {self.radius}")
        if self.kind not in ("polynomial", "tabulated"):
            raise DomainError(f"unknown profile kind {self.kind!r}")
        d0 = float(self.phi_prime(0.0))
        if abs(d0) > 1e-12:
            raise DomainError(f"phi'(0) must vanish, got {d0}")
        if not np.isfinite(self.phi(self.radius)):
            raise DomainError("phi must be finite on [0, R]")

    @classmethod
    def polynomial(cls, coefficients, radius: float = 1.0) -> "FluxProfile":
        """Profile phi(r) = sum_j c_j r^(2j) from coefficients [c_0, c_1, ...].

        Polynomials in r^2 have phi'(0) = 0 automatically; the constant
        term c_0 is a pure gauge shift.
        """
        c = np.atleast_1d(np.asarray(coefficients, dtype=float))
        if c.ndim != 1 or c.size == 0 or not np.all(np.isfinite(c)):
            raise DomainError("polynomial coefficients must be a finite 1-d list")
        dc = 2.0 * np.arange(len(c)) * c  # phi' = sum_j 2j c_j r^(2j-1)

        def phi(r, _c=c):
            r2 = np.asarray(r, dtype=float) ** 2
            out = sum(cj * r2**j for j, cj in enumerate(_c))
            return out if np.ndim(r) else float(out)

        def phi_prime(r, _dc=dc):
            r = np.asarray(r, dtype=float)
            out = np.zeros_like(r)
            for j in range(len(_dc) - 1, 0, -1):
                out = (out + _dc[j]) * r * r if j > 1 else out + _dc[j]
            out = out * r
            return out if np.ndim(r) else float(out)

        return cls(radius=float(radius), phi=phi, phi_prime=phi_prime,
                   kind="polynomial")

    @classmethod
    def tabulated(cls, r_nodes, phi_values) -> "FluxProfile":
        """Cubic-spline profile through (r_i, phi_i); clamped to phi'(0) = 0.

        Nodes must be strictly increasing, start at 0, and end at R; the
        derivative used everywhere is the analytic spline derivative.
        """
        r = np.asarray(r_nodes, dtype=float)
        v = np.asarray(phi_values, dtype=float)
        if r.ndim != 1 or r.size < 4 or r.shape != v.shape:
            raise DomainError("tabulated profile needs >= 4 matching nodes")
        if r[0] != 0.0:
            raise DomainError("tabulated nodes must start at r = 0")
        if np.any(np.diff(r) <= 0.0):
            raise DomainError("tabulated nodes must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise DomainError("tabulated phi values must be finite")
        spline = CubicSpline(r, v, bc_type=((1, 0.0), "not-a-knot"))
        dspline = spline.derivative()

        def phi(x, _s=spline):
            out = _s(x)
            return out if np.ndim(x) else float(out)

        def phi_prime(x, _d=dspline):
            out = _d(x)
            return out if np.ndim(x) else float(out)

        return cls(radius=float(r[-1]), phi=phi, phi_prime=phi_prime,
                   kind="tabulated")

    def shifted(self, c: float) -> "FluxProfile":
        """The gauge-shifted profile phi + c (same field strength)."""
        base_phi = self.phi

        def phi(r, _f=base_phi, _c=float(c)):
            return _f(r) + _c

        return FluxProfile(radius=self.radius, phi=phi,
                           phi_prime=self.phi_prime, kind=self.kind)


@dataclass(frozen=True)
class FluxData:
    """Flux kappa, level k (k < kappa <= k+1), and the zero-mode count."""

    kappa: float
    k: int
    zero_mode_count: int

    def __post_init__(self):
        if not self.k < self.kappa <= self.k + 1:
            raise DomainError(f"level {self.k} inconsistent with kappa {self.kappa}")
        if self.zero_mode_count < 0:
            raise DomainError("zero_mode_count must be >= 0")

    @classmethod
    def from_profile(cls, profile: FluxProfile) -> "FluxData":
        kappa = flux_kappa(profile)
        k = level_k(kappa)
        return cls(kappa=kappa, k=k, zero_mode_count=max(0, k + 1))


def flux_kappa(profile: FluxProfile) -> float:
    """Total flux / 2 pi through the disk: kappa = -R phi'(R)."""
    # + 0.0 normalizes -0.0 away for the zero-field case
    return -profile.radius * float(profile.phi_prime(profile.radius)) + 0.0


def level_k(kappa: float) -> int:
    """The unique integer k with k < kappa <= k + 1 (exact comparison)."""
    return math.ceil(kappa) - 1


def _quad(f, a: float, b: float, *, epsrel: float = _QUAD_EPSREL) -> float:
    val, err, info, *tail = integrate.quad(f, a, b, epsabs=0.0, epsrel=epsrel,
                                           limit=200, full_output=True)
    if tail:  # a warning message accompanies non-convergence
        raise ConvergenceError(f"quadrature failed on [{a}, {b}]: {tail[0]}")
    if err > 1e-10 * max(1.0, abs(val)):
        raise ConvergenceError(
            f"quadrature error {err} exceeds tolerance for integral {val}"
        )
    return val


def q_n(profile: FluxProfile, n: int, u: float | None = None,
        alpha: float = 1.0) -> float:
    """Zero-mode normalization q_n(u; alpha) = int_0^u e^{2 alpha phi} r^{2n+1} dr."""
    if n < 0:
        raise DomainError("q_n requires n >= 0")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError("q_n requires alpha in [0, 1]")
    if u is None:
        u = profile.radius
    if not 0.0 < u <= profile.radius:
        raise DomainError(f"q_n requires u in (0, R], got {u}")
    phi = profile.phi
    return _quad(lambda r: math.exp(2.0 * alpha * phi(r)) * r ** (2 * n + 1), 0.0, u)


def zero_mode(profile: FluxProfile, n: int, alpha: float = 1.0):
    """The n-th normalized positive-chirality zero mode, as a callable.

    Returns psi(r, theta) -> (upper, lower) with
    upper = e^{alpha phi(r)} (r e^{i theta})^n / sqrt(2 pi q_n(R; alpha))
    and lower identically zero.  Unit L^2 norm over the disk.
    """
    data = FluxData.from_profile(profile)
    if data.k < 0:
        raise DomainError("no zero modes exist for level k < 0")
    if not 0 <= n <= data.k:
        raise DomainError(f"zero-mode index n={n} outside [0, {data.k}]")
    norm = math.sqrt(2.0 * math.pi * q_n(profile, n, profile.radius, alpha))
    phi = profile.phi

    def psi(r, theta):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        upper = np.exp(alpha * phi(r)) * (r * np.exp(1j * theta)) ** n / norm
        return upper, np.zeros_like(upper)

    return psi


def bulk_term(profile: FluxProfile) -> float:
    """Schwinger bulk contribution -int_0^R r phi'(r)^2 dr.

    This is -(1/2 pi) int_{r<R} phi'^2 d^2x reduced by axial symmetry.
    """
    dphi = profile.phi_prime
    return -_quad(lambda r: r * dphi(r) ** 2, 0.0, profile.radius) + 0.0


def zero_mode_part(profile: FluxProfile) -> float:
    """Zero-mode contribution -2(k+1) phi(R) + sum_n ln[2(n+1) q_n / R^(2n+2)].

    Empty (0.0) when k = -1: with no zero modes only the bulk term of the
    interacting quotient survives.
    """
    data = FluxData.from_profile(profile)
    if data.k < -1:
        raise DomainError(
            f"level k={data.k} < -1: the opposite-chirality sector is unsupported"
        )
    if data.k == -1:
        return 0.0
    R = profile.radius
    total = -2.0 * (data.k + 1) * float(profile.phi(R))
    for n in range(data.k + 1):
        total += math.log(2.0 * (n + 1) * q_n(profile, n, R, 1.0)
                          / R ** (2 * (n + 1)))
    return total


def interacting_quotient(profile: FluxProfile) -> float:
    """ln of the first determinant ratio: gauge field grown at fixed flux.

    bulk_term + zero_mode_part; requires level k >= -1.
    """
    return bulk_term(profile) + zero_mode_part(profile)
