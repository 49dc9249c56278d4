"""Independent numerical validators for the spectral machinery.

* finite-difference radial Dirac spectra under the spectral boundary
  condition, compared per angular mode against the exact +-j_{nu,l}/R;
* holomorphy and boundary-content checks on the interacting Green kernel;
* straightforward Bessel-zeta partial sums with an integral tail.

Per angular mode n the free operator reduces to the first-order system

    lambda f = i ( g' + (n+1) g / r ),      lambda g = i ( f' - n f / r ),

with exactly one component forced to vanish at r = R: the upper (f) for
n >= k+1, the lower (g) for n <= k.  The discretization is staggered:
the Dirichlet-selected component lives on the node grid (which contains
r = R), the free component on midpoints, every stencil is centered, and
the two blocks are exact weighted adjoints, so the discrete spectrum is
real and symmetric under lambda -> -lambda by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DomainError
from .flux import FluxData, FluxProfile
from .specfun import bessel_zeros

ORIGIN_NODE_WEIGHT = 0.125  # times h^2: quadrature of r dr over [0, h/2]


def spectral_order(n: int, k: int) -> int:
    """Bessel order whose zeros give the mode-n eigenvalues: |n| or |n+1|."""
    return abs(n) if n >= k + 1 else abs(n + 1)


def bc_type(n: int, k: int) -> str:
    """Which spinor component the spectral condition forces to zero at R."""
    return "upper-dirichlet" if n >= k + 1 else "lower-dirichlet"


def free_spectrum_exact(n: int, k: int, radius: float, count: int) -> np.ndarray:
    """Exact eigenvalues +-j_{nu,l}/R of the free mode-n radial operator.

    nu = |n| for n >= k+1 (upper component Dirichlet) and |n+1| for
    n <= k; at n = k+1 the same list also arises from mode k (the
    eigenvalues appear twice across the two component conditions).
    Returned sorted ascending, zeros excluded.
    """
    if count < 1:
        raise DomainError("free_spectrum_exact requires count >= 1")
    if radius <= 0.0:
        raise DomainError("free_spectrum_exact requires radius > 0")
    nu = spectral_order(n, k)
    pos = bessel_zeros(float(nu), count).zeros / radius
    return np.sort(np.concatenate([-pos, pos]))


@dataclass(frozen=True)
class SpectrumReport:
    """FD-vs-exact comparison for one angular mode."""

    n: int
    k: int
    radius: float
    bc_type: str
    grid_size: int
    eigenvalues: np.ndarray = field(repr=False)
    reference: np.ndarray = field(repr=False)
    compared: np.ndarray = field(repr=False)
    max_rel_error: float
    zero_mode_dimension: int

    def rows(self):
        """(l, exact, fd, rel_err) rows for the compared eigenvalues."""
        for i, (ref, fd) in enumerate(zip(self.reference, self.compared), start=1):
            yield i, float(ref), float(fd), abs(fd - ref) / abs(ref)


def _staggered_singular_values(n: int, k: int, radius: float, grid: int):
    """Singular values of the weighted FD block, plus the structural-zero count.

    Builds the midpoint-row stencil P of the first-order coupling acting
    on node unknowns, then diagonalizes the tridiagonal normal matrix of
    W_mid^(1/2) P W_node^(-1/2).  The spectrum of the full system is the
    +-singular values together with (n_mid - n_node) exact zeros.
    """
    h = radius / grid
    upper = n >= k + 1
    alpha_node = n if upper else n + 1  # angular index of the node component
    # midpoint-row operator on node data: cd*(u_{j+1}-u_j)/h + c*(avg u)/m_j
    cd, c = (-1.0, float(n)) if upper else (1.0, float(n + 1))

    keep_origin = alpha_node == 0
    # node unknowns: i = i0..grid-1 (node `grid` is the Dirichlet value 0)
    i0 = 0 if keep_origin else 1
    nodes = np.arange(i0, grid)
    n_node = nodes.size
    n_mid = grid
    mid = (np.arange(grid) + 0.5) * h

    w_node = nodes.astype(float) * h * h
    if keep_origin:
        w_node[0] = ORIGIN_NODE_WEIGHT * h * h
    w_mid = mid * h

    # row j couples node j (coefficient a_j) and node j+1 (coefficient b_j)
    a = -cd / h + c / (2.0 * mid)
    b = cd / h + c / (2.0 * mid)

    # column index of node i in the unknown vector, -1 if eliminated
    col = np.full(grid + 1, -1, dtype=int)
    col[nodes] = np.arange(n_node)

    diag = np.zeros(n_node)
    off = np.zeros(max(n_node - 1, 0))
    for j in range(n_mid):
        ca, cb = col[j], col[j + 1]
        if ca >= 0:
            diag[ca] += w_mid[j] * a[j] * a[j] / w_node[ca]
        if cb >= 0:
            diag[cb] += w_mid[j] * b[j] * b[j] / w_node[cb]
        if ca >= 0 and cb >= 0:
            off[ca] += w_mid[j] * a[j] * b[j] / math.sqrt(
                w_node[ca] * w_node[cb]
            )

    try:
        lam2 = eigh_tridiagonal(diag, off, eigvals_only=True)
    except Exception as exc:  # pragma: no cover - LAPACK failure is exotic
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc
    lam2 = np.clip(lam2, 0.0, None)
    return np.sqrt(lam2), n_mid - n_node


def free_spectrum_fd(
    n: int,
    k: int,
    radius: float = 1.0,
    grid: int = 2000,
    count: int = 5,
    rel_tol: float | None = None,
) -> SpectrumReport:
    """FD spectrum of the free mode-n operator, checked against Bessel zeros.

    `grid` is the number of radial intervals (>= 200).  The first `count`
    positive eigenvalues (zero modes excluded) are compared against
    j_{nu,l}/R; if `rel_tol` is given and exceeded, the grid is reported
    as insufficient.
    """
    if grid < 200:
        raise DomainError("free_spectrum_fd requires grid >= 200")
    if radius <= 0.0:
        raise DomainError("free_spectrum_fd requires radius > 0")
    if count < 1:
        raise DomainError("free_spectrum_fd requires count >= 1")

    sing, structural_zeros = _staggered_singular_values(n, k, radius, grid)
    eigenvalues = np.sort(np.concatenate([-sing, sing, np.zeros(structural_zeros)]))

    reference = bessel_zeros(float(spectral_order(n, k)), count).zeros / radius
    # positive part, with zero modes (physical or structural) filtered out
    positive = np.sort(sing)
    positive = positive[positive > 0.5 * reference[0]]
    if positive.size < count:
        raise ConvergenceError(
            f"FD produced only {positive.size} usable eigenvalues, need {count}"
        )
    compared = positive[:count]
    max_rel_error = float(np.max(np.abs(compared - reference) / reference))
    if rel_tol is not None and max_rel_error > rel_tol:
        raise ConvergenceError(
            f"grid {grid} insufficient: rel error {max_rel_error} > {rel_tol}"
        )
    n_zero = int(np.sum(np.abs(eigenvalues) <= 0.5 * reference[0]))
    return SpectrumReport(
        n=n,
        k=k,
        radius=radius,
        bc_type=bc_type(n, k),
        grid_size=grid,
        eigenvalues=eigenvalues,
        reference=reference,
        compared=compared,
        max_rel_error=max_rel_error,
        zero_mode_dimension=n_zero,
    )


def _green_upper_kernel(profile: FluxProfile, alpha: float, k: int):
    """u(x, y) = e^{alpha[phi(rx)-phi(ry)]} (X/Y)^{k+1} / (2 pi i (X - Y))."""
    phi = profile.phi

    def u(rx, tx, ry, ty):
        X = rx * np.exp(1j * tx)
        Y = ry * np.exp(1j * ty)
        if np.min(np.abs(X - Y)) < 1e-3:
            raise DomainError("kernel sample too close to the diagonal")
        envelope = np.exp(alpha * (phi(rx) - phi(ry)))
        return envelope * (X / Y) ** (k + 1) / (2.0j * np.pi * (X - Y))

    return u


def green_holomorphy_check(
    profile: FluxProfile,
    sample_pairs: int = 64,
    alpha: float = 1.0,
    step: float = 1e-5,
    seed: int = 0,
) -> float:
    """Max residual of the Dirac annihilator on the Green kernel's upper entry.

    D_alpha applied (in x, away from the diagonal) to the off-diagonal
    kernel must vanish; the radial and angular derivatives are taken by
    central differences with the given step.  Returns the max |residual|
    over `sample_pairs` well-separated interior pairs; <= 1e-6 expected.
    """
    if sample_pairs < 1:
        raise DomainError("green_holomorphy_check requires sample_pairs >= 1")
    data = FluxData.from_profile(profile)
    if data.k < -1:
        raise DomainError("green check requires level k >= -1")
    R = profile.radius
    u = _green_upper_kernel(profile, alpha, data.k)
    dphi = profile.phi_prime
    rng = np.random.default_rng(seed)

    worst = 0.0
    made = 0
    while made < sample_pairs:
        rx, ry = rng.uniform(0.15 * R, 0.8 * R, size=2)
        tx, ty = rng.uniform(0.0, 2.0 * np.pi, size=2)
        if abs(rx * np.exp(1j * tx) - ry * np.exp(1j * ty)) < 0.2 * R:
            continue
        made += 1
        du_dr = (u(rx + step, tx, ry, ty) - u(rx - step, tx, ry, ty)) / (2 * step)
        du_dt = (u(rx, tx + step, ry, ty) - u(rx, tx - step, ry, ty)) / (2 * step)
        # rho (-d_r + A_alpha) u with A_alpha = -(i/r) d_theta + alpha phi'(r)
        resid = -1.0j * np.exp(1.0j * tx) * (
            -du_dr - (1.0j / rx) * du_dt + alpha * dphi(rx) * u(rx, tx, ry, ty)
        )
        worst = max(worst, abs(resid))
    return worst


def green_boundary_spectrum(
    profile: FluxProfile,
    alpha: float = 1.0,
    n_theta: int = 256,
    source: tuple[float, float] = (0.35, 1.1),
) -> np.ndarray:
    """|Fourier coefficients| of the upper kernel row on the boundary circle.

    Index m of the returned array is the angular mode m - n_theta//2.  The
    spectral condition annihilates every mode n >= k+1 of the upper row,
    so those entries must vanish; the (X/Y)^{k+1} factor caps the content
    at mode k exactly.
    """
    data = FluxData.from_profile(profile)
    R = profile.radius
    ry, ty = source[0] * R, source[1]
    u = _green_upper_kernel(profile, alpha, data.k)
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    values = u(np.full(n_theta, R), theta, np.full(n_theta, ry), np.full(n_theta, ty))
    coeffs = np.fft.fft(values) / n_theta
    return np.abs(np.fft.fftshift(coeffs))


def zeta_partial_sum(nu: float, s: float, terms: int) -> float:
    """sum_l j_{nu,l}^{-s} by partial sum plus a midpoint integral tail.

    Valid for s > 1 and terms >= 10; the tail integrates the McMahon
    leading form (pi (l + nu/2 - 1/4))^{-s} from terms + 1/2 upward, so
    the result carries an O(terms^{-s-2}) error, far below the partial
    sum alone.  Independent validator for the continuation machinery.
    """
    if s <= 1.0:
        raise DomainError("zeta_partial_sum requires s > 1")
    if terms < 10:
        raise DomainError("zeta_partial_sum requires terms >= 10")
    zeros = bessel_zeros(float(nu), terms).zeros
    partial = float(np.sum(zeros ** (-s)))
    a = 0.5 * nu - 0.25
    tail = math.pi ** (-s) * (terms + 0.5 + a) ** (1.0 - s) / (s - 1.0)
    return partial + tail
