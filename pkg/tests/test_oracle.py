"""FD spectra vs Bessel zeros, Green-kernel checks, and partial sums."""

import math

import numpy as np
import pytest

from diskdet.errors import ConvergenceError, DomainError
from diskdet.flux import FluxProfile
from diskdet.oracle import (
    bc_type,
    free_spectrum_exact,
    free_spectrum_fd,
    green_boundary_spectrum,
    green_holomorphy_check,
    spectral_order,
    zeta_partial_sum,
)
from diskdet.series import hurwitz_zeta
from diskdet.specfun import bessel_zero, bessel_zeros

GAUSSIAN_LIKE = FluxProfile.polynomial([0.0, -0.5], radius=1.0)  # kappa = 1, k = 0
FREE = FluxProfile.polynomial([0.0], radius=1.0)


def test_bc_type_and_order_selection():
    assert bc_type(1, 0) == "upper-dirichlet"
    assert bc_type(0, 0) == "lower-dirichlet"
    assert spectral_order(2, 0) == 2
    assert spectral_order(0, 0) == 1  # lower branch: |n+1|
    assert spectral_order(-3, 0) == 2  # j_{-n,l} = j_{n,l}


def test_free_spectrum_exact_first_eigenvalue():
    ev = free_spectrum_exact(0, -1, 1.0, 1)
    assert ev == pytest.approx([-2.404825557695773, 2.404825557695773], rel=1e-12)


def test_free_spectrum_exact_negative_mode_symmetry():
    # j_{-n,l} = j_{n,l}: modes -n-1 and n (same branch) share spectra
    assert np.allclose(
        free_spectrum_exact(-4, -1, 1.0, 4), free_spectrum_exact(3, -1, 1.0, 4)
    )


def test_free_spectrum_exact_radius_scaling():
    a = free_spectrum_exact(1, -1, 1.0, 3)
    b = free_spectrum_exact(1, -1, 2.0, 3)
    assert np.allclose(a, 2.0 * b)


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("k", [-1, 0, 1])
def test_fd_matches_exact_spectrum(n, k):
    rep = free_spectrum_fd(n, k, 1.0, 2000, count=5)
    assert rep.max_rel_error < 1e-3
    assert rep.bc_type == bc_type(n, k)
    for l, exact, fd, rel in rep.rows():
        assert rel < 1e-3
        assert exact == pytest.approx(bessel_zero(spectral_order(n, k), l), rel=1e-12)


def test_fd_spectrum_symmetric_about_zero():
    ev = free_spectrum_fd(0, -1, 1.0, 400).eigenvalues
    assert np.max(np.abs(ev + ev[::-1])) < 1e-10


def test_fd_convergence_order():
    # doubling the grid reduces the error by the scheme's order (~4x)
    for n, k in ((0, -1), (1, 0), (0, 0)):
        e_coarse = free_spectrum_fd(n, k, 1.0, 500).max_rel_error
        e_fine = free_spectrum_fd(n, k, 1.0, 1000).max_rel_error
        ratio = e_coarse / e_fine
        assert 1.7 < ratio < 4.3
        assert math.log2(ratio) >= 1.7


def test_fd_doubling_at_transition_mode():
    # modes k+1 (upper condition) and k (lower condition) share eigenvalues
    for k in (-1, 0, 1):
        a = free_spectrum_fd(k + 1, k, 1.0, 1000, count=5)
        b = free_spectrum_fd(k, k, 1.0, 1000, count=5)
        assert a.bc_type == "upper-dirichlet"
        assert b.bc_type == "lower-dirichlet"
        assert np.max(np.abs(a.compared - b.compared) / a.compared) < 1e-6


def test_fd_zero_mode_dimension():
    # n <= k carries the physical zero mode f = r^n
    assert free_spectrum_fd(0, 0, 1.0, 400).zero_mode_dimension == 1
    # square system, no zero mode
    assert free_spectrum_fd(0, -1, 1.0, 400).zero_mode_dimension == 0


def test_fd_input_validation():
    with pytest.raises(DomainError):
        free_spectrum_fd(0, -1, 1.0, 100)
    with pytest.raises(DomainError):
        free_spectrum_fd(0, -1, -1.0, 400)
    with pytest.raises(ConvergenceError):
        free_spectrum_fd(0, -1, 1.0, 400, rel_tol=1e-12)


def test_green_holomorphy_free_cauchy_kernel():
    # alpha = 0, k = -1: the kernel is the plain Cauchy kernel
    assert green_holomorphy_check(FREE, 32, alpha=0.0) <= 1e-6


def test_green_holomorphy_interacting():
    assert green_holomorphy_check(GAUSSIAN_LIKE, 32, alpha=1.0) <= 1e-6
    assert green_holomorphy_check(GAUSSIAN_LIKE, 32, alpha=0.5) <= 1e-6


def test_green_kernel_rejects_near_diagonal():
    from diskdet.oracle import _green_upper_kernel

    u = _green_upper_kernel(FREE, 0.0, -1)
    with pytest.raises(DomainError):
        u(0.5, 1.0, 0.5, 1.0 + 1e-9)


def test_green_boundary_spectrum_respects_condition():
    # upper row of the kernel must contain no boundary modes n >= k+1
    for profile, k in ((GAUSSIAN_LIKE, 0), (FREE, -1)):
        n_theta = 256
        spec = green_boundary_spectrum(profile, alpha=1.0, n_theta=n_theta)
        modes = np.arange(n_theta) - n_theta // 2
        assert spec[modes >= k + 1].max() < 1e-12
        assert spec[modes <= k].max() > 1e-3


def test_zeta_partial_sum_riemann_oracle():
    # j_{1/2,l} = l pi: the sum is pi^-2 zeta(2) = 1/6
    assert zeta_partial_sum(0.5, 2.0, 5000) == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_zeta_partial_sum_rayleigh():
    assert zeta_partial_sum(0.0, 2.0, 10_000) == pytest.approx(0.25, abs=1e-8)


def test_zeta_partial_sum_monotone_in_s():
    vals = [zeta_partial_sum(1.0, s, 300) for s in (1.5, 2.0, 3.0, 4.0, 6.0, 10.0)]
    assert np.all(np.diff(vals) < 0.0)


def test_zeta_partial_sum_validates_continuation_representation():
    # the pairing representation used by the s -> 0 machinery must agree
    # with the straightforward sum at s = 2, 3, 4
    for nu in (0.0, 1.0):
        a = 0.5 * nu - 0.25
        L = 2000
        zeros = bessel_zeros(nu, L).zeros
        l = np.arange(1, L + 1, dtype=float)
        beta = (l + a) * np.pi
        p = (4.0 * nu * nu - 1.0) / 8.0
        for s in (2.0, 3.0, 4.0):
            paired = float(np.sum(beta ** (-s) * np.expm1(-s * np.log(zeros / beta))))
            tail = s * p * math.pi ** (-s - 2) * hurwitz_zeta(s + 2.0, L + 1 + a)
            hpart = math.pi ** (-s) * hurwitz_zeta(s, 1.0 + a)
            direct = zeta_partial_sum(nu, s, 4000)
            assert paired + tail + hpart == pytest.approx(direct, abs=1e-10)


def test_zeta_partial_sum_validation():
    with pytest.raises(DomainError):
        zeta_partial_sum(0.0, 1.0, 100)
    with pytest.raises(DomainError):
        zeta_partial_sum(0.0, 2.0, 5)
