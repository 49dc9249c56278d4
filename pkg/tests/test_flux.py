"""Flux-profile operations against closed forms and gauge invariance."""

import math

import numpy as np
import pytest

from diskdet.errors import ConvergenceError, DomainError
from diskdet.flux import (
    FluxData,
    FluxProfile,
    bulk_term,
    flux_kappa,
    interacting_quotient,
    level_k,
    q_n,
    zero_mode,
    zero_mode_part,
)

# phi(r) = -r^2/2 on the unit disk: kappa = 1, k = 0, one zero mode
GAUSSIAN_LIKE = FluxProfile.polynomial([0.0, -0.5], radius=1.0)
FREE = FluxProfile.polynomial([0.0], radius=1.0)
QUARTIC = FluxProfile.polynomial([0.0, 0.0, -0.25], radius=1.0)  # -r^4/4
# phi = (1-r^2)^2 - 1 = r^4 - 2 r^2: phi'(1) = 0, so kappa = 0 exactly
ZERO_FLUX = FluxProfile.polynomial([0.0, -2.0, 1.0], radius=1.0)

# closed forms
Q0_GAUSSIAN = (1.0 - math.exp(-1.0)) / 2.0  # int_0^1 e^{-r^2} r dr
INTERACTING_GAUSSIAN = -0.25 + 1.0 + math.log1p(-math.exp(-1.0))


def disk_inner_product(psi_a, psi_b, radius, n_theta=64):
    """L^2 inner product over the disk by radial quadrature x theta trapezoid."""
    from scipy.integrate import quad

    theta = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)

    def radial(r):
        ua, _ = psi_a(r, theta)
        ub, _ = psi_b(r, theta)
        return np.real(np.conj(ua) @ ub) * (2.0 * np.pi / n_theta) * r

    val, _ = quad(radial, 0.0, radius, epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def test_flux_kappa_examples():
    assert flux_kappa(GAUSSIAN_LIKE) == pytest.approx(1.0, abs=0.0)
    assert flux_kappa(FREE) == 0.0
    assert flux_kappa(QUARTIC) == pytest.approx(1.0, abs=0.0)
    assert flux_kappa(ZERO_FLUX) == 0.0


def test_level_k_half_open_convention():
    assert level_k(1.0) == 0
    assert level_k(0.5) == 0
    assert level_k(0.0) == -1
    assert level_k(2.5) == 2
    assert level_k(-0.3) == -1
    assert level_k(-1.0) == -2


def test_flux_data_from_profile():
    d = FluxData.from_profile(GAUSSIAN_LIKE)
    assert (d.kappa, d.k, d.zero_mode_count) == (1.0, 0, 1)
    d0 = FluxData.from_profile(FREE)
    assert (d0.k, d0.zero_mode_count) == (-1, 0)


def test_flux_data_rejects_inconsistent_level():
    with pytest.raises(DomainError):
        FluxData(kappa=0.5, k=1, zero_mode_count=2)


def test_q_n_free_closed_form():
    # q_n(u; 0) = u^(2n+2) / (2n+2) for any profile when alpha = 0
    for n in (0, 1, 4):
        for u in (0.3, 1.0):
            expected = u ** (2 * n + 2) / (2 * n + 2)
            assert q_n(GAUSSIAN_LIKE, n, u, alpha=0.0) == pytest.approx(
                expected, rel=1e-12
            )


def test_q_n_gaussian_closed_form():
    assert q_n(GAUSSIAN_LIKE, 0, 1.0, alpha=1.0) == pytest.approx(
        Q0_GAUSSIAN, rel=1e-11
    )


def test_q_n_monotone_in_u():
    us = np.linspace(0.1, 1.0, 7)
    vals = [q_n(GAUSSIAN_LIKE, 1, float(u), alpha=1.0) for u in us]
    assert np.all(np.diff(vals) > 0.0)


def test_q_n_domain_errors():
    with pytest.raises(DomainError):
        q_n(GAUSSIAN_LIKE, -1, 1.0, 1.0)
    with pytest.raises(DomainError):
        q_n(GAUSSIAN_LIKE, 0, 0.0, 1.0)
    with pytest.raises(DomainError):
        q_n(GAUSSIAN_LIKE, 0, 2.0, 1.0)
    with pytest.raises(DomainError):
        q_n(GAUSSIAN_LIKE, 0, 1.0, alpha=1.5)


def test_zero_mode_is_normalized():
    psi = zero_mode(GAUSSIAN_LIKE, 0, alpha=1.0)
    assert disk_inner_product(psi, psi, 1.0) == pytest.approx(1.0, abs=1e-8)


def test_zero_mode_free_profile_with_flux():
    # kappa = 2.5 via phi = -1.25 r^2: three modes, all unit norm, orthogonal
    p = FluxProfile.polynomial([0.0, -1.25], radius=1.0)
    modes = [zero_mode(p, n) for n in range(3)]
    for n, psi in enumerate(modes):
        assert disk_inner_product(psi, psi, 1.0) == pytest.approx(1.0, abs=1e-8)
        for m in range(n):
            assert abs(disk_inner_product(modes[m], psi, 1.0)) < 1e-8


def test_zero_mode_boundary_fourier_content():
    # a single angular harmonic n <= k: satisfies the spectral condition
    psi = zero_mode(GAUSSIAN_LIKE, 0)
    theta = np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False)
    upper, lower = psi(1.0, theta)
    coeffs = np.fft.fft(upper) / len(theta)
    assert np.all(lower == 0.0)
    assert abs(coeffs[0]) > 0.0
    assert np.max(np.abs(coeffs[1:])) < 1e-14


def test_zero_mode_index_validation():
    with pytest.raises(DomainError):
        zero_mode(GAUSSIAN_LIKE, 1)
    with pytest.raises(DomainError):
        zero_mode(FREE, 0)


def test_bulk_term_closed_forms():
    assert bulk_term(GAUSSIAN_LIKE) == pytest.approx(-0.25, rel=1e-11)
    assert bulk_term(FluxProfile.polynomial([3.0], radius=1.0)) == 0.0
    assert bulk_term(QUARTIC) == pytest.approx(-0.125, rel=1e-11)


def test_interacting_quotient_examples():
    assert interacting_quotient(FREE) == 0.0
    # no zero modes: only the bulk term survives
    assert interacting_quotient(ZERO_FLUX) == pytest.approx(
        bulk_term(ZERO_FLUX), rel=1e-12
    )
    assert interacting_quotient(GAUSSIAN_LIKE) == pytest.approx(
        INTERACTING_GAUSSIAN, rel=1e-10
    )


def test_interacting_quotient_rejects_opposite_chirality():
    p = FluxProfile.polynomial([0.0, 0.75], radius=1.0)  # kappa = -1.5
    with pytest.raises(DomainError):
        interacting_quotient(p)


@pytest.mark.parametrize("shift", [0.5, -0.5, 5.0, -5.0])
@pytest.mark.parametrize("profile", [GAUSSIAN_LIKE, QUARTIC, ZERO_FLUX])
def test_gauge_constant_shift_invariance(profile, shift):
    base = interacting_quotient(profile)
    shifted = interacting_quotient(profile.shifted(shift))
    assert shifted == pytest.approx(base, abs=1e-9)
    # the bulk term alone is exactly shift-independent
    assert bulk_term(profile.shifted(shift)) == pytest.approx(
        bulk_term(profile), rel=1e-12
    )


def test_gauge_shift_moves_between_parts():
    # -2(k+1) phi(R) changes by -2(k+1)c; the sum of logs absorbs +2(k+1)c
    c = 0.7
    base = zero_mode_part(GAUSSIAN_LIKE)
    shifted = zero_mode_part(GAUSSIAN_LIKE.shifted(c))
    assert shifted == pytest.approx(base, abs=1e-9)


def test_tabulated_profile_matches_polynomial():
    r = np.linspace(0.0, 1.0, 41)
    tab = FluxProfile.tabulated(r, -0.5 * r**2)
    assert flux_kappa(tab) == pytest.approx(1.0, abs=1e-12)
    assert interacting_quotient(tab) == pytest.approx(
        INTERACTING_GAUSSIAN, abs=1e-9
    )


def test_tabulated_profile_validation():
    with pytest.raises(DomainError):
        FluxProfile.tabulated([0.0, 0.5, 0.4, 1.0], [0.0, 0.1, 0.2, 0.3])
    with pytest.raises(DomainError):
        FluxProfile.tabulated([0.1, 0.5, 0.8, 1.0], [0.0, 0.1, 0.2, 0.3])
    with pytest.raises(DomainError):
        FluxProfile.tabulated([0.0, 1.0], [0.0, 1.0])


def test_polynomial_profile_validation():
    with pytest.raises(DomainError):
        FluxProfile.polynomial([np.nan], radius=1.0)
    with pytest.raises(DomainError):
        FluxProfile.polynomial([0.0, 1.0], radius=-1.0)
