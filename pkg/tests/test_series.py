"""Euler-Maclaurin Hurwitz zeta and tail-expansion tests."""

import numpy as np
import pytest
from scipy.special import digamma, zeta as scipy_zeta

from diskdet.errors import DomainError
from diskdet.series import (
    hurwitz_zeta,
    log_zero_tail_coefficients,
    mcmahon_estimate,
    neville_extrapolate,
    terms_for_tail_tolerance,
    zero_log_series_tail,
)
from diskdet.specfun import bessel_zero


def test_hurwitz_matches_scipy_above_one():
    for s, a in [(2.0, 1.0), (3.0, 0.25), (5.5, 7.3), (2.0, 1001.0), (1.2, 0.9)]:
        assert hurwitz_zeta(s, a) == pytest.approx(scipy_zeta(s, a), rel=1e-13)


def test_hurwitz_closed_forms_below_one():
    # zeta_H(0, q) = 1/2 - q ; zeta_R(-1) = -1/12 ; zeta_R(0) = -1/2
    for q in (0.25, 1.0, 2.75):
        assert hurwitz_zeta(0.0, q) == pytest.approx(0.5 - q, abs=1e-13)
    assert hurwitz_zeta(-1.0, 1.0) == pytest.approx(-1.0 / 12.0, abs=1e-14)
    assert hurwitz_zeta(0.0, 1.0) == pytest.approx(-0.5, abs=1e-14)


def test_hurwitz_minus_pole_limit():
    # zeta(s, a) - 1/(s-1) -> -digamma(a) as s -> 1
    for a in (0.6, 2.0, 31.5):
        assert hurwitz_zeta(1.0, a, minus_pole=True) == pytest.approx(
            -digamma(a), abs=1e-13
        )


def test_hurwitz_rejects_pole_and_bad_a():
    with pytest.raises(DomainError):
        hurwitz_zeta(1.0, 2.0)
    with pytest.raises(DomainError):
        hurwitz_zeta(2.0, 0.0)


def test_mcmahon_estimate_accuracy():
    for nu in (0.0, 1.0, 2.0):
        for l in (20, 50, 200):
            est = float(mcmahon_estimate(nu, l))
            assert est == pytest.approx(bessel_zero(nu, l), rel=1e-12)


def test_log_zero_tail_coefficients_predict_terms():
    # t_l = ln(j/(l pi)) - (2nu-1)/(4l) must match c2/l^2 + ... + c5/l^5
    # with an O(l^-6) remainder
    for nu in (0.0, 1.0, 3.0):
        c2, c3, c4, c5 = log_zero_tail_coefficients(nu)
        for l in (300, 600):
            t = np.log(bessel_zero(nu, l) / (l * np.pi)) - (2 * nu - 1) / (4 * l)
            model = c2 / l**2 + c3 / l**3 + c4 / l**4 + c5 / l**5
            assert abs(t - model) < 50.0 / l**6


def test_zero_log_series_tail_matches_direct_sum():
    # tail from L=300 must agree with explicit summation of t_l beyond L
    nu = 1.0
    L = 300
    tail, bound = zero_log_series_tail(nu, L)
    direct = 0.0
    for l in range(L + 1, 4001):
        direct += np.log(bessel_zero(nu, l) / (l * np.pi)) - (2 * nu - 1) / (4 * l)
    # account for the part of the direct sum beyond l = 4000
    c2, c3 = log_zero_tail_coefficients(nu)[:2]
    direct += c2 * hurwitz_zeta(2.0, 4001.0) + c3 * hurwitz_zeta(3.0, 4001.0)
    assert abs(tail - direct) < max(10.0 * bound, 1e-11)


def test_terms_for_tail_tolerance_scales_with_order():
    assert terms_for_tail_tolerance(0.0, 1e-9) == 200
    assert terms_for_tail_tolerance(6.0, 1e-9) > 200


def test_neville_exact_on_polynomials():
    xs = np.array([0.1, 0.2, 0.3, 0.4])
    ys = 3.0 - 2.0 * xs + xs**2
    assert neville_extrapolate(xs, ys, 0.0) == pytest.approx(3.0, abs=1e-12)


def test_neville_extrapolates_analytic_function():
    xs = np.linspace(0.05, 0.5, 8)
    ys = np.exp(xs)
    assert neville_extrapolate(xs, ys, 0.0) == pytest.approx(1.0, abs=1e-9)
