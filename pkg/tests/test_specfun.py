"""Bessel kernel tests.

Expected zero locations are pinned by an independent oracle: bisection on
a truncated power series of J_nu, with no shared code with the package.
"""

import numpy as np
import pytest

from diskdet.errors import DomainError
from diskdet.specfun import (
    BesselZeroTable,
    bessel_j,
    bessel_j_prime,
    bessel_zero,
    bessel_zeros,
)


def j_power_series(nu: float, x: float) -> float:
    """Oracle: J_nu(x) summed from the defining power series."""
    from math import gamma

    half = 0.5 * x
    term = half**nu / gamma(nu + 1.0)
    total = term
    for k in range(1, 200):
        term *= -(half * half) / (k * (k + nu))
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return total


def zero_by_bisection(nu: float, lo: float, hi: float) -> float:
    """Oracle: sign-change bisection of the power series on [lo, hi]."""
    flo = j_power_series(nu, lo)
    assert flo * j_power_series(nu, hi) < 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = j_power_series(nu, mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


# frozen from the bisection oracle above (see test_oracle_agrees_with_frozen)
J0_FIRST_ZERO = 2.404825557695773
J1_FIRST_ZERO = 3.831705970207512


def test_oracle_agrees_with_frozen_values():
    assert zero_by_bisection(0.0, 2.0, 3.0) == pytest.approx(J0_FIRST_ZERO, abs=1e-13)
    assert zero_by_bisection(1.0, 3.0, 4.5) == pytest.approx(J1_FIRST_ZERO, abs=1e-13)


def test_bessel_j_trivial_values():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(1.0, 0.0) == 0.0
    assert bessel_j(2.5, 0.0) == 0.0


def test_bessel_j_vanishes_at_first_zero():
    assert abs(bessel_j(0.0, J0_FIRST_ZERO)) < 1e-12


def test_bessel_j_matches_series_oracle():
    for nu in (0.0, 1.0, 2.0, 3.5):
        for x in (0.3, 1.7, 4.2, 9.9):
            assert bessel_j(nu, x) == pytest.approx(j_power_series(nu, x), abs=1e-12)


def test_bessel_j_rejects_bad_domain():
    with pytest.raises(DomainError):
        bessel_j(-0.5, 1.0)
    with pytest.raises(DomainError):
        bessel_j(0.0, -1.0)
    with pytest.raises(DomainError):
        bessel_j(201.0, 1.0)
    with pytest.raises(DomainError):
        bessel_j(0.0, np.inf)


def test_bessel_zero_first_zeros():
    assert bessel_zero(0.0, 1) == pytest.approx(J0_FIRST_ZERO, rel=1e-12)
    assert bessel_zero(1.0, 1) == pytest.approx(J1_FIRST_ZERO, rel=1e-12)


def test_bessel_zero_half_order_is_l_pi():
    for l in (1, 2, 3, 10, 137, 4001):
        assert bessel_zero(0.5, l) == pytest.approx(l * np.pi, rel=1e-14)


def test_bessel_zero_rejects_l_below_one():
    with pytest.raises(DomainError):
        bessel_zero(0.0, 0)


def test_zero_table_residuals():
    # J_nu(j_{nu,l}) = 0 within 1e-10 * max(1, |J'_nu(j_{nu,l})|)
    for nu in (0.0, 1.0, 2.0, 4.0, 7.5):
        t = bessel_zeros(nu, 400)
        resid = np.abs(bessel_j(nu, t.zeros))
        scale = np.maximum(1.0, np.abs(bessel_j_prime(nu, t.zeros)))
        assert np.all(resid <= 1e-10 * scale)


def test_zero_tables_interlace():
    # classical: zeros of J_nu and J_{nu+1} strictly interlace
    for nu in (0.0, 1.0, 2.0, 3.0, 0.5):
        a = bessel_zeros(nu, 60).zeros
        b = bessel_zeros(nu + 1.0, 60).zeros
        assert np.all(a[:-1] < b[:-1])
        assert np.all(b[:-1] < a[1:])


def test_mcmahon_proximity():
    # |j_{nu,l} - beta_l| < 1 for beta_l = (l + nu/2 - 1/4) pi once l > nu
    for nu in (0.0, 1.0, 3.0, 6.5):
        t = bessel_zeros(nu, 200)
        l = np.arange(1, 201, dtype=float)
        beta = (l + 0.5 * nu - 0.25) * np.pi
        mask = l > nu
        assert np.all(np.abs(t.zeros[mask] - beta[mask]) < 1.0)


def test_table_is_strictly_increasing_and_immutable():
    t = bessel_zeros(2.0, 50)
    assert np.all(np.diff(t.zeros) > 0.0)
    with pytest.raises(ValueError):
        t.zeros[0] = 1.0


def test_table_indexing():
    t = bessel_zeros(0.0, 3)
    assert t[1] == pytest.approx(J0_FIRST_ZERO, rel=1e-12)
    assert t.count == 3
    with pytest.raises(DomainError):
        t[4]
    with pytest.raises(DomainError):
        t[0]


def test_large_order_low_index_zone():
    # McMahon brackets are invalid here; the scan path must still label
    # zeros correctly (j_{nu,1} > nu, increasing, small residual)
    z1 = bessel_zero(120.0, 1)
    z2 = bessel_zero(120.0, 2)
    assert 120.0 < z1 < z2
    assert abs(bessel_j(120.0, z1)) < 1e-10


def test_zero_table_rejects_disorder():
    with pytest.raises(DomainError):
        BesselZeroTable(order=0.0, zeros=np.array([2.0, 1.0]))
