"""Series tails and analytic-continuation helpers.

Euler-Maclaurin evaluation of the Hurwitz zeta function, the large-index
expansion of Bessel-zero logarithms that powers the tail sums, and a small
Neville extrapolator used by the numeric continuations to reach s = 0.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, DomainError

# B_2, B_4, ..., B_16
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)


def hurwitz_zeta(s: float, a: float, *, minus_pole: bool = False) -> float:
    """Hurwitz zeta(s, a) for real s != 1 and a > 0 by Euler-Maclaurin.

    With ``minus_pole=True`` returns zeta(s, a) - 1/(s-1), which is regular
    at s = 1 and lets callers cancel poles analytically.  Accuracy is close
    to machine level for |s| <~ 20.
    """
    if a <= 0.0:
        raise DomainError(f"hurwitz_zeta requires a > 0, got a={a}")
    if not minus_pole and s == 1.0:
        raise DomainError("hurwitz_zeta has a pole at s = 1")

    # shift a upward so the asymptotic correction terms decay fast
    shift = max(0, int(np.ceil(max(16.0, abs(s) + 8.0) - a)))
    head = 0.0
    if shift:
        head = float(np.sum((a + np.arange(shift, dtype=float)) ** (-s)))
    b = a + shift

    # integral term; the pole at s=1 lives here only
    if minus_pole:
        # b^{1-s}/(s-1) - 1/(s-1), stable through s = 1
        u = (1.0 - s) * np.log(b)
        integral = -np.log(b) if s == 1.0 else np.expm1(u) / (s - 1.0)
    else:
        integral = b ** (1.0 - s) / (s - 1.0)

    total = head + integral + 0.5 * b ** (-s)

    # sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * b^{-s-2k+1}
    poch = s
    fact = 1.0
    binv = 1.0 / b
    scale = b ** (-s - 1.0)
    for k, b2k in enumerate(_BERNOULLI_EVEN, start=1):
        fact *= (2 * k - 1) * (2 * k)
        term = b2k / fact * poch * scale
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        scale *= binv * binv
    return float(total)


def mcmahon_estimate(nu: float, l):
    """McMahon's large-index estimate for the l-th positive zero of J_nu.

    Vectorized over ``l``.  Includes corrections through beta^-7; good to
    ~1e-12 (relative) once l exceeds nu by a few units.
    """
    l = np.asarray(l, dtype=float)
    mu = 4.0 * nu * nu
    beta = (l + 0.5 * nu - 0.25) * np.pi
    e = 8.0 * beta
    m1 = mu - 1.0
    corr = (
        -m1 / e
        - 4.0 * m1 * (7.0 * mu - 31.0) / (3.0 * e**3)
        - 32.0 * m1 * (83.0 * mu**2 - 982.0 * mu + 3779.0) / (15.0 * e**5)
        - 64.0
        * m1
        * (6949.0 * mu**3 - 153855.0 * mu**2 + 1585743.0 * mu - 6277237.0)
        / (105.0 * e**7)
    )
    return beta + corr


def log_zero_tail_coefficients(nu: float) -> tuple[float, float, float, float]:
    """Coefficients (c2, c3, c4, c5) of the large-l expansion

        ln[ j_{nu,l} / (l pi) ] - (2 nu - 1)/(4 l)
            = c2/l^2 + c3/l^3 + c4/l^4 + c5/l^5 + O(l^-6),

    obtained from McMahon's expansion.  c5 is used only to bound the
    truncation error of a tail summed through the l^-4 term.
    """
    a = 0.5 * nu - 0.25
    mu = 4.0 * nu * nu
    p = (mu - 1.0) / 8.0
    k4 = (mu - 1.0) * (7.0 * mu - 31.0) / 384.0 + p * p / 2.0
    pi2 = np.pi**2
    pi4 = pi2 * pi2
    c2 = -0.5 * a * a - p / pi2
    c3 = a**3 / 3.0 + 2.0 * a * p / pi2
    c4 = -0.25 * a**4 - 3.0 * a * a * p / pi2 - k4 / pi4
    c5 = 0.2 * a**5 + 4.0 * a**3 * p / pi2 + 4.0 * a * k4 / pi4
    return float(c2), float(c3), float(c4), float(c5)


def zero_log_series_tail(nu: float, terms_used: int) -> tuple[float, float]:
    """Analytic tail of sum_{l > L} {ln[j_{nu,l}/(l pi)] - (2nu-1)/(4l)}.

    Returns (tail, error_bound) where the tail sums the c2..c4 terms of
    the expansion above and the bound is |c5| * zeta(5, L+1).
    """
    c2, c3, c4, c5 = log_zero_tail_coefficients(nu)
    a = terms_used + 1.0
    tail = (
        c2 * hurwitz_zeta(2.0, a)
        + c3 * hurwitz_zeta(3.0, a)
        + c4 * hurwitz_zeta(4.0, a)
    )
    bound = abs(c5) * hurwitz_zeta(5.0, a)
    return float(tail), float(bound)


def terms_for_tail_tolerance(nu: float, tol: float, *, floor: int = 200,
                             cap: int = 2_000_000) -> int:
    """Smallest L >= floor with the l^-5 truncation bound below tol/2."""
    c5 = log_zero_tail_coefficients(nu)[3]
    if c5 == 0.0:
        return floor
    # |c5| * zeta(5, L+1) ~ |c5| / (4 L^4)
    need = (abs(c5) / (2.0 * tol)) ** 0.25
    L = max(floor, int(np.ceil(need)))
    if L > cap:
        raise ConvergenceError(
            f"tail tolerance {tol} would need {L} Bessel zeros (cap {cap})"
        )
    return L


def neville_extrapolate(xs, ys, x: float = 0.0) -> float:
    """Neville polynomial extrapolation of (xs, ys) to x."""
    xs = np.asarray(xs, dtype=float)
    t = np.array(ys, dtype=float)
    n = len(xs)
    if len(t) != n or n == 0:
        raise DomainError("neville_extrapolate needs matching nonempty nodes")
    for k in range(1, n):
        t[: n - k] = (
            (x - xs[k : n]) * t[: n - k] + (xs[: n - k] - x) * t[1 : n - k + 1]
        ) / (xs[: n - k] - xs[k : n])
    return float(t[0])
