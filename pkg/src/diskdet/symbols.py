"""Principal-symbol toolkit for boundary-condition ellipticity.

The Calderon projector of a first-order Dirac-type operator has principal
symbol q(x; xi) = (1/2)(Id + i xislash nslash / |xi|) at a boundary point
with outward unit normal n and boundary cotangent xi.  A zeroth-order
boundary operator with symbol b(x; xi) yields an elliptic condition iff
rank(b q) = rank(q) for every xi != 0 on the boundary cosphere; for the
even-dimensional chiral operator no constant local b can achieve this,
and the witness covector where the rank drops to zero is constructed
explicitly here.

Clifford conventions are frozen: in two dimensions gamma_0 = sigma_1,
gamma_1 = sigma_2; in four dimensions gamma_j = offdiag(sigma_j, sigma_j)
for j = 1..3 and gamma_4 = i offdiag(Id, -Id), with the normal along the
fourth axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)

RANK_RTOL = 1e-8  # singular values below RANK_RTOL * s_max count as zero


def gamma_matrices(nu: int) -> tuple[np.ndarray, ...]:
    """Euclidean gamma matrices in the frozen representation (nu = 2 or 4)."""
    if nu == 2:
        return (SIGMA[0], SIGMA[1])
    if nu == 4:
        zero = np.zeros((2, 2), dtype=complex)
        eye = np.eye(2, dtype=complex)
        gammas = [
            np.block([[zero, s], [s, zero]]) for s in SIGMA
        ]
        gammas.append(1.0j * np.block([[zero, eye], [-eye, zero]]))
        return tuple(gammas)
    raise DomainError(f"gamma representation fixed for nu in {{2, 4}}, got {nu}")


def _slash(v, gammas) -> np.ndarray:
    return sum(vi * g for vi, g in zip(v, gammas))


@dataclass(frozen=True)
class SymbolMatrix:
    """A principal symbol evaluated at one (x; xi) with |xi| = 1."""

    dim: int
    entries: np.ndarray = field(repr=False)
    normal: np.ndarray | None = None

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        if m.shape != (self.dim, self.dim):
            raise DomainError(f"entries must be {self.dim}x{self.dim}")

    def is_idempotent(self, tol: float = 1e-12) -> bool:
        return bool(np.linalg.norm(self.entries @ self.entries - self.entries) <= tol)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    @property
    def rank(self) -> int:
        return matrix_rank(self.entries)


def matrix_rank(m: np.ndarray, scale: float | None = None) -> int:
    """Rank by singular values, thresholded at RANK_RTOL * largest.

    `scale` sets a floor for the threshold.  For a product like b q the
    natural scale is ||b|| ||q||: without it, a product that vanishes up
    to roundoff (~1e-17) would count its noise as rank one.
    """
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    cut = RANK_RTOL * max(s[0], scale if scale is not None else 0.0)
    return int(np.sum(s > cut))


def calderon_symbol(nu: int, xi, n) -> SymbolMatrix:
    """q(x; xi) = (1/2)(Id + i xislash nslash) for unit xi orthogonal to n."""
    gammas = gamma_matrices(nu)
    xi = np.asarray(xi, dtype=float)
    n = np.asarray(n, dtype=float)
    if xi.shape != (nu,) or n.shape != (nu,):
        raise DomainError(f"xi and n must be {nu}-vectors")
    if abs(np.dot(xi, xi) - 1.0) > 1e-12 or abs(np.dot(n, n) - 1.0) > 1e-12:
        raise DomainError("xi and n must be unit vectors")
    if abs(np.dot(xi, n)) > 1e-12:
        raise DomainError("xi must be orthogonal to the normal n")
    dim = 2 ** (nu // 2)
    q = 0.5 * (np.eye(dim, dtype=complex) + 1.0j * _slash(xi, gammas) @ _slash(n, gammas))
    return SymbolMatrix(dim=dim, entries=q, normal=n)


def heaviside(x: float) -> float:
    if x == 0.0:
        raise DomainError("symbol evaluation requires xi != 0")
    return 1.0 if x > 0.0 else 0.0


def calderon_symbol_2d(xi: float) -> SymbolMatrix:
    """The 2-d full-operator symbol diag(H(xi), H(-xi)) in boundary frequency."""
    q = np.diag([heaviside(xi), heaviside(-xi)]).astype(complex)
    return SymbolMatrix(dim=2, entries=q)


def calderon_symbol_2d_chiral(xi: float) -> SymbolMatrix:
    """The 2-d chiral symbol H(xi): a 1x1 projector of non-constant rank."""
    return SymbolMatrix(dim=1, entries=np.array([[heaviside(xi)]], dtype=complex))


def calderon_symbol_4d_chiral(xi) -> SymbolMatrix:
    """Upper chiral block (1/2)(Id + xi.sigma/|xi|): rank one for xi != 0."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (3,):
        raise DomainError("4-d chiral symbol needs a 3-vector boundary covector")
    norm = np.linalg.norm(xi)
    if norm == 0.0:
        raise DomainError("symbol evaluation requires xi != 0")
    q = 0.5 * (np.eye(2, dtype=complex) + _slash(xi / norm, SIGMA))
    return SymbolMatrix(dim=2, entries=q)


@dataclass(frozen=True)
class BoundaryOperatorSymbol:
    """Principal symbol of a boundary operator: xi -> r x k complex matrix."""

    rows: int
    entries: Callable[..., np.ndarray]
    local: bool

    def __call__(self, xi) -> np.ndarray:
        m = np.atleast_2d(np.asarray(self.entries(xi), dtype=complex))
        if m.shape[0] != self.rows:
            raise DomainError(f"boundary symbol must have {self.rows} rows")
        return m

    @classmethod
    def local_row(cls, betas) -> "BoundaryOperatorSymbol":
        """A local (xi-independent) 1 x k multiplication operator."""
        row = np.atleast_2d(np.asarray(betas, dtype=complex))
        return cls(rows=1, entries=lambda xi, _r=row: _r, local=True)

    @classmethod
    def aps_pair_2d(cls) -> "BoundaryOperatorSymbol":
        """The spectral pair b(xi) = (H(xi), H(-xi)) for the 2-d full operator."""

        def entries(xi):
            return np.array([[heaviside(xi), heaviside(-xi)]], dtype=complex)

        return cls(rows=1, entries=entries, local=False)


@dataclass(frozen=True)
class EllipticityReport:
    """Outcome of the rank test over a cosphere sample."""

    elliptic: bool
    rank_constant: bool
    rank_q: int | None
    witness: object = None  # failing xi, or the (xi, rank) pair for rank jumps

    def __bool__(self) -> bool:
        return self.elliptic


def cosphere_points_2d() -> list[float]:
    """The two points of the 0-sphere in the boundary cotangent line."""
    return [-1.0, 1.0]


def fibonacci_sphere(samples: int) -> np.ndarray:
    """Deterministic quasi-uniform grid on S^2."""
    if samples < 1:
        raise DomainError("fibonacci_sphere requires samples >= 1")
    i = np.arange(samples, dtype=float) + 0.5
    phi = np.arccos(1.0 - 2.0 * i / samples)
    theta = np.pi * (1.0 + 5.0**0.5) * i
    return np.column_stack(
        [np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)]
    )


def cosphere_points_3d(samples: int, extra=()) -> np.ndarray:
    """Fibonacci grid plus the coordinate axes and any adversarial points."""
    axes = np.vstack([np.eye(3), -np.eye(3)])
    pts = [fibonacci_sphere(samples), axes]
    if len(extra):
        e = np.atleast_2d(np.asarray(extra, dtype=float))
        pts.append(e / np.linalg.norm(e, axis=1, keepdims=True))
    return np.vstack(pts)


def ellipticity_test(
    b: BoundaryOperatorSymbol,
    q_sampler: Callable[..., SymbolMatrix],
    samples,
) -> EllipticityReport:
    """Rank test of Definition-type ellipticity over sampled covectors.

    `samples` is an iterable of cosphere points accepted by both the
    boundary symbol and `q_sampler`.  If rank(q) is not constant over the
    sample, that is reported as a distinct outcome (elliptic=False,
    rank_constant=False) with the offending covector; otherwise the
    condition is elliptic iff rank(b(xi) q(xi)) = rank(q) at every xi.
    """
    samples = list(samples)
    if not samples:
        raise DomainError("ellipticity_test requires at least one sample")
    rank_q = None
    for xi in samples:
        q = q_sampler(xi)
        r = q.rank
        if rank_q is None:
            rank_q = r
        elif r != rank_q:
            return EllipticityReport(
                elliptic=False, rank_constant=False, rank_q=None, witness=(xi, r)
            )
    for xi in samples:
        q = q_sampler(xi)
        bm = b(xi)
        scale = float(np.linalg.norm(bm, 2) * np.linalg.norm(q.entries, 2))
        if matrix_rank(bm @ q.entries, scale=scale) != rank_q:
            return EllipticityReport(
                elliptic=False, rank_constant=True, rank_q=rank_q, witness=xi
            )
    return EllipticityReport(elliptic=True, rank_constant=True, rank_q=rank_q)


def chiral_obstruction_witness(beta1: float, beta2: float) -> np.ndarray:
    """The unit covector where (beta1, beta2) fails the 4-d chiral rank test.

    xi = ( -2 b1 b2, 0, b2^2 - b1^2 ) / (b1^2 + b2^2) satisfies |xi| = 1
    and rank(b q_ch(xi)) = 0: the topological obstruction made concrete.
    """
    s = beta1 * beta1 + beta2 * beta2
    if s <= 0.0:
        raise DomainError("witness requires beta1^2 + beta2^2 > 0")
    return np.array([-2.0 * beta1 * beta2 / s, 0.0, (beta2**2 - beta1**2) / s])
