"""Zeta-regularized Dirac determinants on a flux-threaded disk.

The disk carries an axially symmetric Abelian gauge background and the
operator is closed with spectral (global) boundary conditions; this
package evaluates the regularized log-determinant quotient, the
eta-invariant and index cross-checks, and the principal-symbol
ellipticity toolkit, each validated by independent numerical oracles.
"""

from .determinant import LogDet, index_report, log_det
from .errors import ConfigError, ConvergenceError, DomainError
from .flux import (
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
from .oracle import (
    SpectrumReport,
    free_spectrum_exact,
    free_spectrum_fd,
    green_boundary_spectrum,
    green_holomorphy_check,
    zeta_partial_sum,
)
from .specfun import (
    BesselZeroTable,
    bessel_j,
    bessel_j_prime,
    bessel_zero,
    bessel_zeros,
)
from .symbols import (
    BoundaryOperatorSymbol,
    EllipticityReport,
    SymbolMatrix,
    calderon_symbol,
    chiral_obstruction_witness,
    ellipticity_test,
)
from .zeta_eta import (
    EtaData,
    ZetaValues,
    boundary_eigenvalue,
    eta_zero,
    eta_zero_numeric,
    f_prime_zero,
    f_zero,
    f_zero_numeric,
    free_quotient,
    free_quotient_series,
    zeta_values,
)

__version__ = "0.1.0"
