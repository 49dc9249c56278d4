"""Command-line front end: config ingestion, dispatch, machine-readable output.

Subcommands: det, index, eta, zeta, zeros, spectrum, symbol, oracle,
selftest.  Output is JSON (CSV where tabular, via --format csv) with a
fixed field order and shortest-round-trip float formatting, so identical
configs produce byte-identical output.  Exit codes: 0 success, 1 malformed
config, 2 domain error, 3 numerical non-convergence.  The environment
variable DISKDET_TOL overrides the default series-tail tolerance.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import determinant, flux, oracle, specfun, symbols, zeta_eta
from .errors import ConfigError, ConvergenceError, DomainError

DEFAULT_SERIES_TAIL_TOL = 1e-9
_KNOWN_TOLERANCES = ("series_tail",)


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration for profile-based subcommands."""

    radius: float
    profile: dict
    tolerances: dict = field(default_factory=dict)
    output_path: str | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ConfigError("<root>", "config must be a JSON object")
        unknown = set(raw) - {"radius", "profile", "tolerances", "output_path"}
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown field")
        if "radius" not in raw:
            raise ConfigError("radius", "missing")
        radius = raw["radius"]
        if not isinstance(radius, (int, float)) or isinstance(radius, bool) or \
                not math.isfinite(radius) or radius <= 0.0:
            raise ConfigError("radius", f"must be a positive real, got {radius!r}")
        if "profile" not in raw:
            raise ConfigError("profile", "missing")
        profile = raw["profile"]
        if not isinstance(profile, dict) or len(profile) != 1:
            raise ConfigError(
                "profile", "must be an object with exactly one of "
                "'polynomial' or 'tabulated'"
            )
        tag = next(iter(profile))
        if tag == "polynomial":
            coeffs = profile[tag]
            if not isinstance(coeffs, list) or not coeffs or not all(
                isinstance(c, (int, float)) and not isinstance(c, bool)
                and math.isfinite(c) for c in coeffs
            ):
                raise ConfigError("profile.polynomial",
                                  "must be a nonempty list of finite reals")
        elif tag == "tabulated":
            tab = profile[tag]
            if not isinstance(tab, dict) or set(tab) != {"r", "phi"}:
                raise ConfigError("profile.tabulated",
                                  "must be an object with 'r' and 'phi' lists")
            r, phi = tab["r"], tab["phi"]
            if not (isinstance(r, list) and isinstance(phi, list)) or \
                    len(r) != len(phi) or len(r) < 4:
                raise ConfigError("profile.tabulated",
                                  "'r' and 'phi' must be lists of equal length >= 4")
            if r[0] != 0.0 or any(b <= a for a, b in zip(r, r[1:])):
                raise ConfigError("profile.tabulated.r",
                                  "nodes must start at 0 and increase strictly")
            if r[-1] != radius:
                raise ConfigError("profile.tabulated.r",
                                  f"last node {r[-1]} must equal radius {radius}")
        else:
            raise ConfigError(f"profile.{tag}", "unknown profile kind")
        tolerances = raw.get("tolerances", {})
        if not isinstance(tolerances, dict):
            raise ConfigError("tolerances", "must be an object")
        for key, value in tolerances.items():
            if key not in _KNOWN_TOLERANCES:
                raise ConfigError(f"tolerances.{key}", "unknown tolerance")
            if not isinstance(value, (int, float)) or isinstance(value, bool) or \
                    not 0.0 < value:
                raise ConfigError(f"tolerances.{key}", "must be a positive real")
        output_path = raw.get("output_path")
        if output_path is not None and not isinstance(output_path, str):
            raise ConfigError("output_path", "must be a string")
        return cls(radius=float(radius), profile=profile,
                   tolerances=dict(tolerances), output_path=output_path)

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError("<file>", f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError("<file>", f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(raw)

    def to_dict(self) -> dict:
        out = {"radius": self.radius, "profile": self.profile}
        if self.tolerances:
            out["tolerances"] = self.tolerances
        if self.output_path is not None:
            out["output_path"] = self.output_path
        return out

    def build_profile(self) -> flux.FluxProfile:
        tag = next(iter(self.profile))
        if tag == "polynomial":
            return flux.FluxProfile.polynomial(self.profile[tag], self.radius)
        tab = self.profile[tag]
        return flux.FluxProfile.tabulated(tab["r"], tab["phi"])

    def series_tail_tol(self) -> float:
        return float(self.tolerances.get("series_tail", _env_tail_tol()))


def _env_tail_tol() -> float:
    raw = os.environ.get("DISKDET_TOL")
    if raw is None:
        return DEFAULT_SERIES_TAIL_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise ConfigError("DISKDET_TOL", f"not a real number: {raw!r}") from exc
    if not value > 0.0:
        raise ConfigError("DISKDET_TOL", "must be positive")
    return value


def _emit(text: str, output_path: str | None) -> None:
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header: str, rows) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(repr(c) if isinstance(c, float) else str(c) for c in row))
        buf.write("\n")
    return buf.getvalue()


def _complex_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


# ---------------------------------------------------------------------------
# subcommand implementations


def _cmd_det(args) -> int:
    config = RunConfig.from_file(args.config)
    profile = config.build_profile()
    ld = determinant.log_det(profile)
    triple = determinant.index_report(profile)
    payload = ld.to_dict()
    payload["index"] = list(triple)
    _emit(_json_text(payload), args.output or config.output_path)
    return 0


def _profile_for_kappa(kappa: float, radius: float = 1.0) -> flux.FluxProfile:
    # canonical background phi = -kappa r^2 / (2 R^2) realizing the flux
    return flux.FluxProfile.polynomial([0.0, -0.5 * kappa / radius**2], radius)


def _cmd_index(args) -> int:
    if (args.kappa is None) == (args.config is None):
        raise ConfigError("kappa", "provide exactly one of --kappa or --config")
    if args.config is not None:
        config = RunConfig.from_file(args.config)
        profile = config.build_profile()
    else:
        profile = _profile_for_kappa(args.kappa)
    triple = determinant.index_report(profile)
    data = flux.FluxData.from_profile(profile)
    payload = {"kappa": data.kappa, "k": data.k, "index": list(triple)}
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_eta(args) -> int:
    e = zeta_eta.eta_zero(args.kappa)
    numeric = zeta_eta.eta_zero_numeric(args.kappa, args.cutoff)
    payload = {
        "kappa": e.kappa,
        "k": e.k,
        "h": e.h,
        "eta0": e.eta0,
        "eta0_numeric": numeric,
        "index": e.index,
    }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_zeta(args) -> int:
    tol = min(_env_tail_tol(), DEFAULT_SERIES_TAIL_TOL)
    zv = zeta_eta.zeta_values(args.nu, tol)
    payload = {
        "nu": zv.order,
        "f0": zv.f0,
        "fprime0": zv.fprime0,
        "terms_used": zv.terms_used,
        "tail_estimate": zv.tail_estimate,
    }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_zeros(args) -> int:
    table = specfun.bessel_zeros(args.nu, args.count)
    if args.format == "csv":
        rows = ((args.nu, l, float(z)) for l, z in enumerate(table.zeros, start=1))
        _emit(_csv_text("nu,l,zero", rows), args.output)
    else:
        payload = {"nu": table.order, "count": table.count,
                   "zeros": [float(z) for z in table.zeros]}
        _emit(_json_text(payload), args.output)
    return 0


def _cmd_spectrum(args) -> int:
    ev = oracle.free_spectrum_exact(args.n, args.k, args.radius, args.count)
    positive = ev[ev > 0.0]
    if args.format == "csv":
        rows = ((args.n, l, float(lam), float(-lam))
                for l, lam in enumerate(positive, start=1))
        _emit(_csv_text("n,l,lambda_pos,lambda_neg", rows), args.output)
    else:
        payload = {
            "n": args.n,
            "k": args.k,
            "radius": args.radius,
            "bc_type": oracle.bc_type(args.n, args.k),
            "bessel_order": oracle.spectral_order(args.n, args.k),
            "doubled_with_mode": args.n - 1 if args.n == args.k + 1 else None,
            "eigenvalues": [float(x) for x in ev],
        }
        _emit(_json_text(payload), args.output)
    return 0


def _cmd_oracle(args) -> int:
    rep = oracle.free_spectrum_fd(args.n, args.k, args.radius, args.grid,
                                  count=args.count)
    if args.format == "csv":
        rows = ((rep.n, l, exact, fd, rel) for l, exact, fd, rel in rep.rows())
        _emit(_csv_text("n,l,exact,fd,rel_err", rows), args.output)
    else:
        payload = {
            "n": rep.n,
            "k": rep.k,
            "radius": rep.radius,
            "bc_type": rep.bc_type,
            "grid_size": rep.grid_size,
            "zero_mode_dimension": rep.zero_mode_dimension,
            "max_rel_error": rep.max_rel_error,
            "reference": [float(x) for x in rep.reference],
            "fd": [float(x) for x in rep.compared],
        }
        _emit(_json_text(payload), args.output)
    return 0


def _symbol_point(sm: symbols.SymbolMatrix, xi) -> dict:
    return {
        "xi": xi if isinstance(xi, float) else [float(v) for v in xi],
        "entries": _complex_matrix(sm.entries),
        "rank": sm.rank,
        "idempotent": sm.is_idempotent(),
        "trace_re": sm.trace.real,
    }


def _cmd_symbol(args) -> int:
    if args.case == "full2d":
        pts = [_symbol_point(symbols.calderon_symbol_2d(xi), xi)
               for xi in symbols.cosphere_points_2d()]
        rep = symbols.ellipticity_test(
            symbols.BoundaryOperatorSymbol.aps_pair_2d(),
            symbols.calderon_symbol_2d, symbols.cosphere_points_2d())
        payload = {"case": "full2d", "dim": 2, "points": pts,
                   "rank_constant": rep.rank_constant,
                   "aps_pair_elliptic": rep.elliptic}
    elif args.case == "chiral2d":
        pts = [_symbol_point(symbols.calderon_symbol_2d_chiral(xi), xi)
               for xi in symbols.cosphere_points_2d()]
        rep = symbols.ellipticity_test(
            symbols.BoundaryOperatorSymbol.local_row([1.0]),
            symbols.calderon_symbol_2d_chiral, symbols.cosphere_points_2d())
        payload = {"case": "chiral2d", "dim": 1, "points": pts,
                   "rank_constant": rep.rank_constant}
    elif args.case == "full4d":
        xi = np.asarray(args.xi if args.xi else [0.0, 0.0, 1.0], dtype=float)
        xi = xi / np.linalg.norm(xi)
        sm = symbols.calderon_symbol(4, np.append(xi, 0.0), [0.0, 0.0, 0.0, 1.0])
        payload = {"case": "full4d", "dim": 4,
                   "points": [_symbol_point(sm, list(xi))]}
    else:  # chiral4d
        b1, b2 = args.beta if args.beta else (1.0, 1.0)
        witness = symbols.chiral_obstruction_witness(b1, b2)
        grid = symbols.cosphere_points_3d(args.samples, extra=[witness])
        rep = symbols.ellipticity_test(
            symbols.BoundaryOperatorSymbol.local_row([b1, b2]),
            symbols.calderon_symbol_4d_chiral, grid)
        q_at_witness = symbols.calderon_symbol_4d_chiral(witness)
        bq = np.array([[b1, b2]], dtype=complex) @ q_at_witness.entries
        scale = float(np.hypot(b1, b2))
        payload = {
            "case": "chiral4d",
            "dim": 2,
            "beta": [b1, b2],
            "witness": [float(v) for v in witness],
            "points": [_symbol_point(q_at_witness, list(witness))],
            "rank_b_q_at_witness": symbols.matrix_rank(bq, scale=scale),
            "elliptic": rep.elliptic,
        }
    _emit(_json_text(payload), args.output)
    return 0


# ---------------------------------------------------------------------------
# selftest: the invariant suite, one pass/fail line per item


def _selftest_checks(quick: bool):
    gauss = flux.FluxProfile.polynomial([0.0, -0.5], 1.0)
    zero_flux = flux.FluxProfile.polynomial([0.0, -2.0, 1.0], 1.0)
    n_zero_table = 2_000 if quick else 10_000
    fd_grid = 500 if quick else 2000

    def specfun_residuals():
        for nu in (0.0, 1.0, 2.0, 4.0):
            t = specfun.bessel_zeros(nu, 300)
            resid = np.abs(specfun.bessel_j(nu, t.zeros))
            scale = np.maximum(1.0, np.abs(specfun.bessel_j_prime(nu, t.zeros)))
            assert np.all(resid <= 1e-10 * scale), f"residuals at nu={nu}"

    def specfun_interlacing():
        for nu in (0.0, 1.0, 2.0):
            a = specfun.bessel_zeros(nu, 50).zeros
            b = specfun.bessel_zeros(nu + 1.0, 50).zeros
            assert np.all(a[:-1] < b[:-1]) and np.all(b[:-1] < a[1:])

    def specfun_half_order():
        for l in (1, 5, 50, 500):
            z = specfun.bessel_zero(0.5, l)
            assert abs(z - l * math.pi) <= 1e-13 * l * math.pi, f"l={l}"

    def specfun_mcmahon_bound():
        for nu in (0.0, 1.0, 3.0):
            t = specfun.bessel_zeros(nu, 150)
            l = np.arange(1, 151, dtype=float)
            beta = (l + 0.5 * nu - 0.25) * math.pi
            mask = l > nu
            assert np.all(np.abs(t.zeros[mask] - beta[mask]) < 1.0)

    def flux_qn_closed_form():
        for n in (0, 2):
            got = flux.q_n(gauss, n, 1.0, alpha=0.0)
            want = 1.0 / (2 * n + 2)
            assert abs(got - want) <= 1e-12 * want

    def flux_zero_mode_norms():
        from scipy.integrate import quad

        p = flux.FluxProfile.polynomial([0.0, -1.25], 1.0)  # kappa = 2.5
        for n in range(3):
            psi = flux.zero_mode(p, n)
            val, _ = quad(lambda r: abs(psi(r, 0.0)[0]) ** 2 * r, 0, 1,
                          epsabs=1e-13, limit=200)
            assert abs(2.0 * math.pi * val - 1.0) <= 1e-8, f"norm of mode {n}"

    def flux_gauge_shift():
        for c in (0.5, -0.5, 5.0, -5.0):
            a = flux.interacting_quotient(gauss)
            b = flux.interacting_quotient(gauss.shifted(c))
            assert abs(a - b) <= 1e-9, f"shift {c}"

    def zeta_fprime_half():
        got = zeta_eta.f_prime_zero(0.5)
        assert abs(got + 0.5 * math.log(2.0)) <= 1e-9, f"got {got}"

    def zeta_f0_numeric():
        orders = (0.0, 1.0) if quick else (0.0, 1.0, 2.0, 3.0)
        for nu in orders:
            got = zeta_eta.f_zero_numeric(nu, n_zero_table)
            assert abs(got - zeta_eta.f_zero(nu)) <= 1e-6, f"nu={nu}"

    def zeta_route_consistency():
        for k in (-1, 0, 1, 2, 3):
            a = zeta_eta.free_quotient(k, 1.0)
            b = zeta_eta.free_quotient_series(k, 1.0)
            assert abs(a - b) <= 1e-8, f"k={k}"

    def eta_consistency():
        for kappa in (0.0, 0.25, 0.5, 1.0, 1.5, 2.7):
            want = zeta_eta.eta_zero(kappa).eta0
            got = zeta_eta.eta_zero_numeric(kappa, 2000)
            assert abs(got - want) <= 1e-6, f"kappa={kappa}"

    def index_three_ways():
        rng = np.random.default_rng(20250810)
        kappas = list(rng.uniform(-1.0, 5.0, size=10 if quick else 50))
        kappas += [0.0, 0.5, 1.0, 2.5]
        for kappa in kappas:
            if kappa <= -1.0:
                continue
            triple = determinant.index_report(_profile_for_kappa(float(kappa)))
            assert triple[0] == triple[1] == triple[2], f"kappa={kappa}"

    def det_route_consistency():
        ks = (-1, 0, 2) if quick else (-1, 0, 1, 2, 3)
        for k in ks:
            p = _profile_for_kappa(k + 0.5)
            a = determinant.log_det(p, route="fprime").total
            b = determinant.log_det(p, route="bessel-ratio").total
            assert abs(a - b) <= 1e-8, f"k={k}"

    def det_phase():
        for k in (-1, 0, 1, 2):
            ld = determinant.log_det(_profile_for_kappa(k + 0.75))
            want = -abs(k + 1) * math.pi / 2.0
            assert abs(ld.total.imag - want) <= 1e-10, f"k={k}"
        # kappa = 1 end-to-end
        ld = determinant.log_det(gauss)
        assert abs(ld.total.imag + math.pi / 2.0) <= 1e-10

    def det_gauge_shift():
        for c in (0.5, -5.0):
            a = determinant.log_det(gauss).total
            b = determinant.log_det(gauss.shifted(c)).total
            assert abs(a - b) <= 1e-9

    def det_kappa_zero_reduction():
        ld = determinant.log_det(zero_flux)
        assert ld.total.imag == 0.0
        assert abs(ld.total.real - flux.bulk_term(zero_flux)) <= 1e-9

    def symbols_idempotence():
        rng = np.random.default_rng(7)
        for _ in range(250 if quick else 500):
            for nu in (2, 4):
                n = rng.normal(size=nu)
                n /= np.linalg.norm(n)
                xi = rng.normal(size=nu)
                xi -= (xi @ n) * n
                xi /= np.linalg.norm(xi)
                q = symbols.calderon_symbol(nu, xi, n)
                assert np.linalg.norm(q.entries @ q.entries - q.entries) <= 1e-12
                assert abs(q.trace - q.dim / 2.0) <= 1e-12

    def symbols_obstruction():
        rng = np.random.default_rng(11)
        for _ in range(100):
            b1, b2 = rng.normal(size=2)
            while b1 == 0.0 or b2 == 0.0:
                b1, b2 = rng.normal(size=2)
            xi = symbols.chiral_obstruction_witness(b1, b2)
            q = symbols.calderon_symbol_4d_chiral(xi)
            bq = np.array([[b1, b2]], dtype=complex) @ q.entries
            assert symbols.matrix_rank(bq, scale=float(np.hypot(b1, b2))) == 0

    def symbols_ellipticity():
        rep = symbols.ellipticity_test(
            symbols.BoundaryOperatorSymbol.aps_pair_2d(),
            symbols.calderon_symbol_2d, symbols.cosphere_points_2d())
        assert rep.elliptic
        rep = symbols.ellipticity_test(
            symbols.BoundaryOperatorSymbol.local_row([1.0, -2.0]),
            symbols.calderon_symbol_2d, symbols.cosphere_points_2d())
        assert rep.elliptic
        rep = symbols.ellipticity_test(
            symbols.BoundaryOperatorSymbol.local_row([1.0]),
            symbols.calderon_symbol_2d_chiral, symbols.cosphere_points_2d())
        assert not rep.elliptic and not rep.rank_constant

    def oracle_rayleigh():
        got = oracle.zeta_partial_sum(0.0, 2.0, n_zero_table)
        assert abs(got - 0.25) <= 1e-8, f"sum = {got}"

    def oracle_fd_spectra():
        modes = ((0, -1), (1, 0)) if quick else tuple(
            (n, k) for n in (0, 1, 2) for k in (-1, 0, 1)
        )
        for n, k in modes:
            rep = oracle.free_spectrum_fd(n, k, 1.0, fd_grid, count=5)
            assert rep.max_rel_error <= 1e-3, f"n={n}, k={k}"
        e1 = oracle.free_spectrum_fd(0, -1, 1.0, 500).max_rel_error
        e2 = oracle.free_spectrum_fd(0, -1, 1.0, 1000).max_rel_error
        assert math.log2(e1 / e2) >= 1.7
        a = oracle.free_spectrum_fd(1, 0, 1.0, fd_grid, count=5)
        b = oracle.free_spectrum_fd(0, 0, 1.0, fd_grid, count=5)
        assert np.max(np.abs(a.compared - b.compared) / a.compared) <= 1e-5

    def oracle_green():
        assert oracle.green_holomorphy_check(gauss, 16 if quick else 64) <= 1e-6
        spec = oracle.green_boundary_spectrum(gauss, 1.0, 128)
        modes = np.arange(128) - 64
        assert spec[modes >= 1].max() <= 1e-12  # k = 0 for this profile

    def cli_config_roundtrip():
        raw = {"radius": 1.0, "profile": {"polynomial": [0.0, -0.5]}}
        a = RunConfig.from_dict(raw)
        b = RunConfig.from_dict(json.loads(json.dumps(a.to_dict())))
        assert a == b

    return [
        ("specfun-zero-residuals", specfun_residuals),
        ("specfun-interlacing", specfun_interlacing),
        ("specfun-half-order-exact", specfun_half_order),
        ("specfun-mcmahon-bound", specfun_mcmahon_bound),
        ("flux-qn-closed-form", flux_qn_closed_form),
        ("flux-zero-mode-norms", flux_zero_mode_norms),
        ("flux-gauge-shift", flux_gauge_shift),
        ("zeta-fprime-half-order", zeta_fprime_half),
        ("zeta-f0-numeric-continuation", zeta_f0_numeric),
        ("zeta-free-quotient-routes", zeta_route_consistency),
        ("eta-numeric-vs-closed-form", eta_consistency),
        ("index-three-ways", index_three_ways),
        ("det-route-consistency", det_route_consistency),
        ("det-phase", det_phase),
        ("det-gauge-shift", det_gauge_shift),
        ("det-kappa-zero-reduction", det_kappa_zero_reduction),
        ("symbols-idempotence-trace", symbols_idempotence),
        ("symbols-chiral-obstruction", symbols_obstruction),
        ("symbols-ellipticity", symbols_ellipticity),
        ("oracle-rayleigh-sum", oracle_rayleigh),
        ("oracle-fd-spectra", oracle_fd_spectra),
        ("oracle-green-kernel", oracle_green),
        ("cli-config-roundtrip", cli_config_roundtrip),
    ]


def selftest(quick: bool = False, zero_perturbation: float = 0.0,
             stream=None) -> int:
    """Run the invariant suite; print one PASS/FAIL line per item.

    `zero_perturbation` is a fault-injection hook: it offsets every
    freshly built Bessel-zero table, which must make the zeta
    consistency checks fail loudly.  Returns the number of failures.
    """
    stream = stream or sys.stdout
    failures = 0
    old = specfun._test_zero_perturbation
    specfun._test_zero_perturbation = zero_perturbation
    try:
        for name, check in _selftest_checks(quick):
            try:
                check()
            except Exception as exc:
                failures += 1
                stream.write(f"FAIL {name}: {exc}\n")
            else:
                stream.write(f"PASS {name}\n")
    finally:
        specfun._test_zero_perturbation = old
    stream.write(f"{'OK' if failures == 0 else 'FAILED'} "
                 f"({failures} failure(s))\n")
    return failures


def _cmd_selftest(args) -> int:
    failures = selftest(quick=args.quick, zero_perturbation=args.perturb_zeros)
    return 0 if failures == 0 else 3


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskdet",
        description="Zeta-regularized Dirac determinants on a flux-threaded "
                    "disk under spectral boundary conditions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", help="full log-determinant quotient from a config")
    p.add_argument("--config", required=True, help="JSON run configuration")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_det)

    p = sub.add_parser("index", help="index of the Dirac operator, three ways")
    p.add_argument("--kappa", type=float, help="flux through the disk")
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("eta", help="eta invariant of the boundary operator")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--cutoff", type=int, default=2000)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("zeta", help="f_nu(0) and f'_nu(0) for the Bessel zeta")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("zeros", help="table of positive zeros of J_nu")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("spectrum", help="exact free spectrum of one angular mode")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("symbol", help="principal symbols and rank reports")
    p.add_argument("--case", choices=("full2d", "chiral2d", "full4d", "chiral4d"),
                   required=True)
    p.add_argument("--xi", type=float, nargs=3, help="boundary covector (4d cases)")
    p.add_argument("--beta", type=float, nargs=2,
                   help="local condition row (chiral4d)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_symbol)

    p = sub.add_parser("oracle", help="FD spectrum vs exact Bessel zeros")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("selftest", help="run the invariant suite")
    p.add_argument("--quick", action="store_true", help="reduced scales")
    p.add_argument("--perturb-zeros", type=float, default=0.0,
                   help="fault-injection offset added to zero tables")
    p.set_defaults(func=_cmd_selftest)

    return parser


def run(argv) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return 2
    except ConvergenceError as exc:
        sys.stderr.write(f"convergence error: {exc}\n")
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
