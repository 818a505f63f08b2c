"""Command-line entry point: ``dkpo-lab <subcommand> ...``.

Exit codes: 0 success, 1 domain/numerical error, 2 usage error. Errors go to
stderr prefixed with ``error[<category>]:``.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from dkpo_lab import algebra, eigenfunctions as ef, spectrum as sp, thermodynamics as th
from dkpo_lab.errors import DKPOError, DomainError
from dkpo_lab.serialize import csv_text, emit, json_text, precision

FIG_DELTA = 0.5
Z_COMPARE_RTOL = 0.05


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().rstrip()}")


def _sign(value):
    if value in ("+", "+1", "1"):
        return 1
    if value in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"expected + or -, got {value!r}")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


# ---------------------------------------------------------------------------
# algebra-check
# ---------------------------------------------------------------------------


def cmd_algebra_check(args):
    sectors = ["scalar", "vector"] if args.sector == "both" else [args.sector]
    lines = [f"{'sector':<8} {'check':<28} {'result':<6} detail"]
    ok = True
    for name in sectors:
        rep = algebra.build_representation(name)
        report = algebra.check_algebra(rep)
        eta = algebra.build_eta0(rep)
        eye = np.eye(rep.dim, dtype=np.int64)
        checks = [
            ("DKP algebra (27 triples)", report.passed,
             f"{report.n_passed}/{report.checked} pass"),
            ("eta0^2 = 1", bool((eta @ eta == eye).all()), ""),
            ("eta0 beta0 = beta0 eta0", bool((eta @ rep.beta[0] == rep.beta[0] @ eta).all()), ""),
        ]
        if args.perturb:
            total = detected = 0
            missed = []
            for label, bad in algebra.single_entry_perturbations(rep):
                total += 1
                if algebra.check_algebra(bad).passed:
                    missed.append(label)
                else:
                    detected += 1
            checks.append(("single-entry perturbations", not missed,
                           f"{detected}/{total} detected" + (f"; missed {missed}" if missed else "")))
        for label, passed, detail in checks:
            ok &= passed
            lines.append(f"{name:<8} {label:<28} {'PASS' if passed else 'FAIL':<6} {detail}".rstrip())
    emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def cmd_spectrum(args):
    if args.sector == "scalar" and args.i != 0:
        raise UsageError("--sector scalar only has component --i 0")
    cfg = sp.OscillatorConfig(hbar_omega=args.hbar_omega, delta=args.sign_field * args.delta)
    n, l, eps = sp.energy_grid(cfg, args.i, args.n_max, args.l_max, args.lz_signed)
    eps = args.branch * eps
    try:
        slope = sp.degeneracy_slope(args.i, cfg)
    except DomainError:
        slope = None
    rows = [(int(nn), int(ll), args.i, float(eps[a, b]))
            for a, nn in enumerate(n) for b, ll in enumerate(l)]
    if args.format == "json":
        payload = {
            "sector": args.sector, "i": args.i, "delta": cfg.delta,
            "hbar_omega": cfg.hbar_omega, "branch": "+" if args.branch > 0 else "-",
            "lz_signed": args.lz_signed, "slope": slope,
            "rows": [{"n": r[0], "l": r[1], "i": r[2], "epsilon": r[3]} for r in rows],
        }
        emit(json_text(payload), args.out)
    else:
        emit(csv_text(["n", "l", "i", "epsilon"], rows), args.out)
    return 0


# ---------------------------------------------------------------------------
# pdf
# ---------------------------------------------------------------------------


def cmd_pdf(args):
    state = ef.figure_state(args.n, args.l, args.i, args.sign_field * args.delta)
    if args.normalized:
        state = ef.normalize(state)
    xi, rho = ef.pdf_grid(state, args.xi_max, args.samples, args.mode)
    if args.format == "json":
        emit(json_text({"n": args.n, "l": args.l, "i": args.i, "alpha": state.alpha,
                        "mode": args.mode, "norm": state.norm,
                        "rows": [{"xi": float(x), "rho": float(r)} for x, r in zip(xi, rho)]}),
             args.out)
    else:
        emit(csv_text(["xi", "rho"], zip(xi.tolist(), rho.tolist())), args.out)
    return 0


# ---------------------------------------------------------------------------
# thermodynamics
# ---------------------------------------------------------------------------


def point_payload(p: th.ThermoPoint):
    def comp(c):
        return {"U_mc2": c.U, "U_over_kT": c.U * p.gamma, "F_mc2": c.F,
                "F_over_kT": c.F * p.gamma, "S_over_kB": c.S, "C_over_kB": c.C}

    return {
        "gamma": p.gamma, "delta": p.delta, "method": p.method.value,
        "Z": p.Z, "lnZ": p.lnZ,
        "U_mc2": p.U, "U_over_kT": p.U_over_kT,
        "F_mc2": p.F, "F_over_kT": p.F_over_kT,
        "S_over_kB": p.S, "C_over_kB": p.C,
        "components": [comp(c) for c in p.components],
        "notes": list(p.notes),
    }


def cmd_thermo(args):
    point = th.potentials(th.ThermoConfig(args.gamma, args.delta), th.Method(args.method))
    emit(json_text(point_payload(point)), args.out)
    return 0


def delta_grid(lo, hi, steps):
    """Evenly spaced grid, rounded so that e.g. 1.0 is hit exactly."""
    return [float(x) for x in np.round(np.linspace(lo, hi, steps), 12)]


SCAN_COLUMNS = ["delta", "Z", "U_over_kT", "S_over_kB", "C_over_kB", "method", "divergent"]


def _scan_rows(gamma, deltas, method):
    rows = []
    for r in th.scan_delta(gamma, deltas, method):
        if r.divergent:
            rows.append((r.delta, None, None, None, None, method.value, True))
        else:
            p = r.point
            rows.append((r.delta, p.Z, p.U_over_kT, p.S, p.C, method.value, False))
    return rows


def cmd_thermo_scan(args):
    if args.delta_max < args.delta_min:
        raise UsageError("--delta-max must be >= --delta-min")
    deltas = delta_grid(args.delta_min, args.delta_max, args.steps)
    rows = _scan_rows(args.gamma, deltas, th.Method(args.method))
    emit(csv_text(SCAN_COLUMNS, rows), args.out)
    return 0


def cmd_z_compare(args):
    rows = []
    for c in th.compare_partition(args.gamma_list, args.delta_list):
        rows.append((c.gamma, c.delta, c.Z_exact, c.Z_closed, c.rel_error,
                     Z_COMPARE_RTOL, c.rel_error <= Z_COMPARE_RTOL, c.terms))
    emit(csv_text(["gamma", "delta", "Z_exact", "Z_closed", "rel_error", "tolerance",
                   "within_tolerance", "terms"], rows), args.out)
    return 0


# ---------------------------------------------------------------------------
# fig
# ---------------------------------------------------------------------------


def _check_fig_delta(fig, delta):
    if delta is not None and not math.isclose(abs(delta), FIG_DELTA, abs_tol=1e-12):
        raise DomainError(
            f"{fig} convention violated: omega = 2|omega_tilde| requires |delta| = 0.5, got {delta}")


def fig2(outdir, sign_field, mode, xi_max, samples):
    delta = sign_field * FIG_DELTA
    written = []
    for n in (0, 1, 2):
        cols = []
        for i in (0, 1, 2):
            _, rho = ef.pdf_grid(ef.figure_state(n, 1, i, delta), xi_max, samples, mode)
            cols.append(rho)
        xi = np.linspace(0.0, xi_max, samples)
        rows = zip(xi.tolist(), *(c.tolist() for c in cols))
        path = outdir / f"fig2_n{n}.csv"
        emit(csv_text(["xi", "rho0", "rho1", "rho2"], rows), path)
        written.append(path)
    return written


def fig3(outdir, sign_field, n_max=100, l_max=100):
    cfg = sp.figure_config(sign_field)
    written, slopes = [], []
    for i, tag in ((1, "s1"), (0, "s0"), (2, "s2")):
        n, l, eps = sp.energy_grid(cfg, i, n_max, l_max)
        rows = [(int(a), int(b), float(eps[ia, ib]))
                for ia, a in enumerate(n) for ib, b in enumerate(l)]
        path = outdir / f"fig3_{tag}.csv"
        emit(csv_text(["n", "l", "epsilon"], rows), path)
        written.append(path)
        slopes.append((tag, sp.degeneracy_slope(i, cfg), sp.fit_degeneracy_slope(eps)))
    path = outdir / "fig3_slopes.csv"
    emit(csv_text(["spin", "analytic_slope", "fitted_slope"], slopes), path)
    written.append(path)
    return written


def fig4(outdir, gammas, delta_max, steps):
    deltas = delta_grid(0.0, delta_max, steps)
    written = []
    series = {"U": [], "S": [], "C": []}
    for g in gammas:
        for r in th.scan_delta(g, deltas):
            p = r.point
            series["U"].append((g, r.delta, None if p is None else p.U_over_kT, r.divergent))
            series["S"].append((g, r.delta, None if p is None else p.S, r.divergent))
            series["C"].append((g, r.delta, None if p is None else p.C, r.divergent))
    units = {"U": "U_over_kT", "S": "S_over_kB", "C": "C_over_kB"}
    for key, rows in series.items():
        path = outdir / f"fig4_{key}.csv"
        emit(csv_text(["gamma", "delta", units[key], "divergent"], rows), path)
        written.append(path)
    return written


def cmd_fig(args):
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.figure in ("F2", "F3"):
        _check_fig_delta(args.figure, args.delta)
    if args.figure == "F2":
        written = fig2(outdir, args.sign_field, args.mode, args.xi_max, args.samples)
    elif args.figure == "F3":
        written = fig3(outdir, args.sign_field, args.n_max, args.l_max)
    else:
        if args.hbar_omega is not None and args.hbar_omega != th.HBAR_OMEGA:
            raise DomainError(f"F4 convention violated: hbar*omega/mc^2 must be 1/2, "
                              f"got {args.hbar_omega}")
        written = fig4(outdir, args.gammas, args.delta_max, args.steps)
    for path in written:
        print(path)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="dkpo-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="SUBCOMMAND")
    sub.required = True

    a = sub.add_parser("algebra-check", help="verify the DKP algebra of both representations")
    a.add_argument("--sector", choices=["scalar", "vector", "both"], default="both")
    a.add_argument("--perturb", action="store_true",
                   help="also check that every single-entry perturbation is detected")
    a.add_argument("--out")
    a.set_defaults(func=cmd_algebra_check)

    s = sub.add_parser("spectrum", help="energy grid over (n, l)")
    s.add_argument("--sector", choices=["scalar", "vector"], required=True)
    s.add_argument("--i", type=int, choices=[0, 1, 2], default=0)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--l-max", type=int, required=True)
    s.add_argument("--delta", type=float, required=True, help="omega_tilde / omega")
    s.add_argument("--hbar-omega", type=float, default=1.0, help="hbar*omega / mc^2")
    s.add_argument("--sign-field", type=_sign, default=1)
    s.add_argument("--branch", type=_sign, default=1)
    s.add_argument("--lz-signed", action="store_true",
                   help="use l*omega_tilde instead of |l|*omega_tilde in the scalar term")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectrum)

    d = sub.add_parser("pdf", help="radial probability density samples")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--l", type=int, required=True)
    d.add_argument("--i", type=int, choices=[0, 1, 2], required=True)
    d.add_argument("--delta", type=float, required=True)
    d.add_argument("--sign-field", type=_sign, default=1)
    d.add_argument("--mode", choices=["squared", "compact"], default="squared")
    d.add_argument("--normalized", action="store_true")
    d.add_argument("--xi-max", type=float, required=True)
    d.add_argument("--samples", type=_positive_int, required=True)
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    d.add_argument("--out")
    d.set_defaults(func=cmd_pdf)

    t = sub.add_parser("thermo", help="thermodynamic potentials at one (gamma, delta)")
    t.add_argument("--gamma", type=float, required=True)
    t.add_argument("--delta", type=float, required=True)
    t.add_argument("--method", choices=["closed", "exact", "asymptotic"], default="closed")
    t.add_argument("--out")
    t.set_defaults(func=cmd_thermo)

    ts = sub.add_parser("thermo-scan", help="potentials across a delta grid")
    ts.add_argument("--gamma", type=float, required=True)
    ts.add_argument("--delta-min", type=float, required=True)
    ts.add_argument("--delta-max", type=float, required=True)
    ts.add_argument("--steps", type=_positive_int, required=True)
    ts.add_argument("--method", choices=["closed", "exact"], default="closed")
    ts.add_argument("--out")
    ts.set_defaults(func=cmd_thermo_scan)

    z = sub.add_parser("z-compare", help="exact sum vs closed-form partition function")
    z.add_argument("--gamma-list", type=_float_list, default=[0.01, 0.03, 0.05])
    z.add_argument("--delta-list", type=_float_list, default=[0.0, 0.3, 0.6])
    z.add_argument("--out")
    z.set_defaults(func=cmd_z_compare)

    f = sub.add_parser("fig", help="write the data behind figures 2-4")
    f.add_argument("figure", choices=["F2", "F3", "F4"])
    f.add_argument("--outdir", default=".")
    f.add_argument("--sign-field", type=_sign, default=1)
    f.add_argument("--delta", type=float, default=None,
                   help="F2/F3 only; must be +-0.5 if given")
    f.add_argument("--mode", choices=["squared", "compact"], default="squared")
    f.add_argument("--xi-max", type=float, default=5.0)
    f.add_argument("--samples", type=_positive_int, default=401)
    f.add_argument("--n-max", type=int, default=100)
    f.add_argument("--l-max", type=int, default=100)
    f.add_argument("--gammas", type=_float_list, default=[0.1, 0.5, 1.0])
    f.add_argument("--delta-max", type=float, default=3.0)
    f.add_argument("--steps", type=_positive_int, default=61)
    f.add_argument("--hbar-omega", type=float, default=None, help="F4 only; must be 0.5")
    f.set_defaults(func=cmd_fig)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        try:
            precision()
        except ValueError as exc:
            raise UsageError(f"DKPO_PRECISION: {exc}")
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return 2
    except DKPOError as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return 1
