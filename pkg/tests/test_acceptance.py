"""Acceptance criteria 1-12, one PASS/FAIL line per criterion (run with ``-s``)."""
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.special import roots_genlaguerre

import oracles
from dkpo_lab import algebra
from dkpo_lab import eigenfunctions as ef
from dkpo_lab import spectrum as sp
from dkpo_lab import thermodynamics as th


def report(number, ok, detail):
    print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def test_01_algebra():
    t0 = time.perf_counter()
    failures, undetected, perturbations = 0, [], 0
    for sector in ("scalar", "vector"):
        rep = algebra.build_representation(sector)
        failures += len(algebra.check_algebra(rep).failures)
        for label, bad in algebra.single_entry_perturbations(rep):
            perturbations += 1
            if algebra.check_algebra(bad).passed:
                undetected.append(f"{sector}:{label}")
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and not undetected and elapsed < 1.0
    report(1, ok, f"triple failures={failures}, undetected perturbations={undetected} "
                  f"of {perturbations}, runtime {elapsed:.3f}s")


def test_02_scalar_rest_energy():
    level = sp.scalar_energy(sp.OscillatorConfig(hbar_omega=0.3, delta=0.0), 0, 0)
    err = abs(level.value - 1.0)
    report(2, err <= 1e-12, f"epsilon(0,0) = {level.value!r}, |rel err| = {err:.2e}")


def test_03_l_independence():
    cfg = sp.figure_config(+1)
    worst = 0.0
    for n in range(0, 101):
        ref = sp.vector_energy(cfg, n, 0, 1).value
        for l in range(-100, 101):
            worst = max(worst, abs(sp.vector_energy(cfg, n, l, 1).value - ref) / ref)
    report(3, worst <= 1e-12, f"max rel deviation over n<=100, |l|<=100: {worst:.2e}")


def test_04_flip_symmetry():
    _, _, e1 = sp.energy_grid(sp.figure_config(+1), 1, 100, 100)
    _, _, e2 = sp.energy_grid(sp.figure_config(-1), 2, 100, 100)
    worst = float(np.max(np.abs(e1 - e2) / np.abs(e1)))
    report(4, worst <= 1e-12, f"max rel |eps1(+) - eps2(-)| on 101x101 grid: {worst:.2e}")


def test_05_degeneracy_slopes():
    cfg = sp.figure_config(+1)
    expected = {1: math.inf, 0: -2 / (1 - 1 / math.sqrt(5)), 2: -1.0}
    lines, ok = [], True
    for i, want in expected.items():
        _, _, eps = sp.energy_grid(cfg, i, 100, 100)
        fitted = sp.fit_degeneracy_slope(eps)
        analytic = sp.degeneracy_slope(i, cfg)
        if math.isinf(want):
            good = fitted is sp.INFINITE and analytic is sp.INFINITE
        else:
            good = (fitted is not sp.INFINITE and abs(fitted - want) <= 0.01 * abs(want)
                    and abs(analytic - want) <= 1e-12 * abs(want))
        ok &= good
        lines.append(f"i={i}: fitted={fitted} analytic={analytic}")
    report(5, ok, "; ".join(map(str, lines)))


def test_06_laguerre():
    x = np.linspace(0.0, 50.0, 100)
    worst = 0.0
    for n in range(21):
        for k in range(11):
            got = ef.laguerre(n, k, x)
            ref = np.array([float(oracles.laguerre_series(n, k, xv)) for xv in x])
            worst = max(worst, float(np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300))))
    ortho = 0.0
    for k in range(11):
        nodes, w = roots_genlaguerre(12, k)
        for n in range(6):
            for m in range(n + 1, 6):
                val = np.sum(w * ef.laguerre(n, k, nodes) * ef.laguerre(m, k, nodes))
                scale = math.sqrt(math.gamma(n + k + 1) / math.factorial(n)
                                  * math.gamma(m + k + 1) / math.factorial(m))
                ortho = max(ortho, abs(val) / scale)
    ok = worst <= 1e-10 and ortho <= 1e-8
    report(6, ok, f"max rel recurrence error {worst:.2e}; max normalised overlap {ortho:.2e}")


def test_07_normalization():
    worst = 0.0
    for i in (0, 1, 2):
        for n in range(6):
            for l in range(-5, 6):
                state = ef.normalize(ef.figure_state(n, l, i, 0.5))
                val, _ = ef.norm_integral(state)
                worst = max(worst, abs(val - 1.0))
    report(7, worst <= 1e-8, f"max |integral - 1| over 198 states: {worst:.2e}")


def test_08_partition_cross_validation():
    gammas, deltas = (0.01, 0.03, 0.05), (0.0, 0.3, 0.6)
    ok, slowest, lines = True, 0.0, []
    for d in deltas:
        errs = []
        for g in gammas:
            t0 = time.perf_counter()
            cfg = th.ThermoConfig(g, d)
            z = th.exact_partition_sum(cfg).Z
            slowest = max(slowest, time.perf_counter() - t0)
            errs.append(abs(z - th.closed_form_Z(cfg)) / z)
        monotone = all(a <= b for a, b in zip(errs, errs[1:]))  # gamma increasing
        ok &= max(errs) <= 0.05 and monotone
        lines.append(f"delta={d}: " + ",".join(f"{e:.2e}" for e in errs))
    ok &= slowest <= 60.0
    report(8, ok, "; ".join(lines) + f"; slowest point {slowest:.2f}s")


def test_09_asymptotics():
    p = th.potentials(th.ThermoConfig(0.01, 0.0))
    u_ok = abs(p.U_over_kT - 8) <= 0.05
    c_ok = abs(p.C - 8) <= 0.05
    ratios = {d: 1e-3 ** 8 * th.closed_form_Z(th.ThermoConfig(1e-3, d)) * (1 - d * d) ** 2 / 36
              for d in (0.0, 0.5)}
    r_ok = all(abs(r - 1) <= 0.005 for r in ratios.values())
    report(9, u_ok and c_ok and r_ok,
           f"U/kT={p.U_over_kT:.6f} C/kB={p.C:.6f} gamma^8 Z (1-d^2)^2/36={ratios}")


def test_10_identity():
    worst, count = 0.0, 0
    for g in (0.001, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0):
        for d in (0.0, 0.3, 0.6, 0.9, 0.99, 0.999):
            worst = max(worst, th.potentials(th.ThermoConfig(g, d)).identity_residual())
            count += 1
    for r in th.scan_delta(0.05, np.linspace(0, 3, 61)):
        if not r.divergent:
            worst = max(worst, r.point.identity_residual())
            count += 1
    report(10, worst <= 1e-8, f"max rel |S T - (U - F)| over {count} points: {worst:.2e}")


def test_11_phase_transition():
    rows = th.scan_delta(0.05, [0.9, 0.99, 0.999, 1.0, 1.5])
    finite = [r for r in rows if not r.divergent]
    x = np.log([1 - r.delta for r in finite])
    y = np.log([r.point.Z for r in finite])
    slope = float(np.polyfit(x, y, 1)[0])
    flagged = [r.delta for r in rows if r.divergent]
    real = all(isinstance(r.point.Z, float) and math.isfinite(r.point.Z) for r in finite)
    ok = abs(slope + 2) <= 0.05 and flagged == [1.0, 1.5] and real
    report(11, ok, f"log-log slope {slope:.4f}; divergent flagged at {flagged}")


DETERMINISM_CASES = {
    "algebra-check": ["algebra-check", "--perturb"],
    "spectrum": ["spectrum", "--sector", "vector", "--i", "2", "--n-max", "20", "--l-max", "20",
                 "--delta", "0.5", "--format", "json"],
    "pdf": ["pdf", "--n", "2", "--l", "1", "--i", "1", "--delta", "0.5", "--xi-max", "5",
            "--samples", "200", "--normalized"],
    "thermo": ["thermo", "--gamma", "0.05", "--delta", "0.3", "--method", "exact"],
    "thermo-scan": ["thermo-scan", "--gamma", "0.05", "--delta-min", "0", "--delta-max", "3",
                    "--steps", "31"],
    "z-compare": ["z-compare", "--gamma-list", "0.05", "--delta-list", "0,0.3"],
}


def _run(argv, **kw):
    return subprocess.run([sys.executable, "-m", "dkpo_lab", *argv], capture_output=True,
                          env=dict(os.environ), check=False, **kw)


def test_12_determinism(tmp_path):
    mismatched = []
    for name, argv in DETERMINISM_CASES.items():
        outputs = []
        for rep in range(2):
            path = tmp_path / f"{name}_{rep}.out"
            res = _run(argv + ["--out", str(path)])
            assert res.returncode == 0, res.stderr
            outputs.append(path.read_bytes())
        if outputs[0] != outputs[1]:
            mismatched.append(name)
    for fig in ("F2", "F3", "F4"):
        dirs = [tmp_path / f"{fig}_{rep}" for rep in range(2)]
        for d in dirs:
            assert _run(["fig", fig, "--outdir", str(d)]).returncode == 0
        names = sorted(p.name for p in dirs[0].iterdir())
        if names != sorted(p.name for p in dirs[1].iterdir()) or any(
                (dirs[0] / n).read_bytes() != (dirs[1] / n).read_bytes() for n in names):
            mismatched.append(f"fig {fig}")
    checked = len(DETERMINISM_CASES) + 3
    report(12, not mismatched, f"{checked} subcommand runs compared, mismatched: {mismatched}")
