"""Canonical ensemble of the vector sector (positive-energy states only).

Conventions: hbar*omega = mc^2/2, so alpha_i = (1 + s_i*delta)/2, and
gamma = mc^2/(k_B T). Energies (U, F) are stored in units of mc^2, entropy and
heat capacity in units of k_B. ``U_over_kT`` etc. are derived properties.

The two vector components contribute

    Z1 = 2 sum_n n     exp(-gamma sqrt(2(1+delta) n + 2 + delta))
    Z2 = 2 sum_n (n+1) exp(-gamma sqrt(2(1-delta) n + delta))

and Z = Z1 * Z2.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from dkpo_lab.errors import DivergenceError, DomainError, NumericalError
from dkpo_lab.kernels import weighted_exp_sqrt_sum

log = logging.getLogger(__name__)

HBAR_OMEGA = 0.5
TERM_RTOL = 1e-14
TAIL_RTOL = 1e-13
HARD_CAP = 10 ** 8
IDENTITY_RTOL = 1e-8


class Method(enum.Enum):
    EXACT_SUM = "exact"
    CLOSED_FORM = "closed"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class ThermoConfig:
    gamma: float
    delta: float = 0.0

    def __post_init__(self):
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise DomainError(f"gamma must be positive and finite, got {self.gamma}")
        if not self.delta >= 0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")

    @property
    def alphas(self):
        return HBAR_OMEGA * (1 + self.delta), HBAR_OMEGA * (1 - self.delta)


def _require_convergent(delta):
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    if delta >= 1:
        raise DivergenceError(
            f"partition function diverges for delta >= 1 (got {delta}); "
            "pole of order 2 in (1 - delta) from the s = -1 component",
            pole_order=2, value=delta)


# ---------------------------------------------------------------------------
# level values
# ---------------------------------------------------------------------------


def level_value_1(n, delta):
    return math.sqrt(2 * (1 + delta) * n + 2 + delta)


def level_value_2(k, delta):
    """Energy / mc^2 of the s = -1 component at collapsed index k = n + |l|."""
    rad = 2 * (1 - delta) * k + delta
    if rad < 0:
        raise DomainError(f"negative radicand {rad!r} at k={k}, delta={delta}", value=rad)
    return math.sqrt(rad)


# (a, b, shift): summand (n + shift) * exp(-gamma*sqrt(a*n + b)), overall weight 2
def _component_params(delta):
    return ((2 * (1 + delta), 2 + delta, 0.0),
            (2 * (1 - delta), delta, 1.0))


# ---------------------------------------------------------------------------
# exact sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentSum:
    value: float  # includes the factor 2 of the degeneracy
    terms: int
    last_term: float
    tail_bound: float


@dataclass(frozen=True)
class PartitionSums:
    Z1: ComponentSum
    Z2: ComponentSum

    @property
    def Z(self):
        return self.Z1.value * self.Z2.value

    @property
    def lnZ(self):
        return math.log(self.Z1.value) + math.log(self.Z2.value)


def summand_peak(gamma, a, b, shift):
    """Location of the maximum of (x + shift) exp(-gamma sqrt(a x + b)) on x >= 0."""
    # stationary points solve 4(a x + b) = gamma^2 a^2 (x + shift)^2
    qa = gamma ** 2 * a ** 2
    qb = 2 * gamma ** 2 * a ** 2 * shift - 4 * a
    qc = gamma ** 2 * a ** 2 * shift ** 2 - 4 * b
    disc = qb * qb - 4 * qa * qc
    if qa == 0 or disc < 0:
        return 0.0
    return max(0.0, (-qb + math.sqrt(disc)) / (2 * qa))


def tail_integral(gamma, a, b, shift, x0):
    """Integral of (x + shift) exp(-gamma sqrt(a x + b)) over [x0, inf).

    Past the summand's peak this majorises the remaining sum from x0 + 1 on.
    """
    u = math.sqrt(a * x0 + b)
    g = gamma
    e = math.exp(-g * u)
    g1 = e * (u / g + 1 / g ** 2)
    g3 = e * (u ** 3 / g + 3 * u ** 2 / g ** 2 + 6 * u / g ** 3 + 6 / g ** 4)
    return 2.0 / a ** 2 * (g3 + (a * shift - b) * g1)


def _adaptive_component(gamma, a, b, shift, cap=HARD_CAP):
    peak = summand_peak(gamma, a, b, shift)
    parts = []
    n, block = 0, 4096
    while True:
        stop = min(n + block, cap)
        s, last = weighted_exp_sqrt_sum(gamma, a, b, shift, n, stop)
        parts.append(s)
        n = stop
        total = math.fsum(parts)
        if n - 1 > peak and total > 0:
            tail = tail_integral(gamma, a, b, shift, n - 1)
            if last <= TERM_RTOL * total and tail <= TAIL_RTOL * total:
                return ComponentSum(2.0 * total, n, 2.0 * last, 2.0 * tail)
        if n >= cap:
            raise NumericalError(
                f"partition sum not converged after hard cap of {cap} terms "
                f"(partial value {2.0 * total!r})", achieved=2.0 * total)
        block = min(2 * block, 1 << 22)


def exact_partition_sum(cfg: ThermoConfig, cap=HARD_CAP) -> PartitionSums:
    _require_convergent(cfg.delta)
    (p1, p2) = _component_params(cfg.delta)
    return PartitionSums(_adaptive_component(cfg.gamma, *p1, cap=cap),
                         _adaptive_component(cfg.gamma, *p2, cap=cap))


# ---------------------------------------------------------------------------
# Euler-Maclaurin
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (B_1 = -1/2 convention), exact."""
    a = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        a[k] = Fraction(1, k + 1)
        for j in range(k, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    b = a[0]
    return -b if m == 1 else b


def fd_weights(z, nodes, order):
    """Finite-difference weights for derivatives 0..order at ``z`` (Fornberg)."""
    x = np.asarray(nodes, dtype=np.float64)
    n = len(x)
    c = np.zeros((n, order + 1))
    c1, c4 = 1.0, x[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2, c5, c4 = 1.0, c4, x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


def forward_derivative(f, order, h, extra=8):
    """``order``-th derivative at 0 from a one-sided stencil 0, h, ..., (order+extra)h."""
    nodes = h * np.arange(order + extra + 1)
    w = fd_weights(0.0, nodes, order)[:, order]
    vals = np.array([f(float(x)) for x in nodes])
    return float(np.dot(w, vals))


@dataclass(frozen=True)
class EulerMaclaurinTerms:
    boundary: float
    integral: float
    corrections: tuple
    derivative_spread: float

    @property
    def value(self):
        return self.boundary + self.integral - math.fsum(self.corrections)


def euler_maclaurin_terms(f, p_max=3, h=0.1, upper=math.inf) -> EulerMaclaurinTerms:
    integral, err, *rest = integrate.quad(f, 0.0, upper, epsabs=1e-13, epsrel=1e-12,
                                          limit=400, full_output=1)
    if len(rest) > 1:
        raise NumericalError(f"integral did not converge: {rest[1]}", achieved=err)
    corrections, spread = [], 0.0
    for p in range(1, p_max + 1):
        d = 2 * p - 1
        coarse = forward_derivative(f, d, h)
        fine = forward_derivative(f, d, h / 2)
        spread = max(spread, abs(coarse - fine))
        corrections.append(float(bernoulli(2 * p)) / math.factorial(2 * p) * fine)
    return EulerMaclaurinTerms(0.5 * f(0.0), integral, tuple(corrections), spread)


def euler_maclaurin(f, p_max=3, h=0.1, upper=math.inf) -> float:
    """Approximate sum_{n>=0} f(n) by f(0)/2 + integral - Bernoulli corrections."""
    return euler_maclaurin_terms(f, p_max, h, upper).value


# ---------------------------------------------------------------------------
# closed form
# ---------------------------------------------------------------------------


def _closed_form_logs(gamma, delta):
    g = gamma
    r1 = math.sqrt(2 + delta)
    ln1 = (math.log(2.0) - g * r1 + math.log((2 + delta) * g ** 2 + 3 * r1 * g + 3)
           - 2 * math.log1p(delta) - 4 * math.log(g))
    r2 = math.sqrt(delta)
    # second factor kept in its reference grouping
    poly2 = r2 * g * ((1 - delta) * g ** 2 + 6) + (1 - delta) * g ** 2 + 2 * delta * g ** 2 + 6
    ln2 = -g * r2 + math.log(poly2) - 2 * math.log1p(-delta) - 4 * math.log(g)
    return ln1, ln2


@dataclass(frozen=True)
class ClosedFormZ:
    lnZ1: float
    lnZ2: float

    @property
    def Z1(self):
        return math.exp(self.lnZ1)

    @property
    def Z2(self):
        return math.exp(self.lnZ2)

    @property
    def lnZ(self):
        return self.lnZ1 + self.lnZ2

    @property
    def Z(self):
        return math.exp(self.lnZ)


def closed_form_parts(cfg: ThermoConfig) -> ClosedFormZ:
    _require_convergent(cfg.delta)
    return ClosedFormZ(*_closed_form_logs(cfg.gamma, cfg.delta))


def closed_form_Z(cfg: ThermoConfig) -> float:
    """High-temperature (integral-only) partition function of the vector sector."""
    return closed_form_parts(cfg).Z


def integral_x(gamma, a, b):
    """Integral of x exp(-gamma sqrt(a x + b)) over [0, inf)."""
    rb = math.sqrt(b)
    return 4 * math.exp(-gamma * rb) * (b * gamma ** 2 + 3 * rb * gamma + 3) / (a ** 2 * gamma ** 4)


def integral_x_plus_1(gamma, a, b):
    """Integral of (x + 1) exp(-gamma sqrt(a x + b)) over [0, inf)."""
    rb = math.sqrt(b)
    g = gamma
    return (2 * math.exp(-g * rb) * (rb * g * (a * g ** 2 + 6) + a * g ** 2 + 2 * b * g ** 2 + 6)
            / (a ** 2 * g ** 4))


# ---------------------------------------------------------------------------
# potentials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentPotentials:
    U: float
    F: float
    S: float
    C: float


@dataclass(frozen=True)
class ThermoPoint:
    gamma: float
    delta: float
    lnZ: float
    U: float  # mc^2
    F: float  # mc^2
    S: float  # k_B
    C: float  # k_B
    method: Method
    components: tuple = ()
    notes: tuple = field(default=())

    @property
    def Z(self):
        return math.exp(self.lnZ)

    @property
    def kT(self):
        return 1.0 / self.gamma

    @property
    def U_over_kT(self):
        return self.U * self.gamma

    @property
    def F_over_kT(self):
        return self.F * self.gamma

    def identity_residual(self):
        """Relative residual of S*T = U - F."""
        lhs = self.S / self.gamma
        rhs = self.U - self.F
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def _lnz_components(method, delta):
    if method is Method.CLOSED_FORM:
        return lambda g: np.array(_closed_form_logs(g, delta))
    if method is Method.EXACT_SUM:
        def exact(g):
            sums = exact_partition_sum(ThermoConfig(g, delta))
            return np.array([math.log(sums.Z1.value), math.log(sums.Z2.value)])
        return exact
    raise ValueError(method)


def _richardson(values, gamma, h):
    """First and second derivatives from samples at gamma + {0, +-h, +-h/2, +-h/4}.

    Returns ``(d1, d2, noisy)``; ``noisy`` flags a Richardson sequence that
    stops contracting above the rounding floor.
    """
    v0 = values[0]
    scale = np.max(np.abs(np.asarray(values)), axis=0)
    eps = np.finfo(np.float64).eps
    d1s, d2s, floors1, floors2 = [], [], [], []
    for k, step in enumerate((h, h / 2, h / 4)):
        plus, minus = values[1 + 2 * k], values[2 + 2 * k]
        d1s.append((plus - minus) / (2 * step))
        d2s.append((plus - 2 * v0 + minus) / step ** 2)
        floors1.append(16 * eps * scale / step)
        floors2.append(64 * eps * scale / step ** 2)
    d1 = (4 * d1s[1] - d1s[0]) / 3
    d2 = (4 * d2s[1] - d2s[0]) / 3
    noisy = False
    for seq, floor in ((d1s, floors1[2]), (d2s, floors2[2])):
        a = np.abs(seq[0] - seq[1])
        b = np.abs(seq[1] - seq[2])
        if np.any((b > a) & (b > floor)):
            noisy = True
    return d1, d2, noisy


def potentials(cfg: ThermoConfig, method=Method.CLOSED_FORM, rel_step=3e-3) -> ThermoPoint:
    method = Method(method) if not isinstance(method, Method) else method
    if method is Method.ASYMPTOTIC:
        return asymptotic_potentials(cfg)
    _require_convergent(cfg.delta)
    g = cfg.gamma
    h = g * rel_step
    lnz = _lnz_components(method, cfg.delta)
    grid = [g]
    for step in (h, h / 2, h / 4):
        grid += [g + step, g - step]
    samples = [lnz(x) for x in grid]  # each: (lnZ1, lnZ2)
    comp_ln = np.array(samples)
    total_ln = comp_ln.sum(axis=1)
    free = -comp_ln / np.array(grid)[:, None]  # per-component F(gamma)

    dln, d2ln, noisy_a = _richardson(comp_ln, g, h)
    dF, _, noisy_b = _richardson(free, g, h)
    dln_tot, d2ln_tot, noisy_c = _richardson(total_ln, g, h)
    dF_tot, _, noisy_d = _richardson(-total_ln / np.array(grid), g, h)

    components = tuple(
        ComponentPotentials(U=float(-dln[j]), F=float(free[0, j]),
                            S=float(g * g * dF[j]), C=float(g * g * d2ln[j]))
        for j in range(2))
    notes = []
    if noisy_a or noisy_b or noisy_c or noisy_d:
        notes.append("derivative-noise: Richardson sequence not contracting")
        log.warning("noisy derivative at gamma=%g delta=%g (%s)", g, cfg.delta, method.value)
    point = ThermoPoint(
        gamma=g, delta=cfg.delta, lnZ=float(total_ln[0]),
        U=float(-dln_tot), F=float(-total_ln[0] / g),
        S=float(g * g * dF_tot), C=float(g * g * d2ln_tot),
        method=method, components=components, notes=tuple(notes))
    if point.identity_residual() > IDENTITY_RTOL:
        notes.append(f"identity-residual {point.identity_residual():.3g}")
        point = ThermoPoint(**{**point.__dict__, "notes": tuple(notes)})
    return point


def asymptotic_potentials(cfg: ThermoConfig) -> ThermoPoint:
    """Leading high-temperature forms; Z ~ (k_B T / mc^2)^8 / (1 - delta^2)^2."""
    _require_convergent(cfg.delta)
    g, d = cfg.gamma, cfg.delta
    kT = 1.0 / g

    def part(weight, shift_factor):
        L = math.log(kT) - 0.5 * math.log(shift_factor)
        return ComponentPotentials(U=weight * kT, F=-weight * kT * L,
                                   S=weight * (L + 1), C=weight)

    c1, c2 = part(4.0, 1 + d), part(4.0, 1 - d)
    L = math.log(kT) - 0.25 * math.log1p(-d * d)
    return ThermoPoint(gamma=g, delta=d, lnZ=8 * L, U=8 * kT, F=-8 * kT * L,
                       S=8 * (L + 1), C=8.0, method=Method.ASYMPTOTIC,
                       components=(c1, c2))


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    delta: float
    point: ThermoPoint | None
    divergent: bool
    component: int | None = None  # component responsible for the divergence


def scan_delta(gamma, delta_grid, method=Method.CLOSED_FORM):
    rows = []
    for d in sorted(float(x) for x in delta_grid):
        if d < 0:
            raise DomainError(f"delta must be >= 0, got {d}")
        if d >= 1:
            rows.append(ScanRow(d, None, True, 2))
        else:
            rows.append(ScanRow(d, potentials(ThermoConfig(gamma, d), method), False))
    return rows


@dataclass(frozen=True)
class ZComparison:
    gamma: float
    delta: float
    Z_exact: float
    Z_closed: float
    terms: int

    @property
    def rel_error(self):
        return abs(self.Z_closed - self.Z_exact) / self.Z_exact


def compare_partition(gammas, deltas):
    out = []
    for d in deltas:
        for g in gammas:
            cfg = ThermoConfig(g, d)
            sums = exact_partition_sum(cfg)
            out.append(ZComparison(g, d, sums.Z, closed_form_Z(cfg),
                                   sums.Z1.terms + sums.Z2.terms))
    return out
