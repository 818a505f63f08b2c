"""Split frequencies and energy spectra of the 2+1 DKP oscillator in a field.

Units: energies in mc^2, frequencies as hbar*omega / mc^2. The field enters
only through the signed ratio ``delta = omega_tilde / omega``.

Spin labels for the vector components are field-relative: reversing the field
exchanges the projections carried by the two split components, so the
``i = 1`` component at ``delta < 0`` uses ``s = -1`` and vice versa. At
``delta >= 0`` this is the plain assignment s1 = +1, s2 = -1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from dkpo_lab.errors import DomainError, InvalidCaseError

SPIN = {0: 0, 1: 1, 2: -1}
FREQUENCY_NAMES = {0: "omega0", 1: "omega1", 2: "omega2"}


class Infinite(enum.Enum):
    """Marker for a vertical degeneracy line in the (n, l) plane."""

    INFINITE = "inf"

    def __str__(self):
        return self.value


INFINITE = Infinite.INFINITE


@dataclass(frozen=True)
class OscillatorConfig:
    hbar_omega: float  # hbar*omega in units of mc^2
    delta: float = 0.0  # omega_tilde / omega, signed like qB
    mass_energy: float = 1.0

    def __post_init__(self):
        if not self.hbar_omega > 0 or not math.isfinite(self.hbar_omega):
            raise DomainError(f"hbar_omega must be positive and finite, got {self.hbar_omega}")
        if not math.isfinite(self.delta):
            raise DomainError(f"delta must be finite, got {self.delta}")
        if not self.mass_energy > 0:
            raise DomainError(f"mass_energy must be positive, got {self.mass_energy}")

    @property
    def hbar_omega_tilde(self):
        return self.delta * self.hbar_omega

    @property
    def field_sign(self):
        return -1 if self.delta < 0 else 1


@dataclass(frozen=True)
class SplitFrequencies:
    omega0: float
    omega1: float
    omega2: float

    def __getitem__(self, i):
        return (self.omega0, self.omega1, self.omega2)[i]

    def alphas(self, hbar_omega):
        """Frequencies relative to omega, i.e. m*omega_i*a^2/hbar when m*omega*a^2/hbar = 1."""
        return tuple(w / hbar_omega for w in (self.omega0, self.omega1, self.omega2))


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int
    i: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be non-negative, got {self.n}")
        if self.i not in SPIN:
            raise DomainError(f"spin index must be 0, 1 or 2, got {self.i}")

    @property
    def spin(self):
        return SPIN[self.i]


@dataclass(frozen=True)
class EnergyLevel:
    value: float
    branch: int
    qn: QuantumNumbers
    frequency_used: str
    radicand: float


def split_frequencies(cfg: OscillatorConfig) -> SplitFrequencies:
    w, wt = cfg.hbar_omega, cfg.hbar_omega_tilde
    return SplitFrequencies(math.hypot(w, wt), w + wt, w - wt)


def effective_spin(i, cfg_or_sign):
    sign = cfg_or_sign.field_sign if isinstance(cfg_or_sign, OscillatorConfig) else cfg_or_sign
    return SPIN[i] * (1 if i == 0 else sign)


def _check_branch(branch):
    if branch in ("+", 1, +1.0):
        return 1
    if branch in ("-", -1, -1.0):
        return -1
    raise DomainError(f"branch must be + or -, got {branch!r}")


def splitting_radicand(cfg, n, l, i, lz_signed=False):
    """(E/mc^2)^2 for component ``i``; broadcasts over array ``n`` and ``l``.

    i = 0 is the scalar formula; i = 1, 2 the split vector components.
    """
    n = np.asarray(n, dtype=np.float64)
    l = np.asarray(l, dtype=np.float64)
    abs_l = np.abs(l)
    freqs = split_frequencies(cfg)
    if i == 0:
        l_field = l if lz_signed else abs_l
        return (1.0 - 2.0 * (l_field * cfg.hbar_omega_tilde + cfg.hbar_omega)
                + freqs.omega0 * (4.0 * n + 2.0 * (abs_l + 1.0)))
    s = effective_spin(i, cfg)
    return 1.0 + freqs[i] * (4.0 * n + 2.0 * abs_l * (1 - s) + 2.0 * s)


def _level(cfg, radicand, n, l, i, branch, freq_name):
    branch = _check_branch(branch)
    radicand = float(radicand)
    if radicand < 0:
        raise DomainError(
            f"negative radicand {radicand!r} for n={n}, l={l}, i={i}", value=radicand)
    value = branch * cfg.mass_energy * math.sqrt(radicand)
    return EnergyLevel(value, branch, QuantumNumbers(int(n), int(l), i), freq_name, radicand)


def scalar_energy(cfg, n, l, branch=1, lz_signed=False) -> EnergyLevel:
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    rad = splitting_radicand(cfg, n, l, 0, lz_signed)
    return _level(cfg, rad, n, l, 0, branch, "omega0")


def scalar_b_component_energy(cfg, n, l, branch=1, lz_signed=False) -> EnergyLevel:
    """Scalar formula with omega -> -omega; omega0 and omega_tilde are kept."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    l_field = l if lz_signed else abs(l)
    w0 = split_frequencies(cfg).omega0
    rad = (1.0 - 2.0 * (l_field * cfg.hbar_omega_tilde - cfg.hbar_omega)
           + w0 * (4.0 * n + 2.0 * (abs(l) + 1.0)))
    return _level(cfg, rad, n, l, 0, branch, "omega0")


def vector_energy(cfg, n, l, i, branch=1) -> EnergyLevel:
    if i not in (1, 2):
        raise DomainError(f"vector component index must be 1 or 2, got {i}")
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    rad = splitting_radicand(cfg, n, l, i)
    return _level(cfg, rad, n, l, i, branch, FREQUENCY_NAMES[i])


def splitting_energy(cfg, n, l, i, branch=1, lz_signed=False) -> EnergyLevel:
    """Unified form: i = 0 gives the scalar level, i = 1, 2 the vector levels."""
    if i == 0:
        return scalar_energy(cfg, n, l, branch, lz_signed)
    return vector_energy(cfg, n, l, i, branch)


def figure_config(sign_field=1):
    """omega = 2|omega_tilde|, hbar*omega = mc^2 (so m*omega*a^2/hbar = 1 with a = hbar/mc)."""
    sign = -1 if sign_field in ("-", -1) else 1
    return OscillatorConfig(hbar_omega=1.0, delta=0.5 * sign)


def dimensionless_energy(n, l, i, sign_field=1, lz_signed=False) -> float:
    """Positive-branch energy / mc^2 in the figure convention."""
    return splitting_energy(figure_config(sign_field), n, l, i, 1, lz_signed).value


def energy_grid(cfg, i, n_max, l_max, lz_signed=False, l_min=0):
    """Positive-branch energies on the grid n in [0, n_max], l in [l_min, l_max].

    Returns ``(n, l, eps)`` with ``eps[n_index, l_index]``.
    """
    if n_max < 0 or l_max < l_min:
        raise DomainError("empty grid")
    n = np.arange(n_max + 1)
    l = np.arange(l_min, l_max + 1)
    rad = splitting_radicand(cfg, n[:, None], l[None, :], i, lz_signed)
    if (rad < 0).any():
        bad = np.argwhere(rad < 0)[0]
        value = float(rad[tuple(bad)])
        raise DomainError(
            f"negative radicand {value!r} at n={n[bad[0]]}, l={l[bad[1]]}, i={i}", value=value)
    return n, l, cfg.mass_energy * np.sqrt(rad)


def degeneracy_slope(i, cfg):
    """dl/dn along constant-energy lines for l >= 0."""
    freqs = split_frequencies(cfg)
    if freqs[i] == 0:
        raise DomainError(f"omega{i} = 0: component does not oscillate", value=0.0)
    if i == 0:
        return -2.0 / (1.0 - cfg.hbar_omega_tilde / freqs.omega0)
    s = effective_spin(i, cfg)
    if s == 1:
        return INFINITE
    return -2.0 / (1.0 - s)


def fit_degeneracy_slope(eps, level=None, rtol=1e-12):
    """Fit the slope of a constant-energy line through a grid ``eps[n, l]``.

    Crossings are located per n by linear interpolation of eps^2 along l and a
    straight line is least-squares fitted through them. A grid with no
    variation along l gives ``INFINITE``.
    """
    eps = np.asarray(eps, dtype=np.float64)
    scale = np.max(np.abs(eps))
    if np.max(np.abs(eps - eps[:, :1])) <= rtol * scale:
        return INFINITE
    if level is None:
        level = eps[eps.shape[0] // 2, eps.shape[1] // 2]
    target = level * level
    sq = eps * eps
    ns, ls = [], []
    for n_idx in range(sq.shape[0]):
        row = sq[n_idx]
        if not row[0] <= target <= row[-1]:
            continue
        j = int(np.searchsorted(row, target))
        if j == 0:
            ls.append(0.0)
        else:
            lo, hi = row[j - 1], row[j]
            ls.append(j - 1 + (target - lo) / (hi - lo))
        ns.append(float(n_idx))
    if len(ns) < 2:
        raise DomainError("constant-energy line crosses fewer than two grid columns")
    slope, _ = np.polyfit(ns, ls, 1)
    return float(slope)


class Constraint(enum.Enum):
    D1_ZERO = "D1Zero"
    D2_ZERO = "D2Zero"
    D1_EQ_I_D2 = "D1EqICD2"
    D1_EQ_MINUS_I_D2 = "D1EqMinusICD2"
    OMEGA_TILDE_EQ_OMEGA = "OmegaTildeEqOmega"
    OMEGA_TILDE_EQ_MINUS_OMEGA = "OmegaTildeEqMinusOmega"


@dataclass(frozen=True)
class CaseSummary:
    constraint: Constraint
    effective_frequency: float  # hbar*omega_eff / mc^2 of the oscillating component(s)
    oscillating: tuple
    free: tuple
    vanishing: tuple
    spin_projection: int | None
    relation: str

    @property
    def oscillation_cancelled(self):
        return bool(self.free)


def classify_special_case(cfg, constraint, atol=1e-12) -> CaseSummary:
    c = Constraint(constraint) if not isinstance(constraint, Constraint) else constraint
    f = split_frequencies(cfg)
    if c in (Constraint.D1_ZERO, Constraint.D2_ZERO):
        rel = "phi1 = -phi2" if c is Constraint.D1_ZERO else "phi1 = phi2"
        return CaseSummary(c, f.omega0, ("phi1", "phi2"), (), (), 0, rel)
    if c is Constraint.D1_EQ_I_D2:
        free = ("phi2",) if f.omega2 == 0 else ()
        osc = () if free else ("phi2",)
        return CaseSummary(c, f.omega2, osc, free, ("phi1",), -1, "phi1 = 0")
    if c is Constraint.D1_EQ_MINUS_I_D2:
        free = ("phi1",) if f.omega1 == 0 else ()
        osc = () if free else ("phi1",)
        return CaseSummary(c, f.omega1, osc, free, ("phi2",), 1, "phi2 = 0")
    if c is Constraint.OMEGA_TILDE_EQ_OMEGA:
        if abs(cfg.delta - 1.0) > atol:
            raise InvalidCaseError(f"{c.value} requires delta = 1, got {cfg.delta}")
        return CaseSummary(c, 2.0 * cfg.hbar_omega, ("phi1",), ("phi2",), (), 1,
                           "phi2 free particle")
    if abs(cfg.delta + 1.0) > atol:
        raise InvalidCaseError(f"{c.value} requires delta = -1, got {cfg.delta}")
    return CaseSummary(c, 2.0 * cfg.hbar_omega, ("phi2",), ("phi1",), (), -1,
                       "phi1 free particle")


def nonrelativistic_energy(level: EnergyLevel, cfg) -> float:
    """(E^2 - (mc^2)^2) / (2 mc^2)."""
    if level.branch < 0:
        raise DomainError("non-relativistic limit defined for the positive branch only")
    mc2 = cfg.mass_energy
    return (level.value ** 2 - mc2 ** 2) / (2.0 * mc2)
