"""Radial eigenfunctions and probability densities.

Lengths are in units of the Compton wavelength (xi = r/a), and each state is
characterised by its dimensionless frequency alpha = m*omega_i*a^2/hbar.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

from dkpo_lab.errors import DomainError, NumericalError
from dkpo_lab.kernels import laguerre_array

QUAD_EPSABS = 1e-10


class PdfMode(enum.Enum):
    SQUARED = "squared"
    COMPACT = "compact"


@dataclass(frozen=True)
class RadialState:
    alpha: float
    n: int
    l: int
    spin_index: int = 0
    norm: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}", value=self.alpha)
        if self.n < 0:
            raise DomainError(f"n must be non-negative, got {self.n}")

    @property
    def xi_max(self):
        return math.sqrt((abs(self.l) + 4 * self.n + 40) / self.alpha)


def laguerre(n, k, x):
    """Associated Laguerre polynomial L_n^(k)(x) by upward recurrence."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    out = laguerre_array(n, k, x)
    return float(out) if np.ndim(out) == 0 else out


def figure_alphas(delta):
    """(alpha0, alpha1, alpha2) for m*omega*a^2/hbar = 1 and signed delta = omega_tilde/omega."""
    return math.hypot(1.0, delta), 1.0 + delta, 1.0 - delta


def figure_state(n, l, i, delta) -> RadialState:
    alpha = figure_alphas(delta)[i]
    if alpha <= 0:
        raise DomainError(f"alpha{i} = {alpha} <= 0 at delta = {delta}: component does not oscillate",
                          value=alpha)
    return RadialState(alpha, n, l, i)


def _radial(state, xi):
    u = state.alpha * np.square(np.asarray(xi, dtype=np.float64))
    k = abs(state.l)
    return u ** (0.5 * k) * np.exp(-0.5 * u) * laguerre_array(state.n, k, u)


def eigenfunction(state: RadialState, xi, theta=0.0):
    psi = state.norm * _radial(state, xi) * np.exp(1j * state.l * np.asarray(theta))
    return complex(psi) if np.ndim(psi) == 0 else psi


def pdf(state: RadialState, xi, mode=PdfMode.SQUARED):
    """Probability density at ``xi``.

    ``SQUARED`` is |psi|^2. ``COMPACT`` is the compact form
    (alpha xi^2)^|l| exp(-alpha xi^2) L_n^(2|l|)(alpha xi^2), which is not a
    square and can go negative for n >= 1.
    """
    mode = PdfMode(mode) if not isinstance(mode, PdfMode) else mode
    u = state.alpha * np.square(np.asarray(xi, dtype=np.float64))
    k = abs(state.l)
    envelope = u ** k * np.exp(-u)
    if mode is PdfMode.SQUARED:
        val = envelope * np.square(laguerre_array(state.n, k, u))
    else:
        val = envelope * laguerre_array(state.n, 2 * k, u)
    val = state.norm ** 2 * val
    return float(val) if np.ndim(val) == 0 else val


def norm_integral(state: RadialState):
    """Integral of |psi|^2 over the plane; returns ``(value, abserr)``."""

    def integrand(x):
        return 2.0 * math.pi * x * float(_radial(state, x)) ** 2

    val, err, info = _quad(integrand, 0.0, state.xi_max)
    return state.norm ** 2 * val, state.norm ** 2 * err


def _quad(f, a, b):
    val, err, info, *msg = integrate.quad(f, a, b, epsabs=QUAD_EPSABS, epsrel=1e-13,
                                          limit=400, full_output=1)
    if msg:
        raise NumericalError(f"quadrature did not converge: {msg[0]}", achieved=err)
    return val, err, info


def normalize(state: RadialState) -> RadialState:
    unit = replace(state, norm=1.0)
    val, err = norm_integral(unit)
    if err > QUAD_EPSABS * max(1.0, val):
        raise NumericalError(f"normalisation integral error {err:.3g} above tolerance", achieved=err)
    return replace(state, norm=1.0 / math.sqrt(val))


def analytic_norm(state: RadialState) -> float:
    """Closed-form normalisation constant sqrt(alpha n! / (pi Gamma(n+|l|+1)))."""
    k = abs(state.l)
    log = (math.log(state.alpha) + math.lgamma(state.n + 1)
           - math.log(math.pi) - math.lgamma(state.n + k + 1))
    return math.exp(0.5 * log)


def pdf_grid(state: RadialState, xi_max, samples, mode=PdfMode.SQUARED):
    xi = np.linspace(0.0, xi_max, samples)
    return xi, np.asarray(pdf(state, xi, mode), dtype=np.float64).reshape(xi.shape)
