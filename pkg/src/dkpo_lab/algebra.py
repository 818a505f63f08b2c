"""DKP beta-matrix representations in 2+1 dimensions and exact algebra checks.

Everything here is integer arithmetic on ``int64`` arrays; entries live in
{-1, 0, 1} so the trilinear identity is checked bit-exactly.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from dkpo_lab.errors import StructuralError

METRIC = np.diag(np.array([1, -1, -1], dtype=np.int64))


class Sector(enum.Enum):
    SCALAR = "scalar"
    VECTOR = "vector"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def _sparse(dim, entries):
    m = np.zeros((dim, dim), dtype=np.int64)
    for (i, j), v in entries.items():
        m[i, j] = v
    return m


# (row, col) -> value, zero-based
_SCALAR_ENTRIES = (
    {(0, 3): 1, (3, 0): 1},
    {(1, 3): 1, (3, 1): -1},
    {(2, 3): 1, (3, 2): -1},
)
_VECTOR_ENTRIES = (
    {(0, 3): -1, (1, 4): -1, (3, 0): -1, (4, 1): -1},
    {(0, 5): 1, (2, 4): 1, (4, 2): -1, (5, 0): -1},
    {(1, 5): 1, (2, 3): -1, (3, 2): 1, (5, 1): -1},
)


@dataclass(frozen=True)
class BetaRepresentation:
    sector: Sector
    beta: tuple
    metric: np.ndarray = field(default_factory=lambda: METRIC.copy())

    @property
    def dim(self):
        return self.beta[0].shape[0]


@dataclass(frozen=True)
class TripleFailure:
    indices: tuple
    difference: np.ndarray  # L - R


@dataclass(frozen=True)
class AlgebraReport:
    sector: Sector
    checked: int
    failures: tuple

    @property
    def passed(self):
        return not self.failures

    @property
    def n_passed(self):
        return self.checked - len(self.failures)


def build_representation(sector) -> BetaRepresentation:
    sector = Sector.parse(sector)
    if sector is Sector.SCALAR:
        dim, entries = 4, _SCALAR_ENTRIES
    else:
        dim, entries = 6, _VECTOR_ENTRIES
    beta = tuple(_sparse(dim, e) for e in entries)
    for b in beta:
        b.flags.writeable = False
    return BetaRepresentation(sector, beta)


def check_algebra(rep: BetaRepresentation) -> AlgebraReport:
    """Check b^m b^l b^n + b^n b^l b^m = b^m g^{ln} + b^n g^{lm} for all 27 triples.

    Every failing triple is collected; nothing short-circuits.
    """
    beta = [np.asarray(b) for b in rep.beta]
    shapes = {b.shape for b in beta}
    if len(beta) != 3 or len(shapes) != 1:
        raise StructuralError(f"beta matrices must be three equal square arrays, got {shapes}")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1]:
        raise StructuralError(f"beta matrices must be square, got {shape}")
    if any(b.dtype.kind not in "iu" for b in beta):
        raise StructuralError("beta matrices must hold integers")
    g = np.asarray(rep.metric, dtype=np.int64)

    failures = []
    for mu, lam, nu in itertools.product(range(3), repeat=3):
        lhs = beta[mu] @ beta[lam] @ beta[nu] + beta[nu] @ beta[lam] @ beta[mu]
        rhs = beta[mu] * g[lam, nu] + beta[nu] * g[lam, mu]
        diff = lhs - rhs
        if diff.any():
            failures.append(TripleFailure((mu, lam, nu), diff))
    return AlgebraReport(rep.sector, 27, tuple(failures))


def build_eta0(rep: BetaRepresentation) -> np.ndarray:
    """eta^0 = 2 (beta^0)^2 - 1, exact."""
    b0 = np.asarray(rep.beta[0], dtype=np.int64)
    return 2 * (b0 @ b0) - np.eye(rep.dim, dtype=np.int64)


def single_entry_perturbations(rep: BetaRepresentation):
    """Yield ``(description, perturbed_rep)`` for every sign flip and zero-out
    of a nonzero entry."""
    for k, b in enumerate(rep.beta):
        for i, j in zip(*np.nonzero(b)):
            for label, new in (("flip", -b[i, j]), ("zero", 0)):
                mats = [np.array(m) for m in rep.beta]
                mats[k][i, j] = new
                yield f"beta{k}[{i},{j}] {label}", BetaRepresentation(rep.sector, tuple(mats))
