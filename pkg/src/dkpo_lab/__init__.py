"""DKP oscillator in a magnetic field: algebra, split spectra, eigenfunctions
and vector-sector thermodynamics."""

__version__ = "0.1.0"

from dkpo_lab.algebra import Sector, build_eta0, build_representation, check_algebra
from dkpo_lab.errors import (DivergenceError, DKPOError, DomainError, InvalidCaseError,
                             NumericalError, StructuralError)
from dkpo_lab.spectrum import (INFINITE, OscillatorConfig, classify_special_case,
                               degeneracy_slope, dimensionless_energy, scalar_energy,
                               split_frequencies, vector_energy)
from dkpo_lab.eigenfunctions import RadialState, eigenfunction, laguerre, normalize, pdf
from dkpo_lab.thermodynamics import (Method, ThermoConfig, asymptotic_potentials,
                                     closed_form_Z, exact_partition_sum, potentials,
                                     scan_delta)

__all__ = [
    "Sector", "build_eta0", "build_representation", "check_algebra",
    "DivergenceError", "DKPOError", "DomainError", "InvalidCaseError", "NumericalError",
    "StructuralError", "INFINITE", "OscillatorConfig", "classify_special_case",
    "degeneracy_slope", "dimensionless_energy", "scalar_energy", "split_frequencies",
    "vector_energy", "RadialState", "eigenfunction", "laguerre", "normalize", "pdf",
    "Method", "ThermoConfig", "asymptotic_potentials", "closed_form_Z",
    "exact_partition_sum", "potentials", "scan_delta",
]
