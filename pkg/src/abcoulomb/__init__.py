"""Spectral solver for a spin-1/2 charged particle with Aharonov-Bohm
flux, an attractive Coulomb potential, and frame rotation: closed-form
bound-state energies for the regular/irregular origin behaviors, a
secular-equation solver for general self-adjoint extensions, radial
wavefunctions, and an independent finite-difference cross-check."""

from .model import (
    IRREGULAR,
    REGULAR,
    EffectiveMomentum,
    FluxConfig,
    PhysicalParams,
    QuantumState,
    SectorError,
    admissible_m,
    decompose_flux,
    effective_j,
    is_singular_sector,
)
from .secular import (
    INFINITE_EXTENSION,
    ExtensionParam,
    KummerParams,
    SecularRoot,
    SolutionCoefficients,
    coefficient_ratio,
    energy_from_kappa,
    normalizable_coefficients,
    secular_function,
    solve_secular,
)
from .spectrum import (
    DegeneracyGroup,
    ExistenceError,
    SpectralResult,
    detect_degeneracies,
    energy_irregular,
    energy_regular,
    kappa_of_energy,
    rotation_parts,
)

__version__ = "0.1.0"
