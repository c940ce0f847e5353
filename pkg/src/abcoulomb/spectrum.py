"""Closed-form bound-state energies for the regular and irregular
extensions, the kappa <-> energy conversion, and degeneracy detection.

The energy of a level splits into a Coulomb part depending only on
(n, |j|) and a rotation shift -hbar*Omega*(j + s/2).  The two parts are
kept separate on ``SpectralResult`` (and the shift further splits via
``rotation_parts``) so that the affine structure in Omega and the spin
splitting can be checked exactly, without float-rounding slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    IRREGULAR,
    REGULAR,
    FluxConfig,
    PhysicalParams,
    QuantumState,
    SectorError,
    is_singular_sector,
)

__all__ = [
    "ExistenceError",
    "SpectralResult",
    "DegeneracyGroup",
    "rotation_parts",
    "energy_regular",
    "energy_irregular",
    "closed_form_energy",
    "kappa_of_energy",
    "detect_degeneracies",
]

CLOSED_FORM = "closed_form"
SECULAR = "secular"
ORACLE = "oracle"


class ExistenceError(ValueError):
    """The bound-state condition kappa**2 > 0 fails (scattering regime)."""


@dataclass(frozen=True)
class SpectralResult:
    """One bound level: total energy, inverse decay length kappa, and the
    Coulomb/rotation split of the energy."""

    energy: float
    kappa: float
    exists: bool
    state: QuantumState
    provenance: str
    coulomb_energy: float
    rotation_energy: float


@dataclass(frozen=True)
class DegeneracyGroup:
    energy: float
    members: frozenset[QuantumState]
    tolerance: float


def rotation_parts(params: PhysicalParams, j: float, s: int) -> tuple[float, float]:
    """The two pieces of the rotation shift -hbar*Omega*(j + s/2).

    Returns ``(orbit, spin)`` with ``orbit = -(hbar*Omega*j)`` and
    ``spin = -s*(hbar*Omega/2)``; each is a single rounding of its factors,
    and the spin piece flips sign exactly under s -> -s.
    """
    hw = params.hbar * params.omega
    return -(hw * j), -s * (hw / 2.0)


def _assemble(state, params, j, denom, provenance) -> SpectralResult:
    coulomb = -(params.m_e * params.eta**2 / (2.0 * params.hbar**2)) / (denom * denom)
    orbit, spin = rotation_parts(params, j, state.s)
    rotation = orbit + spin
    kappa = params.m_e * params.eta_prime / denom
    return SpectralResult(
        energy=coulomb + rotation,
        kappa=kappa,
        exists=kappa > 0.0,
        state=state,
        provenance=provenance,
        coulomb_energy=coulomb,
        rotation_energy=rotation,
    )


def energy_regular(
    state: QuantumState, params: PhysicalParams, flux: FluxConfig
) -> SpectralResult:
    """Energy of the purely regular level (extension parameter zero):

        E = -m_e eta^2 / (2 hbar^2 (n - 1/2 + |j|)^2) - hbar Omega (j + s/2)

    with j = m + phi.  The associated kappa is m_e eta' / (n - 1/2 + |j|).
    """
    j = state.m + flux.phi
    denom = (state.n - 0.5) + abs(j)
    return _assemble(state, params, j, denom, CLOSED_FORM)


def energy_irregular(
    state: QuantumState, params: PhysicalParams, flux: FluxConfig
) -> SpectralResult:
    """Energy of the purely irregular level (infinite extension parameter):

        E = -m_e eta^2 / (2 hbar^2 (n - 1/2 - |j|)^2) - hbar Omega (j + s/2)

    Only defined in the singular sector |j| < 1/2.
    """
    j = state.m + flux.phi
    if not is_singular_sector(j):
        raise SectorError(
            f"irregular branch requires |j| < 1/2, got j = {j} "
            f"(m = {state.m}, phi = {flux.phi})"
        )
    denom = (state.n - 0.5) - abs(j)
    return _assemble(state, params, j, denom, CLOSED_FORM)


def closed_form_energy(
    state: QuantumState, params: PhysicalParams, flux: FluxConfig
) -> SpectralResult:
    """Dispatch on the state's branch."""
    if state.branch == REGULAR:
        return energy_regular(state, params, flux)
    if state.branch == IRREGULAR:
        return energy_irregular(state, params, flux)
    raise ValueError(f"unknown branch {state.branch!r}")


def kappa_of_energy(
    energy: float, state: QuantumState, params: PhysicalParams, flux: FluxConfig
) -> float:
    """Inverse decay length kappa = sqrt(-[2 m_e E / hbar^2 + (2 m_e Omega/hbar)(j + s/2)]).

    Raises ExistenceError when the bracketed quantity is nonnegative
    (oscillatory regime, no bound state).
    """
    j = state.m + flux.phi
    q = (2.0 * params.m_e * energy / params.hbar**2) + (
        2.0 * params.m_e * params.omega / params.hbar
    ) * (j + state.s / 2.0)
    if q >= 0.0:
        raise ExistenceError(
            f"no bound state: 2 m_e E/hbar^2 + 2 m_e Omega (j + s/2)/hbar = {q} >= 0"
        )
    return math.sqrt(-q)


def detect_degeneracies(
    states: list[QuantumState],
    params: PhysicalParams,
    flux: FluxConfig,
    tol: float = 1e-12,
) -> list[DegeneracyGroup]:
    """Partition states into groups of equal closed-form energy.

    Greedy clustering on the sorted energies; a state joins a group when
    its energy lies within ``tol`` of the group's first (smallest) member,
    which keeps all pairs within ``tol``.  Singleton groups are dropped.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    evaluated = [(closed_form_energy(s, params, flux).energy, s) for s in states]
    evaluated.sort(key=lambda pair: pair[0])
    groups: list[DegeneracyGroup] = []
    i = 0
    while i < len(evaluated):
        anchor_energy = evaluated[i][0]
        members = [evaluated[i][1]]
        k = i + 1
        while k < len(evaluated) and evaluated[k][0] - anchor_energy <= tol:
            members.append(evaluated[k][1])
            k += 1
        if len(members) > 1:
            groups.append(
                DegeneracyGroup(
                    energy=anchor_energy,
                    members=frozenset(members),
                    tolerance=tol,
                )
            )
        i = k
    return groups
