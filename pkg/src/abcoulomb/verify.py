"""Self-check suite: every module invariant as a named check with a
numeric residual and tolerance, runnable as a whole or by group.

Checks call the special functions through the module object on purpose,
so an injected perturbation (say a patched gamma) is caught rather than
bypassed via stale local references.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle as oracle_mod
from . import specfun
from .model import (
    IRREGULAR,
    PhysicalParams,
    QuantumState,
    admissible_m,
    decompose_flux,
    effective_j,
    is_singular_sector,
)
from .secular import (
    INFINITE_EXTENSION,
    KummerParams,
    normalizable_coefficients,
    solve_secular,
)
from .spectrum import (
    detect_degeneracies,
    energy_irregular,
    energy_regular,
    kappa_of_energy,
    rotation_parts,
)
from .wavefunction import (
    boundary_values,
    build_profile,
    normalize_and_count_nodes,
)

__all__ = ["CheckResult", "GROUPS", "run_checks", "build_report"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float


def _check(name: str, residual: float, tolerance: float) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(residual <= tolerance),
        residual=float(residual),
        tolerance=float(tolerance),
    )


def _check_flag(name: str, ok: bool) -> CheckResult:
    return _check(name, 0.0 if ok else 1.0, 0.0)


# ----------------------------------------------------------------- specfun


def _checks_specfun() -> list[CheckResult]:
    out = []
    zs = np.linspace(0.1, 20.0, 397)
    rec = max(
        abs(specfun.gamma(z + 1.0) / (z * specfun.gamma(z)) - 1.0) for z in zs
    )
    out.append(_check("specfun.gamma_recurrence", rec, 1e-12))

    prod = max(
        abs(specfun.reciprocal_gamma(z) * specfun.gamma(z) - 1.0)
        for z in np.linspace(0.2, 30.0, 153)
    )
    out.append(_check("specfun.reciprocal_gamma_product", prod, 1e-12))

    # Five-point central differences: the three-point stencil cannot reach
    # 1e-8 relative at x ~ 25 in double precision (rounding noise ~ eps/h^2
    # against truncation ~ h^2 bottoms out near 1e-7).
    worst_ode = 0.0
    h = 6e-3
    for a in (-2.3, -0.7, 0.4, 1.6, 3.2):
        for b in (0.6, 1.3, 2.8):
            for x in (0.3, 1.7, 6.0, 14.0, 25.0):
                y0 = specfun.kummer_1f1(a, b, x)
                yp1 = specfun.kummer_1f1(a, b, x + h)
                ym1 = specfun.kummer_1f1(a, b, x - h)
                yp2 = specfun.kummer_1f1(a, b, x + 2.0 * h)
                ym2 = specfun.kummer_1f1(a, b, x - 2.0 * h)
                d1 = (-yp2 + 8.0 * yp1 - 8.0 * ym1 + ym2) / (12.0 * h)
                d2 = (-yp2 + 16.0 * yp1 - 30.0 * y0 + 16.0 * ym1 - ym2) / (
                    12.0 * h * h
                )
                res = abs(x * d2 + (b - x) * d1 - a * y0) / max(1.0, abs(y0))
                worst_ode = max(worst_ode, res)
    out.append(_check("specfun.kummer_ode_residual", worst_ode, 1e-8))

    worst_kt = 0.0
    for a in (-1.7, 0.3, 1.2, 2.6):
        for b in (0.9, 1.4, 3.1):
            for x in (-20.0, -8.0, -1.0, 1.0, 8.0, 20.0):
                lhs = math.exp(-x) * specfun.kummer_1f1(a, b, x)
                rhs = specfun.kummer_1f1(b - a, b, -x)
                worst_kt = max(worst_kt, abs(lhs / rhs - 1.0))
    out.append(_check("specfun.kummer_transformation", worst_kt, 1e-10))

    series = specfun.kummer_1f1(0.5, 2.0, specfun.X_SWITCH)
    asym = specfun.kummer_asymptotic_value(0.5, 2.0, specfun.X_SWITCH)
    out.append(_check("specfun.series_vs_asymptotic", abs(asym / series - 1.0), 1e-6))
    return out


# ------------------------------------------------------------------- model


def _checks_model() -> list[CheckResult]:
    out = []
    phis = np.linspace(-12.3, 12.3, 247)
    rt = max(
        abs(decompose_flux(p).n_integer + decompose_flux(p).beta - p) for p in phis
    )
    out.append(_check("model.flux_round_trip", rt, 1e-12))

    ok = True
    for phi in phis:
        ms = admissible_m(phi)
        ok &= len(ms) <= 1
        ok &= all(is_singular_sector(effective_j(m, phi)) for m in ms)
    out.append(_check_flag("model.admissible_m_sector", ok))
    return out


# ---------------------------------------------------------------- spectrum


def _checks_spectrum() -> list[CheckResult]:
    out = []
    atomic = PhysicalParams()
    ground = energy_regular(QuantumState(1, 0, 1), atomic, decompose_flux(0.0))
    out.append(_check("spectrum.ground_state_anchor", abs(ground.energy + 2.0), 1e-12))

    blowup = energy_irregular(
        QuantumState(1, 0, 1, IRREGULAR), atomic, decompose_flux(0.49)
    )
    out.append(
        _check("spectrum.irregular_anchor", abs(blowup.energy / -5000.0 - 1.0), 1e-6)
    )

    rng = np.random.default_rng(7)
    worst_affine = 0.0
    worst_spin = 0.0
    for _ in range(60):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(-6, 7))
        s = int(rng.choice((-1, 1)))
        phi = float(rng.uniform(-4.0, 4.0))
        flux = decompose_flux(phi)
        for omega in (-2.0, 1.0, 3.0):
            rot = PhysicalParams(omega=omega)
            e_rot = energy_regular(QuantumState(n, m, s), rot, flux)
            e_0 = energy_regular(QuantumState(n, m, s), atomic, flux)
            j = m + flux.phi
            orbit, spin = rotation_parts(rot, j, s)
            resid = math.fsum(
                [
                    e_rot.coulomb_energy,
                    *rotation_parts(rot, j, s),
                    -e_0.coulomb_energy,
                    *(-part for part in rotation_parts(atomic, j, s)),
                    -orbit,
                    -spin,
                ]
            )
            worst_affine = max(worst_affine, abs(resid))
            e_up = energy_regular(QuantumState(n, m, 1), rot, flux)
            e_dn = energy_regular(QuantumState(n, m, -1), rot, flux)
            orbit_up, spin_up = rotation_parts(rot, j, 1)
            orbit_dn, spin_dn = rotation_parts(rot, j, -1)
            split = math.fsum(
                [
                    e_up.coulomb_energy,
                    orbit_up,
                    spin_up,
                    -e_dn.coulomb_energy,
                    -orbit_dn,
                    -spin_dn,
                    rot.hbar * omega,
                ]
            )
            worst_spin = max(worst_spin, abs(split))
    out.append(_check("spectrum.rotation_affinity", worst_affine, 0.0))
    out.append(_check("spectrum.spin_splitting", worst_spin, 0.0))

    worst_kappa = 0.0
    for phi in (0.0, 0.3, 2.7):
        flux = decompose_flux(phi)
        for n in (1, 2, 4):
            st = QuantumState(n, 0, 1)
            res = energy_regular(st, atomic, flux)
            back = kappa_of_energy(res.energy, st, atomic, flux)
            worst_kappa = max(worst_kappa, abs(back / res.kappa - 1.0))
    out.append(_check("spectrum.kappa_consistency", worst_kappa, 1e-12))

    flux = decompose_flux(1.0)
    states = [
        QuantumState(1, m, s) for m in range(-10, 11) for s in (1, -1)
    ]
    detected = detect_degeneracies(states, atomic, flux, tol=1e-12)
    brute = _brute_force_groups(states, atomic, flux, tol=1e-12)
    out.append(
        _check_flag(
            "spectrum.degeneracy_brute_force",
            {frozenset(g.members) for g in detected} == brute,
        )
    )
    return out


def _brute_force_groups(states, params, flux, tol):
    energies = [energy_regular(s, params, flux).energy for s in states]
    n = len(states)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for k in range(i + 1, n):
            if abs(energies[i] - energies[k]) <= tol:
                parent[find(i)] = find(k)
    clusters: dict[int, set] = {}
    for i in range(n):
        clusters.setdefault(find(i), set()).add(states[i])
    return {frozenset(c) for c in clusters.values() if len(c) > 1}


# ----------------------------------------------------------------- secular


def _checks_secular() -> list[CheckResult]:
    out = []
    params = PhysicalParams()
    worst_reg = 0.0
    worst_irr = 0.0
    worst_res = 0.0
    for j in (0.05, 0.2, 0.45):
        reg = solve_secular(0.0, j, params, 5)
        irr = solve_secular(INFINITE_EXTENSION, j, params, 5)
        for n in range(1, 6):
            k_reg = params.m_e * params.eta_prime / (n - 0.5 + j)
            k_irr = params.m_e * params.eta_prime / (n - 0.5 - j)
            worst_reg = max(worst_reg, abs(reg[n - 1].kappa / k_reg - 1.0))
            worst_irr = max(worst_irr, abs(irr[n - 1].kappa / k_irr - 1.0))
            worst_res = max(worst_res, reg[n - 1].residual, irr[n - 1].residual)
    out.append(_check("secular.limit_regular", worst_reg, 1e-10))
    out.append(_check("secular.limit_irregular", worst_irr, 1e-10))
    out.append(_check("secular.root_residuals", worst_res, 1e-10))

    free = PhysicalParams(eta=0.0)
    out.append(
        _check_flag("secular.no_coupling_no_roots", solve_secular(0.0, 0.2, free, 3) == [])
    )

    short = solve_secular(-1.0, 0.3, params, 2)
    longer = solve_secular(-1.0, 0.3, params, 4)
    prefix_ok = all(
        abs(a.kappa - b.kappa) <= 1e-12 * abs(b.kappa) for a, b in zip(short, longer)
    )
    out.append(_check_flag("secular.prefix_stability", prefix_ok))
    return out


# ------------------------------------------------------------ wavefunction


def _checks_wavefunction() -> list[CheckResult]:
    out = []
    params = PhysicalParams()
    worst_closure = 0.0
    nodes_ok = True
    worst_norm = 0.0
    decay_ok = True
    for lam in (-1.0, 1.0):
        for j in (0.2, 0.4):
            roots = solve_secular(lam, j, params, 2)
            for index, root in enumerate(roots, start=1):
                kp = KummerParams.for_state(root.kappa, j, params)
                coeffs = normalizable_coefficients(kp)
                bv = boundary_values(coeffs, kp)
                closure = abs(bv.f0 - lam * bv.f1) / max(abs(bv.f0), abs(lam * bv.f1))
                worst_closure = max(worst_closure, closure)
                profile = build_profile(coeffs, root.kappa, j, params)
                norm, nodes = normalize_and_count_nodes(profile)
                nodes_ok &= nodes == index - 1 and norm > 0.0 and math.isfinite(norm)
                refined = build_profile(
                    coeffs, root.kappa, j, params, points=2 * len(profile.r)
                )
                norm2, _ = normalize_and_count_nodes(refined)
                worst_norm = max(worst_norm, abs(norm / norm2 - 1.0))
                tail = profile.r >= 30.0 / root.kappa
                r0 = profile.r[tail][0]
                bound = (
                    2.0
                    * max(abs(profile.values[tail][0]), 1e-280)
                    * np.exp(-0.5 * root.kappa * (profile.r[tail] - r0))
                )
                decay_ok &= bool(np.all(np.abs(profile.values[tail]) <= bound))
    out.append(_check("wavefunction.boundary_closure", worst_closure, 1e-8))
    out.append(_check_flag("wavefunction.node_counts", nodes_ok))
    out.append(_check("wavefunction.norm_convergence", worst_norm, 1e-6))
    out.append(_check_flag("wavefunction.decay_envelope", decay_ok))
    return out


# ------------------------------------------------------------------ oracle


def _checks_oracle() -> list[CheckResult]:
    params = PhysicalParams()
    worst = 0.0
    for j in (0.0, 0.25, 0.75, 1.5):
        for ev in oracle_mod.oracle_regular_spectrum(j, params, 3):
            exact = params.m_e * params.eta_prime / (ev.index - 0.5 + abs(j))
            worst = max(worst, abs(ev.kappa / exact - 1.0))
    return [_check("oracle.closed_form_agreement", worst, 1e-6)]


GROUPS = {
    "specfun": _checks_specfun,
    "model": _checks_model,
    "spectrum": _checks_spectrum,
    "secular": _checks_secular,
    "wavefunction": _checks_wavefunction,
    "oracle": _checks_oracle,
}


def run_checks(only: list[str] | None = None) -> list[CheckResult]:
    selected = list(GROUPS) if not only else list(only)
    unknown = [g for g in selected if g not in GROUPS]
    if unknown:
        raise ValueError(f"unknown check groups {unknown}; available: {list(GROUPS)}")
    results: list[CheckResult] = []
    for group in selected:
        results.extend(GROUPS[group]())
    return results


def build_report(results: list[CheckResult]) -> dict:
    return {
        "checks": [
            {
                "name": r.name,
                "pass": r.passed,
                "residual": r.residual,
                "tolerance": r.tolerance,
            }
            for r in results
        ],
        "pass": all(r.passed for r in results),
    }
