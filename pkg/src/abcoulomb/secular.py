"""Bound states of a general self-adjoint extension.

For a finite extension parameter ``lambda`` the boundary condition fixes
the irregular/regular coefficient ratio b_m/a_m = lambda*(2 kappa)**(2|j|),
and normalizability kills the growing part of the large-x asymptotics.
Combining the two gives the pole-safe secular function

    F(kappa) = Gamma(b)/Gamma(a) + lambda*(2 kappa)**(2|j|) * Gamma(b')/Gamma(a')

whose zeros are the bound states; ``lambda = inf`` dispatches to
G(kappa) = Gamma(b')/Gamma(a') alone.  The gamma reciprocals are entire,
so F is smooth and a plain sign scan brackets every root.  Roots are
searched in t = m_e*eta'/kappa, where the lambda = 0 and lambda = inf
limits sit at the evenly spaced points t = n - 1/2 +- |j|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .model import PhysicalParams, SectorError, is_singular_sector
from .specfun import gamma, reciprocal_gamma, reciprocal_gamma_array

__all__ = [
    "ExtensionParam",
    "INFINITE_EXTENSION",
    "KummerParams",
    "SolutionCoefficients",
    "SecularRoot",
    "RootSearchError",
    "coefficient_ratio",
    "secular_function",
    "solve_secular",
    "normalizable_coefficients",
    "energy_from_kappa",
]

# Sign-scan resolution: samples per unit interval of t, and the cap on the
# scanned range as a multiple of (count + 1).
SCAN_SAMPLES_PER_UNIT = 10_000
SCAN_RANGE_FACTOR = 10.0


class RootSearchError(RuntimeError):
    """A secular root bracket could not be located or refined."""


@dataclass(frozen=True)
class ExtensionParam:
    """Self-adjoint extension parameter in (-inf, +inf], with +inf the
    distinguished 'irregular only' sentinel."""

    value: float

    def __post_init__(self) -> None:
        if math.isnan(self.value):
            raise ValueError("extension parameter cannot be NaN")
        if self.value == -math.inf:
            raise ValueError("extension parameter lies in (-inf, +inf]")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)


INFINITE_EXTENSION = ExtensionParam(math.inf)


def _as_extension(lam: ExtensionParam | float) -> ExtensionParam:
    return lam if isinstance(lam, ExtensionParam) else ExtensionParam(float(lam))


@dataclass(frozen=True)
class KummerParams:
    """Hypergeometric parametrization of the radial solution at fixed kappa:

        a  = 1/2 + |j| - m_e eta'/kappa      b  = 1 + 2|j|
        a' = 1/2 - |j| - m_e eta'/kappa      b' = 1 - 2|j|
        x  = 2 kappa r,   l+- = |j| +- m_e eta'/kappa
    """

    a: float
    b: float
    a_prime: float
    b_prime: float
    x: float
    kappa: float
    l_plus: float
    l_minus: float

    def __post_init__(self) -> None:
        if not (self.kappa > 0.0):
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.b < 1.0:
            raise ValueError(f"b = 1 + 2|j| must be >= 1, got {self.b}")
        shared = (self.a - self.b) - (self.a_prime - self.b_prime)
        # a - b + |j| == a' - b' - |j| up to rounding
        if abs(shared + (self.b - self.b_prime) / 2.0) > 1e-9:
            raise ValueError("inconsistent Kummer parameters")

    @property
    def abs_j(self) -> float:
        return (self.b - 1.0) / 2.0

    @classmethod
    def for_state(
        cls, kappa: float, j: float, params: PhysicalParams, r: float = 0.0
    ) -> "KummerParams":
        if not (kappa > 0.0):
            raise ValueError(f"kappa must be positive, got {kappa}")
        aj = abs(j)
        t = params.m_e * params.eta_prime / kappa
        return cls(
            a=0.5 + aj - t,
            b=1.0 + 2.0 * aj,
            a_prime=0.5 - aj - t,
            b_prime=1.0 - 2.0 * aj,
            x=2.0 * kappa * r,
            kappa=kappa,
            l_plus=aj + t,
            l_minus=aj - t,
        )


@dataclass(frozen=True)
class SolutionCoefficients:
    """Coefficients of the regular (a_m) and irregular (b_m) pieces."""

    a_m: float
    b_m: float

    def __post_init__(self) -> None:
        if self.a_m == 0.0 and self.b_m == 0.0:
            raise ValueError("trivial solution: a_m and b_m are both zero")


@dataclass(frozen=True)
class SecularRoot:
    kappa: float
    residual: float
    lam: ExtensionParam
    j: float


def coefficient_ratio(
    kappa: float, lam: ExtensionParam | float, j: float, params: PhysicalParams
) -> float:
    """Leading-order boundary ratio b_m/a_m = lambda * (2 kappa)**(2|j|).

    Only meaningful in the singular sector and for finite lambda.
    """
    lam = _as_extension(lam)
    if lam.is_infinite:
        raise ValueError("coefficient ratio is undefined for infinite lambda")
    if not is_singular_sector(j):
        raise SectorError(f"|j| = {abs(j)} >= 1/2: the irregular coefficient is zero")
    if not (kappa > 0.0):
        raise ValueError(f"kappa must be positive, got {kappa}")
    return lam.value * (2.0 * kappa) ** (2.0 * abs(j))


def secular_function(
    kappa: float, lam: ExtensionParam | float, j: float, params: PhysicalParams
) -> float:
    """Pole-safe secular function whose zeros in kappa are bound states.

    Finite lambda:  Gamma(b)/Gamma(a) + lambda*(2k)**(2|j|)*Gamma(b')/Gamma(a')
    lambda = inf:   Gamma(b')/Gamma(a')
    written with reciprocal gammas so both terms stay finite everywhere.
    """
    lam = _as_extension(lam)
    if not (kappa > 0.0):
        raise ValueError(f"kappa must be positive, got {kappa}")
    kp = KummerParams.for_state(kappa, j, params)
    if lam.is_infinite:
        return gamma(kp.b_prime) * reciprocal_gamma(kp.a_prime)
    if not is_singular_sector(j):
        raise SectorError(f"finite lambda requires |j| < 1/2, got |j| = {abs(j)}")
    regular_term = gamma(kp.b) * reciprocal_gamma(kp.a)
    irregular_term = (
        lam.value
        * (2.0 * kappa) ** (2.0 * abs(j))
        * gamma(kp.b_prime)
        * reciprocal_gamma(kp.a_prime)
    )
    return regular_term + irregular_term


def normalizable_coefficients(kp: KummerParams) -> SolutionCoefficients:
    """Coefficients that cancel the growing large-x part by construction:
    a_m = Gamma(b')/Gamma(a'), b_m = -Gamma(b)/Gamma(a)."""
    return SolutionCoefficients(
        a_m=gamma(kp.b_prime) * reciprocal_gamma(kp.a_prime),
        b_m=-gamma(kp.b) * reciprocal_gamma(kp.a),
    )


def energy_from_kappa(
    kappa: float, j: float, s: int, params: PhysicalParams
) -> float:
    """Energy of a bound state with inverse decay length kappa:

        E = -hbar^2 kappa^2 / (2 m_e) - hbar*Omega*(j + s/2)
    """
    coulomb = -(params.hbar**2) * kappa * kappa / (2.0 * params.m_e)
    return coulomb - params.hbar * params.omega * (j + s / 2.0)


def _secular_in_t(t: float, lam: ExtensionParam, j: float, params: PhysicalParams) -> float:
    kappa = params.m_e * params.eta_prime / t
    return secular_function(kappa, lam, j, params)


def _secular_in_t_array(
    ts: np.ndarray, lam: ExtensionParam, j: float, params: PhysicalParams
) -> np.ndarray:
    aj = abs(j)
    a = 0.5 + aj - ts
    a_prime = 0.5 - aj - ts
    if lam.is_infinite:
        return gamma(1.0 - 2.0 * aj) * reciprocal_gamma_array(a_prime)
    term = gamma(1.0 + 2.0 * aj) * reciprocal_gamma_array(a)
    if lam.value != 0.0:
        kappa = params.m_e * params.eta_prime / ts
        term = term + (
            lam.value
            * (2.0 * kappa) ** (2.0 * aj)
            * gamma(1.0 - 2.0 * aj)
            * reciprocal_gamma_array(a_prime)
        )
    return term


def _bisect_root(f, lo: float, hi: float, f_lo: float, f_hi: float) -> float:
    """Bisection to floating-point resolution; endpoints must straddle zero."""
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise RootSearchError(f"root not bracketed on [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def _normalized_residual(f, t_root: float) -> float:
    """|f(t)| scaled by the local derivative and the size of t, i.e. the
    Newton-step length relative to t; this is meaningful for every lambda,
    including the single-term lambda = 0 and lambda = inf functions."""
    h = min(1e-6 * max(1.0, abs(t_root)), 0.5 * abs(t_root))
    slope = (f(t_root + h) - f(t_root - h)) / (2.0 * h)
    scale = abs(slope) * max(1.0, abs(t_root))
    if scale == 0.0:
        return abs(f(t_root))
    return abs(f(t_root)) / scale


def _solve_zero_coupling(
    lam: ExtensionParam, j: float, params: PhysicalParams
) -> list[SecularRoot]:
    # eta' = 0: t = m_e*eta'/kappa degenerates to 0.  The secular function
    # becomes c1 + lambda*(2 kappa)**(2|j|)*c2 with constants c1, c2 > 0:
    # no roots unless lambda < 0 and |j| > 0, where exactly one survives.
    aj = abs(j)
    if lam.is_infinite or lam.value >= 0.0 or aj == 0.0:
        return []
    c1 = gamma(1.0 + 2.0 * aj) * reciprocal_gamma(0.5 + aj)
    c2 = gamma(1.0 - 2.0 * aj) * reciprocal_gamma(0.5 - aj)
    kappa_star = 0.5 * (-c1 / (lam.value * c2)) ** (1.0 / (2.0 * aj))

    def f(kappa: float) -> float:
        return secular_function(kappa, lam, j, params)

    lo, hi = 0.5 * kappa_star, 2.0 * kappa_star
    root = _bisect_root(f, lo, hi, f(lo), f(hi))
    residual = _normalized_residual(f, root)
    return [SecularRoot(kappa=root, residual=residual, lam=lam, j=j)]


def solve_secular(
    lam: ExtensionParam | float,
    j: float,
    params: PhysicalParams,
    count: int,
) -> list[SecularRoot]:
    """The first ``count`` secular roots, ordered from the ground state
    (largest kappa / smallest t) upward.

    A dense sign scan over t = m_e*eta'/kappa (SCAN_SAMPLES_PER_UNIT
    samples per unit, range capped at SCAN_RANGE_FACTOR*(count+1))
    brackets the roots, and bisection refines each bracket to float
    resolution.  With no Coulomb attraction the ladder disappears and
    fewer roots (possibly none) are returned.
    """
    lam = _as_extension(lam)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not lam.is_infinite and not is_singular_sector(j):
        raise SectorError(f"finite lambda requires |j| < 1/2, got |j| = {abs(j)}")
    if params.m_e * params.eta_prime == 0.0:
        return _solve_zero_coupling(lam, j, params)

    def f(t: float) -> float:
        return _secular_in_t(t, lam, j, params)

    roots: list[SecularRoot] = []
    t_max = SCAN_RANGE_FACTOR * (count + 1)
    dt = 1.0 / SCAN_SAMPLES_PER_UNIT

    def append_root(t_root: float) -> None:
        residual = float(_normalized_residual(f, t_root))
        kappa = params.m_e * params.eta_prime / t_root
        roots.append(SecularRoot(kappa=float(kappa), residual=residual, lam=lam, j=j))

    # A root can sit below the first grid sample (|j| within dt of 1/2
    # puts the lowest irregular level at t = 1/2 - |j| < dt); probe the
    # sub-grid sliver before scanning.
    t_probe = dt * 1e-8
    f_probe, f_first = f(t_probe), f(dt)
    if f_probe * f_first < 0.0:
        append_root(_bisect_root(f, t_probe, dt, f_probe, f_first))

    window_start = 0.0
    while len(roots) < count and window_start < t_max:
        # include the left boundary sample (except at t = 0) so flips that
        # straddle two windows are not lost
        first = 1 if window_start == 0.0 else 0
        ts = window_start + dt * np.arange(first, SCAN_SAMPLES_PER_UNIT + 1)
        values = _secular_in_t_array(ts, lam, j, params)
        signs = np.sign(values)
        flips = np.nonzero(signs[:-1] * signs[1:] < 0.0)[0]
        zeros = np.nonzero(signs == 0.0)[0]
        candidates = sorted(
            [(ts[i], ts[i + 1]) for i in flips] + [(ts[i], ts[i]) for i in zeros]
        )
        for lo, hi in candidates:
            if len(roots) >= count:
                break
            if lo == hi:
                t_root = float(lo)
            else:
                lo, hi = float(lo), float(hi)
                f_lo, f_hi = f(lo), f(hi)
                if f_lo * f_hi > 0.0:
                    # scalar/vector disagreement at a grid point: widen once
                    lo, hi = max(lo - dt, dt / 2.0), hi + dt
                    f_lo, f_hi = f(lo), f(hi)
                    if f_lo * f_hi > 0.0:
                        continue
                t_root = _bisect_root(f, lo, hi, f_lo, f_hi)
            if roots and abs(params.m_e * params.eta_prime / roots[-1].kappa - t_root) < 2.0 * dt:
                continue  # boundary sample shared by adjacent windows
            append_root(t_root)
        window_start += 1.0
    if not roots:
        raise RootSearchError(
            f"no secular roots found for lambda = {lam.value}, j = {j} "
            f"with t <= {t_max}"
        )
    return roots
