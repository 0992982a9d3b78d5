"""Frequency-selective noise model and water-filling Shannon capacity.

The channel bandwidth is split into K narrow subbands treated as parallel
channels. Each subband k carries a noise-loss floor Psi_k combining the
dielectric loss, the absorption attenuation, and the total noise
temperature at its center frequency; the optimal allocation pours the
power budget above those floors up to a common water level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .absorption import (DEFAULT_WING_CUTOFF, Environment, kappa_over_grid,
                         medium_kappa)
from .constants import BOLTZMANN, LIGHT_SPEED, T_REF
from .errors import ApproximationRegimeError, DomainError, ValidationError
from .propagation import LinkGeometry, two_ray_argument, _checked_sine
from .spectro import Medium


@dataclass(frozen=True)
class BandPlan:
    """K subbands of equal width across a total bandwidth B [Hz].

    Center frequencies sit at the subband midpoints, so the k-th center is
    f_lo + (k - 1/2) * B/K.
    """

    b: float
    k: int
    f_k: np.ndarray

    def __post_init__(self):
        problems = []
        if not (isinstance(self.k, int) and self.k >= 1):
            problems.append(f"subband count must be an integer >= 1, got {self.k!r}")
        if not self.b > 0:
            problems.append(f"bandwidth must be > 0, got {self.b!r}")
        f_k = np.asarray(self.f_k, dtype=np.float64)
        if f_k.shape != (self.k,):
            problems.append(
                f"expected {self.k} center frequencies, got shape {f_k.shape}")
        else:
            if not np.all(f_k > 0):
                problems.append("every center frequency must be > 0")
            if self.k > 1 and not np.all(np.diff(f_k) > 0):
                problems.append("center frequencies must be strictly increasing")
        if problems:
            raise ValidationError(problems)
        object.__setattr__(self, "f_k", f_k)

    @property
    def delta_f(self) -> float:
        return self.b / self.k

    @classmethod
    def from_edges(cls, f_lo: float, f_hi: float, k: int) -> "BandPlan":
        if not f_hi > f_lo >= 0:
            raise ValidationError(
                [f"band edges must satisfy 0 <= f_lo < f_hi, got "
                 f"[{f_lo!r}, {f_hi!r}]"])
        b = f_hi - f_lo
        delta = b / k
        centers = f_lo + (np.arange(k) + 0.5) * delta
        return cls(b=b, k=k, f_k=centers)

    @classmethod
    def centered(cls, center: float, bandwidth: float, k: int) -> "BandPlan":
        return cls.from_edges(center - bandwidth / 2.0,
                              center + bandwidth / 2.0, k)


@dataclass(frozen=True)
class NoiseModel:
    """Per-subband noise temperatures [K].

    Total noise is system electronic plus molecular absorption
    re-emission; other sources are assumed negligible and dropped, which
    ``t_prime_neglected`` records.
    """

    t_s: float
    t_m: np.ndarray
    t_tot: np.ndarray
    t_prime_neglected: bool = True


@dataclass(frozen=True)
class PowerAllocation:
    """Subband powers [W], the water level, and the resulting capacity.

    ``theta`` is None for allocations that are not water-filled (flat).
    """

    p_k: np.ndarray
    theta: float | None
    psi_k: np.ndarray
    capacity_bits_per_s: float | None = None


def molecular_noise_temperature(medium: Medium, env: Environment, f: float,
                                d: float) -> float:
    """Absorption re-emission noise temperature T_ref*(1 - tau) [K]."""
    kappa = medium_kappa(medium, f, env).total_kappa
    return T_REF * -math.expm1(-kappa * d)


def noise_model(medium: Medium, env: Environment, band: BandPlan, d: float,
                wing_cutoff: float | None = DEFAULT_WING_CUTOFF) -> NoiseModel:
    """Subband noise temperatures over a band plan."""
    kappa = kappa_over_grid(medium, band.f_k, env, wing_cutoff)
    t_m = T_REF * -np.expm1(-kappa * d)
    return NoiseModel(t_s=env.t_s, t_m=t_m, t_tot=env.t_s + t_m)


def noise_power(medium: Medium, env: Environment, band: BandPlan,
                d: float) -> float:
    """Total noise power over the band [W], midpoint-rule discretized."""
    model = noise_model(medium, env, band, d)
    return BOLTZMANN * float(np.sum(model.t_tot)) * band.delta_f


def psi_coefficients(geom: LinkGeometry, medium: Medium, env: Environment,
                     band: BandPlan, d: float,
                     wing_cutoff: float | None = DEFAULT_WING_CUTOFF,
                     backend: str | None = None) -> np.ndarray:
    """Noise-loss floor Psi_k [W] of every subband.

    Equals k_B * L(f_k) * T_tot(f_k) * delta_f; opaque subbands saturate
    to +inf, which the water-filling solver treats as never-funded.

    Raises TwoRayNullError naming the subband whose center frequency sits
    on a two-ray null.
    """
    kappa = kappa_over_grid(medium, band.f_k, env, wing_cutoff, backend)
    eps = medium.epsilon_r
    csc2 = np.empty(band.k)
    for k_index, f in enumerate(band.f_k):
        sine = _checked_sine(two_ray_argument(geom, f, eps, d), f, k_index)
        csc2[k_index] = 1.0 / (sine * sine)
    spreading2 = (2.0 * math.pi * d * band.f_k / LIGHT_SPEED) ** 2
    with np.errstate(over="ignore"):
        bracket = (env.t_s + T_REF) * np.exp(kappa * d) - T_REF
    return (BOLTZMANN * eps / (geom.g_t * geom.g_r)
            * spreading2 * band.delta_f * csc2 * bracket)


def water_filling(psi, p_t: float, delta_f: float | None = None
                  ) -> PowerAllocation:
    """Exact water-filling over noise-loss floors psi [W].

    The water level solves sum((theta - psi)^+) = p_t in closed form:
    with the floors sorted ascending, the level implied by funding the m
    cheapest floors is (p_t + sum of those floors)/m, and the optimal
    active set is the largest m whose implied level still exceeds its
    m-th floor. No iteration tolerance is involved.

    A zero budget yields the all-zero allocation with the level at the
    lowest floor.
    """
    psi = np.asarray(psi, dtype=np.float64)
    if psi.ndim != 1 or psi.size == 0:
        raise DomainError("psi must be a non-empty 1-D array")
    if not np.all(psi > 0):
        raise DomainError("every psi entry must be > 0")
    if p_t < 0:
        raise DomainError(f"power budget must be >= 0, got {p_t!r}")

    if p_t == 0:
        allocation = np.zeros_like(psi)
        theta = float(np.min(psi))
    else:
        order = np.argsort(psi, kind="stable")
        psi_sorted = psi[order]
        m = np.arange(1, psi.size + 1)
        with np.errstate(invalid="ignore"):
            theta_by_m = (p_t + np.cumsum(psi_sorted)) / m
        feasible = np.nonzero(theta_by_m > psi_sorted)[0]
        if feasible.size == 0:
            raise DomainError("no fundable subband (all floors infinite)")
        m_star = int(feasible[-1]) + 1
        theta = float((p_t + np.sum(psi_sorted[:m_star])) / m_star)
        allocation = np.maximum(theta - psi, 0.0)

    capacity = None
    if delta_f is not None:
        capacity = allocation_capacity(allocation, psi, delta_f)
    return PowerAllocation(p_k=allocation, theta=theta, psi_k=psi,
                           capacity_bits_per_s=capacity)


def allocation_capacity(p_k, psi, delta_f: float) -> float:
    """Shannon capacity [bits/s] of an explicit subband allocation."""
    p_k = np.asarray(p_k, dtype=np.float64)
    psi = np.asarray(psi, dtype=np.float64)
    ratio = np.zeros_like(psi)
    funded = p_k > 0
    ratio[funded] = p_k[funded] / psi[funded]
    return float(delta_f * np.sum(np.log2(1.0 + ratio)))


def channel_capacity(geom: LinkGeometry, medium: Medium, env: Environment,
                     band: BandPlan, d: float, p_t: float,
                     wing_cutoff: float | None = DEFAULT_WING_CUTOFF
                     ) -> PowerAllocation:
    """Water-filled channel capacity; the result carries the allocation."""
    psi = psi_coefficients(geom, medium, env, band, d, wing_cutoff)
    return water_filling(psi, p_t, delta_f=band.delta_f)


def flat_allocation_capacity(geom: LinkGeometry, medium: Medium,
                             env: Environment, band: BandPlan, d: float,
                             p_t: float,
                             wing_cutoff: float | None = DEFAULT_WING_CUTOFF
                             ) -> PowerAllocation:
    """Capacity with the budget split evenly across subbands."""
    if p_t < 0:
        raise DomainError(f"power budget must be >= 0, got {p_t!r}")
    psi = psi_coefficients(geom, medium, env, band, d, wing_cutoff)
    allocation = np.full(band.k, p_t / band.k)
    return PowerAllocation(
        p_k=allocation, theta=None, psi_k=psi,
        capacity_bits_per_s=allocation_capacity(allocation, psi,
                                                band.delta_f))


# Small-antenna approximation applies while this regime measure stays
# below the threshold (and kappa*d stays small).
APPROX_REGIME_LIMIT = 0.1


def approx_capacity_small_antenna(geom: LinkGeometry, medium: Medium,
                                  env: Environment, band: BandPlan, d: float,
                                  p_t: float,
                                  wing_cutoff: float | None = DEFAULT_WING_CUTOFF
                                  ) -> PowerAllocation:
    """Capacity in the small-antenna limit (unit gains, h_t*h_r << d).

    Replaces the exact floors with their Maclaurin-limit form
    Phi_k = k_B d^4 delta_f [T_S + (T_S + T_ref) kappa_k d] / (h_t^2 h_r^2),
    which drops the csc^2 oscillation and the permittivity factor.
    """
    regime = (geom.h_t * geom.h_r * float(band.f_k[-1])
              * math.sqrt(medium.epsilon_r) / (LIGHT_SPEED * d))
    if regime >= APPROX_REGIME_LIMIT:
        raise ApproximationRegimeError(
            f"antenna size measure {regime:.4g} >= {APPROX_REGIME_LIMIT}; "
            "the small-antenna approximation does not apply")
    if geom.g_t != 1.0 or geom.g_r != 1.0:
        raise ApproximationRegimeError(
            "the small-antenna approximation assumes unit antenna gains")
    kappa = kappa_over_grid(medium, band.f_k, env, wing_cutoff)
    phi = (BOLTZMANN * d ** 4 * band.delta_f
           * (env.t_s + (env.t_s + T_REF) * kappa * d)
           / (geom.h_t ** 2 * geom.h_r ** 2))
    return water_filling(phi, p_t, delta_f=band.delta_f)


__all__ = [
    "BandPlan", "NoiseModel", "PowerAllocation",
    "molecular_noise_temperature", "noise_model", "noise_power",
    "psi_coefficients", "water_filling", "allocation_capacity",
    "channel_capacity", "flat_allocation_capacity",
    "approx_capacity_small_antenna", "APPROX_REGIME_LIMIT",
]
