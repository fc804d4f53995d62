"""Dissipation bounds and the ice-cube counterexample.

Two closed-form limits are implemented: the control-theoretic minimum
dissipation kT*ln(1/p_e) for a bit-value change with error probability
p_e, and the literature's self-entropy cooling limit
E_diss >= -kT*ln2*dS (at most ~0.69 kT of cooling per erased bit).

The ice-cube-tray memory shows the latter limit failing by ~24 orders
of magnitude: melting a frozen "high" cube at above-freezing ambient
draws the latent heat from the environment, ~7e23 kT for 10 cm^3 at
300 K, while the information change is at most one bit.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .infotheory import memory_entropy, nats_to_bits
from .ou import BOLTZMANN

__all__ = [
    "IceCubeModel",
    "BoundComparison",
    "NoErasureError",
    "brillouin_min_dissipation",
    "anderson_bound",
    "ice_cube_erasure_energy",
    "memory_entropy_audit",
]

FREEZING_POINT = 273.15  # K

# Cited defaults; kept as configuration so tests can pin them.
ICE_DENSITY = 0.917  # g/cm^3
LATENT_HEAT_FUSION = 333.55  # J/g
SPECIFIC_HEAT_ICE = 2.1  # J/(g K)
SPECIFIC_HEAT_WATER = 4.18  # J/(g K)


class NoErasureError(ValueError):
    """Ambient at or below freezing: the cube does not melt, so nothing erases."""


def brillouin_min_dissipation(p_e, T):
    """Minimum dissipation kT*ln(1/p_e) of a bit-value change, joules.

    Valid for 0 < p_e <= 0.5; p_e = 0.5 is the completely inefficient
    boundary where the bound equals kT*ln 2.
    """
    p_e = float(p_e)
    if not 0.0 < p_e <= 0.5:
        raise ValueError(f"p_e must lie in (0, 0.5], got {p_e!r}")
    if not T > 0:
        raise ValueError("T must be positive")
    return BOLTZMANN * T * math.log(1.0 / p_e)


def anderson_bound(delta_S_bits, T):
    """Most negative permitted dissipation -kT*ln2*dS, joules."""
    delta_S_bits = float(delta_S_bits)
    if delta_S_bits < 0.0:
        raise ValueError(f"delta_S_bits must be non-negative, got {delta_S_bits!r}")
    if not T > 0:
        raise ValueError("T must be positive")
    return -BOLTZMANN * T * math.log(2.0) * delta_S_bits


@dataclass(frozen=True)
class IceCubeModel:
    """One bit of the ice-cube-tray memory (frozen = 1, melted = 0)."""

    volume_cm3: float
    ambient_temperature: float = 300.0  # K
    ice_density: float = ICE_DENSITY
    latent_heat_fusion: float = LATENT_HEAT_FUSION
    include_sensible_heat: bool = False
    initial_ice_temperature: float = 255.15  # K, typical freezer
    final_water_temperature: Optional[float] = None  # defaults to ambient
    specific_heat_ice: float = SPECIFIC_HEAT_ICE
    specific_heat_water: float = SPECIFIC_HEAT_WATER

    def __post_init__(self):
        if not self.volume_cm3 > 0:
            raise ValueError("volume_cm3 must be positive")
        if self.include_sensible_heat and self.initial_ice_temperature > FREEZING_POINT:
            raise ValueError("initial_ice_temperature must be at or below freezing")


@dataclass(frozen=True)
class BoundComparison:
    """Computed erasure cooling against the self-entropy limit."""

    cooling_joule: float
    cooling_kT: float
    anderson_joule: float
    anderson_kT: float
    violation_factor: float


def ice_cube_erasure_energy(model: IceCubeModel) -> BoundComparison:
    """Cooling drawn from the environment when one frozen cube melts.

    Latent heat dominates; sensible heat (warming the ice to 0 C and the
    meltwater up to ambient) can be added for sensitivity analysis and
    only increases the total.
    """
    T = model.ambient_temperature
    if T <= FREEZING_POINT:
        raise NoErasureError(
            f"ambient {T!r} K is at or below freezing: the frozen state is stable "
            "and melting-as-erasure does not proceed")
    mass = model.ice_density * model.volume_cm3  # g
    q = mass * model.latent_heat_fusion
    if model.include_sensible_heat:
        q += mass * model.specific_heat_ice * (FREEZING_POINT - model.initial_ice_temperature)
        t_final = model.final_water_temperature if model.final_water_temperature is not None else T
        q += mass * model.specific_heat_water * (t_final - FREEZING_POINT)
    kT = BOLTZMANN * T
    bound = anderson_bound(1.0, T)
    return BoundComparison(
        cooling_joule=q,
        cooling_kT=q / kT,
        anderson_joule=bound,
        anderson_kT=bound / kT,
        violation_factor=q / abs(bound),
    )


def memory_entropy_audit(states: Sequence[float]) -> np.ndarray:
    """Information entropy (bits) of a memory along a protocol trace.

    Each state is the probability that the bit reads 1: exactly 0.0 or
    1.0 for the deterministic write/store/read steps (entropy 0), and
    0.5 after a completed thermalizing erase (entropy 1 bit).  An empty
    trace yields an empty report.
    """
    out = np.empty(len(states))
    for k, p1 in enumerate(states):
        out[k] = nats_to_bits(memory_entropy(1.0 - float(p1)))
    return out
