"""Exact Ornstein-Uhlenbeck dynamics for the parallel-RC memory cell.

The capacitor voltage of a resistor-capacitor cell driven by Johnson
noise is an OU process with relaxation time tau = R*C and stationary
standard deviation sigma_st = sqrt(kT/C).  The one-step transition law
is Gaussian and known in closed form, so the integrator here is exact
in distribution for any step size: there is no discretization error to
argue about when checking energy balances.
"""

import math
from dataclasses import dataclass

import numpy as np

from .streams import RngStream

__all__ = [
    "BOLTZMANN",
    "CellParams",
    "Trajectory",
    "ou_step",
    "ou_sample_stationary",
    "simulate_ou_path",
]

# SI defining value of the Boltzmann constant, J/K.
BOLTZMANN = 1.380649e-23


@dataclass(frozen=True)
class CellParams:
    """Physical parameters of the RC memory cell.

    `boltzmann` defaults to the SI value; the reduced-unit constructor
    sets it to 1 so that kT = 1 and sigma_st = 1, which makes every
    test tolerance parameter-free.
    """

    temperature: float  # K
    resistance: float  # ohm
    capacitance: float  # F
    boltzmann: float = BOLTZMANN  # J/K

    def __post_init__(self):
        for name in ("temperature", "resistance", "capacitance", "boltzmann"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @classmethod
    def reduced(cls, tau=1.0):
        """Reduced-unit cell: kT = 1, C = 1, so sigma_st = 1 and tau = R."""
        return cls(temperature=1.0, resistance=float(tau), capacitance=1.0, boltzmann=1.0)

    @property
    def tau(self):
        """Relaxation time R*C, seconds."""
        return self.resistance * self.capacitance

    @property
    def kT(self):
        """Thermal energy scale, joules."""
        return self.boltzmann * self.temperature

    @property
    def sigma_st(self):
        """Stationary voltage standard deviation sqrt(kT/C), volts."""
        return math.sqrt(self.kT / self.capacitance)


@dataclass
class Trajectory:
    """A realization of the stored-state variable on a time grid."""

    times: np.ndarray
    values: np.ndarray
    stream_index: int

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.shape != self.values.shape or self.times.size < 1:
            raise ValueError("times and values must be equally sized and non-empty")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")


def _check_step_args(v, dt):
    if not np.all(np.isfinite(v)):
        raise ValueError("state must be finite")
    if not (np.isfinite(dt) and dt > 0):
        raise ValueError(f"dt must be positive and finite, got {dt!r}")


def ou_step(v, dt, p: CellParams, rng: RngStream):
    """Advance the voltage by `dt` using the exact OU transition.

    Returns v*mu + s*Z with mu = exp(-dt/tau) and
    s = sigma_st*sqrt(1 - mu^2).  `v` may be a scalar or an array; one
    standard normal is drawn per element.
    """
    _check_step_args(v, dt)
    mu = math.exp(-dt / p.tau)
    s = p.sigma_st * math.sqrt(1.0 - mu * mu)
    return v * mu + s * rng.standard_normal(np.shape(v) or None)


def ou_sample_stationary(p: CellParams, rng: RngStream, size=None):
    """Draw from the stationary law N(0, kT/C)."""
    return p.sigma_st * rng.standard_normal(size)


def simulate_ou_path(v0, t_total, dt, p: CellParams, rng: RngStream, stream_index=0):
    """Simulate a voltage path of ceil(t_total/dt)+1 points starting at v0."""
    _check_step_args(v0, dt)
    if not (np.isfinite(t_total) and t_total > 0):
        raise ValueError(f"t_total must be positive and finite, got {t_total!r}")
    n_steps = math.ceil(t_total / dt)
    values = np.empty(n_steps + 1)
    values[0] = v0
    mu = math.exp(-dt / p.tau)
    s = p.sigma_st * math.sqrt(1.0 - mu * mu)
    z = rng.standard_normal(n_steps)
    v = float(v0)
    for k in range(n_steps):
        v = v * mu + s * z[k]
        values[k + 1] = v
    times = dt * np.arange(n_steps + 1)
    return Trajectory(times=times, values=values, stream_index=stream_index)
