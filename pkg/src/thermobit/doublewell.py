"""Bistable bit in a symmetric quartic double well.

The bit state is the sign of an overdamped Langevin coordinate in
U(x) = E*((x/x0)^2 - 1)^2, which has minima at +-x0 separated by a
barrier of height E.  Left alone at ambient temperature, thermal
activation drives the residence probability to 1/2 on the Kramers
timescale, destroying the stored information while the mean potential
energy stays constant: erasure by pure thermalization, with no mean
energy dissipation.  Heating the cell speeds this up at the price of
absorbed energy.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .ou import BOLTZMANN
from .streams import make_stream

__all__ = [
    "DoubleWellParams",
    "RelaxationSeries",
    "EscapeInfeasibleError",
    "em_step",
    "sample_well",
    "relax_ensemble",
    "heated_erase",
    "measure_escape_time",
]

# Euler-Maruyama stability headroom: a tenth of the inverse curvature
# scale at the minima, where U'' = 8*E/x0^2.
_STABILITY_FRACTION = 0.1

_RNG_BLOCK = 512


class EscapeInfeasibleError(RuntimeError):
    """Barrier too high for the configured simulation time budget."""


@dataclass(frozen=True)
class DoubleWellParams:
    """Symmetric quartic double-well bit parameters."""

    barrier_height: float  # J
    well_position: float  # m, minima at +-x0
    damping: float  # kg/s
    temperature: float  # K
    boltzmann: float = BOLTZMANN

    def __post_init__(self):
        for name in ("barrier_height", "well_position", "damping", "temperature", "boltzmann"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @classmethod
    def reduced(cls, barrier_kT, well_position=1.0, damping=1.0):
        """Reduced units: kT = 1, barrier given as a multiple of kT."""
        return cls(barrier_height=float(barrier_kT), well_position=well_position,
                   damping=damping, temperature=1.0, boltzmann=1.0)

    @property
    def kT(self):
        return self.boltzmann * self.temperature

    @property
    def max_stable_dt(self):
        return _STABILITY_FRACTION * self.damping * self.well_position ** 2 / (8.0 * self.barrier_height)

    def potential(self, x):
        r = (np.asarray(x) / self.well_position) ** 2 - 1.0
        return self.barrier_height * r * r

    def potential_grad(self, x):
        x = np.asarray(x)
        x0 = self.well_position
        return 4.0 * self.barrier_height * x * ((x / x0) ** 2 - 1.0) / (x0 * x0)

    def kramers_time_estimate(self, temperature=None):
        """Crude mean escape time: 2*pi*gamma/sqrt(U''_min*|U''_max|) * exp(E/kT)."""
        kT = self.boltzmann * (temperature if temperature is not None else self.temperature)
        x0sq = self.well_position ** 2
        curv = math.sqrt((8.0 * self.barrier_height / x0sq) * (4.0 * self.barrier_height / x0sq))
        return 2.0 * math.pi * self.damping / curv * math.exp(self.barrier_height / kT)


@dataclass
class RelaxationSeries:
    """Residence probability and mean potential energy on a time grid."""

    times: np.ndarray
    p1: np.ndarray
    se_p1: np.ndarray
    mean_U: np.ndarray
    se_U: np.ndarray

    def __post_init__(self):
        for name in ("times", "p1", "se_p1", "mean_U", "se_U"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if np.any((self.p1 < 0) | (self.p1 > 1)):
            raise ValueError("p1 must lie in [0, 1]")


def _check_dt(p, dt):
    if not (np.isfinite(dt) and dt > 0):
        raise ValueError(f"dt must be positive, got {dt!r}")
    if dt > p.max_stable_dt * (1 + 1e-12):
        raise ValueError(
            f"dt={dt!r} exceeds the Euler-Maruyama stability bound {p.max_stable_dt!r}")


def em_step(x, dt, p: DoubleWellParams, rng, temperature=None):
    """One Euler-Maruyama step of the overdamped Langevin dynamics."""
    _check_dt(p, dt)
    if not np.all(np.isfinite(x)):
        raise ValueError("state must be finite")
    kT = p.boltzmann * (temperature if temperature is not None else p.temperature)
    amp = math.sqrt(2.0 * kT * dt / p.damping)
    return x - p.potential_grad(x) / p.damping * dt + amp * rng.standard_normal(np.shape(x) or None)


@lru_cache(maxsize=32)
def _boltzmann_grid(p: DoubleWellParams, temperature):
    """Inverse-CDF table of the global Boltzmann law on a symmetric grid."""
    kT = p.boltzmann * temperature
    # Truncate where the Boltzmann weight is ~e^-40 of the well bottom.
    span = p.well_position * math.sqrt(1.0 + math.sqrt(40.0 * kT / p.barrier_height))
    x = np.linspace(-span, span, 16385)
    w = np.exp(-p.potential(x) / kT)
    cdf = cumulative_trapezoid(w, x, initial=0.0)
    cdf /= cdf[-1]
    return x, cdf


def sample_well(p: DoubleWellParams, side, rng, temperature=None):
    """Equilibrium sample conditioned on residing in one well.

    Draws from the global Boltzmann law by inverse CDF on a quadrature
    grid and rejects samples with the wrong sign (x == 0 counts as side
    1, matching the read-out tie-break).  The accepted law is exactly
    the restriction of the global equilibrium to the chosen side.
    """
    if side not in (0, 1):
        raise ValueError(f"side must be 0 or 1, got {side!r}")
    temperature = temperature if temperature is not None else p.temperature
    grid_x, grid_cdf = _boltzmann_grid(p, temperature)
    while True:
        x = float(np.interp(rng.uniform(), grid_cdf, grid_x))
        if (x >= 0.0) == (side == 1):
            return x


def _draw_block(streams, active, width):
    z = np.empty((len(active), width))
    for row, idx in enumerate(active):
        z[row] = streams[idx].standard_normal(width)
    return z


def _relax_engine(p, side, t_total, dt, n_traj, seed, evolve_temperature):
    _check_dt(p, dt)
    if n_traj < 100:
        raise ValueError("n_traj must be >= 100")
    if not t_total > 0:
        raise ValueError("t_total must be positive")

    streams = [make_stream(seed, i) for i in range(n_traj)]
    x = np.array([sample_well(p, side, st) for st in streams])
    u_init = p.potential(x)

    n_steps = math.ceil(t_total / dt)
    record_steps = _log_step_grid(n_steps)

    times = [0.0]
    p1 = [float(np.mean(x >= 0.0))]
    mean_u = [float(u_init.mean())]
    se_u = [float(u_init.std(ddof=1) / math.sqrt(n_traj))]

    kT = p.boltzmann * evolve_temperature
    amp = math.sqrt(2.0 * kT * dt / p.damping)
    inv_gamma_dt = dt / p.damping
    record = set(record_steps)
    all_idx = list(range(n_traj))

    step = 0
    while step < n_steps:
        width = min(_RNG_BLOCK, n_steps - step)
        z = _draw_block(streams, all_idx, width)
        for k in range(width):
            x += -p.potential_grad(x) * inv_gamma_dt + amp * z[:, k]
            step += 1
            if step in record:
                u = p.potential(x)
                times.append(step * dt)
                p1.append(float(np.mean(x >= 0.0)))
                mean_u.append(float(u.mean()))
                se_u.append(float(u.std(ddof=1) / math.sqrt(n_traj)))

    p1 = np.array(p1)
    se_p1 = np.sqrt(p1 * (1.0 - p1) / n_traj)
    series = RelaxationSeries(times=np.array(times), p1=p1, se_p1=se_p1,
                              mean_U=np.array(mean_u), se_U=np.array(se_u))
    return series, u_init, p.potential(x)


def _log_step_grid(n_steps, per_decade=20):
    """Step indices spaced ~20 per decade from step 1 to n_steps."""
    if n_steps < 1:
        return []
    decades = math.log10(max(n_steps, 1)) if n_steps > 1 else 0.0
    count = max(1, int(round(decades * per_decade)) + 1)
    raw = np.unique(np.round(np.logspace(0.0, math.log10(n_steps), count)).astype(int))
    raw = raw[(raw >= 1) & (raw <= n_steps)]
    if raw.size == 0 or raw[-1] != n_steps:
        raw = np.append(raw, n_steps)
    return list(np.unique(raw))


def relax_ensemble(p: DoubleWellParams, side, t_total, dt, n_traj, seed):
    """Free thermalization of an ensemble written to one side.

    All trajectories start from the conditional-equilibrium law of the
    chosen well and relax at ambient temperature; p1 and mean potential
    energy are recorded on a logarithmic time grid.
    """
    if side not in (0, 1):
        raise ValueError(f"side must be 0 or 1, got {side!r}")
    series, _, _ = _relax_engine(p, side, t_total, dt, n_traj, seed, p.temperature)
    return series


def heated_erase(p: DoubleWellParams, T_hot, t_total, dt, n_traj, seed, side=1):
    """Erase by heating: evolve at T_hot from an ambient-equilibrated well.

    Returns (series, mean_dU, se_dU) where dU is the per-trajectory
    potential-energy change; the hot bath injects energy, so the mean is
    positive for T_hot > T.  T_hot == T reduces exactly to
    relax_ensemble with the same seed.
    """
    if T_hot < p.temperature:
        raise ValueError("T_hot must be >= the ambient temperature")
    series, u_init, u_final = _relax_engine(p, side, t_total, dt, n_traj, seed, T_hot)
    du = u_final - u_init
    return series, float(du.mean()), float(du.std(ddof=1) / math.sqrt(len(du)))


def measure_escape_time(p: DoubleWellParams, n_traj, dt, seed, max_time=1e4):
    """Mean first time a trajectory started at +x0 crosses x = 0.

    Raises EscapeInfeasibleError up front when the Kramers estimate of
    the escape time says the run cannot finish within `max_time`
    simulated seconds per trajectory (the passive-erasure timescale is
    exponential in E/kT, so high barriers are out of desk-scale reach).
    """
    _check_dt(p, dt)
    if n_traj < 1:
        raise ValueError("n_traj must be >= 1")
    estimate = p.kramers_time_estimate()
    if 20.0 * estimate > max_time:
        raise EscapeInfeasibleError(
            f"Kramers estimate {estimate:.3g} s needs > max_time={max_time:.3g} s "
            f"(barrier is {p.barrier_height / p.kT:.2f} kT)")

    streams = [make_stream(seed, i) for i in range(n_traj)]
    x = np.full(n_traj, p.well_position)
    escape_step = np.zeros(n_traj, dtype=np.int64)
    active = list(range(n_traj))

    amp = math.sqrt(2.0 * p.kT * dt / p.damping)
    inv_gamma_dt = dt / p.damping
    max_steps = math.ceil(max_time / dt)

    step = 0
    xa = x[active]
    while active:
        if step >= max_steps:
            raise EscapeInfeasibleError(
                f"{len(active)} of {n_traj} trajectories did not escape within "
                f"max_time={max_time:.3g} s")
        width = _RNG_BLOCK
        z = _draw_block(streams, active, width)
        done_rows = np.zeros(len(active), dtype=bool)
        for k in range(width):
            live = ~done_rows
            xa[live] += -p.potential_grad(xa[live]) * inv_gamma_dt + amp * z[live, k]
            step += 1
            crossed = live & (xa <= 0.0)
            if crossed.any():
                rows = np.nonzero(crossed)[0]
                for r in rows:
                    escape_step[active[r]] = step
                done_rows[rows] = True
        if done_rows.any():
            keep = ~done_rows
            active = [idx for idx, k_ in zip(active, keep) if k_]
            xa = xa[keep]

    t = escape_step * dt
    return float(t.mean()), float(t.std(ddof=1) / math.sqrt(n_traj)) if n_traj > 1 else 0.0
