"""Charge-based memory bit: write, read, erase, and energy ledger.

Protocol: a bit is written by connecting the resistor and disconnecting
it the moment the Johnson-noise voltage first reaches the signed target
level (+u0 for bit 1, -u0 for bit 0).  Read-out is a sign decision.
Erasure reconnects the resistor with no measurement and lets the cell
thermalize back to the stationary law.

Every record carries an exact per-trajectory ledger: over a connected
interval with no external work, the heat delivered to the bath equals
the negative change of stored capacitor energy, Q_env = -(E_final -
E_start) with E = C*V^2/2.  The ensemble mean of the erase heat is
(C*u0^2 - kT)/2, which is negative whenever u0 < sigma_st: erasing a
weakly-written bit cools the environment.
"""

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Sequence

import numpy as np
from scipy.signal import lfilter
from scipy.special import erfc, ndtr

from .ensemble import run_parallel_ensemble
from .infotheory import BitChannelStats, InformationContent, estimate_error_prob, remaining_information
from .ou import CellParams, ou_sample_stationary
from .streams import RngStream

__all__ = [
    "WriteRecord",
    "EraseRecord",
    "ErasureReport",
    "ErasureExperimentConfig",
    "WriteTimeoutError",
    "write_bit",
    "read_bit",
    "erase",
    "erase_dissipation_theory",
    "partial_erase_error_prob",
    "run_erasure_experiment",
]

# Default sampling interval, as a fraction of tau.  Keeps the
# first-passage overshoot bias of the crossing detector negligible.
DEFAULT_DT_FRACTION = 0.01

# Default complete-erasure duration: at 20*tau the analytic read-error
# probability is within 2e-9 of 0.5.
DEFAULT_ERASE_TAU = 20.0


class WriteTimeoutError(RuntimeError):
    """First passage to the write target did not occur within the guard time."""


@dataclass(frozen=True)
class WriteRecord:
    """Outcome and energy ledger of one write operation."""

    bit_written: int
    target_level: float  # signed, volts
    duration: float  # seconds
    v_start: float
    v_final: float  # == target_level (snapped at the crossing)
    n_samples: int  # measurement decisions taken by the controller
    bath_heat: float  # Q_env, joules
    control_cost_lower_bound: float  # joules, n_samples * per-decision cost


@dataclass(frozen=True)
class EraseRecord:
    """Outcome and energy ledger of one erase (re-thermalization)."""

    v_start: float
    v_final: float
    duration: float
    bath_heat: float


@dataclass(frozen=True)
class ErasureReport:
    """Ensemble statistics of write -> erase(duration) -> read."""

    duration: float
    n_trajectories: int
    mean_Q_env: float
    se_Q_env: float
    theory_Q_env: float
    channel: BitChannelStats
    information: InformationContent


def _capacitor_energy(c, v):
    return 0.5 * c * v * v


def read_bit(v):
    """Sign decision: 1 for positive voltage, 0 for negative (tie -> 1)."""
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"voltage must be finite, got {v!r}")
    return 1 if v >= 0.0 else 0


def erase_dissipation_theory(u0, p: CellParams):
    """Predicted mean bath heat of a complete erase from +-u0: (C*u0^2 - kT)/2."""
    u0 = float(u0)
    if not (math.isfinite(u0) and u0 >= 0.0):
        raise ValueError(f"u0 must be non-negative, got {u0!r}")
    return 0.5 * (p.capacitance * u0 * u0 - p.kT)


def partial_erase_error_prob(u0, t, p: CellParams):
    """Analytic read-error probability after erasing for time t.

    Starting from +-u0, the voltage at time t is Gaussian with mean
    +-u0*mu and std sigma_st*sqrt(1-mu^2), mu = exp(-t/tau); the sign
    read errs with probability Phi(-u0*mu / std).  Returns 0 at t = 0
    and tends to 0.5 as t -> infinity.
    """
    u0 = float(u0)
    t = float(t)
    if not (math.isfinite(u0) and u0 > 0.0):
        raise ValueError(f"u0 must be positive, got {u0!r}")
    if not (t >= 0.0):
        raise ValueError(f"t must be non-negative, got {t!r}")
    if t == 0.0:
        return 0.0
    mu = math.exp(-t / p.tau)
    if mu == 0.0:
        return 0.5
    s = p.sigma_st * math.sqrt(1.0 - mu * mu)
    return float(ndtr(-u0 * mu / s))


def write_bit(bit, u0, p: CellParams, dt, rng: RngStream, *,
              per_sample_error=0.5, max_duration=None, batch=512):
    """Write `bit` by first passage of the connected cell to +-u0.

    The initial state is a fresh stationary sample (the cell is assumed
    connected and thermalized before the write).  The voltmeter samples
    every dt; a crossing is declared when consecutive samples straddle
    the signed target, and the final voltage is snapped exactly to the
    target (the controller disconnects at the threshold).  If the
    initial sample already lies at or beyond the target, the write
    completes immediately with a single measurement decision.

    The control-cost lower bound charges kT*ln(1/per_sample_error) per
    measurement decision (kT*ln 2 at the default), reported separately
    from the bath heat.
    """
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    u0 = float(u0)
    if not (math.isfinite(u0) and u0 > 0.0):
        raise ValueError(f"u0 must be positive, got {u0!r}")
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be positive, got {dt!r}")
    if not 0.0 < per_sample_error <= 0.5:
        raise ValueError("per_sample_error must lie in (0, 0.5]")
    if max_duration is None:
        # Generous guard: mean first-passage time to u0 from the bulk is
        # O(tau * exp(u0^2 / (2 sigma^2))) for u0 above sigma.
        max_duration = 1e4 * p.tau * math.exp(0.5 * (u0 / p.sigma_st) ** 2)

    target = u0 if bit == 1 else -u0
    v_start = float(ou_sample_stationary(p, rng))
    per_decision = p.kT * math.log(1.0 / per_sample_error)

    side = v_start - target
    steps = 0
    if side * (0.0 - target) > 0.0:
        # Initial sample is strictly between 0-side and target; walk until crossing.
        mu = math.exp(-dt / p.tau)
        s = p.sigma_st * math.sqrt(1.0 - mu * mu)
        start_sign = 1.0 if side > 0.0 else -1.0
        prev = v_start
        while True:
            z = rng.standard_normal(batch)
            path, _ = lfilter([s], [1.0, -mu], z, zi=np.array([mu * prev]))
            crossed = (path - target) * start_sign <= 0.0
            hit = np.nonzero(crossed)[0]
            if hit.size:
                steps += int(hit[0]) + 1
                break
            steps += batch
            prev = float(path[-1])
            if steps * dt > max_duration:
                raise WriteTimeoutError(
                    f"no passage to {target!r} within {max_duration!r} s "
                    f"(u0/sigma = {u0 / p.sigma_st:.3g})")

    duration = steps * dt
    n_samples = steps + 1
    q_env = -(_capacitor_energy(p.capacitance, target)
              - _capacitor_energy(p.capacitance, v_start))
    return WriteRecord(
        bit_written=bit,
        target_level=target,
        duration=duration,
        v_start=v_start,
        v_final=target,
        n_samples=n_samples,
        bath_heat=q_env,
        control_cost_lower_bound=n_samples * per_decision,
    )


def erase(v0, duration, p: CellParams, dt, rng: RngStream):
    """Reconnect the resistor and thermalize for `duration` (no measurement).

    Uses the exact OU transition per dt step; the number of steps is
    ceil(duration/dt) and the recorded duration is the simulated
    n_steps*dt.  The bath heat follows from the ledger identity alone.
    """
    v0 = float(v0)
    if not math.isfinite(v0):
        raise ValueError(f"v0 must be finite, got {v0!r}")
    if not (duration >= 0.0):
        raise ValueError(f"duration must be non-negative, got {duration!r}")
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be positive, got {dt!r}")

    if duration == 0.0:
        return EraseRecord(v_start=v0, v_final=v0, duration=0.0, bath_heat=0.0)

    n = math.ceil(duration / dt)
    mu = math.exp(-dt / p.tau)
    s = p.sigma_st * math.sqrt(1.0 - mu * mu)
    z = rng.standard_normal(n)
    # Closed form of the n-fold step recursion v <- mu*v + s*z.
    weights = mu ** np.arange(n - 1, -1, -1)
    v_final = v0 * mu ** n + s * float(weights @ z)
    q_env = -(_capacitor_energy(p.capacitance, v_final)
              - _capacitor_energy(p.capacitance, v0))
    return EraseRecord(v_start=v0, v_final=v_final, duration=n * dt, bath_heat=q_env)


@dataclass(frozen=True)
class ErasureExperimentConfig:
    """Configuration for the write/erase/read information-decay experiment."""

    cell: CellParams
    u0: float
    durations: tuple
    n_trajectories: int
    master_seed: int
    dt: float = None  # defaults to DEFAULT_DT_FRACTION * tau
    worker_count: int = 1
    per_sample_error: float = 0.5

    def __post_init__(self):
        if not (math.isfinite(self.u0) and self.u0 > 0.0):
            raise ValueError("u0 must be positive")
        if self.n_trajectories < 1:
            raise ValueError("n_trajectories must be >= 1")
        if any(d < 0 for d in self.durations):
            raise ValueError("durations must be non-negative")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.dt is not None and not self.dt > 0:
            raise ValueError("dt must be positive")

    @property
    def step(self):
        return self.dt if self.dt is not None else DEFAULT_DT_FRACTION * self.cell.tau


def _erasure_trajectory(stream, cell, u0, duration, dt, per_sample_error):
    bit = int(stream.integers(0, 2))
    wr = write_bit(bit, u0, cell, dt, stream, per_sample_error=per_sample_error)
    er = erase(wr.v_final, duration, cell, dt, stream)
    return bit, read_bit(er.v_final), er.bath_heat


def run_erasure_experiment(config: ErasureExperimentConfig) -> list:
    """Write random bits, erase for each duration, read, and tally.

    Returns one ErasureReport per duration.  Each (duration, trajectory)
    pair owns a distinct stream index, so results are reproducible and
    independent of the worker count.
    """
    reports = []
    n = config.n_trajectories
    for d_idx, duration in enumerate(config.durations):
        task = partial(_erasure_trajectory, cell=config.cell, u0=config.u0,
                       duration=float(duration), dt=config.step,
                       per_sample_error=config.per_sample_error)
        results = run_parallel_ensemble(task, n, config.master_seed,
                                        worker_count=config.worker_count,
                                        stream_offset=d_idx * n)
        bits = np.array([r[0] for r in results])
        reads = np.array([r[1] for r in results])
        q = np.array([r[2] for r in results])
        channel = estimate_error_prob(bits, reads)
        reports.append(ErasureReport(
            duration=float(duration),
            n_trajectories=n,
            mean_Q_env=float(q.mean()),
            se_Q_env=float(q.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0,
            theory_Q_env=erase_dissipation_theory(config.u0, config.cell),
            channel=channel,
            information=remaining_information(channel),
        ))
    return reports
