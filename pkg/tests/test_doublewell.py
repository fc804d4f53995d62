import math

import numpy as np
import pytest
from scipy.integrate import quad

from thermobit.doublewell import (DoubleWellParams, EscapeInfeasibleError, em_step,
                                  heated_erase, measure_escape_time, relax_ensemble,
                                  sample_well)
from thermobit.streams import make_stream


def boltzmann_mean_potential(p, side=None, temperature=None):
    """Quadrature oracle: <U> under exp(-U/kT), optionally one-sided."""
    kT = p.boltzmann * (temperature if temperature is not None else p.temperature)
    lo = 0.0 if side == 1 else -4.0 * p.well_position
    hi = 0.0 if side == 0 else 4.0 * p.well_position
    z, _ = quad(lambda x: math.exp(-p.potential(x) / kT), lo, hi, limit=200)
    m, _ = quad(lambda x: p.potential(x) * math.exp(-p.potential(x) / kT), lo, hi, limit=200)
    return m / z


def boltzmann_cdf_grid(p, xs):
    kT = p.kT
    z, _ = quad(lambda x: math.exp(-p.potential(x) / kT),
                -4.0 * p.well_position, 4.0 * p.well_position, limit=200)
    return np.array([
        quad(lambda x: math.exp(-p.potential(x) / kT),
             -4.0 * p.well_position, xi, limit=200)[0] / z
        for xi in xs
    ])


class TestParams:
    def test_potential_anchors_exact(self):
        p = DoubleWellParams.reduced(2.0)
        assert p.potential(p.well_position) == 0.0
        assert p.potential(-p.well_position) == 0.0
        assert p.potential(0.0) == p.barrier_height

    def test_potential_symmetry(self):
        p = DoubleWellParams.reduced(3.0)
        xs = np.linspace(0.0, 3.0, 101)
        np.testing.assert_array_equal(p.potential(xs), p.potential(-xs))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            DoubleWellParams.reduced(0.0)
        with pytest.raises(ValueError):
            DoubleWellParams(barrier_height=1.0, well_position=1.0,
                             damping=-1.0, temperature=1.0)


class TestEmStep:
    def test_drift_vanishes_at_stationary_points(self):
        p = DoubleWellParams.reduced(2.0)
        dt = 0.5 * p.max_stable_dt
        amp = math.sqrt(2.0 * p.kT * dt / p.damping)
        for x0 in (0.0, p.well_position, -p.well_position):
            z = make_stream(30, 0).standard_normal()
            got = em_step(x0, dt, p, make_stream(30, 0))
            assert got == pytest.approx(x0 + amp * z, rel=1e-14, abs=1e-14)

    def test_rejects_unstable_dt(self):
        p = DoubleWellParams.reduced(2.0)
        with pytest.raises(ValueError):
            em_step(0.0, 2.0 * p.max_stable_dt, p, make_stream(0, 0))
        with pytest.raises(ValueError):
            em_step(0.0, 0.0, p, make_stream(0, 0))

    def test_long_run_matches_boltzmann(self):
        # Stationarity oracle: evolve an equilibrium ensemble and compare the
        # empirical CDF of the final states against Boltzmann quadrature
        # (sup-norm tolerance 0.05 for n = 2000, KS 95% is ~0.030).
        p = DoubleWellParams.reduced(2.0)
        dt = 0.5 * p.max_stable_dt
        n, steps = 2000, 1000
        streams = [make_stream(31, i) for i in range(n)]
        x = np.array([sample_well(p, i % 2, s) for i, s in enumerate(streams)])
        amp = math.sqrt(2.0 * p.kT * dt / p.damping)
        for block in range(steps // 100):
            z = np.stack([s.standard_normal(100) for s in streams])
            for k in range(100):
                x += -p.potential_grad(x) / p.damping * dt + amp * z[:, k]
        xs = np.linspace(-2.0, 2.0, 41)
        theory = boltzmann_cdf_grid(p, xs)
        empirical = np.array([(x <= xi).mean() for xi in xs])
        assert np.max(np.abs(empirical - theory)) < 0.05


class TestSampleWell:
    def test_side_conditioning(self):
        p = DoubleWellParams.reduced(2.0)
        s = make_stream(32, 0)
        assert all(sample_well(p, 1, s) > 0 for _ in range(200))
        assert all(sample_well(p, 0, s) < 0 for _ in range(200))

    def test_conditional_mean_potential(self):
        p = DoubleWellParams.reduced(2.0)
        s = make_stream(33, 0)
        n = 100_000
        u = p.potential(np.array([sample_well(p, 1, s) for _ in range(n)]))
        oracle = boltzmann_mean_potential(p, side=1)
        assert abs(u.mean() - oracle) < 3.0 * u.std(ddof=1) / math.sqrt(n)

    def test_mirror_symmetry(self):
        p = DoubleWellParams.reduced(2.0)
        a = np.array([sample_well(p, 1, make_stream(34, i)) for i in range(20_000)])
        b = np.array([sample_well(p, 0, make_stream(35, i)) for i in range(20_000)])
        assert abs(a.mean() + b.mean()) < 4.0 * a.std() / math.sqrt(a.size)

    def test_rejects_bad_side(self):
        with pytest.raises(ValueError):
            sample_well(DoubleWellParams.reduced(2.0), 2, make_stream(0, 0))


class TestRelaxEnsemble:
    def test_forgets_to_half(self):
        p = DoubleWellParams.reduced(2.0)
        series = relax_ensemble(p, 1, 20.0, 0.5 * p.max_stable_dt, 2000, seed=36)
        assert series.p1[0] == 1.0
        assert abs(series.p1[-1] - 0.5) < 0.05

    def test_mean_energy_time_invariant(self):
        # Conditional-equilibrium start equals the restriction of the global
        # equilibrium, so <U> is constant; cross-check level by quadrature.
        p = DoubleWellParams.reduced(2.0)
        series = relax_ensemble(p, 1, 10.0, 0.5 * p.max_stable_dt, 4000, seed=37)
        oracle = boltzmann_mean_potential(p, side=1)
        assert abs(series.mean_U[0] - oracle) < 3.0 * series.se_U[0]
        drift = np.abs(series.mean_U - series.mean_U[0])
        assert np.max(drift) < 3.0 * np.max(series.se_U) + 0.02

    def test_sides_mirror(self):
        p = DoubleWellParams.reduced(2.0)
        dt = 0.5 * p.max_stable_dt
        s1 = relax_ensemble(p, 1, 5.0, dt, 2000, seed=38)
        s0 = relax_ensemble(p, 0, 5.0, dt, 2000, seed=39)
        np.testing.assert_allclose(s0.p1, 1.0 - s1.p1, atol=0.06)

    def test_requires_minimum_ensemble(self):
        p = DoubleWellParams.reduced(2.0)
        with pytest.raises(ValueError):
            relax_ensemble(p, 1, 1.0, 0.5 * p.max_stable_dt, 50, seed=0)


class TestEscapeTime:
    def test_monotone_in_barrier(self):
        times = []
        for barrier in (1.0, 2.0, 3.0):
            p = DoubleWellParams.reduced(barrier)
            t, _ = measure_escape_time(p, 500, 0.5 * p.max_stable_dt, seed=40)
            times.append(t)
        assert times[0] < times[1] < times[2]

    def test_infeasible_barrier_errors_fast(self):
        p = DoubleWellParams.reduced(12.0)
        with pytest.raises(EscapeInfeasibleError):
            measure_escape_time(p, 10, 0.5 * p.max_stable_dt, seed=0)

    def test_budget_exceeded_errors(self):
        p = DoubleWellParams.reduced(2.0)
        with pytest.raises(EscapeInfeasibleError):
            measure_escape_time(p, 50, 0.5 * p.max_stable_dt, seed=0, max_time=0.05)


class TestHeatedErase:
    def test_equal_temperature_degenerates_to_relax(self):
        p = DoubleWellParams.reduced(3.0)
        dt = 0.5 * p.max_stable_dt
        series, mean_du, _ = heated_erase(p, p.temperature, 3.0, dt, 500, seed=41)
        plain = relax_ensemble(p, 1, 3.0, dt, 500, seed=41)
        np.testing.assert_array_equal(series.p1, plain.p1)
        np.testing.assert_array_equal(series.mean_U, plain.mean_U)

    def test_hot_bath_injects_energy(self):
        p = DoubleWellParams.reduced(4.0)
        dt = 0.5 * p.max_stable_dt
        _series, mean_du, se_du = heated_erase(p, 4.0, 5.0, dt, 2000, seed=42)
        assert mean_du > 3.0 * se_du
        # Quadrature oracle for the heated equilibrium level.
        hot = boltzmann_mean_potential(p, temperature=4.0)
        ambient = boltzmann_mean_potential(p, side=1)
        assert hot > ambient

    def test_heating_accelerates_forgetting(self):
        # At kT_hot = E the hot run forgets much faster than the ambient one.
        p = DoubleWellParams.reduced(4.0)
        dt = 0.5 * p.max_stable_dt
        hot, _, _ = heated_erase(p, 4.0, 3.0, dt, 1000, seed=43)
        cold = relax_ensemble(p, 1, 3.0, dt, 1000, seed=43)
        assert abs(hot.p1[-1] - 0.5) < 0.06
        assert cold.p1[-1] > 0.8

    def test_rejects_cooling(self):
        p = DoubleWellParams.reduced(2.0)
        with pytest.raises(ValueError):
            heated_erase(p, 0.5, 1.0, 0.5 * p.max_stable_dt, 500, seed=0)
