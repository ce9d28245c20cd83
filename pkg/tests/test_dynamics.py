"""Trajectory integration, conservation, constraint lock and guidance."""

import math
from fractions import Fraction

import numpy as np
import pytest

from bohratom.dynamics import (
    GeneralForceSpec,
    TrajectoryState,
    bohmian_velocity,
    circular_initials,
    constraint_residual,
    effective_mass,
    integrate_orbit,
    phase_residual_series,
)
from bohratom.errors import (
    ConfigError,
    DomainError,
    IntegrationFailureError,
    UsageError,
)
from bohratom.quantization import PhysicalParams, solve_orbit


@pytest.fixture(scope="module")
def hydrogen():
    params = PhysicalParams(alpha=1.0 / 137.0)
    orbit = solve_orbit(params, 1)
    return params, orbit


def _period(orbit):
    return 2.0 * math.pi * orbit.r / orbit.v


class TestIntegration:
    def test_circular_orbit_stays_circular(self, hydrogen):
        params, orbit = hydrogen
        traj = integrate_orbit(params, circular_initials(orbit),
                               5.0 * _period(orbit), samples=600)
        assert traj.complete
        assert np.max(np.abs(traj.radius - orbit.r)) / orbit.r < 1e-9
        assert np.max(np.abs(traj.speed - orbit.v)) / orbit.v < 1e-9

    def test_conserved_quantities(self, hydrogen):
        params, orbit = hydrogen
        traj = integrate_orbit(params, circular_initials(orbit),
                               5.0 * _period(orbit), samples=600)
        e = traj.energy
        lmag = traj.angular_momentum
        assert np.max(np.abs(e - e[0])) / abs(e[0]) < 1e-11
        assert np.max(np.abs(lmag - lmag[0])) / abs(lmag[0]) < 1e-11
        assert e[0] == pytest.approx(orbit.E, rel=1e-12)
        assert lmag[0] == pytest.approx(orbit.n, rel=1e-12)

    def test_proper_time_dilation(self, hydrogen):
        params, orbit = hydrogen
        span = 3.0 * _period(orbit)
        traj = integrate_orbit(params, circular_initials(orbit), span)
        expect = span * math.sqrt(1.0 - orbit.v**2)
        assert traj.tau[-1] == pytest.approx(expect, rel=1e-12)

    def test_action_accumulates_n_per_period(self, hydrogen):
        params, orbit = hydrogen
        traj = integrate_orbit(params, circular_initials(orbit), _period(orbit))
        assert traj.action[-1] / (2.0 * math.pi) == pytest.approx(orbit.n,
                                                                  rel=1e-10)

    def test_time_reversal(self, hydrogen):
        params, orbit = hydrogen
        fwd = integrate_orbit(params, circular_initials(orbit),
                              0.5 * _period(orbit), samples=50)
        back = integrate_orbit(params, fwd.final_state(),
                               -0.5 * _period(orbit), samples=50)
        assert np.allclose(back.pos[-1], fwd.pos[0], atol=1e-9 * orbit.r)
        assert np.allclose(back.vel[-1], fwd.vel[0], atol=1e-9 * orbit.v)

    def test_zero_duration_echoes_initial(self, hydrogen):
        params, orbit = hydrogen
        initial = circular_initials(orbit)
        traj = integrate_orbit(params, initial, 0.0)
        assert len(traj.t) == 1
        assert np.array_equal(traj.pos[0], initial.pos)

    def test_plunge_raises_with_partial(self, hydrogen):
        params, orbit = hydrogen
        # radial infall: no angular momentum, falls into the cutoff
        initial = TrajectoryState(t=0.0, pos=np.array([orbit.r, 0.0, 0.0]),
                                  vel=np.zeros(3), tau=0.0, z_phase=0.0)
        with pytest.raises(IntegrationFailureError) as exc:
            integrate_orbit(params, initial, 10.0 * _period(orbit))
        partial = exc.value.partial
        assert partial is not None and not partial.complete
        assert partial.radius[-1] < orbit.r

    def test_argument_validation(self, hydrogen):
        params, orbit = hydrogen
        initial = circular_initials(orbit)
        with pytest.raises(ConfigError):
            integrate_orbit(params, initial, 1.0, tol=0.0)
        with pytest.raises(ConfigError):
            integrate_orbit(params, initial, 1.0, samples=1)
        triple = PhysicalParams(alpha=0.2, m_p=1.0, sigma=1.0, Omega_p=10.0)
        with pytest.raises(ConfigError):
            integrate_orbit(triple, initial, 1.0)

    def test_superluminal_state_rejected(self):
        with pytest.raises(DomainError):
            TrajectoryState(t=0.0, pos=np.ones(3), vel=np.array([1.0, 0.2, 0.0]),
                            tau=0.0, z_phase=0.0)

    def test_general_force_hook(self, hydrogen):
        params, orbit = hydrogen
        # a vanishing coupling must reproduce the transparent trajectory
        force = GeneralForceSpec(script_N=lambda tau: 0.0, enabled=True)
        grad = lambda state: np.zeros(3, dtype=complex)
        traj = integrate_orbit(params, circular_initials(orbit),
                               0.2 * _period(orbit), samples=50,
                               force=force, field_gradient=grad)
        ref = integrate_orbit(params, circular_initials(orbit),
                              0.2 * _period(orbit), samples=50)
        assert np.allclose(traj.pos, ref.pos, atol=1e-12 * orbit.r)


class TestConstraint:
    def test_lock_residual_small(self, hydrogen):
        params, orbit = hydrogen
        traj = integrate_orbit(params, circular_initials(orbit),
                               10.0 * _period(orbit), samples=2000,
                               omega_p=orbit.Omega_p)
        mod_res, phase_res = constraint_residual(traj, orbit, u0=1.0)
        assert mod_res < 1e-8
        assert phase_res < 1e-8
        series = phase_residual_series(traj, orbit)
        assert np.max(np.abs(series)) < 1e-8

    def test_off_orbit_trajectory_rejected(self, hydrogen):
        params, orbit = hydrogen
        initial = TrajectoryState(t=0.0, pos=np.array([1.5 * orbit.r, 0.0, 0.0]),
                                  vel=np.array([0.0, 0.8 * orbit.v, 0.0]),
                                  tau=0.0, z_phase=0.0)
        traj = integrate_orbit(params, initial, 0.5 * _period(orbit))
        with pytest.raises(UsageError):
            constraint_residual(traj, orbit, u0=1.0)

    def test_detuned_clock_slope(self, hydrogen):
        # running the internal clock 1% fast makes the phase mismatch
        # grow linearly at (scale - 1) Omega_p sqrt(1 - v^2) per unit
        # lab time
        params, orbit = hydrogen
        scale = 1.01
        traj = integrate_orbit(params, circular_initials(orbit),
                               0.05 * _period(orbit), samples=400,
                               omega_p=scale * orbit.Omega_p)
        phi = np.unwrap(np.arctan2(traj.pos[:, 1], traj.pos[:, 0]))
        carrier = (orbit.n * phi - (orbit.N - orbit.alpha) * traj.t / orbit.r) \
            / orbit.b
        mism = np.unwrap(np.angle(np.exp(1j * (-traj.z_phase - carrier))))
        slope = np.polyfit(traj.t, mism, 1)[0]
        expect = (scale - 1.0) * orbit.Omega_p * math.sqrt(1.0 - orbit.v**2)
        assert slope == pytest.approx(-expect, rel=1e-6)


class TestGuidance:
    def test_bohmian_speed_is_orbit_speed(self):
        params = PhysicalParams(alpha=Fraction(1, 3))
        for n in (1, 2, 3):
            orbit = solve_orbit(params, n)
            vel = bohmian_velocity(orbit, (0.0, orbit.r, math.pi / 2.0, 0.9))
            assert np.linalg.norm(vel) == pytest.approx(orbit.v, abs=1e-11)

    def test_bohmian_direction_tangential(self):
        orbit = solve_orbit(PhysicalParams(alpha=0.25), 1)
        phi = 0.7
        vel = bohmian_velocity(orbit, (0.0, orbit.r, math.pi / 2.0, phi))
        radial_unit = np.array([math.cos(phi), math.sin(phi), 0.0])
        assert abs(np.dot(vel, radial_unit)) < 1e-12
        assert vel[2] == 0.0

    def test_equatorial_plane_required(self):
        orbit = solve_orbit(PhysicalParams(alpha=0.25), 1)
        with pytest.raises(DomainError):
            bohmian_velocity(orbit, (0.0, orbit.r, 1.0, 0.0))


def test_effective_mass_relation():
    assert effective_mass(2.0, 0.5, 3.0, 0.2) == pytest.approx(
        2.0 * (1.0 + 0.5 * 9.0 * 0.04), rel=1e-15)
