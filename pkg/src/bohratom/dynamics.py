"""Relativistic orbit integration and trajectory-level consistency checks.

The transparency-regime equation of motion is Newton-like with a
constant effective mass,

    d/dt (m_eff gamma v) = -(alpha / r^2) r_hat  (+ optional reaction term),

propagated in lab time with proper time tau, the internal phase
Omega_p tau and the mechanical action integral co-integrated.  The
checks compare the integrated trajectory against the closed-form
circular solution, the holonomic lock z(tau) = u(x_p(t)), and the
guidance law that recovers the orbital speed from the wave phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    ConfigError,
    DomainError,
    GuidanceSingularityError,
    IntegrationFailureError,
    SingularityError,
    UsageError,
)
from .quantization import OrbitSolution, PhysicalParams
from .wavefield import field_on_orbit

__all__ = [
    "TrajectoryState",
    "GeneralForceSpec",
    "Trajectory",
    "effective_mass",
    "coulomb_acceleration",
    "circular_initials",
    "integrate_orbit",
    "constraint_residual",
    "phase_residual_series",
    "bohmian_velocity",
]


@dataclass(frozen=True)
class TrajectoryState:
    """Lab-time snapshot of the particle and its internal clock."""

    t: float
    pos: np.ndarray
    vel: np.ndarray
    tau: float
    z_phase: float

    def __post_init__(self):
        if np.dot(self.vel, self.vel) >= 1.0:
            raise DomainError(f"|v| >= 1 at t = {self.t}")


@dataclass(frozen=True)
class GeneralForceSpec:
    """Reaction-force hook: caller supplies the internal amplitude N(tau).

    The transparency regime is N identically zero (``enabled`` False).
    When enabled, the spatial force 2 Re[conj(N) grad u] is added using
    the caller's field-gradient callback; no self-consistent emission
    is solved for.
    """

    script_N: Callable[[float], complex] = lambda tau: 0.0 + 0.0j
    enabled: bool = False


@dataclass(frozen=True)
class Trajectory:
    """Sampled trajectory with co-integrated clock, phase and action."""

    t: np.ndarray
    pos: np.ndarray
    vel: np.ndarray
    tau: np.ndarray
    z_phase: np.ndarray
    action: np.ndarray
    m_eff: float
    alpha: float
    complete: bool = True

    @property
    def radius(self) -> np.ndarray:
        return np.linalg.norm(self.pos, axis=1)

    @property
    def speed(self) -> np.ndarray:
        return np.linalg.norm(self.vel, axis=1)

    @property
    def energy(self) -> np.ndarray:
        gamma = 1.0 / np.sqrt(1.0 - self.speed**2)
        return self.m_eff * gamma - self.alpha / self.radius

    @property
    def angular_momentum(self) -> np.ndarray:
        gamma = 1.0 / np.sqrt(1.0 - self.speed**2)
        return self.m_eff * gamma * np.linalg.norm(np.cross(self.pos, self.vel), axis=1)

    @property
    def states(self):
        return [
            TrajectoryState(t=float(self.t[i]), pos=self.pos[i].copy(),
                            vel=self.vel[i].copy(), tau=float(self.tau[i]),
                            z_phase=float(self.z_phase[i]))
            for i in range(len(self.t))
        ]

    def final_state(self) -> TrajectoryState:
        return self.states[-1]


def effective_mass(m_p: float, sigma: float, Omega_p: float, z0_mod: float) -> float:
    """Constant inertia m_p (1 + sigma Omega_p^2 |z0|^2) of the dressed particle."""
    if m_p <= 0:
        raise ConfigError(f"m_p must be positive, got {m_p}")
    if sigma < 0 or Omega_p < 0 or z0_mod < 0:
        raise ConfigError("sigma, Omega_p and z0_mod must be non-negative")
    return m_p * (1.0 + sigma * Omega_p**2 * z0_mod**2)


def coulomb_acceleration(params: PhysicalParams, state: TrajectoryState,
                         force: GeneralForceSpec = GeneralForceSpec(),
                         field_gradient: Callable | None = None,
                         r_cutoff: float | None = None) -> np.ndarray:
    """Lab-time acceleration dv/dt under the central -alpha/r potential.

    With F the three-force, dv/dt = (F - (F.v) v) / (m_eff gamma); the
    (F.v)v piece is the relativistic inertia of the momentum direction.
    """
    if params.m_eff is None:
        raise ConfigError("dynamics needs a direct m_eff")
    alpha = float(params.alpha)
    m_eff = float(params.m_eff)
    a0 = 1.0 / (m_eff * alpha)
    if r_cutoff is None:
        r_cutoff = 1e-6 * a0
    r = float(np.linalg.norm(state.pos))
    if r <= r_cutoff:
        raise SingularityError(
            f"r = {r} fell below the singularity cutoff {r_cutoff}"
        )
    f = -(alpha / r**3) * state.pos
    if force.enabled:
        if field_gradient is None:
            raise ConfigError("force.enabled requires a field_gradient callback")
        grad_u = np.asarray(field_gradient(state), dtype=complex)
        script_n = complex(force.script_N(state.tau))
        f = f + 2.0 * np.real(np.conj(script_n) * grad_u)
    v = state.vel
    gamma = 1.0 / math.sqrt(1.0 - float(np.dot(v, v)))
    return (f - np.dot(f, v) * v) / (m_eff * gamma)


def circular_initials(orbit: OrbitSolution) -> TrajectoryState:
    """Closed-form circular state: position (r_n, 0, 0), velocity (0, v_n, 0)."""
    return TrajectoryState(
        t=0.0,
        pos=np.array([orbit.r, 0.0, 0.0]),
        vel=np.array([0.0, orbit.v, 0.0]),
        tau=0.0,
        z_phase=0.0,
    )


def integrate_orbit(params: PhysicalParams, initial: TrajectoryState,
                    duration: float, tol: float = 1e-12,
                    samples: int = 1000,
                    force: GeneralForceSpec = GeneralForceSpec(),
                    field_gradient: Callable | None = None,
                    omega_p: float | None = None,
                    r_cutoff: float | None = None) -> Trajectory:
    """Integrate the equation of motion over ``duration`` of lab time.

    Adaptive high-order Runge-Kutta (DOP853) with absolute and relative
    local tolerance ``tol``.  The state vector carries position,
    velocity, proper time, internal phase and the action integral
    d(action)/dt = gamma m_eff v^2 (whose loop value over one period is
    the Bohr-Sommerfeld 2 pi n).  Negative durations integrate
    backwards.  Falling below the singularity cutoff raises
    IntegrationFailureError with the partial trajectory attached.
    """
    if tol <= 0:
        raise ConfigError(f"tol must be positive, got {tol}")
    if samples < 2:
        raise ConfigError("samples must be at least 2")
    if params.m_eff is None:
        raise ConfigError("dynamics needs a direct m_eff")
    alpha = float(params.alpha)
    m_eff = float(params.m_eff)
    a0 = 1.0 / (m_eff * alpha)
    cutoff = 1e-6 * a0 if r_cutoff is None else r_cutoff
    omega_p = 0.0 if omega_p is None else float(omega_p)

    use_general = force.enabled

    def rhs(t, y):
        pos = y[0:3]
        vel = y[3:6]
        r = math.sqrt(pos[0] ** 2 + pos[1] ** 2 + pos[2] ** 2)
        v2 = vel[0] ** 2 + vel[1] ** 2 + vel[2] ** 2
        gamma_inv = math.sqrt(1.0 - v2)
        f = -(alpha / r**3) * pos
        if use_general:
            state = TrajectoryState(t=t, pos=pos, vel=vel, tau=y[6], z_phase=y[7])
            grad_u = np.asarray(field_gradient(state), dtype=complex)
            script_n = complex(force.script_N(y[6]))
            f = f + 2.0 * np.real(np.conj(script_n) * grad_u)
        acc = (f - np.dot(f, vel) * vel) * gamma_inv / m_eff
        return np.concatenate([
            vel, acc,
            [gamma_inv, omega_p * gamma_inv, m_eff * v2 / gamma_inv],
        ])

    def hit_cutoff(t, y):
        return math.sqrt(y[0] ** 2 + y[1] ** 2 + y[2] ** 2) - cutoff

    hit_cutoff.terminal = True

    y0 = np.concatenate([initial.pos, initial.vel,
                         [initial.tau, initial.z_phase, 0.0]])
    if duration == 0.0:
        return Trajectory(
            t=np.array([initial.t]), pos=y0[None, 0:3].copy(), vel=y0[None, 3:6].copy(),
            tau=np.array([initial.tau]), z_phase=np.array([initial.z_phase]),
            action=np.array([0.0]), m_eff=m_eff, alpha=alpha,
        )
    t_eval = np.linspace(initial.t, initial.t + duration, samples)
    sol = solve_ivp(rhs, (initial.t, initial.t + duration), y0, method="DOP853",
                    rtol=tol, atol=tol, t_eval=t_eval, events=hit_cutoff,
                    dense_output=False)
    traj = Trajectory(
        t=sol.t, pos=sol.y[0:3].T.copy(), vel=sol.y[3:6].T.copy(),
        tau=sol.y[6], z_phase=sol.y[7], action=sol.y[8],
        m_eff=m_eff, alpha=alpha, complete=bool(sol.status == 0),
    )
    if sol.status != 0 or not sol.success:
        reason = "trajectory reached the singularity cutoff" if sol.status == 1 \
            else f"integrator failed: {sol.message}"
        raise IntegrationFailureError(reason, partial=traj)
    return traj


def _unwrapped_phi(traj: Trajectory) -> np.ndarray:
    return np.unwrap(np.arctan2(traj.pos[:, 1], traj.pos[:, 0]))


def constraint_residual(traj: Trajectory, orbit: OrbitSolution, u0: float,
                        radius_tol: float = 1e-3):
    """Holonomic-lock residuals between z(tau) = u0 e^{-i Omega_p tau} and u(x_p).

    Returns (max modulus residual / u0, max phase mismatch in radians)
    over the trajectory samples; the field side goes through the
    closed-form on-orbit expression, never through z's clock.
    """
    rdev = np.max(np.abs(traj.radius - orbit.r)) / orbit.r
    if rdev > radius_tol:
        raise UsageError(
            f"trajectory strays {rdev:.2e} from the orbit radius; it does not "
            "belong to this orbit"
        )
    phi = _unwrapped_phi(traj)
    sample = field_on_orbit(orbit, u0, traj.t, phi)
    z_lock = u0 * np.exp(-1j * orbit.Omega_p * traj.tau)
    max_abs = float(np.max(np.abs(z_lock - sample.value)) / abs(u0))
    mism = np.angle(np.exp(1j * (-orbit.Omega_p * traj.tau - sample.carrier_phase)))
    max_phase = float(np.max(np.abs(mism)))
    return (max_abs, max_phase)


def phase_residual_series(traj: Trajectory, orbit: OrbitSolution):
    """Per-sample wrapped phase mismatch between the internal clock and the carrier."""
    phi = _unwrapped_phi(traj)
    carrier = (orbit.n * phi - (orbit.N - orbit.alpha) * traj.t / orbit.r) / orbit.b
    return np.angle(np.exp(1j * (-orbit.Omega_p * traj.tau - carrier)))


def bohmian_velocity(orbit: OrbitSolution, point, h_scale: float = 1e-6) -> np.ndarray:
    """Guidance velocity v = -(grad S - eA)/(dS/dt + eV) from the carrier phase.

    S is the quantum phase b times the on-orbit carrier phase; A = 0
    and eV = -alpha/r.  Gradients are taken by central differences of
    the closed-form phase, so the radial component vanishes identically.
    Returned in Cartesian components at the point.
    """
    t, r, theta, phi = point
    if abs(theta - math.pi / 2.0) > 1e-9:
        raise DomainError("the on-orbit closed form lives on the equatorial plane")

    def phase(tt, pp):
        return orbit.b * field_on_orbit(orbit, 1.0, tt, pp).carrier_phase

    ht = h_scale * orbit.r / max(orbit.v, 1e-12)
    hp = h_scale * 2.0 * math.pi
    ds_dt = (phase(t + ht, phi) - phase(t - ht, phi)) / (2.0 * ht)
    ds_dphi = (phase(t, phi + hp) - phase(t, phi - hp)) / (2.0 * hp)
    denom = ds_dt + (-orbit.alpha / r)
    if abs(denom) < 1e-12 * abs(ds_dphi / r + 1e-300):
        raise GuidanceSingularityError(
            "guidance denominator dS/dt + eV vanishes at this point"
        )
    v_phi = -(ds_dphi / r) / denom
    return np.array([-v_phi * math.sin(phi), v_phi * math.cos(phi), 0.0])
