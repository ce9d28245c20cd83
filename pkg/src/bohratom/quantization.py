"""Closed-form quantized circular orbits of a charge locked to its pilot field.

Natural units c = hbar = 1 throughout.  The orbit of azimuthal number n
in a Coulomb potential -alpha/r carries speed v = alpha/n, and locking
the particle phase to a standing wave built from two counter-rotating
field modes forces the scaled mode numbers b*m_pm = n^2/alpha +- n to be
integers.  Everything here is closed-form; the functions accept exact
rationals (fractions.Fraction) for alpha and b and then keep the
mode-number arithmetic exact, which matters because the selection rule
is an exact integer statement that floating point would blur.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import (
    ConfigError,
    SuperluminalError,
    UnphysicalAmplitudeError,
    ZeroChargeError,
)

__all__ = [
    "PhysicalParams",
    "OrbitSolution",
    "solve_orbit",
    "mode_numbers",
    "check_selection_rule",
    "fine_structure_from_modes",
    "historical_phase_wave",
    "nonrel_energy",
    "OMEGA_MINUS_BOUND",
]

# alpha below this golden-ratio bound keeps both mode frequencies positive
OMEGA_MINUS_BOUND = (math.sqrt(5.0) - 1.0) / 2.0


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


@dataclass(frozen=True)
class PhysicalParams:
    """Model constants shared by every orbit.

    Either ``m_eff`` is given directly (default 1.0) or the bare-particle
    triple (``m_p``, ``sigma``, ``Omega_p``) is given instead, in which
    case the effective mass and the squared oscillator amplitude |z0|^2
    are derived per orbit from the phase-harmony condition.  ``alpha``
    and ``b`` may be exact rationals; exactness then propagates through
    the mode-number arithmetic.
    """

    alpha: float | Fraction
    b: float | Fraction = 1
    xi_charge: float = 1.0
    omega0: float = 0.0
    m_eff: float | None = 1.0
    m_p: float | None = None
    sigma: float | None = None
    Omega_p: float | None = None

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.b > 0:
            raise ConfigError(f"b must be positive, got {self.b}")
        if self.omega0 < 0:
            raise ConfigError(f"omega0 must be non-negative, got {self.omega0}")
        triple = (self.m_p, self.sigma, self.Omega_p)
        if any(v is not None for v in triple):
            if any(v is None for v in triple):
                raise ConfigError("m_p, sigma and Omega_p must be supplied together")
            if self.m_p <= 0 or self.sigma <= 0 or self.Omega_p <= 0:
                raise ConfigError("m_p, sigma and Omega_p must all be positive")
            if self.m_eff not in (None, 1.0):
                raise ConfigError("supply either m_eff or the (m_p, sigma, Omega_p) triple")
            object.__setattr__(self, "m_eff", None)
        elif self.m_eff is None or not self.m_eff > 0:
            raise ConfigError(f"m_eff must be positive, got {self.m_eff}")

    @property
    def beta(self) -> float:
        """Field-frame coupling strength beta = xi * alpha."""
        return self.xi_charge * self.alpha


@dataclass(frozen=True)
class OrbitSolution:
    """All closed-form quantities of one circular orbit."""

    n: float
    N: float
    m_plus: float
    m_minus: float
    v: float
    r: float
    P: float
    E: float
    omega_plus: float
    omega_minus: float
    k_plus: float
    k_minus: float
    epsilon: float
    Omega_p: float
    z0_mod2: float | None
    selection_ok: bool
    selection_residual: float
    m_eff: float
    alpha: float
    b: float
    a0: float

    @property
    def lagrangian(self) -> float:
        """On-orbit Lagrangian -m_eff sqrt(1 - v^2) + alpha/r."""
        return -self.m_eff * math.sqrt(1.0 - self.v**2) + self.alpha / self.r


def mode_numbers(params: PhysicalParams, n):
    """Mode numbers (m_plus, m_minus) with b*m_pm = n^2/alpha +- n.

    Exact when alpha, b and n are exact rationals.
    """
    alpha, b = params.alpha, params.b
    if _is_exact(alpha) and _is_exact(b) and _is_exact(n):
        N = Fraction(n) ** 2 / Fraction(alpha)
        return ((N + n) / Fraction(b), (N - n) / Fraction(b))
    N = float(n) ** 2 / float(alpha)
    return ((N + float(n)) / float(b), (N - float(n)) / float(b))


def check_selection_rule(params: PhysicalParams, n, tol: float = 1e-9):
    """Whether the orbit supports a single-valued standing wave.

    The wave built on orbit n closes on itself only when the scaled
    mode numbers b*N +- n (with N = n^2/alpha) are integers; this is
    the integrality test, with residual the larger distance to the
    nearest integer.  Exact rational inputs give an exact residual.
    """
    if tol < 0:
        raise ConfigError("tol must be non-negative")
    alpha, b = params.alpha, params.b
    if _is_exact(alpha) and _is_exact(b) and _is_exact(n):
        scaled_n = Fraction(b) * Fraction(n) ** 2 / Fraction(alpha)
        residual = 0
        for val in (scaled_n + n, scaled_n - n):
            frac = val - round(val)
            residual = max(residual, abs(frac))
        return (residual <= tol, float(residual))
    scaled_n = float(b) * float(n) ** 2 / float(alpha)
    residual = 0.0
    for val in (scaled_n + float(n), scaled_n - float(n)):
        residual = max(residual, abs(val - round(val)))
    return (residual <= tol, residual)


def fine_structure_from_modes(m_plus, m_minus, b):
    """Recover alpha = (b/2)(m_plus - m_minus)^2 / (m_plus + m_minus)."""
    if m_plus == m_minus:
        raise ZeroChargeError(
            "degenerate mode numbers m_plus = m_minus carry no Coulomb coupling"
        )
    if not m_plus > m_minus >= 0:
        raise ConfigError(f"require m_plus > m_minus >= 0, got ({m_plus}, {m_minus})")
    if _is_exact(m_plus) and _is_exact(m_minus) and _is_exact(b):
        return Fraction(b) * (Fraction(m_plus) - m_minus) ** 2 / (2 * (Fraction(m_plus) + m_minus))
    return float(b) * (m_plus - m_minus) ** 2 / (2.0 * (m_plus + m_minus))


def solve_orbit(params: PhysicalParams, n) -> OrbitSolution:
    """Solve the circular orbit of azimuthal number n in closed form.

    Raises SuperluminalError when n <= alpha (the orbit would need
    v >= c) and UnphysicalAmplitudeError when the bare-particle triple
    demands a negative squared oscillator amplitude; the latter reports
    the minimum admissible internal pulsation.
    """
    alpha = float(params.alpha)
    b = float(params.b)
    nf = float(n)
    if nf <= alpha:
        raise SuperluminalError(
            f"n = {n} <= alpha = {alpha}: orbital speed alpha/n would reach c"
        )
    v = alpha / nf
    gamma_inv = math.sqrt(1.0 - v * v)
    # phase-harmony pulsation per unit effective mass
    pulsation_ratio = (1.0 - alpha**2 / (nf**2 - alpha**2)) / b

    z0_mod2 = None
    if params.m_eff is not None:
        m_eff = float(params.m_eff)
        Omega_p = m_eff * pulsation_ratio
    else:
        Omega_p = float(params.Omega_p)
        m_eff = Omega_p / pulsation_ratio
        min_omega_p = float(params.m_p) * pulsation_ratio
        if m_eff < float(params.m_p):
            raise UnphysicalAmplitudeError(
                f"Omega_p = {Omega_p} gives effective mass below the bare mass; "
                f"need Omega_p >= {min_omega_p}",
                min_omega_p=min_omega_p,
            )
        z0_mod2 = (m_eff - float(params.m_p)) / (
            float(params.m_p) * float(params.sigma) * Omega_p**2
        )

    a0 = 1.0 / (m_eff * alpha)
    r = nf**2 * a0 * gamma_inv
    P = m_eff * v / gamma_inv
    E = m_eff * gamma_inv
    N = nf**2 / alpha
    m_plus, m_minus = mode_numbers(params, n)
    omega_plus = (N + nf - alpha) / (b * r)
    omega_minus = (N - nf - alpha) / (b * r)
    epsilon = alpha / (b * r)
    sel_ok, sel_res = check_selection_rule(params, n)
    return OrbitSolution(
        n=nf, N=N, m_plus=float(m_plus), m_minus=float(m_minus),
        v=v, r=r, P=P, E=E,
        omega_plus=omega_plus, omega_minus=omega_minus,
        k_plus=float(m_plus) / r, k_minus=float(m_minus) / r,
        epsilon=epsilon, Omega_p=Omega_p, z0_mod2=z0_mod2,
        selection_ok=sel_ok, selection_residual=sel_res,
        m_eff=m_eff, alpha=alpha, b=b, a0=a0,
    )


def historical_phase_wave(v_e: float, orbit_length: float, m_e: float):
    """Phase wave overtaking a particle on a closed orbit.

    The superluminal phase wave travels at v_phi = 1/v_e; delta_t is
    the time it needs to lap the particle once around an orbit of
    length L, and action_over_h counts the internal-clock cycles
    omega' * delta_t / (2 pi) with omega' = m_e sqrt(1 - v_e^2) the
    time-dilated rest pulsation.  Fed a Bohr orbit this count is the
    quantum number n.
    """
    if not 0.0 < v_e < 1.0:
        raise ConfigError(f"v_e must lie in (0, 1), got {v_e}")
    v_phi = 1.0 / v_e
    delta_t = orbit_length / (v_phi - v_e)
    omega_prime = m_e * math.sqrt(1.0 - v_e * v_e)
    action_over_h = omega_prime * delta_t / (2.0 * math.pi)
    return (v_phi, delta_t, action_over_h)


def nonrel_energy(params: PhysicalParams, n) -> float:
    """Weak-coupling energy m_eff (1 - alpha^2 / (2 n^2))."""
    if not float(n) > 0:
        raise ConfigError(f"n must be positive, got {n}")
    if params.m_eff is None:
        raise ConfigError("nonrel_energy needs a direct m_eff")
    alpha = float(params.alpha)
    m_eff = float(params.m_eff)
    return m_eff - m_eff * alpha**2 / (2.0 * float(n) ** 2)
