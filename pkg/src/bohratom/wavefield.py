"""The guiding scalar field: eigenmode pairs and their on-orbit standing wave.

A quantized orbit carries two counter-rotating monochromatic modes

    u_pm = A_pm R_{l'_pm}(r) P_{l_pm}^{pm m_pm}(cos theta) e^{i(pm m_pm phi - omega_pm t)}

whose sum, amplitude-matched on the orbit, is the closed-form standing
wave u0 exp(i(n phi - (N - alpha) t / r_n)/b) cos((N/b)(phi - v t / r_n)).
Both evaluation routes are kept independent: the mode sum goes through
the confluent hypergeometric radial functions, the closed form never
touches them, and tests compare the two.

Radial regimes
--------------
* coulomb: R(r) = e^{i omega r} r^{l'} M(l'+1-i beta, 2l'+2, -2i omega r),
  l' = -1/2 + sqrt((l+1/2)^2 - beta^2).  The Kummer combination is real
  up to roundoff (its conjugate equals itself by the Kummer transform).
* chargeless: beta = 0, proportional to the spherical Bessel j_l.
* klein_gordon: massive field, same Kummer form with
  omega_tilde = sqrt(omega^2 - omega0^2) and beta_tilde scaled to keep
  the 1/r coefficient; propagating modes need omega >= omega0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import specfun
from .errors import (
    ConfigError,
    DomainError,
    EvanescentRegimeError,
    NodeOnOrbitError,
    SupercriticalChargeError,
    UndefinedPotentialError,
    UnmatchedParityError,
)
from .quantization import OrbitSolution, PhysicalParams

__all__ = [
    "Mode",
    "FieldSample",
    "IntensityMap",
    "OrbitWaveCurve",
    "effective_order",
    "radial",
    "radial_coulomb",
    "radial_chargeless",
    "radial_asymptotic",
    "eval_mode",
    "modes_for_orbit",
    "match_amplitudes",
    "field_on_orbit",
    "group_velocity",
    "quantum_potential",
    "quantum_potential_closed_form",
    "current_divergence",
    "intensity_map",
    "orbit_wave_curve",
]


def effective_order(l: int, beta: float) -> float:
    """Effective (generally non-integer) radial order l'.

    l' = -1/2 + sqrt((l + 1/2)^2 - beta^2); reduces to l at beta = 0.
    """
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    half = l + 0.5
    if abs(beta) >= half:
        raise SupercriticalChargeError(
            f"|beta| = {abs(beta)} >= l + 1/2 = {half}: effective order turns complex"
        )
    if beta == 0.0:
        return float(l)
    return -0.5 + math.sqrt(half * half - beta * beta)


@dataclass(frozen=True)
class Mode:
    """One monochromatic field eigenmode in the Coulomb background."""

    sign: int
    l: int
    m: int
    omega: float
    beta: float = 0.0
    omega0: float = 0.0
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ConfigError(f"sign must be +1 or -1, got {self.sign}")
        if not (isinstance(self.l, (int, np.integer)) and isinstance(self.m, (int, np.integer))):
            raise ConfigError("l and m must be integers")
        if not 0 <= self.m <= self.l:
            raise ConfigError(f"require 0 <= m <= l, got (l, m) = ({self.l}, {self.m})")
        if not self.omega > 0:
            raise ConfigError(f"omega must be positive, got {self.omega}")
        if self.omega0 < 0:
            raise ConfigError(f"omega0 must be non-negative, got {self.omega0}")
        if self.omega0 > 0 and self.omega < self.omega0:
            raise EvanescentRegimeError(
                f"omega = {self.omega} < omega0 = {self.omega0}: "
                "evanescent modes are out of scope"
            )
        effective_order(self.l, self.beta)  # validates beta now, not at first use

    @property
    def l_prime(self) -> float:
        return effective_order(self.l, self.beta)

    @property
    def regime(self) -> str:
        if self.omega0 > 0:
            return "klein_gordon"
        return "coulomb" if self.beta != 0.0 else "chargeless"


@dataclass(frozen=True)
class FieldSample:
    """Field value split into carrier and envelope at one orbit point."""

    value: complex
    carrier_phase: float
    envelope: float
    position: tuple


@dataclass(frozen=True)
class IntensityMap:
    """|u|^2 on a plane through the origin, distances in units of a0."""

    values: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    plane: str
    extent: float
    a0: float


@dataclass(frozen=True)
class OrbitWaveCurve:
    """Polylines for the standing wave painted around the orbit circle."""

    phi: np.ndarray
    total_radius: np.ndarray
    phase_radius: np.ndarray
    orbit_radius: float
    envelope: np.ndarray
    carrier_phase: np.ndarray
    delta: float
    u0: float
    undersampled: bool


# ---------------------------------------------------------------------------
# radial functions
# ---------------------------------------------------------------------------

def radial_coulomb(l: int, beta: float, omega: float, r, omega0: float = 0.0):
    """Regular radial solution in an attractive 1/r background.

    e^{i w r} r^{l'} M(l'+1-i b, 2l'+2, -2i w r) with (w, b) the
    frequency and coupling, rescaled to (omega_tilde, beta_tilde) when
    the field is massive.  ``r`` may be a scalar or array, all entries
    positive.  The result is real-valued up to roundoff; the complex
    dtype is kept so the cancellation level stays observable.
    """
    if np.any(np.asarray(r) <= 0):
        raise DomainError("radial functions require r > 0")
    lp = effective_order(l, beta)
    if omega0 > 0.0:
        if omega < omega0:
            raise EvanescentRegimeError(
                f"omega = {omega} < omega0 = {omega0}: evanescent modes are out of scope"
            )
        omega_t = math.sqrt(omega**2 - omega0**2)
        beta_t = beta * omega / omega_t
    else:
        omega_t, beta_t = omega, beta
    a = lp + 1.0 - 1j * beta_t
    b = 2.0 * lp + 2.0
    z = -2j * omega_t * np.asarray(r, dtype=float) if isinstance(r, np.ndarray) else -2j * omega_t * r
    kum = specfun.kummer_m(a, b, z)
    return np.exp(1j * omega_t * np.asarray(r)) * np.asarray(r) ** lp * kum \
        if isinstance(r, np.ndarray) else np.exp(1j * omega_t * r) * r**lp * kum


def radial_chargeless(l: int, omega: float, r):
    """Free radial solution (2 omega)^{-l} (2l+1)!/l! j_l(omega r).

    Normalized so it coincides with the beta -> 0 Coulomb form.
    """
    if np.any(np.asarray(r) <= 0):
        raise DomainError("radial functions require r > 0")
    pref = (2.0 * omega) ** (-l) * math.factorial(2 * l + 1) / math.factorial(l)
    if isinstance(r, np.ndarray):
        jl = np.vectorize(specfun.spherical_bessel_j, otypes=[float])(l, omega * r)
    else:
        jl = specfun.spherical_bessel_j(l, omega * r)
    return pref * jl


def radial(mode: Mode, r):
    """Radial part of the mode, dispatched on its regime."""
    if mode.regime == "chargeless":
        return radial_chargeless(mode.l, mode.omega, r)
    return radial_coulomb(mode.l, mode.beta, mode.omega, r, omega0=mode.omega0)


def radial_asymptotic(mode: Mode, r):
    """Large-r sinusoid C sin(w r - pi l'/2 + delta)/(w r).

    delta = beta ln(2 w r) + arg Gamma(l'+1 - i beta) is the Coulomb
    phase; C = e^{-pi beta/2} Gamma(2l'+2) / ((2w)^{l'} |Gamma(l'+1-i beta)|)
    matches the exact radial normalization.  No accuracy gate: the
    caller judges whether w r is large enough.
    """
    lp = mode.l_prime
    if mode.omega0 > 0.0:
        omega_t = math.sqrt(mode.omega**2 - mode.omega0**2)
        beta_t = mode.beta * mode.omega / omega_t
    else:
        omega_t, beta_t = mode.omega, mode.beta
    a = lp + 1.0 - 1j * beta_t
    lg = specfun.log_gamma(a)
    c = (math.exp(-math.pi * beta_t / 2.0)
         * math.exp(specfun.log_gamma(2.0 * lp + 2.0).real - lg.real)
         / (2.0 * omega_t) ** lp)
    x = omega_t * np.asarray(r, dtype=float)
    delta = beta_t * np.log(2.0 * x) + lg.imag
    out = c * np.sin(x - math.pi * lp / 2.0 + delta) / x
    return out if isinstance(r, np.ndarray) else float(out)


# ---------------------------------------------------------------------------
# mode evaluation and amplitude matching
# ---------------------------------------------------------------------------

_legendre_vec = np.vectorize(
    lambda l, m, x: specfun.assoc_legendre(specfun.LegendreOrder(int(l), int(m)), float(x)),
    otypes=[float],
)


def eval_mode(mode: Mode, t, r, theta, phi):
    """A R(r) P_l^{sm}(cos theta) e^{i(s m phi - omega t)}, s the mode sign.

    Scalars or broadcastable arrays accepted for the coordinates.
    """
    if np.any((np.asarray(theta) < 0) | (np.asarray(theta) > math.pi)):
        raise DomainError("theta must lie in [0, pi]")
    order = mode.sign * mode.m
    arrays = any(isinstance(v, np.ndarray) for v in (t, r, theta, phi))
    rad = radial(mode, r)
    if arrays:
        leg = _legendre_vec(mode.l, order, np.cos(np.asarray(theta, dtype=float)))
    else:
        leg = specfun.assoc_legendre(specfun.LegendreOrder(mode.l, order), math.cos(theta))
    phase = np.exp(1j * (order * np.asarray(phi) - mode.omega * np.asarray(t)))
    out = mode.amplitude * rad * leg * phase
    return out if arrays else complex(out)


def _integer_mode_number(value: float, label: str) -> int:
    k = round(value)
    if abs(value - k) > 1e-9:
        raise ConfigError(
            f"{label} = {value} is not an integer: the orbit fails the selection "
            "rule and supports no single-valued mode pair"
        )
    return int(k)


def modes_for_orbit(orbit: OrbitSolution, params: PhysicalParams,
                    l_plus: int | None = None, l_minus: int | None = None):
    """Counter-rotating mode pair (plus, minus) carried by the orbit.

    Angular degrees default to l = m, the lowest choice compatible with
    a non-vanishing equatorial value (l + m = 2m is then always even).
    """
    m_plus = _integer_mode_number(orbit.m_plus, "m_plus")
    m_minus = _integer_mode_number(orbit.m_minus, "m_minus")
    lp = m_plus if l_plus is None else l_plus
    lm = m_minus if l_minus is None else l_minus
    beta = float(params.beta)
    omega0 = float(params.omega0)
    return (
        Mode(sign=+1, l=lp, m=m_plus, omega=orbit.omega_plus, beta=beta, omega0=omega0),
        Mode(sign=-1, l=lm, m=m_minus, omega=orbit.omega_minus, beta=beta, omega0=omega0),
    )


def match_amplitudes(orbit: OrbitSolution, modes, u0: float,
                     node_tol: float = 1e-12):
    """Amplitudes A_pm = u0 / (2 R(r_n) P_l^{pm m}(0)) pinning the wave on the orbit.

    The oscillator displacement z0 is identified with u0.  Fails when
    the equatorial Legendre value vanishes (odd l + m) or the orbit
    sits on a radial node.
    """
    mode_plus, mode_minus = modes
    out = []
    for mode in (mode_plus, mode_minus):
        if (mode.l + mode.m) % 2 == 1:
            raise UnmatchedParityError(
                f"(l, m) = ({mode.l}, {mode.m}): odd l + m gives P(0) = 0, "
                "no equatorial matching is possible"
            )
        leg0 = specfun.legendre_at_zero(mode.l, mode.sign * mode.m)
        rad = complex(radial(mode, orbit.r))
        scale = abs(complex(radial_asymptotic(mode, orbit.r))) + abs(rad)
        if abs(rad) <= node_tol * scale:
            raise NodeOnOrbitError(
                f"radial function of the {'+' if mode.sign > 0 else '-'} mode has a "
                f"node at r = {orbit.r}; amplitude matching is singular there"
            )
        out.append(u0 / (2.0 * rad * leg0))
    return (out[0], out[1])


def field_on_orbit(orbit: OrbitSolution, u0: float, t, phi):
    """Closed-form standing wave on the orbit circle, never via mode sums.

    u = u0 exp(i (n phi - (N - alpha) t / r_n) / b)
           cos((N / b)(phi - v t / r_n))
    """
    n, N, alpha, b, r = orbit.n, orbit.N, orbit.alpha, orbit.b, orbit.r
    carrier = (n * np.asarray(phi) - (N - alpha) * np.asarray(t) / r) / b
    envelope = np.cos((N / b) * (np.asarray(phi) - orbit.v * np.asarray(t) / r))
    value = u0 * np.exp(1j * carrier) * envelope
    if isinstance(phi, np.ndarray) or isinstance(t, np.ndarray):
        return FieldSample(value=value, carrier_phase=carrier, envelope=envelope,
                           position=(t, r, math.pi / 2.0, phi))
    return FieldSample(value=complex(value), carrier_phase=float(carrier),
                       envelope=float(envelope), position=(t, r, math.pi / 2.0, phi))


def group_velocity(orbit: OrbitSolution) -> float:
    """Envelope speed (omega_+ - omega_-)/(k_+ + k_-) along the orbit.

    The minus mode runs backwards, so its wavevector enters with the
    opposite sign; the ratio equals the particle speed alpha/n.
    """
    return (orbit.omega_plus - orbit.omega_minus) / (orbit.k_plus + orbit.k_minus)


# ---------------------------------------------------------------------------
# quantum potential and current conservation
# ---------------------------------------------------------------------------

def _modulus_profile(mode: Mode, r: float, theta: float) -> float:
    # signed smooth profile R(r) P(cos theta); Q is even in it, and
    # keeping the sign avoids |.| kinks near nodes under differencing
    rad = radial(mode, r)
    rad = float(np.real(rad)) if not isinstance(rad, float) else rad
    leg = specfun.assoc_legendre(
        specfun.LegendreOrder(mode.l, mode.sign * mode.m), math.cos(theta))
    return rad * leg


def quantum_potential(mode: Mode, point, h: float | None = None) -> float:
    """Q = -laplacian(f)/f for the time-independent modulus, by differencing.

    ``point`` is (r, theta, phi); the azimuthal phase is not part of
    the modulus, so only r and theta derivatives appear.  Central
    differences with radial step h (default 1e-4 r) and angular step
    h/r.  Errors out where f is too small for the ratio to mean
    anything.
    """
    r, theta, _phi = point
    if r <= 0:
        raise DomainError("quantum_potential requires r > 0")
    if h is None:
        h = 1e-4 * r
    f0 = _modulus_profile(mode, r, theta)
    fscale = abs(f0) + 1e-30
    probe = max(abs(_modulus_profile(mode, r + h, theta)),
                abs(_modulus_profile(mode, r - h, theta)))
    if abs(f0) < 1e-10 * max(probe, 1e-300):
        raise UndefinedPotentialError(
            f"field modulus vanishes near (r, theta) = ({r}, {theta}); "
            "the quantum potential is undefined there"
        )
    fr_p = _modulus_profile(mode, r + h, theta)
    fr_m = _modulus_profile(mode, r - h, theta)
    ht = h / r
    ft_p = _modulus_profile(mode, r, theta + ht)
    ft_m = _modulus_profile(mode, r, theta - ht)
    d2r = (fr_p - 2.0 * f0 + fr_m) / h**2
    d1r = (fr_p - fr_m) / (2.0 * h)
    d2t = (ft_p - 2.0 * f0 + ft_m) / ht**2
    d1t = (ft_p - ft_m) / (2.0 * ht)
    lap = d2r + 2.0 * d1r / r + (d2t + d1t / math.tan(theta)) / r**2
    del fscale
    return -lap / f0


def quantum_potential_closed_form(mode: Mode, r: float, theta: float) -> float:
    """(omega + beta/r)^2 - (m / (r sin theta))^2 - omega0^2.

    Independent closed-form route for Q; on a quantized orbit with
    b beta = alpha and omega0 = 0 this vanishes identically.
    """
    if r <= 0 or not 0 < theta < math.pi:
        raise DomainError("need r > 0 and theta inside (0, pi)")
    k_phi = mode.m / (r * math.sin(theta))
    return (mode.omega + mode.beta / r) ** 2 - k_phi**2 - mode.omega0**2


def _phase_gradient(mode: Mode, r: float, theta: float, phi: float, h: float):
    """Spherical components of grad(arg u) by centered ratios of the field."""

    def val(rr, tt, pp):
        return eval_mode(mode, 0.0, rr, tt, pp)

    u0 = val(r, theta, phi)
    if abs(u0) < 1e-300:
        raise UndefinedPotentialError("field vanishes; phase gradient undefined")
    dr = np.angle(val(r + h, theta, phi) / val(r - h, theta, phi)) / (2.0 * h)
    ht = h / r
    dt = np.angle(val(r, theta + ht, phi) / val(r, theta - ht, phi)) / (2.0 * ht * r)
    hp = h / (r * math.sin(theta))
    dp = np.angle(val(r, theta, phi + hp) / val(r, theta, phi - hp)) / (
        2.0 * hp * r * math.sin(theta))
    return (float(dr), float(dt), float(dp))


def current_divergence(mode: Mode, point, h: float | None = None) -> float:
    """Finite-difference divergence of the conserved current f^2 grad(arg u).

    The time component is static (f is time-independent), so only the
    spatial divergence is formed; for an exact eigenmode it is bounded
    by discretization error.
    """
    r, theta, phi = point
    if r <= 0 or not 0 < theta < math.pi:
        raise DomainError("need r > 0 and theta inside (0, pi)")
    if h is None:
        h = 1e-4 * r
    hin = 0.5 * h

    def current(rr, tt, pp):
        f = abs(eval_mode(mode, 0.0, rr, tt, pp))
        if f < 1e-300:
            raise UndefinedPotentialError("field vanishes; current undefined")
        g = _phase_gradient(mode, rr, tt, pp, hin)
        return (f * f * g[0], f * f * g[1], f * f * g[2])

    jr_p = current(r + h, theta, phi)[0] * (r + h) ** 2
    jr_m = current(r - h, theta, phi)[0] * (r - h) ** 2
    ht = h / r
    jt_p = current(r, theta + ht, phi)[1] * math.sin(theta + ht)
    jt_m = current(r, theta - ht, phi)[1] * math.sin(theta - ht)
    hp = h / (r * math.sin(theta))
    jp_p = current(r, theta, phi + hp)[2]
    jp_m = current(r, theta, phi - hp)[2]
    div = ((jr_p - jr_m) / (2.0 * h) / r**2
           + (jt_p - jt_m) / (2.0 * ht) / (r * math.sin(theta))
           + (jp_p - jp_m) / (2.0 * hp) / (r * math.sin(theta)))
    return float(div)


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------

def intensity_map(orbit: OrbitSolution, modes, plane: Literal["equatorial", "meridian"],
                  extent: float, grid_n: int = 256, u0: float = 1.0) -> IntensityMap:
    """|u(t=0)|^2 of the matched mode pair on a plane, distances in a0.

    ``extent`` is the half-width of the square window in Bohr radii;
    the grid is row-major over (y or z, then x), deterministic for a
    fixed grid.  Points inside a tiny core around the origin are
    clamped to the core radius.
    """
    if grid_n < 16:
        raise ConfigError(f"grid_n must be at least 16, got {grid_n}")
    if extent <= 0:
        raise ConfigError("extent must be positive")
    a_plus, a_minus = match_amplitudes(orbit, modes, u0)
    mode_plus, mode_minus = modes
    axis = np.linspace(-extent, extent, grid_n) * orbit.a0
    xs, ys = np.meshgrid(axis, axis)
    if plane == "equatorial":
        r = np.hypot(xs, ys)
        theta = np.full_like(r, math.pi / 2.0)
        phi = np.arctan2(ys, xs)
    elif plane == "meridian":
        r = np.hypot(xs, ys)
        theta = np.arctan2(np.abs(xs), ys)  # ys is the z axis here
        theta = np.clip(theta, 1e-12, math.pi - 1e-12)
        phi = np.where(xs >= 0.0, 0.0, math.pi)
    else:
        raise ConfigError(f"unknown plane {plane!r}")
    r = np.maximum(r, 1e-9 * orbit.a0)
    u = (a_plus * eval_mode(mode_plus, 0.0, r, theta, phi)
         + a_minus * eval_mode(mode_minus, 0.0, r, theta, phi))
    return IntensityMap(values=np.abs(u) ** 2, xs=axis / orbit.a0, ys=axis / orbit.a0,
                        plane=plane, extent=extent, a0=orbit.a0)


def orbit_wave_curve(orbit: OrbitSolution, u0: float = 1.0, delta: float | None = None,
                     samples: int = 2048) -> OrbitWaveCurve:
    """Parametric curves painting the standing wave around the orbit at t = 0.

    Total-field curve radius r_n + delta Re u(0, phi); phase-wave curve
    r_n + delta u0 cos(n phi / b); delta defaults to 0.15 r_n, a purely
    graphical scale.  Fewer than 8 m_+ samples flags undersampling.
    """
    if samples < 2:
        raise ConfigError("samples must be at least 2")
    if delta is None:
        delta = 0.15 * orbit.r
    undersampled = samples < 8 * orbit.m_plus
    phi = np.linspace(0.0, 2.0 * math.pi, samples)
    sample = field_on_orbit(orbit, u0, 0.0, phi)
    total = orbit.r + delta * np.real(sample.value)
    phase_curve = orbit.r + delta * u0 * np.cos(orbit.n * phi / orbit.b)
    return OrbitWaveCurve(phi=phi, total_radius=total, phase_radius=phase_curve,
                          orbit_radius=orbit.r, envelope=sample.envelope,
                          carrier_phase=sample.carrier_phase, delta=delta, u0=u0,
                          undersampled=bool(undersampled))
