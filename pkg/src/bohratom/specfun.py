"""Complex-capable special functions underpinning the wave-field solutions.

Conventions
-----------
* ``kummer_m`` is the regular confluent hypergeometric function
  M(a, b, z) = 1F1(a; b; z), regular solution of
  z M'' + (b - z) M' - a M = 0.
* ``assoc_legendre`` includes the Condon-Shortley phase, so that
  P_1^1(0) = -1 and the equatorial closed form
  P_l^m(0) = (-1)^((l+m)/2) (l+m-1)!! / (l-m)!!   (l + m even)
  holds as written.
* ``log_gamma`` is the principal branch, evaluated with a Lanczos
  rational approximation (g = 7) plus reflection for Re z < 1/2.

All functions are pure; scalars in, scalars out, except where noted
(``kummer_m`` and ``log_gamma`` also accept numpy arrays for their
point argument, which the field evaluators rely on for grid work).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _dd
from .errors import AccuracyError, DomainError

__all__ = [
    "LegendreOrder",
    "kummer_m",
    "log_gamma",
    "spherical_bessel_j",
    "assoc_legendre",
    "legendre_at_zero",
    "double_factorial",
]


@dataclass(frozen=True)
class LegendreOrder:
    """Degree/order pair (l, m) with the |m| <= l constraint enforced."""

    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or not isinstance(self.l, int):
            raise DomainError(f"degree l must be a non-negative integer, got {self.l}")
        if not isinstance(self.m, int) or abs(self.m) > self.l:
            raise DomainError(f"order m must be an integer with |m| <= l, got {self.m}")


# ---------------------------------------------------------------------------
# Kummer confluent hypergeometric function
# ---------------------------------------------------------------------------

def _is_nonpositive_integer(z: complex, tol: float = 1e-12) -> bool:
    return abs(z.imag) < tol and z.real < 0.5 and abs(z.real - round(z.real)) < tol


def _kummer_series(a: complex, b: complex, z, max_terms: int):
    """Power series in double-double arithmetic.

    Terms of the oscillatory series reach ~e^|z| before decaying; the
    ~31-digit working precision keeps the final rounding near 1e-15
    absolute for |z| up to ~40.  ``z`` may be a numpy array.
    """
    zdd = _dd.cdd_from_complex(z)
    term = _dd.cdd_from_complex(np.ones_like(z) if isinstance(z, np.ndarray) else 1.0)
    total = term
    converged = 0
    for k in range(max_terms):
        # factor = (a + k) / ((b + k) (k + 1)); the series cancellation
        # amplifies any coefficient rounding, so a + k is formed exactly
        ar_hi, ar_lo = _dd.two_sum(a.real, float(k))
        br_hi, br_lo = _dd.two_sum(b.real, float(k))
        num = (ar_hi, ar_lo, a.imag, 0.0)
        bk = (br_hi, br_lo, b.imag, 0.0)
        den = _dd.cdd_mul(bk, (float(k + 1), 0.0, 0.0, 0.0))
        factor = _dd.cdd_div(num, den)
        term = _dd.cdd_mul(_dd.cdd_mul(term, zdd), factor)
        total = _dd.cdd_add(total, term)
        tmag = np.max(_dd.cdd_abs_hi(term))
        smag = np.max(_dd.cdd_abs_hi(total))
        if tmag <= 1e-33 * (smag + 1e-300):
            converged += 1
            if converged >= 2:
                return _dd.cdd_to_complex(total)
        else:
            converged = 0
    raise AccuracyError(
        f"Kummer series did not converge within {max_terms} terms",
        partial=_dd.cdd_to_complex(total),
    )


def _kummer_asymptotic(a: complex, b: complex, z, max_terms: int):
    """Large-|z| expansion: two algebraic series plus the e^z branch.

    M(a,b,z)/Gamma(b) ~ e^{s i pi a} z^{-a}/Gamma(b-a) * S1(-1/z)
                      + e^z z^{a-b}/Gamma(a) * S2(1/z)
    with s = +1 for ph z in (-pi/2, 3pi/2] and -1 otherwise.  Each sum
    is truncated at its smallest term (judged at the smallest |z| in
    the input, which is conservative for all larger |z|).
    """
    zarr = np.asarray(z, dtype=complex)
    absz = np.abs(zarr)
    zmin = float(np.min(absz))

    def trimmed_sum(p: complex, q: complex, x):
        # sum_s (p)_s (q)_s / s! * x^s.  Terms may grow before shrinking
        # (they terminate exactly when p or q is a non-positive integer),
        # so the sum is cut at the running-smallest term, not the first
        # growth; persistent growth ends the loop with the snapshot sum.
        coeff = 1.0 + 0.0j
        acc = np.ones_like(zarr)
        power = np.ones_like(zarr)
        floor = 1.0
        snapshot = acc
        growing = 0
        for s in range(max_terms):
            coeff = coeff * (p + s) * (q + s) / (s + 1)
            if coeff == 0.0:  # terminating series: the sum is exact
                return acc
            power = power * x
            acc = acc + coeff * power
            scale = abs(coeff) / zmin ** (s + 1)
            if scale <= floor:
                floor = scale
                snapshot = acc
                growing = 0
                if scale < 1e-18:
                    return acc
            else:
                growing += 1
                if growing >= 40 or scale > 1e30:
                    break
        if floor > 1e-7:
            raise AccuracyError(
                f"asymptotic expansion stalls at relative term {floor:.2e}; "
                "increase z_switch or reduce |parameters|",
                partial=snapshot,
            )
        return snapshot

    s1 = trimmed_sum(a, a - b + 1.0, -1.0 / zarr)
    s2 = trimmed_sum(b - a, 1.0 - a, 1.0 / zarr)
    lg_b = log_gamma(b)
    logz = np.log(zarr)
    sign = np.where(np.angle(zarr) > -np.pi / 2, 1.0, -1.0)
    # 1/Gamma at a pole kills the corresponding branch
    if _is_nonpositive_integer(b - a):
        t1 = np.zeros_like(zarr)
    else:
        t1 = np.exp(lg_b - log_gamma(b - a) + sign * 1j * np.pi * a - a * logz) * s1
    if _is_nonpositive_integer(a):
        t2 = np.zeros_like(zarr)
    else:
        t2 = np.exp(lg_b - log_gamma(a) + zarr + (a - b) * logz) * s2
    out = t1 + t2
    return out if isinstance(z, np.ndarray) else complex(out)


def kummer_m(a, b, z, *, z_switch: float = 40.0, max_terms: int = 600):
    """Confluent hypergeometric function M(a, b, z) for complex arguments.

    ``z`` may be a scalar or a numpy array (``a``, ``b`` scalars only).
    The power series (double-double compensated, near machine accuracy)
    is used for |z| <= z_switch and the large-argument expansion beyond.
    The expansion targets full accuracy but, for large parameters at
    moderate |z|, may bottom out earlier; below 1e-7 achievable
    accuracy it raises AccuracyError with the partial estimate attached
    rather than returning silently degraded values.
    """
    a = complex(a)
    b = complex(b)
    if _is_nonpositive_integer(b):
        raise DomainError(f"M(a, b, z) has a pole at non-positive integer b = {b}")
    if isinstance(z, np.ndarray):
        zarr = np.asarray(z, dtype=complex)
        out = np.empty(zarr.shape, dtype=complex)
        absz = np.abs(zarr)
        small = absz <= z_switch
        if np.any(small):
            out[small] = _kummer_series(a, b, zarr[small], max_terms)
        if np.any(~small):
            out[~small] = _kummer_asymptotic(a, b, zarr[~small], max_terms)
        return out
    zc = complex(z)
    if zc == 0:
        return 1.0 + 0.0j
    if abs(zc) <= z_switch:
        return complex(_kummer_series(a, b, zc, max_terms))
    return complex(_kummer_asymptotic(a, b, zc, max_terms))


# ---------------------------------------------------------------------------
# log Gamma (Lanczos, g = 7)
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _log_gamma_core(z):
    # valid for Re z >= 0.5; z is complex scalar or array
    w = z - 1.0
    acc = np.full_like(np.asarray(w, dtype=complex), _LANCZOS_C[0])
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc = acc + c / (w + i)
    t = w + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (w + 0.5) * np.log(t) - t + np.log(acc)


def log_gamma(z):
    """log Gamma for complex arguments; principal branch for Re z >= 1/2.

    Reflection handles Re z < 1/2, where the result can differ from the
    principal branch by a multiple of 2 pi i (exp(log_gamma(z)) is
    always Gamma(z)).  Poles at non-positive integers raise
    DomainError.  Accepts scalars or numpy arrays.
    """
    scalar = not isinstance(z, np.ndarray)
    zarr = np.asarray(z, dtype=complex)
    if np.any((np.abs(zarr.imag) < 1e-14) & (zarr.real < 0.5)
              & (np.abs(zarr.real - np.round(zarr.real)) < 1e-14)):
        raise DomainError("log_gamma pole at non-positive integer")
    out = np.empty(zarr.shape, dtype=complex)
    right = zarr.real >= 0.5
    if np.any(right):
        out[right] = _log_gamma_core(zarr[right])
    if np.any(~right):
        zr = zarr[~right]
        # log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z); the
        # sin factor is folded in via the principal log, adequate away
        # from the real axis's distant reaches (|Im z| large).
        out[~right] = (math.log(math.pi)
                       - np.log(np.sin(np.pi * zr))
                       - _log_gamma_core(1.0 - zr))
    return complex(out) if scalar else out


# ---------------------------------------------------------------------------
# spherical Bessel j_l
# ---------------------------------------------------------------------------

def spherical_bessel_j(l: int, x: float) -> float:
    """Spherical Bessel function j_l(x), l >= 0, x >= 0.

    Upward recurrence for x > l (stable there), Miller-style downward
    recurrence normalized against j_0 otherwise.
    """
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l}")
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    if x == 0.0:
        return 1.0 if l == 0 else 0.0
    j0 = math.sin(x) / x
    if l == 0:
        return j0
    j1 = math.sin(x) / x**2 - math.cos(x) / x
    if l == 1:
        return j1
    if x > l:
        jm, jc = j0, j1
        for k in range(1, l):
            jm, jc = jc, (2 * k + 1) / x * jc - jm
        return jc
    # downward from a safely high start order
    start = l + int(math.sqrt(40.0 * l)) + 20
    jp, jc = 0.0, 1e-300
    target = 0.0
    for k in range(start, 0, -1):
        jm = (2 * k + 1) / x * jc - jp
        jp, jc = jc, jm
        if k - 1 == l:
            target = jc
        # rescale to dodge overflow
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            target *= 1e-250
    return target * (j0 / jc)


# ---------------------------------------------------------------------------
# associated Legendre P_l^m with Condon-Shortley phase
# ---------------------------------------------------------------------------

def _factorial_ratio(l: int, m: int) -> float:
    """(l - m)! / (l + m)! as a float, overflow-safe."""
    if l + m <= 170:
        from fractions import Fraction

        return float(Fraction(math.factorial(l - m), math.factorial(l + m)))
    return math.exp(math.lgamma(l - m + 1) - math.lgamma(l + m + 1))


def assoc_legendre(order: LegendreOrder, x: float) -> float:
    """Associated Legendre function P_l^m(x) on [-1, 1].

    Negative orders go through
    P_l^{-m}(x) = (-1)^m (l-m)!/(l+m)! P_l^m(x).
    """
    if abs(x) > 1.0:
        raise DomainError(f"assoc_legendre requires |x| <= 1, got {x}")
    l, m = order.l, order.m
    if m < 0:
        mm = -m
        return ((-1) ** mm) * _factorial_ratio(l, mm) * assoc_legendre(LegendreOrder(l, mm), x)
    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, built as a running product
    somx2 = math.sqrt(max(0.0, (1.0 - x) * (1.0 + x)))
    pmm = 1.0
    for k in range(1, m + 1):
        pmm *= -(2 * k - 1) * somx2
    if l == m:
        return pmm
    pm1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pm1
    for ll in range(m + 2, l + 1):
        pmm, pm1 = pm1, (x * (2 * ll - 1) * pm1 - (ll + m - 1) * pmm) / (ll - m)
    return pm1


def legendre_at_zero(l: int, m: int) -> float:
    """Equatorial value P_l^m(0) from the double-factorial closed form."""
    if abs(m) > l:
        raise DomainError("|m| <= l required")
    if m < 0:
        mm = -m
        return ((-1) ** mm) * _factorial_ratio(l, mm) * legendre_at_zero(l, mm)
    if (l + m) % 2 == 1:
        return 0.0
    sign = -1.0 if ((l + m) // 2) % 2 else 1.0
    return sign * double_factorial(l + m - 1) / double_factorial(l - m)


def double_factorial(k: int) -> int:
    """k!! with the conventions 0!! = (-1)!! = 1."""
    if not isinstance(k, (int, np.integer)) or k < -1:
        raise DomainError(f"double_factorial requires an integer k >= -1, got {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out
