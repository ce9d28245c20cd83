"""Exception hierarchy for bohratom.

DomainError subclasses mark physically or mathematically inadmissible
inputs; AccuracyError marks a computation that ran but could not reach
the requested precision (it carries the best available estimate).
"""

from __future__ import annotations


class BohratomError(Exception):
    """Base class for all bohratom errors."""


class UsageError(BohratomError, ValueError):
    """API misuse: inconsistent arguments rather than bad physics."""


class ConfigError(UsageError):
    """Invalid run configuration (CLI / config file)."""


class DomainError(BohratomError, ValueError):
    """Argument outside the mathematical or physical domain."""


class AccuracyError(BohratomError, ArithmeticError):
    """Requested accuracy not reached; ``partial`` holds the estimate."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class SuperluminalError(DomainError):
    """Orbit would require v >= c (n <= alpha)."""


class UnphysicalAmplitudeError(DomainError):
    """Internal-oscillator amplitude |z0|^2 would be negative.

    ``min_omega_p`` reports the smallest admissible oscillator pulsation.
    """

    def __init__(self, message: str, min_omega_p: float):
        super().__init__(message)
        self.min_omega_p = min_omega_p


class ZeroChargeError(DomainError):
    """Degenerate mode pair m+ == m- carries no charge."""


class SupercriticalChargeError(DomainError):
    """Field charge beta >= l + 1/2: effective order turns complex."""


class EvanescentRegimeError(DomainError):
    """Klein-Gordon mode with omega < omega0 (discrete spectrum)."""


class UnmatchedParityError(DomainError):
    """l + m odd: the mode vanishes on the equatorial plane."""


class NodeOnOrbitError(DomainError):
    """Radial function has a node at the orbit radius."""


class UndefinedPotentialError(DomainError):
    """Field modulus too small for a quantum-potential estimate."""


class GuidanceSingularityError(DomainError):
    """Guidance-velocity denominator vanishes."""


class SingularityError(DomainError):
    """Trajectory point inside the Coulomb-singularity cutoff."""


class IntegrationFailureError(BohratomError):
    """Adaptive integration failed; ``partial`` holds the trajectory so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
