"""Mechanical pilot-wave analog of the Bohr atom.

A relativistic point particle, holonomically locked to a complex scalar
field in an attractive Coulomb background, admits circular orbits only
when the two counter-rotating field modes close on themselves; the
resulting spectrum reproduces the Bohr-Sommerfeld atom, including the
relativistic energies and the emergence of the fine-structure constant
from integer mode counting.

Subpackage map: ``quantization`` (closed-form orbits and selection
rules), ``wavefield`` (eigenmodes, amplitude matching, quantum
potential, figure data), ``dynamics`` (trajectory integration and
guidance checks), ``specfun`` (confluent hypergeometric and friends),
``cli`` (deterministic command-line front end).
"""

__version__ = "1.0.0"

from .dynamics import (
    GeneralForceSpec,
    Trajectory,
    TrajectoryState,
    bohmian_velocity,
    circular_initials,
    constraint_residual,
    coulomb_acceleration,
    effective_mass,
    integrate_orbit,
)
from .errors import (
    AccuracyError,
    BohratomError,
    ConfigError,
    DomainError,
    EvanescentRegimeError,
    GuidanceSingularityError,
    IntegrationFailureError,
    NodeOnOrbitError,
    SingularityError,
    SupercriticalChargeError,
    SuperluminalError,
    UndefinedPotentialError,
    UnmatchedParityError,
    UnphysicalAmplitudeError,
    UsageError,
    ZeroChargeError,
)
from .quantization import (
    OMEGA_MINUS_BOUND,
    OrbitSolution,
    PhysicalParams,
    check_selection_rule,
    fine_structure_from_modes,
    historical_phase_wave,
    mode_numbers,
    nonrel_energy,
    solve_orbit,
)
from .wavefield import (
    FieldSample,
    IntensityMap,
    Mode,
    OrbitWaveCurve,
    effective_order,
    eval_mode,
    field_on_orbit,
    group_velocity,
    intensity_map,
    match_amplitudes,
    modes_for_orbit,
    orbit_wave_curve,
    quantum_potential,
    quantum_potential_closed_form,
    radial,
    radial_asymptotic,
    radial_chargeless,
    radial_coulomb,
)

__all__ = [name for name in dir() if not name.startswith("_")]
