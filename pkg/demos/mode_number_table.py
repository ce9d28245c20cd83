"""Quantized mode numbers for the hydrogen-like orbit family.

Reproduces the counter-rotating mode numbers m+- for 1/alpha = 137
over a range of orbit quantum numbers n, exactly (rational arithmetic),
and shows why half-integer n fails the single-valuedness selection rule
while integer n passes.  Also runs the classic phase-wave lap count:
the superluminal phase wave overtakes the electron exactly n times per
revolution.
"""

import math
from fractions import Fraction

from bohratom import (
    PhysicalParams,
    check_selection_rule,
    fine_structure_from_modes,
    historical_phase_wave,
    mode_numbers,
    solve_orbit,
)

params = PhysicalParams(alpha=Fraction(1, 137))

print("alpha = 1/137, b = 1")
print(f"{'n':>6} {'m_plus':>10} {'m_minus':>10}  selection")
for n in (Fraction(1, 2), 1, Fraction(3, 2), 2, Fraction(5, 2), 10):
    m_plus, m_minus = mode_numbers(params, n)
    ok, residual = check_selection_rule(params, n)
    verdict = "pass" if ok else f"FAIL (residual {residual})"
    print(f"{str(n):>6} {str(m_plus):>10} {str(m_minus):>10}  {verdict}")

# the coupling is itself a function of the two integers: the round trip
# recovers alpha exactly
m_plus, m_minus = mode_numbers(params, 1)
alpha_back = fine_structure_from_modes(m_plus, m_minus, 1)
print(f"\nround trip: alpha from (m+, m-) = ({m_plus}, {m_minus}) -> {alpha_back}")

# phase-wave lap count on the relativistic orbits
print("\nphase-wave laps per revolution (clock cycles / 2 pi):")
for n in (1, 2, 5):
    orbit = solve_orbit(params, n)
    length = 2.0 * math.pi * orbit.r
    v_phi, dt, laps = historical_phase_wave(orbit.v, length, orbit.m_eff)
    print(f"  n = {n}: v_phi = {v_phi:9.3f} c, lap count = {laps:.12f}")
