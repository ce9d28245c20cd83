"""Closed-form orbit quantities, mode numbers and the selection rule."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohratom.errors import (
    ConfigError,
    SuperluminalError,
    UnphysicalAmplitudeError,
    ZeroChargeError,
)
from bohratom.quantization import (
    OMEGA_MINUS_BOUND,
    PhysicalParams,
    check_selection_rule,
    fine_structure_from_modes,
    historical_phase_wave,
    mode_numbers,
    nonrel_energy,
    solve_orbit,
)


class TestModeNumbers:
    def test_exact_rational_table(self):
        params = PhysicalParams(alpha=Fraction(1, 137))
        assert mode_numbers(params, 1) == (Fraction(138), Fraction(136))
        assert mode_numbers(params, Fraction(1, 2)) == (Fraction(139, 4),
                                                        Fraction(135, 4))
        assert mode_numbers(params, 10) == (Fraction(13710), Fraction(13690))

    def test_float_path(self):
        params = PhysicalParams(alpha=0.25, b=2.0)
        m_plus, m_minus = mode_numbers(params, 1.0)
        assert m_plus == pytest.approx(2.5, abs=1e-15)
        assert m_minus == pytest.approx(1.5, abs=1e-15)

    def test_selection_rule_integer_alpha_inverse(self):
        params = PhysicalParams(alpha=Fraction(1, 137))
        assert check_selection_rule(params, 1) == (True, 0.0)
        ok, residual = check_selection_rule(params, Fraction(1, 2))
        assert not ok and residual == 0.25

    def test_selection_rule_perturbed_charge(self):
        # a slightly off-integer 1/alpha can be exactly compensated by b
        alpha = Fraction(1000000, 137035999)
        b = Fraction(137000000, 137035999)
        params = PhysicalParams(alpha=alpha, b=b)
        ok, residual = check_selection_rule(params, 5)
        assert ok and residual == 0
        # the integers behind the rule: b N +- n with N = n^2/alpha
        N = Fraction(5) ** 2 / alpha
        assert b * N + 5 == 3430 and b * N - 5 == 3420

    def test_selection_rule_rejects_negative_tol(self):
        params = PhysicalParams(alpha=0.1)
        with pytest.raises(ConfigError):
            check_selection_rule(params, 1, tol=-1.0)

    def test_round_trip_exact(self):
        params = PhysicalParams(alpha=Fraction(3, 100), b=Fraction(7, 5))
        m_plus, m_minus = mode_numbers(params, Fraction(3, 2))
        assert fine_structure_from_modes(m_plus, m_minus, Fraction(7, 5)) \
            == Fraction(3, 100)

    def test_degenerate_modes_rejected(self):
        with pytest.raises(ZeroChargeError):
            fine_structure_from_modes(3.0, 3.0, 1.0)
        with pytest.raises(ConfigError):
            fine_structure_from_modes(2.0, 3.0, 1.0)

    @given(st.fractions(Fraction(1, 200), Fraction(1, 2)),
           st.fractions(Fraction(1, 4), 3),
           st.fractions(Fraction(1, 2), 10))
    @settings(max_examples=60, deadline=None)
    def test_round_trip_property(self, alpha, b, n):
        params = PhysicalParams(alpha=alpha, b=b)
        m_plus, m_minus = mode_numbers(params, n)
        assert fine_structure_from_modes(m_plus, m_minus, b) == alpha


class TestOrbit:
    def test_closed_forms(self):
        params = PhysicalParams(alpha=Fraction(1, 3))
        orbit = solve_orbit(params, 1)
        gamma_inv = math.sqrt(1.0 - 1.0 / 9.0)
        assert orbit.v == pytest.approx(1.0 / 3.0, rel=1e-15)
        assert orbit.r == pytest.approx(3.0 * gamma_inv, rel=1e-15)
        assert orbit.E == pytest.approx(gamma_inv, rel=1e-15)
        assert orbit.P == pytest.approx((1.0 / 3.0) / gamma_inv, rel=1e-15)
        # angular momentum P r = n
        assert orbit.P * orbit.r == pytest.approx(1.0, rel=1e-14)
        assert orbit.omega_plus == pytest.approx(11.0 / (6.0 * math.sqrt(2.0)),
                                                 rel=1e-15)
        assert orbit.omega_minus == pytest.approx(5.0 / (6.0 * math.sqrt(2.0)),
                                                  rel=1e-15)
        # dispersion closure: k_pm = omega_pm + epsilon
        assert orbit.k_plus == pytest.approx(orbit.omega_plus + orbit.epsilon,
                                             rel=1e-14)
        assert orbit.k_minus == pytest.approx(orbit.omega_minus + orbit.epsilon,
                                              rel=1e-14)

    def test_phase_harmony_pulsation(self):
        params = PhysicalParams(alpha=0.1, b=1.7, m_eff=2.0)
        orbit = solve_orbit(params, 3)
        expect = 2.0 * (1.0 - 0.01 / (9.0 - 0.01)) / 1.7
        assert orbit.Omega_p == pytest.approx(expect, rel=1e-15)

    def test_superluminal_rejected(self):
        params = PhysicalParams(alpha=0.5)
        with pytest.raises(SuperluminalError):
            solve_orbit(params, 0.5)

    def test_omega_minus_sign_bound(self):
        # at n = 1 the minus frequency changes sign exactly at
        # alpha = (sqrt(5) - 1)/2
        below = solve_orbit(PhysicalParams(alpha=OMEGA_MINUS_BOUND - 1e-6), 1)
        above = solve_orbit(PhysicalParams(alpha=OMEGA_MINUS_BOUND + 1e-6), 1)
        assert below.omega_minus > 0.0 > above.omega_minus

    def test_bare_particle_triple(self):
        alpha, b, n = 0.2, 1.0, 2
        ratio = (1.0 - alpha**2 / (n**2 - alpha**2)) / b
        m_p, sigma = 0.5, 0.8
        Omega_p = 1.5 * m_p * ratio  # 1.5x the minimum: m_eff = 1.5 m_p
        params = PhysicalParams(alpha=alpha, b=b, m_p=m_p, sigma=sigma,
                                Omega_p=Omega_p)
        orbit = solve_orbit(params, n)
        assert orbit.m_eff == pytest.approx(1.5 * m_p, rel=1e-12)
        # mass relation m_eff = m_p (1 + sigma Omega_p^2 |z0|^2)
        back = m_p * (1.0 + sigma * Omega_p**2 * orbit.z0_mod2)
        assert back == pytest.approx(orbit.m_eff, rel=1e-12)

    def test_unphysical_amplitude_reports_minimum(self):
        ratio = (1.0 - 0.04 / (4.0 - 0.04)) / 1.0
        params = PhysicalParams(alpha=0.2, m_p=1.0, sigma=1.0,
                                Omega_p=0.5 * ratio)
        with pytest.raises(UnphysicalAmplitudeError) as exc:
            solve_orbit(params, 2)
        assert exc.value.min_omega_p == pytest.approx(ratio, rel=1e-12)

    def test_direct_m_eff_gives_no_amplitude(self):
        orbit = solve_orbit(PhysicalParams(alpha=0.2), 2)
        assert orbit.z0_mod2 is None

    @given(st.floats(0.005, 0.55), st.integers(1, 15))
    @settings(max_examples=100, deadline=None)
    def test_orbit_invariants(self, alpha, n):
        orbit = solve_orbit(PhysicalParams(alpha=alpha), n)
        gamma = 1.0 / math.sqrt(1.0 - orbit.v**2)
        # angular momentum quantized, momentum and energy consistent
        assert orbit.P * orbit.r == pytest.approx(n, rel=1e-12)
        assert orbit.P == pytest.approx(orbit.m_eff * orbit.v * gamma, rel=1e-13)
        assert orbit.E == pytest.approx(orbit.m_eff / gamma, rel=1e-13)
        # total energy also equals kinetic minus Coulomb on the orbit
        assert orbit.E == pytest.approx(orbit.m_eff * gamma - alpha / orbit.r,
                                        rel=1e-10)
        # mode-number difference is 2n/b, mean frequency matches E - eps
        assert orbit.m_plus - orbit.m_minus == pytest.approx(2 * n / orbit.b,
                                                             rel=1e-10)


class TestHistoricalAndLimits:
    def test_phase_wave_action_counts_n(self):
        # Bohr orbit inputs: v = alpha/n, L = 2 pi n^2 a0 / m;
        # the lap count of the superluminal phase wave equals n
        alpha = 1.0 / 137.0
        for n in (1, 2, 5):
            orbit = solve_orbit(PhysicalParams(alpha=alpha), n)
            length = 2.0 * math.pi * orbit.r
            v_phi, delta_t, action = historical_phase_wave(orbit.v, length, 1.0)
            assert v_phi == pytest.approx(1.0 / orbit.v, rel=1e-15)
            assert action == pytest.approx(n, rel=1e-12)

    def test_phase_wave_domain(self):
        with pytest.raises(ConfigError):
            historical_phase_wave(1.0, 1.0, 1.0)
        with pytest.raises(ConfigError):
            historical_phase_wave(0.0, 1.0, 1.0)

    def test_nonrel_energy_limit(self):
        params = PhysicalParams(alpha=1e-3, m_eff=2.0)
        orbit = solve_orbit(params, 1)
        assert abs(orbit.E - nonrel_energy(params, 1)) < 1e-12 * orbit.m_eff

    def test_params_validation(self):
        with pytest.raises(ConfigError):
            PhysicalParams(alpha=0.0)
        with pytest.raises(ConfigError):
            PhysicalParams(alpha=1.2)
        with pytest.raises(ConfigError):
            PhysicalParams(alpha=0.1, b=-1.0)
        with pytest.raises(ConfigError):
            PhysicalParams(alpha=0.1, m_p=1.0)  # incomplete triple
        with pytest.raises(ConfigError):
            PhysicalParams(alpha=0.1, m_eff=2.0, m_p=1.0, sigma=1.0, Omega_p=1.0)

    def test_beta_scaling(self):
        params = PhysicalParams(alpha=0.25, xi_charge=0.5)
        assert params.beta == 0.125
