"""Tests for the closed-form spectral functions."""

import math

import numpy as np
import pytest

from conftest import ORACLE, arctan_moment
from zenodyn import (BathSpectrum, DomainError, ModulatedSpectrum, dephasing,
                     g_of_omega, g_prime, modulation_factor, spectral_moment)

SPECTRUM = BathSpectrum(alpha=0.02, gamma_width=0.4)


class TestBathSpectrum:
    def test_rejects_invalid_parameters(self):
        with pytest.raises(DomainError):
            BathSpectrum(alpha=-0.1, gamma_width=0.4)
        with pytest.raises(DomainError):
            BathSpectrum(alpha=0.1, gamma_width=0.4, omega_c=0.0)
        with pytest.raises(DomainError):
            BathSpectrum(alpha=0.1, gamma_width=0.0)
        with pytest.raises(DomainError):
            BathSpectrum(alpha=0.1, gamma_width=2.0)  # double peak limit

    def test_modulated_requires_positive_omega_a(self):
        with pytest.raises(DomainError):
            ModulatedSpectrum(SPECTRUM, 0.0)


class TestGOfOmega:
    def test_point_values(self):
        assert float(g_of_omega(0.0, SPECTRUM)) == 0.0
        assert float(g_of_omega(1.0, SPECTRUM)) == pytest.approx(
            ORACLE["g_at_1"], rel=1e-14)
        assert float(g_of_omega(0.2, SPECTRUM)) == pytest.approx(
            ORACLE["g_at_02"], rel=1e-14)

    def test_negative_frequency_rejected(self):
        with pytest.raises(DomainError):
            g_of_omega(-0.1, SPECTRUM)

    def test_nonnegative_with_single_peak(self):
        w = np.linspace(0.0, 6.0, 2001)
        g = g_of_omega(w, SPECTRUM)
        assert np.all(g >= 0.0)
        # single local maximum: the finite-difference slope changes sign once
        slope_sign = np.sign(np.diff(g))
        changes = np.count_nonzero(np.diff(slope_sign) != 0)
        assert changes == 1

    def test_large_frequency_tail(self):
        # G -> alpha Omega^4 / (2 w^3)
        w = 300.0
        assert float(g_of_omega(w, SPECTRUM)) == pytest.approx(
            0.01 / w**3, rel=1e-3)


class TestModulation:
    def test_unity_at_omega_a(self):
        assert float(modulation_factor(0.7, 0.7)) == 1.0

    def test_limits(self):
        assert float(modulation_factor(0.0, 0.3)) == pytest.approx(4.0)
        assert float(modulation_factor(0.9, 0.3)) == pytest.approx(0.25)

    def test_monotone_and_threshold(self):
        w = np.linspace(0.0, 5.0, 400)
        f = modulation_factor(w, 1.2)
        assert np.all(np.diff(f) < 0.0)
        assert np.all((f > 1.0) == (w < 1.2))

    def test_rejects_bad_omega_a(self):
        with pytest.raises(DomainError):
            modulation_factor(1.0, 0.0)


class TestGPrime:
    def test_equals_base_at_omega_a(self):
        mod = ModulatedSpectrum(SPECTRUM, 0.19)
        assert float(g_prime(0.19, mod)) == pytest.approx(
            float(g_of_omega(0.19, SPECTRUM)), rel=1e-14)

    def test_zero_coupling(self):
        mod = ModulatedSpectrum(BathSpectrum(alpha=0.0, gamma_width=0.4), 0.19)
        w = np.linspace(0.0, 4.0, 50)
        assert np.all(g_prime(w, mod) == 0.0)

    def test_point_value(self):
        mod = ModulatedSpectrum(SPECTRUM, 0.19)
        assert float(g_prime(1.0, mod)) == pytest.approx(
            ORACLE["g_prime_1_wa019"], rel=1e-12)

    def test_sign_pattern_around_omega_a(self):
        mod = ModulatedSpectrum(SPECTRUM, 0.19)
        w = np.linspace(1e-3, 3.0, 400)
        diff = g_prime(w, mod) - g_of_omega(w, SPECTRUM)
        assert np.all(np.sign(diff) == np.sign(0.19 - w))


class TestDephasing:
    def test_peak_value(self):
        assert float(dephasing(0.0, 1.0)) == pytest.approx(
            ORACLE["dephasing_peak_tau1"], rel=1e-14)

    def test_zero_at_full_period(self):
        assert float(dephasing(2.0 * math.pi, 1.0)) == pytest.approx(0.0, abs=1e-30)

    def test_point_value(self):
        assert float(dephasing(0.5, 2.0)) == pytest.approx(
            ORACLE["dephasing_05_2"], rel=1e-12)

    def test_peak_bound(self):
        tau = 3.7
        d = np.linspace(-40.0, 40.0, 5001)
        f = dephasing(d, tau)
        peak = tau / (2.0 * math.pi)
        assert np.all(f <= peak + 1e-15)
        assert float(dephasing(0.0, tau)) == pytest.approx(peak, rel=1e-14)

    def test_series_guard_is_continuous(self):
        tau = 1.0
        below = float(dephasing(0.9999e-4, tau))
        above = float(dephasing(1.0001e-4, tau))
        assert below == pytest.approx(above, rel=1e-8)

    def test_rejects_nonpositive_tau(self):
        with pytest.raises(DomainError):
            dephasing(0.1, 0.0)

    @pytest.mark.parametrize("tau", [1e-2, 1e-1, 1.0, 1e1, 1e2])
    def test_normalization(self, tau, quad_loose):
        from zenodyn import integrate_windowed
        val = 2.0 * integrate_windowed(lambda w: dephasing(w, tau), 0.0,
                                       1.0 / tau, quad_loose)
        assert abs(val - 1.0) <= 1e-6


class TestSpectralMoment:
    def test_zero_coupling(self, quad):
        assert spectral_moment(BathSpectrum(alpha=0.0, gamma_width=0.4),
                               quad) == 0.0

    def test_base_matches_arctangent_oracle(self, quad):
        value = spectral_moment(SPECTRUM, quad)
        assert value == pytest.approx(arctan_moment(0.02, 1.0, 0.4), rel=1e-9)

    def test_modulated_against_independent_quadrature(self, quad):
        mod = ModulatedSpectrum(SPECTRUM, 0.19)
        value = spectral_moment(mod, quad)
        assert value == pytest.approx(ORACLE["moment_modulated_wa019"],
                                      rel=1e-9)

    def test_flattening_below_resonance(self, quad):
        mod = ModulatedSpectrum(SPECTRUM, 0.19)
        assert spectral_moment(mod, quad) < spectral_moment(SPECTRUM, quad)

    def test_limit_of_large_omega_a(self, quad):
        # f -> 4 pointwise as omega_a -> inf, so the moment ratio -> 4
        mod = ModulatedSpectrum(SPECTRUM, 1000.0)
        ratio = spectral_moment(mod, quad) / spectral_moment(SPECTRUM, quad)
        assert ratio == pytest.approx(4.0, rel=1e-2)

    def test_rejects_unknown_type(self, quad):
        with pytest.raises(DomainError):
            spectral_moment(object(), quad)
