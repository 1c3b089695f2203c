"""Tests for the generic numerical kernels."""

import math

import numpy as np
import pytest

from conftest import ORACLE, arctan_moment
from zenodyn import (DomainError, FixedPointSpec, NonConvergent, NonFinite,
                     QuadratureSpec, StepTooCoarse, dephasing,
                     integrate_semi_infinite, integrate_windowed,
                     solve_fixed_point, volterra_step)


def bath_g(w):
    return 0.01 * w / ((w * w - 1.0) ** 2 + 0.16 * w * w)


class TestSpecs:
    def test_quadrature_spec_rejects_bad_values(self):
        with pytest.raises(DomainError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(DomainError):
            QuadratureSpec(abs_tol=0.0, rel_tol=0.0)
        with pytest.raises(DomainError):
            QuadratureSpec(max_subdivisions=0)
        with pytest.raises(DomainError):
            QuadratureSpec(tail_tol=-1e-3)

    def test_fixed_point_spec_rejects_bad_values(self):
        with pytest.raises(DomainError):
            FixedPointSpec(tol=0.0)
        with pytest.raises(DomainError):
            FixedPointSpec(max_iters=0)
        with pytest.raises(DomainError):
            FixedPointSpec(damping=0.0)
        with pytest.raises(DomainError):
            FixedPointSpec(damping=1.5)


class TestSemiInfinite:
    def test_exponential(self, quad):
        value = integrate_semi_infinite(lambda w: math.exp(-w), quad)
        assert value == pytest.approx(1.0, abs=1e-9)

    def test_lorentzian(self, quad):
        value = integrate_semi_infinite(lambda w: 1.0 / (1.0 + w * w), quad)
        assert value == pytest.approx(0.5 * math.pi, abs=1e-9)

    def test_bath_spectrum_matches_closed_form(self, quad):
        # oracle: u = w^2 substitution reduces the moment to an arctangent
        oracle = arctan_moment(0.02, 1.0, 0.4)
        assert oracle == pytest.approx(ORACLE["moment_base"], rel=1e-14)
        value = integrate_semi_infinite(bath_g, quad)
        assert value == pytest.approx(oracle, rel=1e-9)

    def test_transform_independence(self, quad):
        rational = integrate_semi_infinite(bath_g, quad, transform="rational")
        tangent = integrate_semi_infinite(bath_g, quad, transform="tan")
        assert rational == pytest.approx(tangent, abs=4e-10, rel=1e-8)

    def test_unknown_transform(self, quad):
        with pytest.raises(DomainError):
            integrate_semi_infinite(bath_g, quad, transform="sinh")

    def test_non_finite_integrand(self, quad):
        with pytest.raises(NonFinite):
            integrate_semi_infinite(
                lambda w: math.nan if w > 1.0 else 1.0, quad)

    def test_non_convergent_budget(self):
        tight = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13,
                               max_subdivisions=2, tail_tol=0.0)
        with pytest.raises(NonConvergent):
            integrate_semi_infinite(
                lambda w: math.exp(-w) * math.sin(100.0 * w * w), tight)


class TestWindowed:
    def test_window_normalization_over_reals(self, quad_loose):
        # int over all reals of the window equals 1; evenness folds it onto
        # (0, inf) with center 0
        for tau in (0.1, 1.0, 10.0):
            val = 2.0 * integrate_windowed(
                lambda w: dephasing(w, tau), 0.0, 1.0 / tau, quad_loose)
            assert abs(val - 1.0) <= 1e-6

    def test_window_restricted_to_positive_frequencies(self, quad_loose):
        # missing mass below w=0 is bounded by the 1/delta^2 envelope
        omega0, tau = 5.0, 10.0
        val = integrate_windowed(lambda w: dephasing(w - omega0, tau),
                                 omega0, 1.0 / tau, quad_loose)
        assert 1.0 - 2.0 / (math.pi * omega0 * tau) <= val <= 1.0 + 1e-8

    def test_short_window_limit(self, quad):
        # tau -> 0 turns the window into the constant tau/(2 pi)
        tau = 1e-4
        val = integrate_windowed(
            lambda w: bath_g(w) * dephasing(w - 0.2, tau), 0.2, 1.0 / tau,
            quad)
        expected = tau / (2.0 * math.pi) * ORACLE["moment_base"]
        assert val == pytest.approx(expected, rel=1e-6)

    def test_matches_plain_quadrature_on_smooth_integrand(self, quad):
        # window machinery must not distort a smooth decaying integrand
        val = integrate_windowed(bath_g, 1.0, 0.5, quad)
        assert val == pytest.approx(ORACLE["moment_base"], rel=1e-8)

    def test_domain_errors(self, quad):
        with pytest.raises(DomainError):
            integrate_windowed(bath_g, 1.0, 0.0, quad)
        with pytest.raises(DomainError):
            integrate_windowed(bath_g, -1.0, 0.5, quad)

    def test_non_finite(self, quad):
        with pytest.raises(NonFinite):
            integrate_windowed(lambda w: np.full_like(np.asarray(w), np.nan),
                               1.0, 0.5, quad)


class TestFixedPoint:
    def test_constant_map(self, fp):
        assert solve_fixed_point(lambda x: 1.0, 0.3, fp) == 1.0

    def test_identity_map_returns_start(self, fp):
        assert solve_fixed_point(lambda x: x, 0.37, fp) == 0.37

    def test_exponential_map_against_bisection_oracle(self, fp):
        # oracle: plain bisection of x - e^{-x/2} run to 50 digits
        value = solve_fixed_point(lambda x: math.exp(-0.5 * x), 1.0, fp)
        assert value == pytest.approx(ORACLE["fixed_point_exp_half"],
                                      abs=1e-11)

    def test_damped_and_bisection_agree(self, fp):
        damped = solve_fixed_point(lambda x: math.exp(-0.5 * x), 1.0, fp,
                                   method="damped")
        bisect = solve_fixed_point(lambda x: math.exp(-0.5 * x), 1.0, fp,
                                   method="bisection")
        assert abs(damped - bisect) <= 10.0 * fp.tol

    def test_residual_bound_holds(self, fp):
        m = lambda x: math.exp(-0.5 * x)
        for method in ("auto", "damped", "bisection"):
            x = solve_fixed_point(m, 1.0, fp, method=method)
            assert abs(x - m(x)) <= fp.tol

    def test_oscillatory_map_falls_back_to_bisection(self):
        # map with slope < -1 at the fixed point: damped iteration with
        # d=1 oscillates and diverges, bisection still finds the root
        spec = FixedPointSpec(tol=1e-12, max_iters=60, damping=1.0)
        m = lambda x: math.exp(-3.0 * x)
        x = solve_fixed_point(m, 1.0, spec)
        assert abs(x - m(x)) <= spec.tol

    def test_no_fixed_point_raises(self, fp):
        with pytest.raises(NonConvergent):
            solve_fixed_point(lambda x: x + 1.0, 1.0, fp)

    def test_bad_start_rejected(self, fp):
        with pytest.raises(DomainError):
            solve_fixed_point(lambda x: x, 0.0, fp)
        with pytest.raises(DomainError):
            solve_fixed_point(lambda x: x, 1.5, fp)


class TestVolterra:
    def test_free_evolution_preserves_modulus(self):
        omega, h, n = 1.3, 0.01, 2000
        x = volterra_step(lambda t: np.zeros_like(np.asarray(t), dtype=complex),
                          omega, h, n)
        # rounding drift only: the one-step map has unit modulus exactly
        assert np.abs(np.abs(x) - 1.0).max() < 1e-12
        # phase follows e^{-i omega t} at second order
        exact = np.exp(-1j * omega * h * np.arange(n + 1))
        assert np.abs(x - exact).max() < 5e-4

    @staticmethod
    def _oscillator_error(h):
        # K = c constant and no free rotation: amplitude obeys
        # x'' = -c x, so x(t) = cos(sqrt(c) t)
        c, t_max = 2.0, 10.0
        n = int(round(t_max / h))
        x = volterra_step(
            lambda t: np.full(np.shape(t), c, dtype=complex), 0.0, h, n)
        exact = np.cos(math.sqrt(c) * h * np.arange(n + 1))
        return np.abs(x - exact).max()

    def test_oscillator_oracle(self):
        assert self._oscillator_error(0.01) < 3e-4

    def test_second_order_convergence(self):
        ratio = self._oscillator_error(0.02) / self._oscillator_error(0.01)
        assert 3.4 < ratio < 4.6

    def test_step_too_coarse(self):
        with pytest.raises(StepTooCoarse):
            volterra_step(lambda t: 0j, 20.0, 0.05, 10)

    def test_scalar_kernel_callable(self):
        # kernels that only accept scalars must still work
        x = volterra_step(lambda t: complex(2.0), 0.0, 0.01, 100)
        exact = np.cos(math.sqrt(2.0) * 0.01 * np.arange(101))
        assert np.abs(x - exact).max() < 1e-4

    def test_non_finite_kernel(self):
        with pytest.raises(NonFinite):
            volterra_step(lambda t: complex(math.inf), 0.0, 0.01, 5)

    def test_bad_grid(self):
        with pytest.raises(DomainError):
            volterra_step(lambda t: 0j, 1.0, -0.1, 5)
