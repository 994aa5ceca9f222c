############
#
# Copyright (c) 2024 Maxim Yudayev and KU Leuven eMedia Lab
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
# ############


import math
import numpy as np
import pytest

from casimir.errors import InsufficientSpectrumError, PoleError
from casimir.estimate import Estimate
from casimir.hk_coeff import CoefficientSet
from casimir.thermo import (cutoff_energy, cutoff_expansion, cutoff_free_energy_expansion, divergent_coefficients,
                            evaluate_terms, free_energy_sweep, high_T_check, high_T_expansion, mu_tilde,
                            regularized_free_energy, regularized_zero_t, thermal_correction, thermal_zeta_at_zero,
                            thermal_zeta_at_zero_asymptotic, thermal_zeta_bessel, thermal_zeta_direct)
from casimir.zeta import MeromorphicValue, ZetaData, riemann_zeta


def _log_sum(T: float) -> float:
  n = np.arange(1, 400, dtype=np.float64)
  return float(np.sum(np.log1p(-np.exp(-n / T))))


# ============================================================================
# THERMAL CORRECTION
# ============================================================================
@pytest.mark.parametrize("T", [0.1, 1.0, 10.0])
def test_thermal_correction_matches_direct_sum(interval_modes, T):
  delta = thermal_correction(interval_modes, T)
  assert delta.value < 0
  assert delta.value == pytest.approx(T * _log_sum(T), rel=1e-12)


def test_thermal_correction_vanishes_at_zero(interval_modes):
  assert thermal_correction(interval_modes, 0.0) == Estimate(0.0, 0.0)


def test_thermal_correction_guards(interval_modes):
  with pytest.raises(ValueError):
    thermal_correction(interval_modes, -1.0)
  with pytest.raises(InsufficientSpectrumError):
    thermal_correction(interval_modes, 200.0)


# ============================================================================
# REGULARIZED FREE ENERGY
# ============================================================================
def test_zero_temperature_energy(interval_closed_zeta, interval_zeta):
  assert regularized_zero_t(interval_closed_zeta).value == pytest.approx(-1 / 24, abs=1e-15)
  assert regularized_zero_t(interval_zeta).value == pytest.approx(-1 / 24, abs=1e-8)


def test_zeta_t_derivative(interval_modes, interval_closed_zeta):
  tz = thermal_zeta_at_zero(interval_modes, interval_closed_zeta, 1.0)
  assert tz.value0 == 0.0
  assert tz.deriv0 == pytest.approx(1 / 12 - 2 * _log_sum(1.0), rel=1e-12)


@pytest.mark.parametrize("T", [0.01, 0.5, 2.0])
def test_energy_splits_into_zero_t_and_thermal_parts(interval_modes, interval_closed_zeta, T):
  total = regularized_free_energy(interval_modes, interval_closed_zeta, T).value
  parts = regularized_zero_t(interval_closed_zeta).value + thermal_correction(interval_modes, T).value
  assert total == pytest.approx(parts, abs=1e-13)


def test_low_temperature_limit(interval_modes, interval_closed_zeta):
  assert regularized_free_energy(interval_modes, interval_closed_zeta, 0.01).value == pytest.approx(-1 / 24, abs=1e-12)


def test_mu_drops_out_of_thermal_difference(interval_modes, interval_coeffs):
  zd = ZetaData(Estimate(-0.5), Estimate(0.0), MeromorphicValue(-0.5, 0.1, res=0.2), interval_coeffs)
  differences = []
  for mu in (1.0, 3.0):
    at_t = regularized_free_energy(interval_modes, zd, 1.5, mu).value
    at_zero = regularized_free_energy(interval_modes, zd, 0.0, mu).value
    differences.append(at_t - at_zero)
  assert differences[0] == pytest.approx(differences[1], abs=1e-12)
  # the residue moves both ends by Res ln(mu)
  shift = regularized_zero_t(zd, 3.0).value - regularized_zero_t(zd, 1.0).value
  assert shift == pytest.approx(0.2 * math.log(3.0), rel=1e-12)


def test_mu_tilde():
  assert mu_tilde(math.e / 2) == pytest.approx(1.0)


# ============================================================================
# THERMAL ZETA REPRESENTATIONS
# ============================================================================
@pytest.mark.parametrize("T", [0.5, 1.0, 2.0])
def test_bessel_representation_agrees_with_double_sum(interval_modes, T):
  shift = MeromorphicValue(1.5, riemann_zeta(3.0))
  direct = thermal_zeta_direct(interval_modes, T, 2.0)
  bessel = thermal_zeta_bessel(interval_modes, T, 2.0, shift)
  assert bessel == pytest.approx(direct.value, rel=1e-8)


def test_bessel_representation_guards(interval_modes):
  with pytest.raises(PoleError):
    thermal_zeta_bessel(interval_modes, 1.0, 2.0, MeromorphicValue(1.5, 1.0, res=0.5))
  with pytest.raises(ValueError):
    thermal_zeta_bessel(interval_modes, 1.0, 2.0, MeromorphicValue(1.0, 1.0))


def test_asymptotic_zeta_t(interval_modes, interval_closed_zeta, interval_coeffs):
  T = 10.0
  exact = thermal_zeta_at_zero(interval_modes, interval_closed_zeta, T)
  asymptotic = thermal_zeta_at_zero_asymptotic(interval_coeffs, interval_closed_zeta, T, 3)
  assert asymptotic.value0 == 0.0
  assert asymptotic.deriv0 == pytest.approx(math.pi**2 * T / 3 - math.log(2 * math.pi * T), rel=1e-12)
  assert asymptotic.deriv0 == pytest.approx(exact.deriv0, abs=1e-9)


# ============================================================================
# HIGH TEMPERATURE
# ============================================================================
def test_high_T_terms(interval_coeffs, interval_closed_zeta):
  terms = {(t.power, t.log_power): t.coefficient for t in high_T_expansion(interval_coeffs, interval_closed_zeta, 2.0)}
  assert terms == {
    (2, 0): pytest.approx(-math.pi**2 / 6),
    (1, 1): pytest.approx(0.5),
    (1, 0): pytest.approx(0.5 * math.log(2 * math.pi)),
  }


@pytest.mark.parametrize("T", [10.0, 20.0])
def test_high_T_relative_residual(interval_modes, interval_coeffs, interval_closed_zeta, T):
  check = high_T_check(interval_modes, interval_coeffs, interval_closed_zeta, T)
  assert abs(check.residual) <= 1e-6 * abs(check.exact)


def test_high_T_residual_decays_exponentially(interval_modes, interval_coeffs, interval_closed_zeta):
  residuals = [high_T_check(interval_modes, interval_coeffs, interval_closed_zeta, T).residual for T in (0.2, 0.3, 0.5)]
  assert abs(residuals[0]) > abs(residuals[1]) > abs(residuals[2])
  # leading remainder -T exp(-4 pi L T) with L = pi
  for T, residual in zip((0.3, 0.5), residuals[1:]):
    assert residual == pytest.approx(-T * math.exp(-4 * math.pi**2 * T), rel=1e-4)


def test_expansion_evaluates_to_check(interval_modes, interval_coeffs, interval_closed_zeta):
  T = 3.0
  check = high_T_check(interval_modes, interval_coeffs, interval_closed_zeta, T)
  assert check.expansion == evaluate_terms(high_T_expansion(interval_coeffs, interval_closed_zeta, T), T)
  assert check.exact_bound >= 0
  assert check.expansion_bound == 0.0


def test_fitted_coefficients_carry_term_bounds(interval_closed_zeta):
  coeffs = CoefficientSet(1, {0: math.sqrt(math.pi) / 2, 1: -0.5, 2: 0.0, 3: 0.0, 4: 0.0},
                          uncertainty={0: 1e-6, 4: 1e-4})
  terms = {term.source: term for term in high_T_expansion(coeffs, interval_closed_zeta, 2.0)}
  # 2 zeta_R(2) / sqrt(pi) per unit c_0
  assert terms['c_0'].bound == pytest.approx(1e-6 * math.pi**1.5 / 3, rel=1e-12)
  assert terms['c_0'].evaluate_bound(2.0) == pytest.approx(4 * terms['c_0'].bound)
  assert terms['c_0'].to_dict()['bound'] == terms['c_0'].bound


# ============================================================================
# CUT-OFF
# ============================================================================
def test_divergent_coefficients(interval_coeffs):
  divergent, log_coefficient = divergent_coefficients(interval_coeffs)
  assert divergent == {-2: pytest.approx(0.5)}
  assert log_coefficient == 0.0


@pytest.mark.parametrize("lam", [0.2, 0.1, 0.05])
def test_cutoff_expansion_converges(interval_modes, interval_coeffs, lam):
  exact = cutoff_energy(interval_modes, lam).value
  expansion = cutoff_expansion(interval_coeffs, -1 / 24, lam)
  assert expansion.constant == -1 / 24
  # next term lambda^2 / 480
  assert exact - expansion.value == pytest.approx(lam**2 / 480, rel=2e-2)


def test_cutoff_free_energy(interval_modes, interval_coeffs, interval_closed_zeta):
  lam = 0.1
  at_zero = cutoff_free_energy_expansion(interval_coeffs, interval_closed_zeta, interval_modes, lam, 0.0)
  assert at_zero.value == pytest.approx(0.5 / lam**2 - 1 / 24, rel=1e-14)
  assert at_zero.bound == 0.0
  at_t = cutoff_free_energy_expansion(interval_coeffs, interval_closed_zeta, interval_modes, lam, 1.0)
  F = regularized_free_energy(interval_modes, interval_closed_zeta, 1.0).value
  assert at_t.value == pytest.approx(0.5 / lam**2 + F, rel=1e-12)
  assert 0 <= at_t.bound < 1e-8


def test_cutoff_guards(interval_modes):
  with pytest.raises(ValueError):
    cutoff_energy(interval_modes, 0.0)
  with pytest.raises(InsufficientSpectrumError):
    cutoff_energy(interval_modes, 0.001)


# ============================================================================
# SWEEP
# ============================================================================
def test_sweep_keeps_grid_order(interval_modes, interval_coeffs, interval_closed_zeta):
  reports = free_energy_sweep(interval_modes, interval_coeffs, interval_closed_zeta, [2.0, 0.0, 0.5])
  assert [r.T for r in reports] == [2.0, 0.0, 0.5]
  assert reports[1].asymptotic_terms == []
  assert reports[1].regularized_total.value == pytest.approx(-1 / 24)
  assert reports[0].divergent_coefficients == {-2: pytest.approx(0.5)}
