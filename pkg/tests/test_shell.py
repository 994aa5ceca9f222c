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
import pytest
import sympy as sp

from casimir.errors import CoverageError, NoLimitError, UnsupportedGeometryError
from casimir.geometry import Annulus, Ball, PistonConfiguration, ShellConfiguration
from casimir.hk_coeff import BoundaryCondition, FieldKind, shell_c_hat_set
from casimir.shell import (OMEGA_R, _region_omega_max, divergence_classification, renormalized_free_energy,
                           richardson_limit, shell_high_T, shell_Q, shell_report)
from casimir.thermo import evaluate_terms

REL = BoundaryCondition.RELATIVE
EM = FieldKind.ELECTROMAGNETIC
PISTON_R = [50, 100, 200]


# ============================================================================
# DIVERGENCES
# ============================================================================
def test_em_ball_shell_is_finite_in_three_dimensions():
  c_hat = shell_c_hat_set(ShellConfiguration(Ball(3, 1)), REL, EM)
  divergence = divergence_classification(3, c_hat)
  assert divergence.finite
  assert divergence.log_term_assumed
  assert divergence.label == 'finite'


@pytest.mark.parametrize("D", [4, 5, 6])
def test_em_ball_shell_diverges_above_three_dimensions(D):
  c_hat = shell_c_hat_set(ShellConfiguration(Ball(D, 1)), REL, EM)
  divergence = divergence_classification(D, c_hat)
  assert not divergence.finite
  assert divergence.leading_n == 1
  assert divergence.label == f'lambda^{-D}'


def test_logarithmic_divergence():
  divergence = divergence_classification(2, {0: 0, 1: 0, 2: 0.1, 3: 0.3})
  assert divergence.log_term and not divergence.finite
  assert divergence.label == 'ln lambda'
  assert divergence.to_dict()['classification'] == 'ln lambda'


def test_classification_needs_low_coefficients():
  with pytest.raises(CoverageError):
    divergence_classification(3, {0: 0})


def test_piston_coefficients():
  c_hat = shell_c_hat_set(PistonConfiguration(1, 2), REL, FieldKind.SCALAR)
  assert c_hat == {0: 0, 1: sp.Rational(-1, 2), 2: 0, 3: 0, 4: 0}
  assert divergence_classification(1, c_hat).finite


# ============================================================================
# EXTRAPOLATION
# ============================================================================
def test_richardson_recovers_quadratic_limit():
  r = [80, 10, 40, 20]
  values = [2 + 3 / x + 5 / x**2 for x in r]
  limit = richardson_limit(r, values)
  assert limit.value == pytest.approx(2.0, abs=1e-10)
  assert limit.r_values == [10.0, 20.0, 40.0, 80.0]
  assert len(limit.estimates) == 2


def test_richardson_single_window_uncertainty():
  r = [10, 20, 40]
  limit = richardson_limit(r, [2 + 3 / x + 5 / x**2 for x in r])
  # distance to the straight line through the two largest r
  assert limit.uncertainty == pytest.approx(5 / 20 / 40, rel=1e-9)
  assert limit.to_estimate().value == pytest.approx(2.0)


def test_richardson_rejects_divergent_sequence():
  r = [10, 20, 40, 80, 160]
  with pytest.raises(NoLimitError):
    richardson_limit(r, [float(x) for x in r])


@pytest.mark.parametrize("r, values", [([10, 20], [1.0, 1.0]), ([10, 20, 40], [1.0, float('nan'), 1.0])])
def test_richardson_rejects_bad_input(r, values):
  with pytest.raises(NoLimitError):
    richardson_limit(r, values)


def test_unsupported_shell_numerics():
  with pytest.raises(UnsupportedGeometryError):
    shell_Q(ShellConfiguration(Ball(4, 1)), REL, [3, 4, 5])


@pytest.mark.parametrize("r", [2, 3, 4, 50])
def test_annulus_cutoff_follows_width(r):
  # lowest annular mode ~ pi / width, so omega_max * width fixes the usable fit window
  annulus = Annulus(2, 1, r)
  assert _region_omega_max(annulus, 2000, OMEGA_R, 0.0) * (r - 1) == pytest.approx(OMEGA_R)
  assert _region_omega_max(Ball(2, r), 2000, OMEGA_R, 0.0) * r == pytest.approx(OMEGA_R)


def test_region_cutoff_covers_temperature():
  assert _region_omega_max(Annulus(3, 1, 50), 2000, OMEGA_R, 10.0) >= 200.0


# ============================================================================
# HIGH TEMPERATURE AND RENORMALIZATION
# ============================================================================
def test_piston_high_T_terms():
  c_hat = shell_c_hat_set(PistonConfiguration(1, 2), REL, FieldKind.SCALAR)
  terms = {(t.power, t.log_power): t.coefficient for t in shell_high_T(c_hat, -math.log(2), 5.0, 1)}
  assert terms == {(1, 1): pytest.approx(0.5), (1, 0): pytest.approx(0.5 * math.log(2))}


def test_shell_high_T_needs_c_hat_D():
  with pytest.raises(CoverageError):
    shell_high_T({0: 0, 1: 0, 2: 0}, 0.0, 2.0, 3)


def test_renormalization_removes_power_terms():
  T = 2.0
  c_hat = {0: 1.0, 1: 0.0, 2: 0.0}
  # 2^3 Gamma(2) zeta_R(4) / sqrt(pi)
  expected = 8 * math.pi**4 / 90 / math.sqrt(math.pi) * T**4
  assert renormalized_free_energy(0.25, c_hat, T, 3) == pytest.approx(0.25 + expected, rel=1e-12)
  assert renormalized_free_energy(0.25, {0: 0, 1: -0.5}, T, 1) == 0.25


def test_em_shell_report_with_external_q():
  report = shell_report(ShellConfiguration(Ball(3, 1)), EM, REL, temperatures=(0.0, 5.0), q=0.3,
                        extra_c_hat={3: 0.1, 4: 0.0})
  assert report.Q.value == 0.3
  assert report.divergence.finite and not report.divergence.log_term_assumed
  assert report.energies[0].high_t_terms == []
  assert report.energies[0].e_reg is None
  terms = {(t.power, t.log_power): t.coefficient for t in report.energies[1].high_t_terms}
  assert terms == {(1, 1): pytest.approx(-0.1), (1, 0): pytest.approx(-0.15)}


# ============================================================================
# PISTON NUMERICS
# ============================================================================
@pytest.fixture(scope='module')
def piston_report():
  return shell_report(PistonConfiguration(1, 2), FieldKind.SCALAR, REL, temperatures=(0.0, 1.0, 20.0),
                      r_list=PISTON_R)


@pytest.mark.slow
def test_piston_energy_limit(piston_report):
  energy = piston_report.energies[0]
  assert energy.e_reg.value == pytest.approx(-math.pi / 24, abs=1e-6)
  assert energy.e_ren == pytest.approx(energy.e_reg.value)


@pytest.mark.slow
def test_piston_q_limit(piston_report):
  assert piston_report.Q.value == pytest.approx(-math.log(2), abs=1e-6)
  q = piston_report.per_r['Q']
  # Q_r = -ln 2 + ln(r / (r - 1))
  for r, value in zip(q.r_values, q.per_r):
    assert value == pytest.approx(-math.log(2) + math.log(r / (r - 1)), abs=1e-7)


@pytest.mark.slow
@pytest.mark.parametrize("T, rel", [(1.0, 1.5e-4), (20.0, 1e-6)])
def test_piston_high_T_series_matches_numerics(piston_report, T, rel):
  energy = next(e for e in piston_report.energies if e.T == T)
  # 1/2 T ln T + 1/2 ln 2 T, up to exp(-4 pi T)
  series = evaluate_terms(energy.high_t_terms, T)
  assert series == pytest.approx(0.5 * T * math.log(T) + 0.5 * math.log(2) * T, rel=1e-5)
  assert energy.e_reg.value == pytest.approx(series, rel=rel)
  assert energy.e_reg.bound < rel * abs(series)


# ============================================================================
# DISK NUMERICS
# ============================================================================
@pytest.mark.slow
def test_disk_shell_extrapolates_over_small_scale_factors():
  report = shell_report(ShellConfiguration(Ball(2, 1)), FieldKind.SCALAR, REL, temperatures=(0.0,),
                        r_list=[2, 3, 4], omega_r=OMEGA_R)
  assert math.isfinite(report.Q.value)
  assert 0 <= report.Q.bound < math.inf
  energy = report.energies[0].e_reg
  assert math.isfinite(energy.value) and 0 <= energy.bound < math.inf

  q = report.per_r['Q'].per_r
  assert q[0] > q[1] > q[2] > 0
  e = report.per_r[0.0].per_r
  assert e[0] < e[1] < e[2] < 0
