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


import pytest
import sympy as sp

from casimir.errors import ConfigValidationError, CornerContributionError, CoverageError, InvalidDegreeError
from casimir.geometry import Annulus, Ball, Box, Interval, PistonConfiguration, ShellConfiguration
from casimir.hk_coeff import (BoundaryCondition, CoefficientSet, FieldKind, a_n_pform, bc_map, c_n_em, coefficient,
                              d0, h, h0, parse_bc, shell_c_hat, shell_c_hat_set, trace_coefficients, zero_mode_count)

ABS, REL = BoundaryCondition.ABSOLUTE, BoundaryCondition.RELATIVE


def is_zero(expr) -> bool:
  return sp.simplify(expr) == 0


def test_combinatorial_factors():
  assert h(3, 1) == 3
  assert h(2, 3) == 0
  assert h0(4, 1) == 4 - 6
  assert d0(3, 1) == 2 - 1
  assert d0(1, 1) == -1


def test_interval_dirichlet_coefficients():
  g = Interval(sp.pi)
  assert is_zero(coefficient(g, FieldKind.SCALAR, REL, 0) - sp.sqrt(sp.pi) / 2)
  assert coefficient(g, FieldKind.SCALAR, REL, 1) == sp.Rational(-1, 2)
  assert coefficient(g, FieldKind.SCALAR, ABS, 1) == sp.Rational(1, 2)


def test_disk_dirichlet_coefficients():
  g = Ball(2, 1)
  assert is_zero(coefficient(g, FieldKind.SCALAR, REL, 0) - sp.Rational(1, 4))
  assert is_zero(coefficient(g, FieldKind.SCALAR, REL, 1) + sp.sqrt(sp.pi) / 4)
  assert is_zero(coefficient(g, FieldKind.SCALAR, REL, 2) - sp.Rational(1, 6))


def test_em_c1_vanishes_in_three_dimensions():
  assert c_n_em(Ball(3, 1), bc_map('perfectly-conducting'), 1) == 0
  assert c_n_em(Ball(3, 1), bc_map('infinitely-permeable'), 1) == 0
  assert c_n_em(Ball(4, 1), REL, 1) != 0


@pytest.mark.parametrize("g", [Interval(2), Ball(2, 1), Ball(3, 2), Ball(5, 1), Box((1, 2, 3))])
@pytest.mark.parametrize("bc", [ABS, REL])
def test_em_is_one_forms_minus_zero_forms(g, bc):
  for n in (0, 1, 2):
    em = c_n_em(g, bc, n, allow_corners=True)
    forms = a_n_pform(g, 1, bc, n, allow_corners=True) - a_n_pform(g, 0, bc, n, allow_corners=True)
    assert is_zero(em - forms)


@pytest.mark.parametrize("D", [2, 3, 4, 6])
def test_hodge_duality(D):
  g = Ball(D, 1)
  for p in range(D + 1):
    for n in (0, 1, 2):
      assert is_zero(a_n_pform(g, p, REL, n) - a_n_pform(g, D - p, ABS, n))


def test_box_one_form_leading_coefficient():
  # h(2, 1) = 2 components on the unit square
  assert is_zero(a_n_pform(Box((1, 1)), 1, ABS, 0) - 1 / (2 * sp.pi))


def test_box_corner_guard():
  with pytest.raises(CornerContributionError):
    a_n_pform(Box((1, 1)), 0, ABS, 2)
  assert a_n_pform(Box((1, 1)), 0, ABS, 2, allow_corners=True) == 0


def test_degree_and_order_guards():
  with pytest.raises(InvalidDegreeError):
    a_n_pform(Ball(2, 1), 3, ABS, 0)
  with pytest.raises(CoverageError):
    a_n_pform(Ball(2, 1), 0, ABS, 3)


@pytest.mark.parametrize("label, field_kind, p, expected", [
  ('Dirichlet', FieldKind.SCALAR, 0, REL),
  ('neumann', FieldKind.SCALAR, 0, ABS),
  ('perfectly-conducting', FieldKind.ELECTROMAGNETIC, 1, REL),
  ('infinitely-permeable', FieldKind.ELECTROMAGNETIC, 1, ABS),
  ('absolute', FieldKind.PFORM, 2, ABS),
  ('perfectly-conducting', FieldKind.PFORM, 1, REL),
])
def test_parse_bc(label, field_kind, p, expected):
  assert parse_bc(label, field_kind, p) is expected


@pytest.mark.parametrize("label, field_kind, p", [
  ('perfectly-conducting', FieldKind.SCALAR, 0),
  ('dirichlet', FieldKind.ELECTROMAGNETIC, 1),
  ('infinitely-permeable', FieldKind.PFORM, 2),
  ('robin', FieldKind.SCALAR, 0),
])
def test_parse_bc_rejects(label, field_kind, p):
  with pytest.raises(ConfigValidationError):
    parse_bc(label, field_kind, p)


def test_zero_mode_count():
  assert zero_mode_count(Interval(1), FieldKind.SCALAR, ABS) == 1
  assert zero_mode_count(Interval(1), FieldKind.SCALAR, REL) == 0
  assert zero_mode_count(Box((1, 1, 1)), FieldKind.ELECTROMAGNETIC, ABS) == -1
  assert zero_mode_count(Annulus(2, 1, 2), FieldKind.SCALAR, ABS) == 1
  assert zero_mode_count(Annulus(3, 1, 2), FieldKind.ELECTROMAGNETIC, REL) == 1


def test_trace_coefficients_interval_complete():
  coeffs = trace_coefficients(Interval(1), FieldKind.SCALAR, ABS, 4)
  # Neumann: +1/2 from the boundary, -1 for the excluded constant
  assert coeffs.values[1] == sp.Rational(-1, 2)
  assert all(coeffs.values[n] == 0 for n in (2, 3, 4))
  assert coeffs.order == 4 and coeffs.exact


def test_trace_coefficients_need_extraction_above_two():
  with pytest.raises(CoverageError):
    trace_coefficients(Ball(2, 1), FieldKind.SCALAR, REL, 4)
  extracted = CoefficientSet(2, {3: 0.01, 4: 0.002}, provenance={3: 'extracted', 4: 'extracted'})
  coeffs = trace_coefficients(Ball(2, 1), FieldKind.SCALAR, REL, 4, extracted=extracted)
  assert coeffs.provenance[0] == 'closed-form' and coeffs.provenance[4] == 'extracted'
  assert not coeffs.exact


def test_trace_coefficients_box_uses_extracted_c2():
  extracted = CoefficientSet(2, {2: 0.25, 3: 0.0, 4: 0.0}, uncertainty={2: 1e-4})
  coeffs = trace_coefficients(Box((1, 1)), FieldKind.SCALAR, REL, 4, extracted=extracted)
  assert coeffs.value(2) == 0.25
  assert coeffs.error(2) == 1e-4


def test_coefficient_set_merge_and_coverage():
  own = CoefficientSet(1, {0: 1.0, 1: 2.0, 3: 4.0})
  other = CoefficientSet(1, {1: -1.0, 2: 3.0})
  assert own.order == 1
  merged = own.merged(other)
  assert merged.value(1) == 2.0 and merged.order == 3
  with pytest.raises(CoverageError):
    own.value(2)
  with pytest.raises(CoverageError):
    own.require(range(3))


def test_piston_hatted_coefficients():
  c_hat = shell_c_hat_set(PistonConfiguration(1, 4), REL, FieldKind.SCALAR)
  assert c_hat[0] == 0
  assert c_hat[1] == sp.Rational(-1, 2)
  assert all(c_hat[n] == 0 for n in (2, 3, 4))


@pytest.mark.parametrize("bc, sign", [(ABS, 1), (REL, -1)])
def test_em_shell_c_hat(bc, sign):
  shell = ShellConfiguration(Ball(5, 1), 2)
  assert is_zero(shell_c_hat(shell, bc, 0))
  assert is_zero(shell_c_hat(shell, bc, 2))
  # (D - 3) / (2 (4 pi)^2) * vol(S^4) with vol(S^4) = 8 pi^2 / 3
  assert is_zero(shell_c_hat(shell, bc, 1) - sign * sp.Rational(1, 6))
  assert is_zero(shell_c_hat(ShellConfiguration(Ball(3, 1), 3), bc, 1))
