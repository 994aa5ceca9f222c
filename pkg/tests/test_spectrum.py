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
import sympy as sp

from casimir.errors import InvalidDegreeError, UnavailableBoundError, UnsupportedGeometryError
from casimir.geometry import Annulus, Ball, Box, Interval
from casimir.hk_coeff import BoundaryCondition, FieldKind
from casimir.spectrum import (ModeList, annulus_scalar_spectrum, ball_scalar_spectrum, bessel_zero,
                              box_pform_spectrum, degeneracy, generate_spectrum, heat_tail_bound, interval_spectrum)

ABS, REL = BoundaryCondition.ABSOLUTE, BoundaryCondition.RELATIVE


def test_interval_spectrum():
  m = interval_spectrum(sp.pi, REL, 10.5)
  np.testing.assert_allclose(m.omegas, np.arange(1, 11))
  assert m.mode_count == 10 and not m.complete
  assert m.counting_function(4.5) == 4
  assert m.weyl_count(10.0) == pytest.approx(10.0)


def test_interval_neumann_drops_constant():
  m = interval_spectrum(1, ABS, 4 * math.pi)
  np.testing.assert_allclose(m.omegas, math.pi * np.arange(1, 5))


def test_square_dirichlet_degeneracies():
  m = box_pform_spectrum((1, 1), 0, REL, math.pi * math.sqrt(10))
  np.testing.assert_allclose(m.omegas, math.pi * np.sqrt([2, 5, 8, 10]))
  np.testing.assert_array_equal(m.multiplicities, [1, 2, 1, 2])


def test_square_neumann_and_one_forms():
  zeros = box_pform_spectrum((1, 1), 0, ABS, 1.5 * math.pi)
  np.testing.assert_allclose(zeros.omegas, [math.pi, math.pi * math.sqrt(2)])
  np.testing.assert_array_equal(zeros.multiplicities, [2, 1])
  # absolute one-forms: sine along the form direction, cosine across
  ones = box_pform_spectrum((1, 1), 1, ABS, 1.5 * math.pi)
  np.testing.assert_allclose(ones.omegas, [math.pi, math.pi * math.sqrt(2)])
  np.testing.assert_array_equal(ones.multiplicities, [2, 2])


def test_irrational_box_merges_by_tolerance():
  m = box_pform_spectrum((sp.sqrt(2), sp.sqrt(2)), 0, REL, 5.0)
  assert m.omegas[0] == pytest.approx(math.pi)
  assert m.multiplicities[0] == 1
  assert m.multiplicities[1] == 2


def test_box_degree_guard():
  with pytest.raises(InvalidDegreeError):
    box_pform_spectrum((1, 1), 3, ABS, 10.0)


@pytest.mark.parametrize("nu, k, expected", [
  (0, 1, 2.404825557695773),
  (0, 2, 5.520078110286311),
  (1, 1, 3.831705970207512),
  (0.5, 3, 3 * math.pi),
  (2.5, 1, 5.763459196894550),
  (10, 1, 14.47550068655454),
])
def test_bessel_zero(nu, k, expected):
  assert bessel_zero(nu, k) == pytest.approx(expected, rel=1e-12)


def test_degeneracy():
  assert [degeneracy(l, 2) for l in range(4)] == [1, 2, 2, 2]
  assert [degeneracy(l, 3) for l in range(4)] == [1, 3, 5, 7]
  assert degeneracy(1, 4) == 4


def test_ball_dirichlet_spectrum():
  m = ball_scalar_spectrum(3, 1, REL, 5.0)
  np.testing.assert_allclose(m.omegas, [math.pi, 4.493409457909064], rtol=1e-12)
  np.testing.assert_array_equal(m.multiplicities, [1, 3])


def test_ball_neumann_spectrum():
  m = ball_scalar_spectrum(3, 1, ABS, 3.0)
  np.testing.assert_allclose(m.omegas, [2.081575977818101], rtol=1e-12)
  np.testing.assert_array_equal(m.multiplicities, [3])


def test_disk_radius_scaling():
  m = ball_scalar_spectrum(2, 2, REL, 1.5)
  assert m.lowest == pytest.approx(2.404825557695773 / 2, rel=1e-12)
  assert m.scaled(2).lowest == pytest.approx(2.404825557695773 / 4, rel=1e-12)


def test_annulus_lowest_mode():
  m = annulus_scalar_spectrum(2, 1, 2, REL, 3.3)
  assert 3.10 < m.lowest < 3.15
  assert m.multiplicities[0] == 1


def test_generate_spectrum_dispatch():
  assert generate_spectrum(Interval(1), FieldKind.SCALAR, REL, 10.0).source['kind'] == 'interval'
  assert generate_spectrum(Box((1, 1)), FieldKind.PFORM, ABS, 10.0, p=1).source['p'] == 1
  assert generate_spectrum(Annulus(2, 1, 2), FieldKind.SCALAR, REL, 4.0).source['kind'] == 'annulus'
  with pytest.raises(UnsupportedGeometryError):
    generate_spectrum(Ball(3, 1), FieldKind.ELECTROMAGNETIC, REL, 10.0)
  with pytest.raises(UnsupportedGeometryError):
    generate_spectrum(Ball(3, 1), FieldKind.PFORM, REL, 10.0, p=1)


def test_mode_list_utilities():
  m = ModeList.from_modes([0.0, 2.0, 1.0, 2.0])
  np.testing.assert_allclose(m.omegas, [1.0, 2.0])
  np.testing.assert_array_equal(m.multiplicities, [1, 2])
  assert m.complete and heat_tail_bound(m, 0.1) == 0.0
  truncated = m.truncate(1.5)
  assert truncated.mode_count == 1 and not truncated.complete
  with pytest.raises(UnavailableBoundError):
    heat_tail_bound(truncated, 0.1)
  with pytest.raises(UnavailableBoundError):
    m.weyl_count(1.0)


def test_heat_tail_bound_decreases_with_t():
  m = interval_spectrum(sp.pi, REL, 100.5)
  assert heat_tail_bound(m, 1e-3) > heat_tail_bound(m, 1e-2) > 0
