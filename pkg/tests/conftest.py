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

from casimir.estimate import Estimate
from casimir.geometry import Ball, Interval
from casimir.heatkernel import extract_coefficients
from casimir.hk_coeff import BoundaryCondition, FieldKind, trace_coefficients
from casimir.spectrum import ball_scalar_spectrum, interval_spectrum
from casimir.zeta import MeromorphicValue, ZetaData, zeta_zero_data

INTERVAL_MODES = 2000
DISK_OMEGA = 200.0


def closed_interval_zeta(L: float, bc: BoundaryCondition = BoundaryCondition.RELATIVE) -> ZetaData:
  """Interval zeta data from zeta_R: zeta(s) = (L/pi)^(2s) zeta_R(2s)."""
  coeffs = trace_coefficients(Interval(sp.nsimplify(L, [sp.pi])), FieldKind.SCALAR, bc, 3)
  return ZetaData(Estimate(-0.5), Estimate(-math.log(2 * L)), MeromorphicValue(-0.5, -math.pi / (12 * L)), coeffs)


@pytest.fixture(scope='session')
def interval_modes():
  """Dirichlet modes omega_n = n on [0, pi]."""
  return interval_spectrum(sp.pi, BoundaryCondition.RELATIVE, INTERVAL_MODES + 0.5)


@pytest.fixture(scope='session')
def interval_coeffs():
  return trace_coefficients(Interval(sp.pi), FieldKind.SCALAR, BoundaryCondition.RELATIVE, 3)


@pytest.fixture(scope='session')
def interval_zeta(interval_modes, interval_coeffs):
  return zeta_zero_data(interval_modes, interval_coeffs)


@pytest.fixture(scope='session')
def interval_closed_zeta():
  return closed_interval_zeta(math.pi)


@pytest.fixture(scope='session')
def disk_modes():
  """Dirichlet modes of the unit disk."""
  return ball_scalar_spectrum(2, 1, BoundaryCondition.RELATIVE, DISK_OMEGA)


@pytest.fixture(scope='session')
def disk_coeffs(disk_modes):
  """Closed forms for c_0..c_2, fitted c_3 and c_4."""
  fit = extract_coefficients(disk_modes, 2, 4)
  return trace_coefficients(Ball(2, 1), FieldKind.SCALAR, BoundaryCondition.RELATIVE, 4, extracted=fit.coefficients)
