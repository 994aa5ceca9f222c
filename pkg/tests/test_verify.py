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

from casimir.errors import InvariantFailure
from casimir.verify import CheckResult, assert_checks, run_checks


def test_coefficient_identities_hold():
  results = run_checks(['coefficients'])
  assert results
  assert [r.name for r in results if not r.passed] == []


@pytest.mark.slow
def test_numeric_groups_hold():
  results = run_checks(['representation', 'free-energy'])
  assert [r.name for r in results if not r.passed] == []


@pytest.mark.slow
def test_zeta_group_compares_fitted_disk_coefficients():
  results = run_checks(['zeta'])
  names = [r.name for r in results]
  assert 'disk fitted c_2 = closed form' in names
  assert not any('= c_1' in name for name in names)
  assert [r.name for r in results if not r.passed] == []
  assert all(0 < r.tolerance < 0.05 for r in results)

def test_unknown_group():
  with pytest.raises(ValueError):
    run_checks(['nonsense'])


def test_assert_checks_reports_failures():
  assert_checks([CheckResult('zeta', 'ok', True)])
  with pytest.raises(InvariantFailure, match='1 invariant checks failed: broken'):
    assert_checks([CheckResult('zeta', 'ok', True), CheckResult('zeta', 'broken', False, 1.0, 1e-8)])
