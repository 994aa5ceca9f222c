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


from .BaseComponent import BaseComponent
from casimir.verify import CheckResult, assert_checks, run_checks
from utils.config_utils import RunConfig
from utils.report_utils import Report
import pandas as pd


class VerifyComponent(BaseComponent):
  """Runs the invariant suite; the report is marked failed if any check fails."""
  def __init__(self, config: RunConfig, groups: list[str] | None = None):
    super().__init__(unique_id="verify", config=config)
    self._groups = groups
    self._results: list[CheckResult] = []


  def _compute(self) -> Report:
    self._results = results = run_checks(self._groups)
    table = pd.DataFrame([r.to_dict() for r in results], columns=['group', 'name', 'passed', 'residual', 'tolerance'])
    failed = int((~table['passed']).sum()) if len(table) else 0
    summary = {'checks': len(results), 'failed': failed}
    return Report('verify', {'checks': table}, summary, passed=failed == 0)


  def check(self) -> None:
    assert_checks(self._results)
