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
from casimir.thermo import divergent_coefficients, high_T_check, high_T_expansion
from utils.config_utils import RunConfig
from utils.report_utils import Report
import logging
import math
import pandas as pd

logger = logging.getLogger(__name__)


class AsymptoticsComponent(BaseComponent):
  """High-temperature series term by term, with its residual against the exact free energy."""
  def __init__(self, config: RunConfig):
    super().__init__(unique_id="asymptotics", config=config)


  def _compute(self) -> Report:
    cfg = self._config
    m, coeffs, zd = self._zeta_data()
    temperatures = [T for T in cfg.temperatures if T > 0]
    if len(temperatures) < len(cfg.temperatures):
      logger.warning("Skipping T = 0, the high-temperature series needs T > 0")

    checks, terms = [], []
    for T in temperatures:
      check = high_T_check(m, coeffs, zd, T, cfg.mu, cfg.n_max)
      checks.append({'T': T, 'exact': check.exact, 'exact_bound': check.exact_bound, 'expansion': check.expansion,
                     'expansion_bound': check.expansion_bound, 'residual': check.residual,
                     'relative_residual': abs(check.residual / check.exact) if check.exact else float('nan')})
      for term in high_T_expansion(coeffs, zd, T, cfg.mu, cfg.n_max):
        terms.append({'T': T, 'term': term.label, 'power': term.power, 'log_power': term.log_power,
                      'coefficient': term.coefficient, 'value': term.evaluate(T), 'bound': term.evaluate_bound(T),
                      'source': term.source})

    divergent, log_coefficient = divergent_coefficients(coeffs)
    D = coeffs.dimension
    divergences = pd.DataFrame([{
      'lambda_power': k,
      'coefficient': v,
      'bound': math.gamma(-k) / math.gamma((-k - 1) / 2) * coeffs.error(k + D + 1),
    } for k, v in sorted(divergent.items())], columns=['lambda_power', 'coefficient', 'bound'])
    tables = {
      'residuals': pd.DataFrame(checks, columns=['T', 'exact', 'exact_bound', 'expansion', 'expansion_bound',
                                                'residual', 'relative_residual']),
      'terms': pd.DataFrame(terms, columns=['T', 'term', 'power', 'log_power', 'coefficient', 'value', 'bound',
                                            'source']),
      'divergences': divergences,
    }
    return Report('asymptotics', tables, {'log_coefficient': log_coefficient, 'zeta_data': zd.to_dict()})
