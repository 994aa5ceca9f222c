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
from casimir.errors import CornerContributionError
from casimir.hk_coeff import coefficient, zero_mode_count
from utils.config_utils import RunConfig
from utils.report_utils import Report
import logging
import pandas as pd
import sympy as sp

logger = logging.getLogger(__name__)


class CoefficientsComponent(BaseComponent):
  """
  CoefficientsComponent: heat coefficients in exact arithmetic
  - Closed forms for c_0..c_2, terminating traces on a line
  - With omega_max set, higher orders fitted from the spectrum next to their jackknife bound
  """
  def __init__(self, config: RunConfig):
    super().__init__(unique_id="coefficients", config=config)


  def _closed_rows(self) -> list[dict]:
    cfg = self._config
    g = cfg.geometry
    rows = []
    for n in (0, 1, 2):
      try:
        value = coefficient(g, cfg.field_kind, cfg.bc, n, cfg.p, cfg.allow_corners)
      except CornerContributionError as e:
        logger.warning("Skipping c_%d: %s", n, e)
        continue
      rows.append({'n': n, 'exact': str(value), 'value': float(value), 'bound': 0.0, 'provenance': 'closed-form'})
    if g.dimension == 1:
      # flat one-dimensional traces terminate
      rows.extend({'n': n, 'exact': '0', 'value': 0.0, 'bound': 0.0, 'provenance': 'closed-form'} for n in (3, 4))
    return rows


  def _fitted_rows(self) -> list[dict]:
    # trace over non-zero modes, so c_D is shifted by the zero-mode count
    coeffs = self._coefficients(self._mode_list())
    return [{
      'n': n,
      'exact': str(v) if isinstance(v, sp.Basic) else '',
      'value': coeffs.value(n),
      'bound': coeffs.error(n),
      'provenance': coeffs.provenance.get(n, 'extracted'),
    } for n, v in sorted(coeffs.values.items())]


  def _compute(self) -> Report:
    cfg = self._config
    cfg.require('geometry', 'bc')
    g = cfg.geometry
    rows = self._fitted_rows() if cfg.omega_max is not None else self._closed_rows()
    table = pd.DataFrame(rows, columns=['n', 'exact', 'value', 'bound', 'provenance'])
    summary = {
      'field': cfg.field_kind.value,
      'p': cfg.p,
      'bc': cfg.bc.value,
      'dimension': g.dimension,
      'zero_modes': zero_mode_count(g, cfg.field_kind, cfg.bc, cfg.p),
    }
    return Report('coefficients', {'coefficients': table}, summary)
