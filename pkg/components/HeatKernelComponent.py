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
from casimir.errors import CornerContributionError, CoverageError, WindowTooNarrowError
from casimir.heatkernel import em_trace_function, extract_coefficients
from casimir.hk_coeff import FieldKind, trace_coefficients
from utils.config_utils import RunConfig
from utils.report_utils import Report
import logging
import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


class HeatKernelComponent(BaseComponent):
  """
  HeatKernelComponent: heat-trace coefficients fitted from a spectrum
  - Electromagnetic traces are one-form minus zero-form sums on boxes
  - Closed forms, where they exist, are listed beside the fit
  """
  def __init__(self, config: RunConfig):
    super().__init__(unique_id="heat_kernel", config=config)


  def _fit(self):
    cfg = self._config
    D = cfg.geometry.dimension
    n_max = self._n_max()
    if cfg.field_kind is FieldKind.ELECTROMAGNETIC:
      if cfg.window is None:
        raise WindowTooNarrowError("electromagnetic extraction needs an explicit window [t_min, t_max]")
      trace = em_trace_function(cfg.geometry, cfg.bc, cfg.window[0], cfg.rtol)
      return extract_coefficients(trace, D, n_max, cfg.window, field_kind=cfg.field_kind, bc=cfg.bc, p=1)
    m = self._mode_list()
    return extract_coefficients(m, D, n_max, cfg.window, field_kind=cfg.field_kind, bc=cfg.bc, p=cfg.p)


  def _closed_forms(self, n_max: int) -> dict:
    cfg = self._config
    closed = {}
    for n in range(min(n_max, 2) + 1):
      try:
        closed[n] = trace_coefficients(cfg.geometry, cfg.field_kind, cfg.bc, n, cfg.p, cfg.allow_corners).value(n)
      except (CoverageError, CornerContributionError):
        break
    return closed


  def _compute(self) -> Report:
    self._config.require('geometry', 'bc')
    fit = self._fit()
    coeffs = fit.coefficients
    closed = self._closed_forms(coeffs.order)
    rows = []
    for n in sorted(coeffs.values):
      rows.append({
        'n': n,
        'value': coeffs.value(n),
        'uncertainty': coeffs.error(n),
        'closed_form': closed.get(n, np.nan),
        'relative_deviation': abs(coeffs.value(n) / closed[n] - 1) if closed.get(n) else np.nan,
      })
    coefficients = pd.DataFrame(rows, columns=['n', 'value', 'uncertainty', 'closed_form', 'relative_deviation'])
    trace = pd.DataFrame({'t': fit.curve.t, 'K': fit.curve.K, 'bound': fit.curve.bound})
    summary = {
      'window': list(fit.window),
      'residual': fit.residual,
      'condition': fit.condition,
      'field': self._config.field_kind.value,
      'bc': self._config.bc.value,
    }
    return Report('heat-kernel', {'coefficients': coefficients, 'trace': trace}, summary)
