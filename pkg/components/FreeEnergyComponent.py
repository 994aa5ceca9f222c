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
from casimir.errors import ConfigValidationError
from casimir.thermo import (cutoff_energy, cutoff_expansion, cutoff_free_energy_expansion, free_energy_sweep,
                            regularized_zero_t)
from utils.config_utils import RunConfig
from utils.report_utils import Report
import pandas as pd


class FreeEnergyComponent(BaseComponent):
  """
  FreeEnergyComponent: regularized free energy over the temperature grid
  - Zero-temperature part, thermal correction and their zeta-function total
  - Optional cut-off sums against their divergent expansion
  """
  def __init__(self, config: RunConfig):
    super().__init__(unique_id="free_energy", config=config)


  def _compute(self) -> Report:
    cfg = self._config
    if not cfg.temperatures:
      raise ConfigValidationError("free-energy needs at least one temperature")
    m, coeffs, zd = self._zeta_data()
    reports = free_energy_sweep(m, coeffs, zd, cfg.temperatures, cfg.mu)
    energies = pd.DataFrame([{
      'T': r.T,
      'mu': r.mu,
      'zero_t': r.zero_t_regularized.value,
      'zero_t_bound': r.zero_t_regularized.bound,
      'thermal': r.thermal_correction.value,
      'thermal_bound': r.thermal_correction.bound,
      'free_energy': r.regularized_total.value,
      'free_energy_bound': r.regularized_total.bound,
    } for r in reports])
    tables = {'free_energy': energies}

    if cfg.lambdas:
      e_reg = regularized_zero_t(zd, cfg.mu)
      rows = []
      for lam in cfg.lambdas:
        summed = cutoff_energy(m, lam)
        expansion = cutoff_expansion(coeffs, e_reg.value, lam, cfg.mu, e_reg.bound)
        rows.append({'lambda': lam, 'cutoff_energy': summed.value, 'cutoff_bound': summed.bound,
                     'expansion': expansion.value, 'expansion_bound': expansion.bound,
                     'difference': summed.value - expansion.value})
      tables['cutoff'] = pd.DataFrame(rows)
      free = [(lam, T, cutoff_free_energy_expansion(coeffs, zd, m, lam, T))
              for lam in cfg.lambdas for T in cfg.temperatures]
      tables['cutoff_free_energy'] = pd.DataFrame([{'lambda': lam, 'T': T, 'value': e.value, 'bound': e.bound}
                                                   for lam, T, e in free], columns=['lambda', 'T', 'value', 'bound'])

    summary = {
      'zeta_data': zd.to_dict(),
      'divergent_coefficients': {f'lambda^{k}': v for k, v in reports[0].divergent_coefficients.items()},
      'log_coefficient': reports[0].log_coefficient,
      'mode_count': m.mode_count,
    }
    return Report('free-energy', tables, summary)
