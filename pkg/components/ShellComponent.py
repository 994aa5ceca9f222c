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
from casimir.shell import OMEGA_R, shell_report
from casimir.thermo import evaluate_terms
from utils.config_utils import RunConfig, build_shell
from utils.report_utils import Report
import math
import pandas as pd


class ShellComponent(BaseComponent):
  """
  ShellComponent: cavity inside a large scaled copy of itself
  - Hatted coefficients and divergence class for any field
  - Extrapolated Q and free energies for scalar pistons and concentric balls
  """
  def __init__(self, config: RunConfig):
    super().__init__(unique_id="shell", config=config)


  def _compute(self) -> Report:
    cfg = self._config
    cfg.require('geometry', 'bc')
    config = build_shell(cfg)
    report = shell_report(config, cfg.field_kind, cfg.bc, cfg.temperatures, cfg.mu,
                          r_list=cfg.shell.get('r_list'), q=cfg.shell.get('q'), p=cfg.p,
                          modes_per_region=int(cfg.shell.get('modes_per_region', 2000)),
                          omega_r=float(cfg.shell.get('omega_r', OMEGA_R)))

    c_hat = pd.DataFrame([{'n': n, 'exact': str(v), 'value': float(v), 'bound': 0.0}
                          for n, v in sorted(report.c_hat.items())], columns=['n', 'exact', 'value', 'bound'])
    nan = math.nan
    energies = pd.DataFrame([{
      'T': e.T,
      'e_reg': e.e_reg.value if e.e_reg is not None else nan,
      'e_reg_uncertainty': e.e_reg.bound if e.e_reg is not None else nan,
      'e_ren': e.e_ren if e.e_ren is not None else nan,
      'high_t': evaluate_terms(e.high_t_terms, e.T) if e.high_t_terms else nan,
    } for e in report.energies], columns=['T', 'e_reg', 'e_reg_uncertainty', 'e_ren', 'high_t'])
    per_r = pd.DataFrame([
      {'quantity': 'Q' if key == 'Q' else f'E(T={key:g})', 'r': r, 'value': v}
      for key, limit in report.per_r.items() for r, v in zip(limit.r_values, limit.per_r)
    ], columns=['quantity', 'r', 'value'])

    summary = {
      'divergence': report.divergence.to_dict(),
      'Q': report.Q.to_dict() if report.Q is not None else None,
      'configuration': type(config).__name__,
      'high_t_terms': {f'{e.T:g}': [t.to_dict() for t in e.high_t_terms] for e in report.energies},
    }
    return Report('shell', {'c_hat': c_hat, 'energies': energies, 'per_r': per_r}, summary)
