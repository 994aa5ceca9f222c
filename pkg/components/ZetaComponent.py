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
from casimir.zeta import pole_residues, spectral_zeta_continued, spectral_zeta_direct
from utils.config_utils import RunConfig
from utils.report_utils import Report
import pandas as pd

DIRECT_MARGIN = 0.1
COLUMNS = ['quantity', 's', 'value', 'bound', 'residue', 'residue_bound', 'method']


class ZetaComponent(BaseComponent):
  """
  ZetaComponent: spectral zeta function of the configured spectrum
  - zeta(0), zeta'(0) and the finite part and residue at s = -1/2
  - Values at the configured s, by direct sum where it converges
  """
  def __init__(self, config: RunConfig):
    super().__init__(unique_id="zeta", config=config)


  def _compute(self) -> Report:
    m, coeffs, zd = self._zeta_data()
    D = m.dimension
    half = zd.at_minus_half
    rows = [
      {'quantity': 'zeta(0)', 's': 0.0, 'value': zd.zeta_zero.value, 'bound': zd.zeta_zero.bound,
       'residue': 0.0, 'residue_bound': 0.0, 'method': 'continued'},
      {'quantity': "zeta'(0)", 's': 0.0, 'value': zd.zeta_prime_zero.value, 'bound': zd.zeta_prime_zero.bound,
       'residue': 0.0, 'residue_bound': 0.0, 'method': 'continued'},
      {'quantity': 'zeta', 's': -0.5, 'value': half.fp, 'bound': half.fp_bound,
       'residue': half.res, 'residue_bound': half.res_bound, 'method': 'continued'},
    ]
    for s in self._config.s_values:
      if s - D / 2 >= DIRECT_MARGIN:
        estimate = spectral_zeta_direct(m, s, DIRECT_MARGIN)
        rows.append({'quantity': 'zeta', 's': s, 'value': estimate.value, 'bound': estimate.bound,
                     'residue': 0.0, 'residue_bound': 0.0, 'method': 'direct'})
      else:
        value = spectral_zeta_continued(m, coeffs, s)
        rows.append({'quantity': 'zeta', 's': s, 'value': value.fp, 'bound': value.fp_bound,
                     'residue': value.res, 'residue_bound': value.res_bound, 'method': 'continued'})
    values = pd.DataFrame(rows, columns=COLUMNS)
    residues = pole_residues(coeffs)
    poles = pd.DataFrame({'s': list(residues), 'residue': list(residues.values())}, columns=['s', 'residue'])
    summary = {
      'zeta_data': zd.to_dict(),
      'coefficients': {n: {'value': coeffs.value(n), 'bound': coeffs.error(n), 'provenance': coeffs.provenance.get(n)}
                       for n in sorted(coeffs.values)},
      'mode_count': m.mode_count,
    }
    return Report('zeta', {'values': values, 'poles': poles}, summary)
