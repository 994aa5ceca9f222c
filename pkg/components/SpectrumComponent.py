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
from casimir.errors import UnavailableBoundError
from casimir.spectrum import MERGE_RTOL
from utils.config_utils import RunConfig
from utils.report_utils import Report
import numpy as np
import pandas as pd


class SpectrumComponent(BaseComponent):
  """
  SpectrumComponent: eigenfrequencies of the configured geometry
  - One row per distinct frequency with its multiplicity
  - Counting function next to the Weyl-law estimate
  - Spectra are cached to output.modes when set
  """
  def __init__(self, config: RunConfig):
    super().__init__(unique_id="spectrum", config=config)


  def _compute(self) -> Report:
    m = self._mode_list()
    counts = np.cumsum(m.multiplicities)
    try:
      weyl = np.array([m.weyl_count(omega) for omega in m.omegas])
    except UnavailableBoundError:
      weyl = np.full(len(m), np.nan)
    table = pd.DataFrame({
      'omega': m.omegas,
      # frequencies closer than this were merged into one row
      'omega_bound': MERGE_RTOL * m.omegas,
      'multiplicity': m.multiplicities,
      'count': counts,
      'weyl_count': weyl,
    })
    summary = {
      'source': m.source,
      'dimension': m.dimension,
      'omega_max': m.omega_max,
      'distinct': len(m),
      'mode_count': m.mode_count,
      'complete': m.complete,
    }
    return Report('spectrum', {'modes': table}, summary)
