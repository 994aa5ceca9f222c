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


from abc import ABC, abstractmethod
from pathlib import Path
import logging

from casimir.errors import CornerContributionError, CoverageError
from casimir.heatkernel import extract_coefficients
from casimir.hk_coeff import CoefficientSet, trace_coefficients
from casimir.spectrum import ModeList, generate_spectrum
from casimir.zeta import ZetaData, zeta_zero_data
from utils.config_utils import RunConfig
from utils.report_utils import Report, load_mode_list, save_mode_list

logger = logging.getLogger(__name__)


#############################################
#############################################
# Interface class for one CLI subcommand.
#############################################
#############################################
class BaseComponent(ABC):
  def __init__(self,
               unique_id: str,
               config: RunConfig):
    self._unique_id = unique_id
    self._config = config
    self._report = None


  @property
  def unique_id(self) -> str:
    return self._unique_id


  @property
  def report(self) -> Report:
    if self._report is None:
      self.run()
    return self._report


  @abstractmethod
  def _compute(self) -> Report:
    pass


  def run(self) -> Report:
    logger.info("Running %s", self._unique_id)
    self._report = self._compute()
    return self._report


  def check(self) -> None:
    """Raise once the report is written if the run failed its own invariants."""
    pass


  def _mode_list(self) -> ModeList:
    """Spectrum of the configured geometry and field up to omega_max, through output.modes when set."""
    cfg = self._config
    cfg.require('geometry', 'bc', 'omega_max')
    if cfg.mode_cache is not None and Path(cfg.mode_cache).exists():
      try:
        m = load_mode_list(cfg.mode_cache, key=cfg.spectrum_key)
        logger.info("Loaded %d modes <- %s", m.mode_count, cfg.mode_cache)
        return m
      except ValueError as e:
        logger.warning("Regenerating spectrum: %s", e)
    m = generate_spectrum(cfg.geometry, cfg.field_kind, cfg.bc, cfg.omega_max, cfg.p)
    if cfg.mode_cache is not None:
      save_mode_list(m, cfg.mode_cache, key=cfg.spectrum_key)
      logger.info("Saved %d modes -> %s", m.mode_count, cfg.mode_cache)
    return m


  def _n_max(self) -> int:
    # continuation to s = -1/2 needs c_0..c_(D+2)
    cfg = self._config
    return cfg.n_max if cfg.n_max is not None else cfg.geometry.dimension + 2


  def _coefficients(self, m: ModeList) -> CoefficientSet:
    """Closed forms where available, the rest fitted from the spectrum."""
    cfg = self._config
    g, n_max = cfg.geometry, self._n_max()
    try:
      return trace_coefficients(g, cfg.field_kind, cfg.bc, n_max, cfg.p, cfg.allow_corners)
    except (CoverageError, CornerContributionError) as e:
      logger.info("Fitting coefficients from %d modes: %s", m.mode_count, e)
    fit = extract_coefficients(m, g.dimension, n_max, cfg.window, field_kind=cfg.field_kind, bc=cfg.bc, p=cfg.p)
    return trace_coefficients(g, cfg.field_kind, cfg.bc, n_max, cfg.p, cfg.allow_corners, extracted=fit.coefficients)


  def _zeta_data(self) -> tuple[ModeList, CoefficientSet, ZetaData]:
    m = self._mode_list()
    coeffs = self._coefficients(m)
    return m, coeffs, zeta_zero_data(m, coeffs)
