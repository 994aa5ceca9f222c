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

from dataclasses import dataclass
from typing import Callable
import logging
import math
import numpy as np

from .errors import InsufficientSpectrumError, UnsupportedGeometryError, WindowTooNarrowError
from .geometry import Box, GeometryDescriptor, Interval
from .hk_coeff import BoundaryCondition, CoefficientSet, FieldKind
from .parallel import ordered_map
from .spectrum import ModeList, box_pform_spectrum, heat_tail_bound

logger = logging.getLogger(__name__)

TRACE_RTOL = 1e-10
MAX_CONDITION = 1e12
JACKKNIFE_BLOCKS = 8


@dataclass(frozen=True, eq=False)
class HeatTraceCurve:
  t: np.ndarray
  K: np.ndarray
  bound: np.ndarray


@dataclass(frozen=True, eq=False)
class HeatKernelFit:
  coefficients: CoefficientSet
  window: tuple[float, float]
  residual: float
  condition: float
  curve: HeatTraceCurve


# ============================================================================
# TRACES
# ============================================================================
def trace_sum(m: ModeList, t: float) -> float:
  """Compensated sum of mult * exp(-t omega^2) without any truncation check."""
  return math.fsum(m.multiplicities * np.exp(-t * m.omegas**2))


def minimal_usable_t(m: ModeList, rtol: float = TRACE_RTOL) -> float:
  """Smallest t at which the truncation bound stays below rtol * K(t)."""
  if m.complete:
    return 0.0
  excess = lambda t: heat_tail_bound(m, t) - rtol * trace_sum(m, t)

  hi = 1.0
  while excess(hi) > 0:
    hi *= 2
    if hi > 1e8:
      raise InsufficientSpectrumError(f"spectrum of {len(m)} modes never reaches relative accuracy {rtol:g}")
  lo = hi
  while excess(lo) <= 0 and lo > 1e-300:
    lo /= 2
  # bisect in log t
  for _ in range(60):
    mid = math.sqrt(lo * hi)
    if excess(mid) > 0:
      lo = mid
    else:
      hi = mid
    if hi / lo < 1 + 1e-6:
      break
  return hi


def heat_trace(m: ModeList, t: float, rtol: float = TRACE_RTOL) -> float:
  if t <= 0:
    raise ValueError(f"heat trace needs t > 0, got {t}")
  K = trace_sum(m, t)
  bound = heat_tail_bound(m, t)
  if bound > rtol * K:
    t_min = minimal_usable_t(m, rtol)
    raise InsufficientSpectrumError(
      f"truncation bound {bound:.3g} exceeds {rtol:g} * K at t={t:g}; smallest usable t is {t_min:.6g}",
      minimal_t=t_min)
  return K


def heat_trace_curve(m: ModeList, ts, rtol: float = TRACE_RTOL) -> HeatTraceCurve:
  ts = np.asarray(ts, dtype=np.float64)
  K = np.array(ordered_map(lambda t: heat_trace(m, t, rtol), ts))
  bound = np.array([heat_tail_bound(m, t) for t in ts])
  return HeatTraceCurve(ts, K, bound)


def _em_lists(g: GeometryDescriptor, bc: BoundaryCondition, omega_max: float) -> tuple[ModeList, ModeList]:
  if isinstance(g, Interval):
    lengths = (g.length,)
  elif isinstance(g, Box):
    lengths = g.lengths
  else:
    raise UnsupportedGeometryError(f"electromagnetic traces need exact one-form spectra; {type(g).__name__} has none")
  return box_pform_spectrum(lengths, 1, bc, omega_max), box_pform_spectrum(lengths, 0, bc, omega_max)


def em_trace_function(g: GeometryDescriptor, bc: BoundaryCondition, t_min: float,
                      rtol: float = TRACE_RTOL) -> Callable[[float], float]:
  """K(one-forms) - K(zero-forms) usable for every t >= t_min."""
  omega_max = math.sqrt(40.0 / t_min)
  ones, zeros = _em_lists(g, bc, omega_max)
  return lambda t: heat_trace(ones, t, rtol) - heat_trace(zeros, t, rtol)


def em_heat_trace(g: GeometryDescriptor, bc: BoundaryCondition, t: float, rtol: float = TRACE_RTOL) -> float:
  return em_trace_function(g, bc, t, rtol)(t)


# ============================================================================
# COEFFICIENT EXTRACTION
# ============================================================================
def _design(t: np.ndarray, n_max: int) -> np.ndarray:
  return t[:, None]**(np.arange(n_max + 1) / 2)


def _weighted_fit(t: np.ndarray, y: np.ndarray, n_max: int) -> tuple[np.ndarray, float]:
  A = _design(t, n_max)
  w = 1.0 / np.abs(y)
  Aw = A * w[:, None]
  scales = np.linalg.norm(Aw, axis=0)
  As = Aw / scales
  condition = float(np.linalg.cond(As))
  if not np.isfinite(condition) or condition > MAX_CONDITION:
    raise WindowTooNarrowError(
      f"design matrix condition {condition:.3g} above {MAX_CONDITION:g} on [{t[0]:.4g}, {t[-1]:.4g}] with n_max={n_max}")
  sol, *_ = np.linalg.lstsq(As, y * w, rcond=None)
  return sol / scales, condition


def _sample(trace: Callable[[float], float], D: int, window: tuple[float, float], samples: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
  t = np.geomspace(window[0], window[1], samples)
  K = np.array(ordered_map(trace, t))
  return t, K, K * t**(D / 2)


def default_window(m: ModeList, n_max: int, samples: int = 64) -> tuple[float, float]:
  """[t_min, t_max]: truncation below 1e-10 K at t_min, first omitted term below 0.1% of c_0 at t_max."""
  t_min = minimal_usable_t(m, TRACE_RTOL) * (1 + 1e-9)
  t_broad = 0.25 / m.lowest**2
  if t_broad < 4 * t_min:
    raise WindowTooNarrowError(
      f"usable window [{t_min:.4g}, {t_broad:.4g}] too narrow, raise omega_max above {m.omega_max:g}")

  t, _, y = _sample(lambda tt: heat_trace(m, tt), m.dimension, (t_min, t_broad), samples)
  pilot, _ = _weighted_fit(t, y, n_max + 1)
  c0, omitted = abs(pilot[0]), abs(pilot[n_max + 1])
  t_max = t_broad if omitted == 0 else min(t_broad, (1e-3 * c0 / omitted)**(2 / (n_max + 1)))
  if t_max < 4 * t_min:
    logger.warning("Omitted-term criterion gives t_max=%.4g below 4 t_min, widening to %.4g", t_max, 4 * t_min)
    t_max = min(t_broad, 4 * t_min)
  logger.info("Heat-kernel fit window [%.4g, %.4g]", t_min, t_max)
  return t_min, t_max


def extract_coefficients(source: ModeList | Callable[[float], float], D: int, n_max: int,
                         window: tuple[float, float] | None = None, samples: int = 64,
                         field_kind: FieldKind = FieldKind.SCALAR,
                         bc: BoundaryCondition = BoundaryCondition.RELATIVE, p: int = 0) -> HeatKernelFit:
  """Fit K(t) t^(D/2) with powers t^(n/2), n = 0..n_max; half-integer powers are always included."""
  if isinstance(source, ModeList):
    m = source
    trace = lambda t: heat_trace(m, t)
    bound = lambda t: heat_tail_bound(m, t)
    if window is None:
      window = default_window(m, n_max, samples)
  else:
    if window is None:
      raise WindowTooNarrowError("a trace function needs an explicit window")
    trace = source
    bound = lambda t: 0.0
  if not 0 < window[0] < window[1]:
    raise WindowTooNarrowError(f"invalid window {window}")
  if samples < 2 * JACKKNIFE_BLOCKS or samples <= n_max + 2:
    raise WindowTooNarrowError(f"{samples} samples cannot support {n_max + 1} coefficients")

  t, K, y = _sample(trace, D, window, samples)
  coeffs, condition = _weighted_fit(t, y, n_max)
  residual = float(np.max(np.abs(_design(t, n_max) @ coeffs - y) / np.abs(y)))

  # jackknife over contiguous sub-windows
  blocks = np.array_split(np.arange(samples), JACKKNIFE_BLOCKS)
  estimates = []
  for block in blocks:
    keep = np.setdiff1d(np.arange(samples), block)
    estimates.append(_weighted_fit(t[keep], y[keep], n_max)[0])
  estimates = np.array(estimates)
  k = len(blocks)
  spread = np.sqrt((k - 1) / k * np.sum((estimates - estimates.mean(axis=0))**2, axis=0))

  values = {n: float(coeffs[n]) for n in range(n_max + 1)}
  result = CoefficientSet(D, values, field_kind, bc, p,
                          provenance={n: 'extracted' for n in values},
                          uncertainty={n: float(spread[n]) for n in values})
  curve = HeatTraceCurve(t, K, np.array([bound(tt) for tt in t]))
  logger.info("Extracted c_0..c_%d on [%.4g, %.4g], residual %.3g, condition %.3g",
              n_max, window[0], window[1], residual, condition)
  return HeatKernelFit(result, (float(window[0]), float(window[1])), residual, condition, curve)
