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

"""Riemann zeta and Gamma kernels, and the spectral zeta function of a mode list.

The continuation splits Gamma(s) zeta(s) at t = 1: below the split the heat trace minus
its small-t expansion is integrated, the subtracted terms give simple poles, and above
the split the trace decays like exp(-t omega_1^2).
"""
from dataclasses import dataclass
import logging
import math
import warnings
import numpy as np
from scipy import special
from scipy.integrate import IntegrationWarning, quad

from .errors import ContinuationOrderError, DivergenceMarginError, InsufficientSpectrumError, PoleError
from .estimate import Estimate
from .heatkernel import minimal_usable_t, trace_sum
from .hk_coeff import CoefficientSet
from .spectrum import ModeList

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.5772156649015329
PSI_ONE = -EULER_GAMMA
CUT_RTOL = 1e-14
POLE_TOL = 1e-12


# ============================================================================
# SPECIAL FUNCTIONS
# ============================================================================
def _is_nonpositive_integer(s: float) -> bool:
  return s <= 0 and float(s).is_integer()


def gamma(s: float) -> float:
  if _is_nonpositive_integer(s):
    raise PoleError(f"Gamma has a pole at s={s:g}")
  return float(special.gamma(s))


def riemann_zeta(s: float) -> float:
  """Riemann zeta on the real line; negative arguments go through the functional equation."""
  if s == 1:
    raise PoleError("Riemann zeta has a pole at s=1")
  if s > 1:
    return float(special.zeta(s, 1))
  if s >= 0:
    return float(special.zetac(s)) + 1.0
  # Gamma(s/2) zeta(s) = pi^(s - 1/2) Gamma((1 - s)/2) zeta(1 - s)
  return float(math.pi**(s - 0.5) * special.gamma((1 - s) / 2) * special.zeta(1 - s, 1) * special.rgamma(s / 2))


# ============================================================================
# TYPES
# ============================================================================
@dataclass(frozen=True)
class MeromorphicValue:
  """Finite part and residue of a function at a point; res = 0 where it is regular."""
  location: float
  fp: float
  res: float = 0.0
  fp_bound: float = 0.0
  res_bound: float = 0.0

  def to_dict(self) -> dict:
    return {'location': self.location,
            'fp': {'value': self.fp, 'bound': self.fp_bound},
            'res': {'value': self.res, 'bound': self.res_bound}}


@dataclass(frozen=True)
class ZetaData:
  zeta_zero: Estimate
  zeta_prime_zero: Estimate
  at_minus_half: MeromorphicValue
  coefficients: CoefficientSet | None = None

  def to_dict(self) -> dict:
    return {'zeta_zero': self.zeta_zero.to_dict(),
            'zeta_prime_zero': self.zeta_prime_zero.to_dict(),
            'at_minus_half': self.at_minus_half.to_dict()}


# ============================================================================
# DIRECT SUM
# ============================================================================
def spectral_zeta_direct(m: ModeList, s: float, margin: float = 0.1, tail_rtol: float = 0.1) -> Estimate:
  """Sum of omega^(-2s) plus a Weyl tail correction, whose size is the reported bound."""
  D = m.dimension
  if s - D / 2 < margin:
    raise DivergenceMarginError(f"s={s:g} within {margin:g} of the abscissa of convergence D/2={D / 2:g}")
  value = math.fsum(m.multiplicities * m.omegas**(-2 * s))
  if m.complete:
    return Estimate(value, 0.0)
  if m.tail_model is None:
    raise DivergenceMarginError("cannot estimate the omitted tail without a tail model")
  correction = m.tail_model.power_sum(s, m.omega_max)
  if abs(correction) > tail_rtol * abs(value):
    raise DivergenceMarginError(
      f"tail {correction:.3g} exceeds {tail_rtol:g} of the partial sum at s={s:g}; raise omega_max above {m.omega_max:g}")
  return Estimate(value + correction, abs(correction))


# ============================================================================
# CONTINUATION
# ============================================================================
@dataclass(frozen=True)
class _SplitParts:
  """Gamma(s) zeta(s) near s0 = A / (s - s0) + B, with error bar on B."""
  pole: float
  regular: float
  regular_bound: float
  pole_bound: float


def _quad(fn, a: float, b: float) -> tuple[float, float]:
  with warnings.catch_warnings():
    warnings.simplefilter('ignore', IntegrationWarning)
    value, err = quad(fn, a, b, epsrel=1e-10, epsabs=1e-14, limit=200)
  return value, err


def _poles(coeffs: CoefficientSet, order: int) -> dict[int, float]:
  D = coeffs.dimension
  return {n: (D - n) / 2 for n in range(order + 1)}


def _split_parts(m: ModeList, coeffs: CoefficientSet, s: float) -> _SplitParts:
  D = coeffs.dimension
  order = coeffs.order
  if not (order - D) / 2 > -s:
    raise ContinuationOrderError(
      f"coefficients up to c_{order} cannot continue to s={s:g}; need (N - D)/2 > -s")

  c = {n: coeffs.value(n) for n in range(order + 1)}
  s_n = _poles(coeffs, order)

  t_cut = max(minimal_usable_t(m, CUT_RTOL), 1e-8) if not m.complete else 1e-6
  if t_cut >= 1:
    raise InsufficientSpectrumError(f"spectrum only usable above t={t_cut:.4g}, the split at t=1 needs more modes",
                                    minimal_t=t_cut)
  t_end = 1.0 + 50.0 / m.lowest**2

  def remainder(t: float) -> float:
    return trace_sum(m, t) - math.fsum(c[n] * t**(-s_n[n]) for n in c)

  # integrate in u = ln t
  small, small_err = _quad(lambda u: math.exp(s * u) * remainder(math.exp(u)), math.log(t_cut), 0.0)
  large, large_err = _quad(lambda u: math.exp(s * u) * trace_sum(m, math.exp(u)), 0.0, math.log(t_end))
  # below t_cut the remainder behaves like its leading omitted power
  below = remainder(t_cut) * t_cut**s / (s + (order + 1 - D) / 2)

  pole, regular = 0.0, small + large + below
  regular_bound = small_err + large_err + abs(below)
  pole_bound = 0.0
  for n in c:
    if abs(s - s_n[n]) < POLE_TOL:
      pole += c[n]
      pole_bound += coeffs.error(n)
      # the subtraction integral of a pole term contributes c_n ln(t_cut) to the regular part
      regular_bound += coeffs.error(n) * abs(math.log(t_cut))
    else:
      regular += c[n] / (s - s_n[n])
      regular_bound += coeffs.error(n) * abs(t_cut**(s - s_n[n]) / (s - s_n[n]))
  logger.debug("Split at s=%g: t_cut=%.3g t_end=%.3g small=%.12g large=%.12g below=%.3g",
               s, t_cut, t_end, small, large, below)
  return _SplitParts(pole, regular, regular_bound, pole_bound)


def spectral_zeta_continued(m: ModeList, coeffs: CoefficientSet, s: float) -> MeromorphicValue:
  parts = _split_parts(m, coeffs, s)
  A, B = parts.pole, parts.regular
  if A == 0 and parts.pole_bound == 0:
    if _is_nonpositive_integer(s):
      # 1/Gamma vanishes there; zeta is finite and equals zero
      return MeromorphicValue(s, 0.0, 0.0)
    rg = float(special.rgamma(s))
    return MeromorphicValue(s, B * rg, 0.0, parts.regular_bound * abs(rg))

  if _is_nonpositive_integer(s):
    k = int(-s)
    factor = (-1)**k * math.factorial(k)
    return MeromorphicValue(s, factor * A, 0.0, abs(factor) * parts.pole_bound)

  g = float(special.gamma(s))
  psi = float(special.digamma(s))
  fp = (B - A * psi) / g
  fp_bound = (parts.regular_bound + abs(psi) * parts.pole_bound) / abs(g)
  return MeromorphicValue(s, fp, A / g, fp_bound, parts.pole_bound / abs(g))


def zeta_zero_data(m: ModeList, coeffs: CoefficientSet) -> ZetaData:
  """zeta(0), zeta'(0) and the finite part and residue at s = -1/2.

  Near s = 0, Gamma(s) zeta(s) = A/s + B and 1/Gamma(s) = s + gamma s^2, so zeta(0) = A and
  zeta'(0) = B + gamma A.
  """
  zero = _split_parts(m, coeffs, 0.0)
  zeta_zero = Estimate(zero.pole, zero.pole_bound)
  zeta_prime = Estimate(zero.regular + EULER_GAMMA * zero.pole, zero.regular_bound + EULER_GAMMA * zero.pole_bound)
  return ZetaData(zeta_zero, zeta_prime, spectral_zeta_continued(m, coeffs, -0.5), coeffs)


def pole_residues(coeffs: CoefficientSet) -> dict[float, float]:
  """Residue of zeta at each pole (D - n)/2 the coefficients produce."""
  residues = {}
  for n, s0 in _poles(coeffs, coeffs.order).items():
    value = coeffs.value(n)
    if value == 0 or _is_nonpositive_integer(s0):
      continue
    residues[s0] = residues.get(s0, 0.0) + value / float(special.gamma(s0))
  return residues
