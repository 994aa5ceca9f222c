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

from dataclasses import dataclass, field
import logging
import math
import numpy as np
from scipy import special

from .errors import CoverageError, DivergenceMarginError, InsufficientSpectrumError, PoleError
from .estimate import Estimate
from .hk_coeff import CoefficientSet
from .parallel import ordered_map
from .spectrum import ModeList
from .zeta import PSI_ONE, MeromorphicValue, ZetaData, riemann_zeta

logger = logging.getLogger(__name__)

THERMAL_CUT = 20.0
CUTOFF_CUT = 30.0
BESSEL_CUT = 40.0
MODE_CHUNK = 256


def mu_tilde(mu: float) -> float:
  return 2 * mu / math.e


@dataclass(frozen=True)
class AsymptoticTerm:
  """coefficient * T^power * (ln T)^log_power."""
  power: float
  log_power: int
  coefficient: float
  source: str = ''
  bound: float = 0.0

  @property
  def label(self) -> str:
    if self.power == 0 and self.log_power == 0:
      return '1'
    base = '' if self.power == 0 else ('T' if self.power == 1 else f'T^{self.power:g}')
    if self.log_power:
      return f'{base} ln T'.strip()
    return base


  def evaluate(self, T: float) -> float:
    return self.coefficient * T**self.power * math.log(T)**self.log_power


  def evaluate_bound(self, T: float) -> float:
    return self.bound * abs(T**self.power * math.log(T)**self.log_power)


  def to_dict(self) -> dict:
    return {'term': self.label, 'power': self.power, 'log_power': self.log_power,
            'coefficient': self.coefficient, 'bound': self.bound, 'source': self.source}


def evaluate_terms(terms: list[AsymptoticTerm], T: float) -> float:
  return math.fsum(term.evaluate(T) for term in terms)


@dataclass(frozen=True)
class FreeEnergyReport:
  T: float
  mu: float
  zero_t_regularized: Estimate
  thermal_correction: Estimate
  regularized_total: Estimate
  divergent_coefficients: dict = field(default_factory=dict)
  log_coefficient: float = 0.0
  asymptotic_terms: list = field(default_factory=list)
  residual_bound: float = 0.0


# ============================================================================
# MODE SUMS
# ============================================================================
def _require_cut(m: ModeList, ratio: float, need: float, what: str):
  if not m.complete and m.omega_max < need * ratio:
    raise InsufficientSpectrumError(f"{what} needs omega_max >= {need * ratio:g}, have {m.omega_max:g}",
                                    required_omega=need * ratio)


def thermal_correction(m: ModeList, T: float) -> Estimate:
  """T sum ln(1 - exp(-omega/T)), always negative."""
  if T < 0:
    raise ValueError(f"temperature must be non-negative, got {T}")
  if T == 0:
    return Estimate(0.0, 0.0)
  _require_cut(m, T, THERMAL_CUT, "thermal correction")
  value = T * math.fsum(m.multiplicities * np.log1p(-np.exp(-m.omegas / T)))
  bound = 0.0
  if not m.complete and m.tail_model is not None:
    D, x = m.dimension, m.omega_max / T
    tail = m.tail_model
    # Weyl density against exp(-omega/T), |ln(1 - q)| <= q / (1 - q)
    bound = (tail.safety * tail.c0 * T**(D + 1) * special.gammaincc(D + 1, x) * special.gamma(D + 1)
             / special.gamma(D / 2 + 1) / -math.expm1(-x))
  return Estimate(value, float(bound))


def cutoff_energy(m: ModeList, lam: float) -> Estimate:
  """1/2 sum omega exp(-lambda omega)."""
  if lam <= 0:
    raise ValueError(f"cut-off must be positive, got {lam}")
  _require_cut(m, 1 / lam, CUTOFF_CUT, "cut-off sum")
  value = 0.5 * math.fsum(m.multiplicities * m.omegas * np.exp(-lam * m.omegas))
  bound = 0.0
  if not m.complete and m.tail_model is not None:
    D, x = m.dimension, lam * m.omega_max
    tail = m.tail_model
    bound = (0.5 * tail.safety * tail.c0 * D / special.gamma(D / 2 + 1)
             * special.gammaincc(D + 1, x) * special.gamma(D + 1) / lam**(D + 1))
  return Estimate(value, float(bound))


# ============================================================================
# CUT-OFF EXPANSION
# ============================================================================
@dataclass(frozen=True)
class CutoffExpansion:
  value: float
  divergent: dict
  log_coefficient: float
  constant: float
  bound: float = 0.0


def divergent_coefficients(coeffs: CoefficientSet) -> tuple[dict[int, float], float]:
  """Coefficients of lambda^(n - D - 1), n < D, and of ln(lambda)."""
  D = coeffs.dimension
  coeffs.require(range(D + 2))
  divergent = {n - D - 1: math.gamma(D + 1 - n) / math.gamma((D - n) / 2) * coeffs.value(n) for n in range(D)}
  return divergent, coeffs.value(D + 1) / (2 * math.sqrt(math.pi))


def _divergent_bound(coeffs: CoefficientSet, lam: float, log_factor: float) -> float:
  D = coeffs.dimension
  bound = math.fsum(math.gamma(D + 1 - n) / math.gamma((D - n) / 2) * coeffs.error(n) * lam**(n - D - 1)
                    for n in range(D))
  return bound + abs(log_factor) * coeffs.error(D + 1)


def cutoff_expansion(coeffs: CoefficientSet, e_reg: float, lam: float, mu: float = 1.0,
                     e_reg_bound: float = 0.0) -> CutoffExpansion:
  D = coeffs.dimension
  try:
    divergent, log_coefficient = divergent_coefficients(coeffs)
  except CoverageError as e:
    raise CoverageError(f"cut-off expansion needs c_0..c_{D + 1}: {e}") from e
  powers = math.fsum(c * lam**power for power, c in divergent.items())
  log_factor = (PSI_ONE - math.log(lam * mu)) / (2 * math.sqrt(math.pi))
  bound = _divergent_bound(coeffs, lam, log_factor) + e_reg_bound
  return CutoffExpansion(powers - log_factor * coeffs.value(D + 1) + e_reg, divergent, log_coefficient, e_reg, bound)


def cutoff_free_energy_expansion(coeffs: CoefficientSet, zd: ZetaData, m: ModeList, lam: float, T: float) -> Estimate:
  """Cut-off free energy with the thermal part expressed through zeta_T'(0)."""
  D = coeffs.dimension
  divergent, _ = divergent_coefficients(coeffs)
  powers = math.fsum(c * lam**power for power, c in divergent.items())
  log_factor = (PSI_ONE - 1 + math.log(2) - math.log(lam)) / (2 * math.sqrt(math.pi))
  log_term = -log_factor * coeffs.value(D + 1)
  bound = _divergent_bound(coeffs, lam, log_factor)
  half = zd.at_minus_half
  if T == 0:
    value = powers + log_term + 0.5 * half.fp + (1 - math.log(2)) * half.res
    return Estimate(value, bound + 0.5 * half.fp_bound + (1 - math.log(2)) * half.res_bound)
  tz = thermal_zeta_at_zero(m, zd, T)
  return Estimate(powers + log_term - T / 2 * tz.deriv0, bound + T / 2 * tz.deriv0_bound)


# ============================================================================
# THERMAL ZETA FUNCTION
# ============================================================================
def _matsubara_tail(omega: np.ndarray, Y: float, s: float) -> np.ndarray:
  """Integral over u > Y of (omega^2 + u^2)^(-s)."""
  return Y**(1 - 2 * s) / (2 * s - 1) * special.hyp2f1(s, s - 0.5, s + 0.5, -(omega / Y)**2)


def thermal_zeta_direct(m: ModeList, T: float, s: float, margin: float = 0.1) -> Estimate:
  """Double sum over modes and Matsubara frequencies 2 pi l T."""
  D = m.dimension
  if T <= 0:
    raise ValueError(f"thermal zeta function needs T > 0, got {T}")
  if s - (D + 1) / 2 < margin:
    raise DivergenceMarginError(f"s={s:g} within {margin:g} of the abscissa (D+1)/2={(D + 1) / 2:g}")
  two_pi_t = 2 * math.pi * T
  L = max(int(math.ceil(2 * m.omega_max / two_pi_t)), 64)
  Y = two_pi_t * (L + 0.5)
  l = np.arange(1, L + 1, dtype=np.float64)

  per_mode = []
  for start in range(0, len(m), MODE_CHUNK):
    omega = m.omegas[start:start + MODE_CHUNK]
    terms = (omega[:, None]**2 + (two_pi_t * l[None, :])**2)**(-s)
    # midpoint rule continues the l-sum beyond L
    tail = _matsubara_tail(omega, Y, s) / two_pi_t
    per_mode.append(omega**(-2 * s) + 2 * (np.sum(terms[:, ::-1], axis=1) + tail))
  per_mode = np.concatenate(per_mode) if per_mode else np.zeros(0)
  value = math.fsum(m.multiplicities * per_mode)
  bound = 0.0
  if not m.complete:
    if m.tail_model is None:
      raise DivergenceMarginError("cannot estimate the omitted modes without a tail model")
    # each omitted mode contributes about Gamma(s - 1/2) / (2 sqrt(pi) T Gamma(s)) omega^(1 - 2s)
    correction = (special.gamma(s - 0.5) / (2 * math.sqrt(math.pi) * T * special.gamma(s))
                  * m.tail_model.power_sum(s - 0.5, m.omega_max))
    value += correction
    bound = abs(correction)
    if bound > 0.1 * abs(value):
      raise DivergenceMarginError(f"omitted modes contribute {bound:.3g}, raise omega_max above {m.omega_max:g}")
  return Estimate(value, float(bound))


def thermal_zeta_bessel(m: ModeList, T: float, s: float, zeta_at_shift: MeromorphicValue) -> float:
  """Representation through zeta(s - 1/2) and modified Bessel functions K_(s - 1/2)."""
  if T <= 0:
    raise ValueError(f"thermal zeta function needs T > 0, got {T}")
  if zeta_at_shift.res != 0:
    raise PoleError(f"zeta has a pole at s - 1/2 = {zeta_at_shift.location:g}; use the finite part and residue")
  if abs(zeta_at_shift.location - (s - 0.5)) > 1e-12:
    raise ValueError(f"zeta value given at {zeta_at_shift.location:g}, expected {s - 0.5:g}")
  _require_cut(m, T, BESSEL_CUT, "Bessel representation")
  nu = s - 0.5
  first = special.gamma(nu) / special.gamma(s) / (2 * math.sqrt(math.pi) * T) * zeta_at_shift.fp

  keep = m.omegas / T < BESSEL_CUT
  omegas, mults = m.omegas[keep], m.multiplicities[keep]
  sums = []
  for omega in omegas:
    l = np.arange(1, int(math.ceil(BESSEL_CUT * T / omega)) + 1, dtype=np.float64)
    x = l * omega / T
    sums.append(math.fsum((l / (2 * T * omega))**nu * special.kv(nu, x)))
  second = 2 / (math.sqrt(math.pi) * T * special.gamma(s)) * math.fsum(mults * np.asarray(sums))
  return float(first + second)


@dataclass(frozen=True)
class ThermalZetaZero:
  value0: float
  deriv0: float
  deriv0_bound: float = 0.0


def thermal_zeta_at_zero(m: ModeList, zd: ZetaData, T: float) -> ThermalZetaZero:
  if T <= 0:
    raise ValueError(f"zeta_T(0) needs T > 0, got {T}")
  fp, res = zd.at_minus_half.fp, zd.at_minus_half.res
  delta = thermal_correction(m, T)
  value0 = -res / T
  deriv0 = -(fp + (2 - 2 * math.log(2)) * res) / T - 2 * delta.value / T
  bound = (zd.at_minus_half.fp_bound + 2 * zd.at_minus_half.res_bound) / T + 2 * delta.bound / T
  return ThermalZetaZero(value0, deriv0, bound)


def thermal_zeta_at_zero_asymptotic(coeffs: CoefficientSet, zd: ZetaData, T: float, n_max: int) -> ThermalZetaZero:
  """Large-T forms of zeta_T(0) and zeta_T'(0) from the heat coefficients."""
  D = coeffs.dimension
  coeffs.require(range(n_max + 1))
  value0 = coeffs.value(D + 1) / (2 * math.sqrt(math.pi) * T) if n_max >= D + 1 else 0.0
  terms = [zd.zeta_prime_zero.value, 2 * zd.zeta_zero.value * math.log(T)]
  for n in range(n_max + 1):
    if n in (D, D + 1):
      continue
    c = coeffs.value(n)
    if n < D:
      # Gamma((n-D)/2) zeta_R(n-D) through the functional equation
      factor = math.pi**(n - D - 0.5) * math.gamma((D - n + 1) / 2) * riemann_zeta(D - n + 1)
    else:
      factor = math.gamma((n - D) / 2) * riemann_zeta(n - D)
    terms.append(2 * c * factor * (2 * math.pi * T)**(D - n))
  if n_max >= D + 1:
    terms.append(-coeffs.value(D + 1) / (math.sqrt(math.pi) * T) * (PSI_ONE + math.log(4 * math.pi * T)))
  return ThermalZetaZero(value0, math.fsum(terms))


# ============================================================================
# REGULARIZED FREE ENERGY
# ============================================================================
def regularized_zero_t(zd: ZetaData, mu: float = 1.0) -> Estimate:
  """1/2 FP zeta(-1/2) - c_(D+1) ln(mu^2) / (4 sqrt(pi)), with Res = -c_(D+1) / (2 sqrt(pi))."""
  if mu <= 0:
    raise ValueError(f"mu must be positive, got {mu}")
  mv = zd.at_minus_half
  value = 0.5 * (mv.fp + math.log(mu**2) * mv.res)
  return Estimate(value, 0.5 * (mv.fp_bound + abs(math.log(mu**2)) * mv.res_bound))


def regularized_free_energy(m: ModeList, zd: ZetaData, T: float, mu: float = 1.0) -> Estimate:
  """-(T/2) (zeta_T'(0) + ln(mu_tilde^2) zeta_T(0)); ln(mu_tilde^2) is the reading consistent with T = 0."""
  if mu <= 0:
    raise ValueError(f"mu must be positive, got {mu}")
  if T == 0:
    return regularized_zero_t(zd, mu)
  tz = thermal_zeta_at_zero(m, zd, T)
  log_mu2 = math.log(mu_tilde(mu)**2)
  value = -T / 2 * (tz.deriv0 + log_mu2 * tz.value0)
  bound = T / 2 * tz.deriv0_bound + 0.5 * abs(log_mu2) * zd.at_minus_half.res_bound
  return Estimate(value, bound)


# ============================================================================
# HIGH TEMPERATURE
# ============================================================================
def high_T_expansion(coeffs: CoefficientSet, zd: ZetaData, T: float, mu: float = 1.0,
                     n_max: int | None = None) -> list[AsymptoticTerm]:
  """Terms T^(D+1)..T^2, T ln T, T, the residue terms and inverse powers from n >= D + 2."""
  D = coeffs.dimension
  n_max = coeffs.order if n_max is None else n_max
  try:
    coeffs.require(range(min(D, n_max + 1)))
    coeffs.require(range(D + 2, n_max + 1))
  except CoverageError as e:
    raise CoverageError(f"high-temperature series to n={n_max}: {e}") from e

  terms = []
  for n in range(D):
    c = coeffs.value(n)
    if c == 0:
      continue
    factor = -1 / math.sqrt(math.pi) * 2**(D - n) * math.gamma((D - n + 1) / 2) * riemann_zeta(D - n + 1)
    terms.append(AsymptoticTerm(D - n + 1, 0, factor * c, f'c_{n}', abs(factor) * coeffs.error(n)))
  terms.append(AsymptoticTerm(1, 1, -zd.zeta_zero.value, 'zeta(0)', zd.zeta_zero.bound))
  terms.append(AsymptoticTerm(1, 0, -0.5 * zd.zeta_prime_zero.value, "zeta'(0)", 0.5 * zd.zeta_prime_zero.bound))
  res, res_bound = zd.at_minus_half.res, zd.at_minus_half.res_bound
  if res != 0:
    constant = 1 + PSI_ONE + math.log(2 * math.pi) - math.log(mu)
    terms.append(AsymptoticTerm(0, 1, -res, 'Res zeta(-1/2)', res_bound))
    terms.append(AsymptoticTerm(0, 0, -constant * res, 'Res zeta(-1/2)', abs(constant) * res_bound))
  for n in range(D + 2, n_max + 1):
    c = coeffs.value(n)
    if c == 0:
      continue
    k = n - D
    factor = -(2 * math.pi)**(-k) * math.gamma(k / 2) * riemann_zeta(k)
    terms.append(AsymptoticTerm(-(k - 1), 0, factor * c, f'c_{n}', abs(factor) * coeffs.error(n)))
  return terms


@dataclass(frozen=True)
class HighTCheck:
  exact: float
  expansion: float
  residual: float
  exact_bound: float = 0.0
  expansion_bound: float = 0.0


def high_T_check(m: ModeList, coeffs: CoefficientSet, zd: ZetaData, T: float, mu: float = 1.0,
                 n_max: int | None = None) -> HighTCheck:
  exact = regularized_free_energy(m, zd, T, mu)
  terms = high_T_expansion(coeffs, zd, T, mu, n_max)
  expansion = evaluate_terms(terms, T)
  return HighTCheck(exact.value, expansion, exact.value - expansion, exact.bound,
                    math.fsum(term.evaluate_bound(T) for term in terms))


# ============================================================================
# REPORTS
# ============================================================================
def free_energy_report(m: ModeList, coeffs: CoefficientSet | None, zd: ZetaData, T: float, mu: float = 1.0) -> FreeEnergyReport:
  zero_t = regularized_zero_t(zd, mu)
  delta = thermal_correction(m, T)
  total = regularized_free_energy(m, zd, T, mu)
  divergent, log_coefficient, terms = {}, 0.0, []
  if coeffs is not None:
    try:
      divergent, log_coefficient = divergent_coefficients(coeffs)
      terms = high_T_expansion(coeffs, zd, T, mu) if T > 0 else []
    except CoverageError as e:
      logger.warning("Skipping divergence and asymptotic terms: %s", e)
  return FreeEnergyReport(T, mu, zero_t, delta, total, divergent, log_coefficient, terms, total.bound)


def free_energy_sweep(m: ModeList, coeffs: CoefficientSet | None, zd: ZetaData, temperatures, mu: float = 1.0) -> list[FreeEnergyReport]:
  """Reports in grid order."""
  return ordered_map(lambda T: free_energy_report(m, coeffs, zd, T, mu), list(temperatures))
