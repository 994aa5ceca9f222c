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

"""Cavity enclosed in a large scaled copy of itself: E(M) + E(A_r) - E(M_r) as r grows."""
from dataclasses import dataclass, field
import logging
import math
import numpy as np

from .errors import CoverageError, NoLimitError, UnsupportedGeometryError
from .estimate import Estimate
from .geometry import (Annulus, Ball, GeometryDescriptor, Interval, PistonConfiguration, ShellConfiguration, to_exact,
                       shell_regions)
from .heatkernel import extract_coefficients
from .hk_coeff import BoundaryCondition, FieldKind, shell_c_hat_set, trace_coefficients
from .parallel import ordered_map
from .spectrum import generate_spectrum
from .thermo import AsymptoticTerm, THERMAL_CUT, regularized_free_energy
from .zeta import PSI_ONE, ZetaData, riemann_zeta, zeta_zero_data

logger = logging.getLogger(__name__)

SPREAD_FLOOR = 1e-9
OMEGA_R = 200.0


# ============================================================================
# DIVERGENCES
# ============================================================================
@dataclass(frozen=True)
class DivergenceClass:
  """leading_order is the power of lambda of the leading divergence."""
  finite: bool
  leading_n: int | None = None
  leading_order: int | None = None
  log_term: bool = False
  log_term_assumed: bool = False

  @property
  def label(self) -> str:
    if self.finite:
      return 'finite'
    if self.leading_n is None:
      return 'ln lambda'
    return f'lambda^{self.leading_order}'

  def to_dict(self) -> dict:
    return {'classification': self.label, 'finite': self.finite, 'leading_n': self.leading_n,
            'leading_order': self.leading_order, 'log_term': self.log_term,
            'log_term_assumed': self.log_term_assumed}


def divergence_classification(D: int, c_hat: dict) -> DivergenceClass:
  """Finite iff c_hat_0..c_hat_(D-1) and c_hat_(D+1) vanish; else the smallest non-zero n sets lambda^(n-D-1)."""
  for n in range(D):
    if n not in c_hat:
      raise CoverageError(f"divergence classification needs c_hat_{n}, all lower ones vanish")
    if c_hat[n] != 0:
      log_term = D + 1 in c_hat and c_hat[D + 1] != 0
      return DivergenceClass(False, n, n - D - 1, log_term, D + 1 not in c_hat)
  assumed = D + 1 not in c_hat
  if assumed:
    logger.warning("c_hat_%d unavailable, assuming no logarithmic divergence", D + 1)
  log_term = not assumed and c_hat[D + 1] != 0
  return DivergenceClass(not log_term, None, None, log_term, assumed)


# ============================================================================
# EXTRAPOLATION
# ============================================================================
@dataclass(frozen=True)
class ShellLimit:
  value: float
  uncertainty: float
  r_values: list
  per_r: list
  estimates: list = field(default_factory=list)

  def to_estimate(self) -> Estimate:
    return Estimate(self.value, self.uncertainty)


def richardson_limit(r_values, values) -> ShellLimit:
  """Quadratic extrapolation in 1/r over sliding windows of three points."""
  order = np.argsort(r_values)
  r = np.asarray(r_values, dtype=np.float64)[order]
  v = np.asarray(values, dtype=np.float64)[order]
  if len(r) < 3:
    raise NoLimitError(f"extrapolation needs at least 3 values of r, got {len(r)}")
  if not np.all(np.isfinite(v)):
    raise NoLimitError("non-finite shell values")
  h = 1 / r
  estimates = [float(np.polynomial.polynomial.polyfit(h[i:i + 3], v[i:i + 3], 2)[0]) for i in range(len(r) - 2)]
  if len(estimates) == 1:
    # compare with the linear estimate from the two largest r
    previous = v[-1] - (v[-1] - v[-2]) / (h[-1] - h[-2]) * h[-1]
  else:
    previous = estimates[-2]
  limit = estimates[-1]
  spreads = np.abs(np.diff(estimates))
  scale = max(1.0, abs(limit))
  if len(spreads) >= 2 and spreads[-1] > spreads[-2] and spreads[-1] > SPREAD_FLOOR * scale:
    raise NoLimitError(f"extrapolated values drift apart ({spreads[-2]:.3g} then {spreads[-1]:.3g})")
  return ShellLimit(limit, float(abs(limit - previous)), [float(x) for x in r], [float(x) for x in v], estimates)


# ============================================================================
# PER-REGION NUMERICS
# ============================================================================
@dataclass(frozen=True, eq=False)
class RegionData:
  geometry: GeometryDescriptor
  modes: object
  zeta: ZetaData


def _region_omega_max(g: GeometryDescriptor, modes_per_region: int, omega_r: float, T_max: float) -> float:
  if isinstance(g, Interval):
    L = float(g.length)
    n = max(modes_per_region, int(math.ceil(THERMAL_CUT * T_max * L / math.pi)) + 1)
    return (n + 0.5) * math.pi / L
  # the fit window is set by the lowest mode, so an annulus scales with its width
  size = float(g.outer_radius - g.inner_radius if isinstance(g, Annulus) else g.radius)
  return max(omega_r / size, THERMAL_CUT * T_max * 1.05)


def region_data(g: GeometryDescriptor, bc: BoundaryCondition, modes_per_region: int = 2000,
                omega_r: float = OMEGA_R, T_max: float = 0.0) -> RegionData:
  """Spectrum and zeta data of one scalar region; coefficients above n = 2 are extracted for D >= 2."""
  D = g.dimension
  omega_max = _region_omega_max(g, modes_per_region, omega_r, T_max)
  m = generate_spectrum(g, FieldKind.SCALAR, bc, omega_max)
  if D == 1:
    coeffs = trace_coefficients(g, FieldKind.SCALAR, bc, D + 2)
  else:
    fit = extract_coefficients(m, D, D + 2)
    coeffs = trace_coefficients(g, FieldKind.SCALAR, bc, D + 2, extracted=fit.coefficients)
  return RegionData(g, m, zeta_zero_data(m, coeffs))


def _regions_at(config: ShellConfiguration | PistonConfiguration, r: float) -> tuple:
  if isinstance(config, PistonConfiguration):
    regions = shell_regions(PistonConfiguration(config.inner_length, to_exact(r)))
    return regions.inner, regions.annular, regions.outer
  inner = config.inner
  if isinstance(inner, Ball) and inner.dim in (2, 3):
    rr = to_exact(r)
    return inner, Annulus(inner.dim, inner.radius, inner.radius * rr), Ball(inner.dim, inner.radius * rr)
  raise UnsupportedGeometryError(
    f"shell numerics cover interval pistons and concentric 2- and 3-balls, not {type(inner).__name__}")


@dataclass(frozen=True, eq=False)
class ShellNumeric:
  Q: ShellLimit
  energies: dict


def shell_numeric(config: ShellConfiguration | PistonConfiguration, bc: BoundaryCondition, r_list,
                  temperatures=(0.0,), mu: float = 1.0, modes_per_region: int = 2000,
                  omega_r: float = OMEGA_R) -> ShellNumeric:
  """Q and the shell free energy at each temperature, extrapolated in 1/r."""
  r_list = [float(r) for r in r_list]
  if any(r <= 1 for r in r_list):
    raise NoLimitError(f"shell scale factors must exceed 1, got {r_list}")
  temperatures = [float(T) for T in temperatures]
  T_max = max(temperatures)

  def per_r(r: float) -> tuple:
    inner, annular, outer = _regions_at(config, r)
    data = [region_data(g, bc, modes_per_region, omega_r, T_max) for g in (inner, annular, outer)]
    q = data[0].zeta.zeta_prime_zero.value + data[1].zeta.zeta_prime_zero.value - data[2].zeta.zeta_prime_zero.value
    energies = []
    for T in temperatures:
      e = [regularized_free_energy(d.modes, d.zeta, T, mu).value for d in data]
      energies.append(e[0] + e[1] - e[2])
    logger.info("Shell r=%g: Q_r=%.12g", r, q)
    return q, energies

  results = ordered_map(per_r, r_list)
  q_limit = richardson_limit(r_list, [q for q, _ in results])
  energies = {T: richardson_limit(r_list, [e[i] for _, e in results]) for i, T in enumerate(temperatures)}
  return ShellNumeric(q_limit, energies)


def shell_free_energy_numeric(config, bc: BoundaryCondition, T: float, r_list, mu: float = 1.0,
                              modes_per_region: int = 2000, omega_r: float = OMEGA_R) -> ShellLimit:
  return shell_numeric(config, bc, r_list, (T,), mu, modes_per_region, omega_r).energies[float(T)]


def shell_Q(config, bc: BoundaryCondition, r_list, modes_per_region: int = 2000,
            omega_r: float = OMEGA_R) -> ShellLimit:
  """lim zeta'(0; M) + zeta'(0; A_r) - zeta'(0; M_r)."""
  return shell_numeric(config, bc, r_list, (0.0,), 1.0, modes_per_region, omega_r).Q


# ============================================================================
# HIGH TEMPERATURE AND RENORMALIZATION
# ============================================================================
def _power_coefficient(D: int, n: int, c: float) -> float:
  return 1 / math.sqrt(math.pi) * 2**(D - n) * math.gamma((D - n + 1) / 2) * riemann_zeta(D - n + 1) * c


def shell_high_T(c_hat: dict, Q: float, T: float, D: int, mu: float = 1.0, n_max: int | None = None) -> list[AsymptoticTerm]:
  """Shell analogue of the single-region series; the T ln T coefficient is -c_hat_D."""
  missing = [n for n in range(D + 1) if n not in c_hat]
  if missing:
    raise CoverageError(f"shell high-temperature series needs c_hat {missing}")
  n_max = max(c_hat) if n_max is None else n_max
  c = {n: float(v) for n, v in c_hat.items()}

  terms = [AsymptoticTerm(D - n + 1, 0, -_power_coefficient(D, n, c[n]), f'c_hat_{n}') for n in range(D) if c[n] != 0]
  terms.append(AsymptoticTerm(1, 1, -c[D], f'c_hat_{D}'))
  terms.append(AsymptoticTerm(1, 0, -0.5 * float(Q), 'Q'))
  if D + 1 not in c:
    logger.warning("c_hat_%d unavailable, omitting the logarithmic term", D + 1)
  elif c[D + 1] != 0:
    scale = c[D + 1] / (2 * math.sqrt(math.pi))
    terms.append(AsymptoticTerm(0, 1, scale, f'c_hat_{D + 1}'))
    terms.append(AsymptoticTerm(0, 0, (1 + PSI_ONE + math.log(2 * math.pi) - math.log(mu)) * scale, f'c_hat_{D + 1}'))
  for n in range(D + 2, n_max + 1):
    if n not in c:
      raise CoverageError(f"shell high-temperature series to n={n_max} needs c_hat_{n}")
    if c[n] == 0:
      continue
    k = n - D
    terms.append(AsymptoticTerm(-(k - 1), 0, -(2 * math.pi)**(-k) * math.gamma(k / 2) * riemann_zeta(k) * c[n],
                                f'c_hat_{n}'))
  return terms


def renormalized_free_energy(e_reg_shell: float, c_hat: dict, T: float, D: int) -> float:
  """Regularized shell energy with the T^2..T^(D+1) terms removed."""
  missing = [n for n in range(D) if n not in c_hat]
  if missing:
    raise CoverageError(f"renormalization needs c_hat {missing}")
  return float(e_reg_shell) + math.fsum(_power_coefficient(D, n, float(c_hat[n])) * T**(D - n + 1) for n in range(D))


# ============================================================================
# REPORT
# ============================================================================
@dataclass(frozen=True)
class ShellEnergy:
  T: float
  e_reg: Estimate | None
  e_ren: float | None
  high_t_terms: list


@dataclass(frozen=True)
class ShellReport:
  c_hat: dict
  divergence: DivergenceClass
  Q: Estimate | None
  energies: list
  per_r: dict = field(default_factory=dict)


def shell_report(config: ShellConfiguration | PistonConfiguration, field_kind: FieldKind, bc: BoundaryCondition,
                 temperatures=(0.0,), mu: float = 1.0, r_list=None, q: float | None = None, p: int = 1,
                 extra_c_hat: dict | None = None, modes_per_region: int = 2000,
                 omega_r: float = OMEGA_R) -> ShellReport:
  """Coefficient-level analysis for any field; mode-level numerics for scalar shells when r_list is given."""
  D = config.dimension
  c_hat = shell_c_hat_set(config, bc, field_kind, p, allow_corners=False)
  if extra_c_hat:
    c_hat.update({n: v for n, v in extra_c_hat.items() if n not in c_hat})
  divergence = divergence_classification(D, c_hat)

  numeric = None
  if field_kind is FieldKind.SCALAR and r_list:
    numeric = shell_numeric(config, bc, r_list, temperatures, mu, modes_per_region, omega_r)
  elif r_list:
    logger.warning("No mode-level shell numerics for %s fields, using the supplied Q", field_kind.value)

  Q = numeric.Q.to_estimate() if numeric is not None else (None if q is None else Estimate(float(q), 0.0))
  energies, per_r = [], {}
  for T in temperatures:
    e_reg = numeric.energies[float(T)].to_estimate() if numeric is not None else None
    e_ren = renormalized_free_energy(e_reg.value, c_hat, T, D) if e_reg is not None else None
    terms = []
    if T > 0 and Q is not None:
      try:
        terms = shell_high_T(c_hat, Q.value, T, D, mu)
      except CoverageError as e:
        logger.warning("Skipping shell high-temperature terms: %s", e)
    energies.append(ShellEnergy(float(T), e_reg, e_ren, terms))
    if numeric is not None:
      per_r[float(T)] = numeric.energies[float(T)]
  if numeric is not None:
    per_r['Q'] = numeric.Q
  return ShellReport(c_hat, divergence, Q, energies, per_r)
