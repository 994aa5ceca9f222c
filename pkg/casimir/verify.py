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

"""Built-in invariant suite run by the `verify` subcommand."""
from dataclasses import dataclass
import logging
import math
import sympy as sp

from .errors import InvariantFailure
from .geometry import Ball, Box, Interval, ShellConfiguration, measures
from .heatkernel import extract_coefficients
from .hk_coeff import BoundaryCondition, FieldKind, a_n_pform, c_n_em, shell_c_hat, trace_coefficients
from .spectrum import ball_scalar_spectrum, interval_spectrum
from .thermo import (regularized_free_energy, regularized_zero_t, thermal_correction, thermal_zeta_at_zero,
                     thermal_zeta_at_zero_asymptotic, thermal_zeta_bessel, thermal_zeta_direct)
from .zeta import MeromorphicValue, riemann_zeta, zeta_zero_data

logger = logging.getLogger(__name__)

ZETA_TOL = 1e-8
REPRESENTATION_TOL = 1e-8
CANCELLATION_TOL = 1e-7
INTERVAL_MODES = 2000
DISK_OMEGA = 200.0
DISK_FIT_TOL = 0.03


@dataclass(frozen=True)
class CheckResult:
  group: str
  name: str
  passed: bool
  residual: float = 0.0
  tolerance: float = 0.0

  def to_dict(self) -> dict:
    return {'group': self.group, 'name': self.name, 'passed': self.passed,
            'residual': self.residual, 'tolerance': self.tolerance}


def _exact(group: str, name: str, expr) -> CheckResult:
  residual = sp.simplify(expr)
  return CheckResult(group, name, residual == 0, float(abs(residual.evalf())), 0.0)


def _close(group: str, name: str, got: float, expected: float, tol: float, relative: bool = False) -> CheckResult:
  residual = abs(got - expected)
  if relative:
    residual /= max(abs(expected), 1e-300)
  return CheckResult(group, name, bool(residual <= tol), float(residual), tol)


def _geometries() -> list:
  boxes = [Box(tuple(sp.Integer(k) for k in range(1, D + 1))) for D in range(1, 5)]
  balls = [Ball(D, 1) for D in range(2, 7)]
  return [Interval(sp.pi)] + boxes + balls


# ============================================================================
# COEFFICIENT IDENTITIES
# ============================================================================
def coefficient_checks() -> list[CheckResult]:
  """Exact identities between the closed-form coefficients."""
  results = []
  for g in _geometries():
    D = g.dimension
    label = f"{type(g).__name__}(D={D})"
    for bc in BoundaryCondition:
      for n in (0, 1, 2):
        em = c_n_em(g, bc, n, allow_corners=True)
        forms = a_n_pform(g, 1, bc, n, allow_corners=True) - a_n_pform(g, 0, bc, n, allow_corners=True)
        results.append(_exact('coefficients', f"{label} {bc.value} c_{n} = a_{n}(1) - a_{n}(0)", em - forms))
      for p in range(D + 1):
        for n in (0, 1, 2):
          relative = a_n_pform(g, p, BoundaryCondition.RELATIVE, n, allow_corners=True)
          absolute = a_n_pform(g, D - p, BoundaryCondition.ABSOLUTE, n, allow_corners=True)
          results.append(_exact('coefficients', f"{label} a_{n}(p={p}) relative = absolute(D-p)", relative - absolute))
      if isinstance(g, Interval):
        continue
      shell = ShellConfiguration(g, 2)
      hats = {n: shell_c_hat(shell, bc, n, allow_corners=True) for n in (0, 1, 2)}
      results.append(_exact('coefficients', f"{label} {bc.value} shell c_hat_0 = 0", hats[0]))
      results.append(_exact('coefficients', f"{label} {bc.value} shell c_hat_2 = 0", hats[2]))
      sign = 1 if bc is BoundaryCondition.ABSOLUTE else -1
      expected = sign * sp.Rational(D - 3, 2) * measures(g).vol_b / (4 * sp.pi)**sp.Rational(D - 1, 2)
      results.append(_exact('coefficients', f"{label} {bc.value} shell c_hat_1", hats[1] - expected))
      vanishes = sp.simplify(hats[1]) == 0
      results.append(CheckResult('coefficients', f"{label} {bc.value} c_hat_1 = 0 iff D = 3", vanishes == (D == 3)))
  return results


# ============================================================================
# ZETA RELATIONS
# ============================================================================
def zeta_checks(lengths=(sp.pi, sp.Rational(1, 2)), disk_omega: float = DISK_OMEGA) -> list[CheckResult]:
  results = []
  for L in lengths:
    length = float(L)
    m = interval_spectrum(L, BoundaryCondition.RELATIVE, (INTERVAL_MODES + 0.5) * math.pi / length)
    coeffs = trace_coefficients(Interval(L), FieldKind.SCALAR, BoundaryCondition.RELATIVE, 3)
    zd = zeta_zero_data(m, coeffs)
    label = f"interval L={L}"
    results.append(_close('zeta', f"{label} zeta(0) = zeta_R(0)", zd.zeta_zero.value, riemann_zeta(0.0), ZETA_TOL))
    results.append(_close('zeta', f"{label} zeta'(0) = -ln(2L)", zd.zeta_prime_zero.value, -math.log(2 * length),
                          ZETA_TOL))
    results.append(_close('zeta', f"{label} FP zeta(-1/2) = -pi/(12L)", zd.at_minus_half.fp,
                          -math.pi / (12 * length), ZETA_TOL))

  # fitted disk coefficients alone against the closed forms
  disk = Ball(2, 1)
  m = ball_scalar_spectrum(2, 1, BoundaryCondition.RELATIVE, disk_omega)
  fitted = extract_coefficients(m, 2, 4).coefficients
  exact = trace_coefficients(disk, FieldKind.SCALAR, BoundaryCondition.RELATIVE, 2)
  for n in range(3):
    results.append(_close('zeta', f"disk fitted c_{n} = closed form", fitted.value(n), exact.value(n), DISK_FIT_TOL,
                          relative=True))
  zero = zeta_zero_data(m, fitted).zeta_zero
  results.append(_close('zeta', "disk zeta(0) from fitted coefficients = closed c_2", zero.value, exact.value(2),
                        DISK_FIT_TOL, relative=True))
  return results


# ============================================================================
# THERMAL REPRESENTATIONS
# ============================================================================
def representation_checks(temperatures=(0.5, 1.0, 2.0), s: float = 2.0) -> list[CheckResult]:
  """Double Matsubara sum against the Bessel-function representation."""
  L = sp.pi
  m = interval_spectrum(L, BoundaryCondition.RELATIVE, INTERVAL_MODES + 0.5)
  # zeta of the interval is (L/pi)^(2s) zeta_R(2s)
  shift = MeromorphicValue(s - 0.5, riemann_zeta(2 * s - 1))
  results = []
  for T in temperatures:
    direct = thermal_zeta_direct(m, T, s).value
    bessel = thermal_zeta_bessel(m, T, s, shift)
    results.append(_close('representation', f"interval T={T:g} direct = Bessel at s={s:g}", direct, bessel,
                          REPRESENTATION_TOL, relative=True))
  return results


# ============================================================================
# FREE ENERGY CANCELLATION
# ============================================================================
def free_energy_checks(temperatures=(0.1, 1.0, 10.0), mu: float = 1.0) -> list[CheckResult]:
  L = sp.pi
  m = interval_spectrum(L, BoundaryCondition.RELATIVE, INTERVAL_MODES + 0.5)
  coeffs = trace_coefficients(Interval(L), FieldKind.SCALAR, BoundaryCondition.RELATIVE, 3)
  zd = zeta_zero_data(m, coeffs)
  zero_t = regularized_zero_t(zd, mu).value
  results = [_close('free-energy', "interval zero-T energy = -1/24", zero_t, -1 / 24, ZETA_TOL)]
  for T in temperatures:
    total = regularized_free_energy(m, zd, T, mu).value
    results.append(_close('free-energy', f"interval T={T:g} zeta_T form = zero-T + thermal", total,
                          zero_t + thermal_correction(m, T).value, CANCELLATION_TOL))
  T = max(temperatures)
  exact = thermal_zeta_at_zero(m, zd, T).deriv0
  asymptotic = thermal_zeta_at_zero_asymptotic(coeffs, zd, T, 3).deriv0
  results.append(_close('free-energy', f"interval T={T:g} zeta_T'(0) mode sum = heat-coefficient series",
                        exact, asymptotic, CANCELLATION_TOL))
  return results


CHECK_GROUPS = {
  'coefficients': coefficient_checks,
  'zeta': zeta_checks,
  'representation': representation_checks,
  'free-energy': free_energy_checks,
}


def run_checks(groups=None) -> list[CheckResult]:
  results = []
  for name in groups or CHECK_GROUPS:
    if name not in CHECK_GROUPS:
      raise ValueError(f"unknown check group {name}, expected one of {list(CHECK_GROUPS)}")
    group = CHECK_GROUPS[name]()
    failed = [r for r in group if not r.passed]
    logger.info("Check group %s: %d passed, %d failed", name, len(group) - len(failed), len(failed))
    for r in failed:
      logger.error("FAILED %s: residual %.3g > %.3g", r.name, r.residual, r.tolerance)
    results.extend(group)
  return results


def assert_checks(results: list[CheckResult]) -> None:
  failed = [r.name for r in results if not r.passed]
  if failed:
    raise InvariantFailure(f"{len(failed)} invariant checks failed: {', '.join(failed[:5])}")
