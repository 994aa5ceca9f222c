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
from enum import Enum
import logging
import math
import sympy as sp

from .errors import ConfigValidationError, CornerContributionError, CoverageError, InvalidDegreeError
from .geometry import (Annulus, Ball, Box, GeometryDescriptor, Interval, PistonConfiguration,
                       ShellConfiguration, has_corners, measures, shell_regions)

logger = logging.getLogger(__name__)


# ============================================================================
# BOUNDARY CONDITIONS AND FIELDS
# ============================================================================
class BoundaryCondition(Enum):
  ABSOLUTE = 'absolute'
  RELATIVE = 'relative'


class FieldKind(Enum):
  SCALAR = 'scalar'
  PFORM = 'p-form'
  ELECTROMAGNETIC = 'electromagnetic'


PHYSICAL_ALIASES = {
  'perfectly-conducting': BoundaryCondition.RELATIVE,
  'infinitely-permeable': BoundaryCondition.ABSOLUTE,
}

SCALAR_ALIASES = {
  'dirichlet': BoundaryCondition.RELATIVE,
  'neumann': BoundaryCondition.ABSOLUTE,
}


def bc_map(physical: str) -> BoundaryCondition:
  try:
    return PHYSICAL_ALIASES[physical.lower()]
  except KeyError:
    raise ConfigValidationError(f"Unknown physical boundary condition {physical!r}") from None


def parse_bc(label: str | BoundaryCondition, field_kind: FieldKind = FieldKind.SCALAR, p: int = 0) -> BoundaryCondition:
  """Normalise any accepted label, rejecting aliases that do not apply to the field."""
  if isinstance(label, BoundaryCondition):
    return label
  key = label.lower()
  if key in ('absolute', 'relative'):
    return BoundaryCondition(key)
  if key in PHYSICAL_ALIASES:
    if field_kind is FieldKind.SCALAR or (field_kind is FieldKind.PFORM and p != 1):
      raise ConfigValidationError(f"Boundary condition {label!r} applies to electromagnetic fields only")
    return bc_map(key)
  if key in SCALAR_ALIASES:
    if field_kind is not FieldKind.SCALAR and not (field_kind is FieldKind.PFORM and p == 0):
      raise ConfigValidationError(f"Boundary condition {label!r} applies to scalar fields only")
    return SCALAR_ALIASES[key]
  raise ConfigValidationError(f"Unknown boundary condition {label!r}")


# ============================================================================
# COMBINATORIAL FACTORS
# ============================================================================
def h(D: int, p: int) -> int:
  if D < 0 or p < 0 or p > D:
    return 0
  return math.comb(D, p)


def h0(D: int, p: int) -> int:
  return h(D, p) - 6 * h(D - 2, p - 1)


def d0(D: int, p: int) -> int:
  return h(D - 1, p) - h(D - 1, p - 1)


def _four_pi_power(exponent) -> sp.Expr:
  return (4 * sp.pi)**exponent


# ============================================================================
# CLOSED-FORM COEFFICIENTS
# ============================================================================
def _check_corners(g: GeometryDescriptor, n: int, allow_corners: bool):
  if n == 2 and has_corners(g) and not allow_corners:
    raise CornerContributionError(
      f"a_2 of {type(g).__name__} omits edge and corner terms; pass allow_corners=True to accept it")


def a_n_pform(g: GeometryDescriptor, p: int, bc: BoundaryCondition, n: int, allow_corners: bool = False) -> sp.Expr:
  """Heat coefficient a_n of the p-form Laplacian, exact where the measures are."""
  m = measures(g)
  D = m.dimension
  if p < 0 or p > D:
    raise InvalidDegreeError(f"form degree p={p} outside 0..{D}")
  if n not in (0, 1, 2):
    raise CoverageError(f"no closed form for a_{n}")
  _check_corners(g, n, allow_corners)
  if bc is BoundaryCondition.RELATIVE:
    # Hodge duality exchanges relative p-forms with absolute (D-p)-forms
    return a_n_pform(g, D - p, BoundaryCondition.ABSOLUTE, n, allow_corners)

  if n == 0:
    value = h(D, p) * m.vol_m / _four_pi_power(sp.Rational(D, 2))
  elif n == 1:
    value = sp.Rational(d0(D, p), 4) * m.vol_b / _four_pi_power(sp.Rational(D - 1, 2))
  else:
    value = sp.Rational(h0(D, p), 6) * (m.int_tau + 2 * m.int_tr_l) / _four_pi_power(sp.Rational(D, 2))
  return sp.simplify(value)


def c_n_em(g: GeometryDescriptor, bc: BoundaryCondition, n: int, allow_corners: bool = False) -> sp.Expr:
  """Electromagnetic coefficient, one-forms minus zero-forms."""
  m = measures(g)
  D = m.dimension
  if n not in (0, 1, 2):
    raise CoverageError(f"no closed form for c_{n}")
  _check_corners(g, n, allow_corners)
  if n == 0:
    value = (D - 1) * m.vol_m / _four_pi_power(sp.Rational(D, 2))
  elif n == 1:
    sign = 1 if bc is BoundaryCondition.ABSOLUTE else -1
    value = sign * sp.Rational(D - 3, 4) * m.vol_b / _four_pi_power(sp.Rational(D - 1, 2))
  elif D == 1:
    # no interior curvature and no boundary curvature on a line
    value = sp.Integer(0)
  else:
    value = sp.Rational(D - 7, 6) * (m.int_tau + 2 * m.int_tr_l) / _four_pi_power(sp.Rational(D, 2))
  return sp.simplify(value)


def coefficient(g: GeometryDescriptor, field_kind: FieldKind, bc: BoundaryCondition, n: int,
                p: int = 1, allow_corners: bool = False) -> sp.Expr:
  match field_kind:
    case FieldKind.SCALAR:
      return a_n_pform(g, 0, bc, n, allow_corners)
    case FieldKind.PFORM:
      return a_n_pform(g, p, bc, n, allow_corners)
    case FieldKind.ELECTROMAGNETIC:
      return c_n_em(g, bc, n, allow_corners)


def shell_c_hat(c: ShellConfiguration | PistonConfiguration, bc: BoundaryCondition, n: int,
                field_kind: FieldKind = FieldKind.ELECTROMAGNETIC, p: int = 1,
                allow_corners: bool = False) -> sp.Expr:
  """c_n(M) + c_n(A_r) - c_n(M_r) by region subtraction."""
  regions = shell_regions(c)
  parts = [coefficient(region, field_kind, bc, n, p, allow_corners)
           for region in (regions.inner, regions.annular, regions.outer)]
  return sp.simplify(parts[0] + parts[1] - parts[2])


def shell_c_hat_set(c: ShellConfiguration | PistonConfiguration, bc: BoundaryCondition,
                    field_kind: FieldKind = FieldKind.ELECTROMAGNETIC, p: int = 1,
                    allow_corners: bool = False) -> dict[int, sp.Expr]:
  """All hatted coefficients with a closed form; one-dimensional shells are complete."""
  c_hat = {n: shell_c_hat(c, bc, n, field_kind, p, allow_corners) for n in (0, 1, 2)}
  if c.dimension == 1:
    c_hat.update({n: sp.Integer(0) for n in (3, 4)})
  return c_hat


# ============================================================================
# ZERO MODES AND TRACE COEFFICIENTS
# ============================================================================
def _betti(g: GeometryDescriptor, k: int) -> int | None:
  D = g.dimension
  if isinstance(g, (Interval, Box, Ball)):
    return 1 if k == 0 else 0
  if isinstance(g, Annulus):
    if D == 1:
      return None
    return int(k == 0) + int(k == D - 1)
  return None


def zero_mode_count(g: GeometryDescriptor, field_kind: FieldKind, bc: BoundaryCondition, p: int = 1) -> int:
  """Number of omega = 0 modes (harmonic forms) removed from every spectrum."""
  def forms(degree: int) -> int:
    D = g.dimension
    k = degree if bc is BoundaryCondition.ABSOLUTE else D - degree
    count = _betti(g, k)
    if count is None:
      logger.warning("Zero-mode count of %s is unknown, assuming none", type(g).__name__)
      return 0
    return count

  match field_kind:
    case FieldKind.SCALAR:
      return forms(0)
    case FieldKind.PFORM:
      return forms(p)
    case FieldKind.ELECTROMAGNETIC:
      return forms(1) - forms(0)


@dataclass(frozen=True)
class CoefficientSet:
  """Heat coefficients c_0..c_N of a trace over non-zero modes, K(t) ~ sum c_n t^((n-D)/2)."""
  dimension: int
  values: dict
  field_kind: FieldKind = FieldKind.SCALAR
  bc: BoundaryCondition = BoundaryCondition.RELATIVE
  p: int = 0
  provenance: dict = field(default_factory=dict)
  uncertainty: dict = field(default_factory=dict)

  @property
  def order(self) -> int:
    """Largest N with c_0..c_N all present."""
    n = -1
    while n + 1 in self.values:
      n += 1
    return n

  @property
  def exact(self) -> bool:
    return all(isinstance(v, sp.Basic) for v in self.values.values())


  def covers(self, n: int) -> bool:
    return n in self.values


  def value(self, n: int) -> float:
    if n not in self.values:
      raise CoverageError(f"coefficient c_{n} is not available (have {sorted(self.values)})")
    return float(self.values[n])


  def error(self, n: int) -> float:
    return float(self.uncertainty.get(n, 0.0))


  def require(self, ns) -> None:
    missing = [n for n in ns if n not in self.values]
    if missing:
      raise CoverageError(f"coefficients {missing} are required but missing")


  def merged(self, other: 'CoefficientSet') -> 'CoefficientSet':
    """Fill gaps in this set from `other`; own values take priority."""
    values = {**other.values, **self.values}
    provenance = {**other.provenance, **self.provenance}
    uncertainty = {**{n: u for n, u in other.uncertainty.items() if n not in self.values}, **self.uncertainty}
    return CoefficientSet(self.dimension, values, self.field_kind, self.bc, self.p, provenance, uncertainty)


def trace_coefficients(g: GeometryDescriptor, field_kind: FieldKind, bc: BoundaryCondition, n_max: int,
                       p: int = 1, allow_corners: bool = False, extracted: CoefficientSet | None = None) -> CoefficientSet:
  """Coefficients of the trace over non-zero modes up to n_max.

  Closed forms supply n <= 2 (c_D shifted by the zero-mode count); one-dimensional
  regions have a terminating trace so every higher coefficient vanishes. Anything else
  must come from `extracted`.
  """
  D = g.dimension
  zero_modes = zero_mode_count(g, field_kind, bc, p)
  values, provenance = {}, {}
  for n in range(n_max + 1):
    if n == 2 and has_corners(g) and not allow_corners and extracted is not None and extracted.covers(2):
      continue
    if n <= 2:
      value = coefficient(g, field_kind, bc, n, p, allow_corners)
      if n == D:
        value = value - zero_modes
      values[n], provenance[n] = sp.simplify(value), 'closed-form'
    elif D == 1:
      values[n], provenance[n] = sp.Integer(0), 'closed-form'
  fp = p if field_kind is FieldKind.PFORM else 0
  result = CoefficientSet(D, values, field_kind, bc, fp, provenance)
  if extracted is not None:
    result = result.merged(extracted)
  missing = [n for n in range(n_max + 1) if not result.covers(n)]
  if missing:
    raise CoverageError(f"coefficients {missing} of a {D}-dimensional region need numeric extraction")
  return result
