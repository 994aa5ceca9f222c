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
from fractions import Fraction
import sympy as sp

from .errors import DegenerateShellError, InvalidGeometryError, InvalidScaleError


# ============================================================================
# EXACT INPUT HANDLING
# ============================================================================
def to_exact(x) -> sp.Expr:
  """Convert user input to an exact sympy number. Floats go through their decimal repr."""
  if isinstance(x, sp.Basic):
    return x
  if isinstance(x, bool):
    raise InvalidGeometryError(f"Expected a number, got {x!r}")
  if isinstance(x, int):
    return sp.Integer(x)
  if isinstance(x, Fraction):
    return sp.Rational(x.numerator, x.denominator)
  if isinstance(x, float):
    return sp.Rational(repr(x))
  if isinstance(x, str):
    try:
      return sp.sympify(x, rational=True)
    except (sp.SympifyError, SyntaxError, TypeError) as e:
      raise InvalidGeometryError(f"Cannot parse {x!r} as a number") from e
  raise InvalidGeometryError(f"Expected a number, got {type(x).__name__}")


def _positive(x, name: str) -> sp.Expr:
  value = to_exact(x)
  if not value.is_real or not bool(value > 0):
    raise InvalidGeometryError(f"{name} must be positive, got {value}")
  return value


def _non_negative(x, name: str) -> sp.Expr:
  value = to_exact(x)
  if not value.is_real or bool(value < 0):
    raise InvalidGeometryError(f"{name} must be non-negative, got {value}")
  return value


def _dimension(D) -> int:
  if isinstance(D, bool) or int(D) != D or int(D) < 1:
    raise InvalidGeometryError(f"dimension must be an integer >= 1, got {D!r}")
  return int(D)


def _sphere_volume(D: int, R: sp.Expr) -> sp.Expr:
  # (D-1)-sphere of radius R
  return sp.simplify(2 * sp.pi**sp.Rational(D, 2) * R**(D - 1) / sp.gamma(sp.Rational(D, 2)))


def _ball_volume(D: int, R: sp.Expr) -> sp.Expr:
  return sp.simplify(sp.pi**sp.Rational(D, 2) * R**D / sp.gamma(sp.Rational(D, 2) + 1))


# ============================================================================
# GEOMETRY VARIANTS
# ============================================================================
@dataclass(frozen=True)
class Measures:
  dimension: int
  vol_m: sp.Expr
  vol_b: sp.Expr
  int_tau: sp.Expr
  int_tr_l: sp.Expr


@dataclass(frozen=True)
class Interval:
  length: sp.Expr

  def __post_init__(self):
    object.__setattr__(self, 'length', _positive(self.length, 'length'))

  @property
  def dimension(self) -> int:
    return 1


@dataclass(frozen=True)
class Box:
  lengths: tuple

  def __post_init__(self):
    if len(self.lengths) < 1:
      raise InvalidGeometryError("Box needs at least one length")
    object.__setattr__(self, 'lengths', tuple(_positive(L, 'length') for L in self.lengths))

  @property
  def dimension(self) -> int:
    return len(self.lengths)


@dataclass(frozen=True)
class Ball:
  dim: int
  radius: sp.Expr

  def __post_init__(self):
    object.__setattr__(self, 'dim', _dimension(self.dim))
    object.__setattr__(self, 'radius', _positive(self.radius, 'radius'))

  @property
  def dimension(self) -> int:
    return self.dim


@dataclass(frozen=True)
class Annulus:
  """Region between two concentric spheres."""
  dim: int
  inner_radius: sp.Expr
  outer_radius: sp.Expr

  def __post_init__(self):
    object.__setattr__(self, 'dim', _dimension(self.dim))
    object.__setattr__(self, 'inner_radius', _positive(self.inner_radius, 'inner_radius'))
    object.__setattr__(self, 'outer_radius', _positive(self.outer_radius, 'outer_radius'))
    if not bool(self.outer_radius > self.inner_radius):
      raise InvalidGeometryError(f"outer_radius {self.outer_radius} must exceed inner_radius {self.inner_radius}")

  @property
  def dimension(self) -> int:
    return self.dim


@dataclass(frozen=True)
class Generic:
  """Geometry known only through its measures, e.g. a curved cavity or a shell region."""
  dim: int
  vol_m: sp.Expr
  vol_b: sp.Expr
  int_tau: sp.Expr = sp.Integer(0)
  int_tr_l: sp.Expr = sp.Integer(0)
  has_corners: bool = False

  def __post_init__(self):
    object.__setattr__(self, 'dim', _dimension(self.dim))
    object.__setattr__(self, 'vol_m', _non_negative(self.vol_m, 'volume'))
    object.__setattr__(self, 'vol_b', _non_negative(self.vol_b, 'boundary volume'))
    object.__setattr__(self, 'int_tau', to_exact(self.int_tau))
    object.__setattr__(self, 'int_tr_l', to_exact(self.int_tr_l))
    if self.dim == 1 and (self.int_tau != 0 or self.int_tr_l != 0):
      raise InvalidGeometryError("one-dimensional regions carry no curvature integrals")

  @property
  def dimension(self) -> int:
    return self.dim


GeometryDescriptor = Interval | Box | Ball | Annulus | Generic


def measures(g: GeometryDescriptor) -> Measures:
  """Exact measures. Boundary curvature uses the inward normal, so a ball has positive trace."""
  match g:
    case Interval(length=L):
      return Measures(1, L, sp.Integer(2), sp.Integer(0), sp.Integer(0))
    case Box(lengths=lengths):
      D = len(lengths)
      vol_b = 2 * sum(sp.Mul(*(lengths[:j] + lengths[j + 1:])) for j in range(D))
      return Measures(D, sp.Mul(*lengths), sp.simplify(vol_b), sp.Integer(0), sp.Integer(0))
    case Ball(dim=D, radius=R):
      vol_b = _sphere_volume(D, R)
      return Measures(D, _ball_volume(D, R), vol_b, sp.Integer(0), sp.simplify((D - 1) / R * vol_b))
    case Annulus(dim=D, inner_radius=a, outer_radius=b):
      inner, outer = _sphere_volume(D, a), _sphere_volume(D, b)
      int_tr_l = (D - 1) / b * outer - (D - 1) / a * inner
      return Measures(D, sp.simplify(_ball_volume(D, b) - _ball_volume(D, a)), sp.simplify(inner + outer),
                      sp.Integer(0), sp.simplify(int_tr_l))
    case Generic():
      return Measures(g.dim, g.vol_m, g.vol_b, g.int_tau, g.int_tr_l)
  raise InvalidGeometryError(f"Unknown geometry {g!r}")


def has_corners(g: GeometryDescriptor) -> bool:
  if isinstance(g, Box):
    return g.dimension >= 2
  if isinstance(g, Generic):
    return g.has_corners
  return False


def to_generic(g: GeometryDescriptor) -> Generic:
  m = measures(g)
  return Generic(m.dimension, m.vol_m, m.vol_b, m.int_tau, m.int_tr_l, has_corners=has_corners(g))


def scale(g: GeometryDescriptor, r) -> GeometryDescriptor:
  r = to_exact(r)
  if not r.is_real or not bool(r > 0):
    raise InvalidScaleError(f"scale factor must be positive, got {r}")
  match g:
    case Interval(length=L):
      return Interval(L * r)
    case Box(lengths=lengths):
      return Box(tuple(L * r for L in lengths))
    case Ball(dim=D, radius=R):
      return Ball(D, R * r)
    case Annulus(dim=D, inner_radius=a, outer_radius=b):
      return Annulus(D, a * r, b * r)
    case Generic(dim=D):
      return Generic(D, g.vol_m * r**D, g.vol_b * r**(D - 1), g.int_tau * r**(D - 2), g.int_tr_l * r**(D - 2),
                     has_corners=g.has_corners)
  raise InvalidGeometryError(f"Unknown geometry {g!r}")


# ============================================================================
# SHELLS
# ============================================================================
@dataclass(frozen=True)
class ShellRegions:
  inner: GeometryDescriptor
  annular: GeometryDescriptor
  outer: GeometryDescriptor


@dataclass(frozen=True)
class ShellConfiguration:
  """Cavity `inner` enclosed in its copy scaled by `r` about an interior point."""
  inner: GeometryDescriptor
  r: sp.Expr = field(default=sp.Integer(2))

  def __post_init__(self):
    r = to_exact(self.r)
    if not r.is_real or not bool(r > 1):
      raise DegenerateShellError(f"shell scale factor must exceed 1, got {r}")
    object.__setattr__(self, 'r', r)

  @property
  def dimension(self) -> int:
    return self.inner.dimension


@dataclass(frozen=True)
class PistonConfiguration:
  """Interval [0, r*a] split by a wall at a: regions [0, a], [a, r*a] and the whole."""
  inner_length: sp.Expr
  r: sp.Expr = field(default=sp.Integer(2))

  def __post_init__(self):
    object.__setattr__(self, 'inner_length', _positive(self.inner_length, 'inner_length'))
    r = to_exact(self.r)
    if not r.is_real or not bool(r > 1):
      raise DegenerateShellError(f"piston scale factor must exceed 1, got {r}")
    object.__setattr__(self, 'r', r)

  @property
  def dimension(self) -> int:
    return 1


def shell_regions(c: ShellConfiguration | PistonConfiguration) -> ShellRegions:
  if isinstance(c, PistonConfiguration):
    a = c.inner_length
    return ShellRegions(Interval(a), Interval((c.r - 1) * a), Interval(c.r * a))

  outer = scale(c.inner, c.r)
  m_in, m_out = measures(c.inner), measures(outer)
  annular = Generic(m_in.dimension,
                    sp.simplify(m_out.vol_m - m_in.vol_m),
                    sp.simplify(m_in.vol_b + m_out.vol_b),
                    sp.simplify(m_out.int_tau - m_in.int_tau),
                    # inward normal of the annular region is reversed on the inner boundary
                    sp.simplify(m_out.int_tr_l - m_in.int_tr_l),
                    has_corners=has_corners(c.inner))
  return ShellRegions(c.inner, annular, outer)


def annular_region(c: ShellConfiguration | PistonConfiguration) -> GeometryDescriptor:
  """Concrete annular region when its spectrum is computable, else its Generic measures."""
  if isinstance(c, PistonConfiguration):
    return shell_regions(c).annular
  if isinstance(c.inner, Ball):
    return Annulus(c.inner.dim, c.inner.radius, c.inner.radius * c.r)
  return shell_regions(c).annular
