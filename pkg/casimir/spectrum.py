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

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable
import logging
import math
import numpy as np
import sympy as sp
from scipy.optimize import brentq
from scipy.special import gamma as gamma_fn, gammaincc, jv, jvp, yv, yvp

from .errors import InvalidDegreeError, RootFindingError, UnavailableBoundError, UnsupportedGeometryError
from .geometry import Annulus, Ball, Box, GeometryDescriptor, Interval, measures
from .hk_coeff import BoundaryCondition, FieldKind, h
from .parallel import ordered_map

logger = logging.getLogger(__name__)

MERGE_RTOL = 1e-12
SCAN_STEP = 0.25


# ============================================================================
# MODE LISTS
# ============================================================================
@dataclass(frozen=True)
class TailModel:
  """Weyl-law model of the omitted spectrum, N(omega) ~ c0 omega^D / Gamma(D/2 + 1)."""
  c0: float
  dimension: int
  safety: float = 2.0

  def count(self, omega: float) -> float:
    return self.c0 * omega**self.dimension / gamma_fn(self.dimension / 2 + 1)


  def heat(self, t: float, omega_max: float) -> float:
    D = self.dimension
    return self.safety * self.c0 * t**(-D / 2) * gammaincc(D / 2 + 1, t * omega_max**2)


  def power_sum(self, s: float, omega_max: float) -> float:
    """Weyl estimate of the sum of omega^(-2s) over omega > omega_max; requires s > D/2."""
    D = self.dimension
    return self.c0 * D / gamma_fn(D / 2 + 1) * omega_max**(D - 2 * s) / (2 * s - D)


  def scaled(self, r: float) -> 'TailModel':
    return replace(self, c0=self.c0 * r**self.dimension)


@dataclass(frozen=True, eq=False)
class ModeList:
  """Non-zero eigenfrequencies below omega_max, ascending, with multiplicities."""
  omegas: np.ndarray
  multiplicities: np.ndarray
  dimension: int
  omega_max: float
  source: dict = field(default_factory=dict)
  tail_model: TailModel | None = None
  complete: bool = False

  def __len__(self) -> int:
    return len(self.omegas)


  @classmethod
  def from_modes(cls, omegas, multiplicities=None, dimension: int = 1, complete: bool = True,
                 source: dict | None = None) -> 'ModeList':
    """Build a list from explicit frequencies, e.g. a single oscillator."""
    omegas = np.asarray(omegas, dtype=np.float64)
    mults = np.ones(len(omegas), dtype=np.int64) if multiplicities is None else np.asarray(multiplicities, dtype=np.int64)
    keep = omegas > 0
    if not np.all(keep):
      logger.warning("Dropping %d zero modes", int(np.sum(~keep)))
    omegas, mults = _merge(omegas[keep], mults[keep])
    omega_max = float(omegas[-1]) if len(omegas) else 0.0
    return cls(omegas, mults, dimension, omega_max, source or {'kind': 'explicit'}, None, complete)

  @property
  def mode_count(self) -> int:
    return int(np.sum(self.multiplicities))

  @property
  def lowest(self) -> float:
    if len(self.omegas) == 0:
      raise UnavailableBoundError("empty spectrum has no lowest mode")
    return float(self.omegas[0])


  def truncate(self, omega_max: float) -> 'ModeList':
    keep = self.omegas <= omega_max
    return replace(self, omegas=self.omegas[keep], multiplicities=self.multiplicities[keep],
                   omega_max=min(self.omega_max, omega_max), complete=self.complete and bool(np.all(keep)))


  def counting_function(self, omega: float) -> int:
    return int(np.sum(self.multiplicities[self.omegas <= omega]))


  def weyl_count(self, omega: float) -> float:
    if self.tail_model is None:
      raise UnavailableBoundError("mode list has no tail model")
    return self.tail_model.count(omega)


  def scaled(self, r: float) -> 'ModeList':
    """Spectrum of the geometry with all lengths multiplied by r."""
    tail = None if self.tail_model is None else self.tail_model.scaled(r)
    return replace(self, omegas=self.omegas / r, omega_max=self.omega_max / r, tail_model=tail)


def _merge(omegas: np.ndarray, mults: np.ndarray, rtol: float = MERGE_RTOL) -> tuple[np.ndarray, np.ndarray]:
  """Sort and merge frequencies equal to rtol, summing multiplicities."""
  if len(omegas) == 0:
    return np.zeros(0), np.zeros(0, dtype=np.int64)
  order = np.argsort(omegas, kind='stable')
  omegas, mults = omegas[order], mults[order]
  new_group = np.empty(len(omegas), dtype=bool)
  new_group[0] = True
  new_group[1:] = np.diff(omegas) > rtol * omegas[1:]
  starts = np.flatnonzero(new_group)
  return omegas[starts], np.add.reduceat(mults, starts).astype(np.int64)


def heat_tail_bound(m: ModeList, t: float) -> float:
  """Upper bound on the heat trace of the modes above omega_max."""
  if m.complete:
    return 0.0
  if m.tail_model is None:
    raise UnavailableBoundError(f"no tail model for {m.source.get('kind', 'spectrum')}, cannot bound truncation")
  return float(m.tail_model.heat(t, m.omega_max))


def _weyl_tail(g: GeometryDescriptor, forms: int = 1) -> TailModel:
  mm = measures(g)
  D = mm.dimension
  return TailModel(float(forms * mm.vol_m / (4 * sp.pi)**sp.Rational(D, 2)), D)


def _empty_warning(m: ModeList) -> ModeList:
  if len(m) == 0:
    logger.warning("omega_max=%g contains no %s modes", m.omega_max, m.source.get('kind'))
  else:
    logger.info("Generated %d %s modes (%d distinct) below omega_max=%g",
                m.mode_count, m.source.get('kind'), len(m), m.omega_max)
  return m


# ============================================================================
# INTERVALS AND BOXES
# ============================================================================
def interval_spectrum(L, bc: BoundaryCondition, omega_max: float) -> ModeList:
  """omega_n = n pi / L for n >= 1; the Neumann constant is a zero mode and is left out."""
  g = Interval(L)
  length = float(g.length)
  n_max = int(math.floor(omega_max * length / math.pi * (1 + 1e-15)))
  n = np.arange(1, n_max + 1)
  omegas = n * math.pi / length
  omegas = omegas[omegas <= omega_max]
  m = ModeList(omegas, np.ones(len(omegas), dtype=np.int64), 1, float(omega_max),
               {'kind': 'interval', 'length': str(g.length), 'bc': bc.value}, _weyl_tail(g))
  return _empty_warning(m)


def _exact_weights(lengths: tuple) -> tuple[list[int], int] | None:
  """Integer weights w_j and modulus M with omega^2 = pi^2 sum(w_j n_j^2) / M, for rational lengths."""
  if not all(L.is_Rational for L in lengths):
    return None
  modulus = 1
  for L in lengths:
    modulus = math.lcm(modulus, int(L.p)**2)
  return [modulus * int(L.q)**2 // int(L.p)**2 for L in lengths], modulus


def _component_modes(lengths_f: list[float], sine_dirs: tuple, omega_max: float,
                     weights: list[int] | None, modulus: int | None) -> np.ndarray:
  """Keys (exact integers or omega^2) of one component: sine n >= 1, cosine n >= 0."""
  axes = []
  for j, L in enumerate(lengths_f):
    top = int(math.floor(omega_max * L / math.pi * (1 + 1e-15)))
    axes.append(np.arange(1 if j in sine_dirs else 0, top + 1, dtype=np.int64))
  grids = np.meshgrid(*axes, indexing='ij', sparse=True)
  if weights is not None:
    keys = sum(w * g.astype(np.int64)**2 for w, g in zip(weights, grids))
    omega = math.pi * np.sqrt(keys / modulus)
  else:
    keys = sum((g * math.pi / L)**2 for L, g in zip(lengths_f, grids))
    omega = np.sqrt(keys)
  keys = np.broadcast_to(keys, omega.shape).ravel()
  omega = omega.ravel()
  return keys[(omega > 0) & (omega <= omega_max)]


def box_pform_spectrum(lengths, p: int, bc: BoundaryCondition, omega_max: float) -> ModeList:
  """p-form Laplacian on a box, one component per direction set S with |S| = p.

  Absolute: sine modes along S, cosine modes elsewhere. Relative swaps the roles.
  """
  g = Box(tuple(lengths))
  D = g.dimension
  if p < 0 or p > D:
    raise InvalidDegreeError(f"form degree p={p} outside 0..{D}")
  lengths_f = [float(L) for L in g.lengths]

  exact = _exact_weights(g.lengths)
  weights, modulus = exact if exact is not None else (None, None)
  if exact is not None and modulus * (omega_max / math.pi)**2 * D > 2**62:
    logger.info("Box lattice too large for exact merging, merging to relative %g", MERGE_RTOL)
    weights, modulus = None, None

  def component(S: tuple) -> np.ndarray:
    sine_dirs = S if bc is BoundaryCondition.ABSOLUTE else tuple(j for j in range(D) if j not in S)
    return _component_modes(lengths_f, sine_dirs, omega_max, weights, modulus)

  keys = ordered_map(component, list(combinations(range(D), p)))
  keys = np.concatenate(keys) if keys else np.zeros(0)
  if weights is not None:
    unique, counts = np.unique(keys.astype(np.int64), return_counts=True)
    omegas = math.pi * np.sqrt(unique / modulus)
    mults = counts.astype(np.int64)
  else:
    omegas, mults = _merge(np.sqrt(keys.astype(np.float64)), np.ones(len(keys), dtype=np.int64))

  m = ModeList(omegas, mults, D, float(omega_max),
               {'kind': 'box', 'lengths': [str(L) for L in g.lengths], 'p': p, 'bc': bc.value},
               _weyl_tail(g, h(D, p)))
  return _empty_warning(m)


# ============================================================================
# BESSEL ZEROS
# ============================================================================
def _scan_roots(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, step: float) -> list[float]:
  """Roots of f on [lo, hi] from sign changes on a grid, refined by brentq."""
  if hi <= lo:
    return []
  n = int(math.ceil((hi - lo) / step))
  x = np.linspace(lo, hi, n + 1)
  with np.errstate(all='ignore'):
    y = f(x)
  if not np.all(np.isfinite(y)):
    bad = x[~np.isfinite(y)][0]
    raise RootFindingError("non-finite function value while scanning for roots", (float(bad), float(bad)))
  sign = np.sign(y)
  roots = list(x[sign == 0])
  for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
    a, b = float(x[i]), float(x[i + 1])
    try:
      roots.append(brentq(lambda z: float(f(np.array([z]))[0]), a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200))
    except (RuntimeError, ValueError) as e:
      raise RootFindingError(f"brentq did not converge: {e}", (a, b)) from e
  return sorted(roots)


def _mcmahon(nu: float, k: int) -> tuple[float, float]:
  mu = 4 * nu**2
  beta = (k + nu / 2 - 0.25) * math.pi
  first = (mu - 1) / (8 * beta)
  return beta - first - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * beta)**3), abs(first)


def bessel_zero(nu: float, k: int) -> float:
  """k-th positive zero of J_nu, McMahon seed refined by Newton, scan and brentq otherwise."""
  if nu < 0:
    raise ValueError(f"order must be non-negative, got {nu}")
  if k < 1:
    raise ValueError(f"zero index must be positive, got {k}")

  seed, correction = _mcmahon(nu, k)
  if correction < 0.3:
    z = seed
    for _ in range(50):
      dz = jv(nu, z) / jvp(nu, z)
      z -= dz
      if abs(dz) <= 1e-15 * abs(z):
        break
    if np.isfinite(z) and abs(z - seed) < 0.5 and abs(jv(nu, z)) <= 1e-12 * max(1.0, abs(jvp(nu, z)) * z):
      return float(z)
    logger.debug("Newton from McMahon seed failed for nu=%g k=%d, scanning", nu, k)

  lo = max(0.5 * nu, 0.05)
  hi = nu + (k + 2) * math.pi + 4 * max(nu, 1.0)**(1 / 3)
  for _ in range(8):
    roots = _scan_roots(lambda x: jv(nu, x), lo, hi, SCAN_STEP)
    if len(roots) >= k:
      return float(roots[k - 1])
    hi *= 2
  raise RootFindingError(f"zero {k} of J_{nu} not found", (lo, hi))


# ============================================================================
# BALLS AND ANNULI
# ============================================================================
def degeneracy(l: int, D: int) -> int:
  """Number of degree-l spherical harmonics on the (D-1)-sphere."""
  if l == 0:
    return 1
  return (2 * l + D - 2) * math.factorial(l + D - 3) // (math.factorial(l) * math.factorial(D - 2))


def _ball_radial(nu: float, D: int, bc: BoundaryCondition) -> Callable:
  if bc is BoundaryCondition.RELATIVE:
    return lambda z: jv(nu, z)
  return lambda z: (1 - D / 2) * jv(nu, z) + z * jvp(nu, z)


def _collect(per_l: list[tuple[int, list[float]]], D: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
  omegas, mults = [], []
  for l, roots in per_l:
    omegas.extend(z / radius for z in roots)
    mults.extend([degeneracy(l, D)] * len(roots))
  return _merge(np.asarray(omegas, dtype=np.float64), np.asarray(mults, dtype=np.int64))


def ball_scalar_spectrum(D: int, R, bc: BoundaryCondition, omega_max: float) -> ModeList:
  """Scalar modes of a D-ball: omega = z / R over zeros of the radial function of order l + D/2 - 1."""
  g = Ball(D, R)
  if g.dimension < 2:
    raise UnsupportedGeometryError("use interval_spectrum for one-dimensional balls")
  radius = float(g.radius)
  z_max = omega_max * radius
  l_max = int(math.ceil(z_max)) + D

  def roots_for(l: int) -> tuple[int, list[float]]:
    nu = l + D / 2 - 1
    return l, _scan_roots(_ball_radial(nu, D, bc), max(0.5 * nu, 0.05), z_max, SCAN_STEP)

  omegas, mults = _collect(ordered_map(roots_for, range(l_max + 1)), D, radius)
  m = ModeList(omegas, mults, D, float(omega_max),
               {'kind': 'ball', 'dimension': D, 'radius': str(g.radius), 'bc': bc.value}, _weyl_tail(g))
  return _empty_warning(m)


def _unit(J: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
  """(J, Y) / hypot(J, Y); an overflowed Y leaves the pure Y direction."""
  M = np.hypot(J, Y)
  with np.errstate(invalid='ignore', divide='ignore'):
    c = np.where(np.isinf(Y), 0.0, J / M)
    s = np.where(np.isinf(Y), np.sign(Y), Y / M)
  return c, s


def _annulus_radial(nu: float, D: int, bc: BoundaryCondition, a: float, b: float) -> Callable:
  """Cross product of the two radial solutions over the product of their moduli, bounded and pole-free."""
  if bc is BoundaryCondition.RELATIVE:
    J = lambda x: jv(nu, x)
    Y = lambda x: yv(nu, x)
  elif D == 2:
    J = lambda x: x * jvp(nu, x)
    Y = lambda x: x * yvp(nu, x)
  else:
    J = lambda x: (1 - D / 2) * jv(nu, x) + x * jvp(nu, x)
    Y = lambda x: (1 - D / 2) * yv(nu, x) + x * yvp(nu, x)

  def cross(omega: np.ndarray) -> np.ndarray:
    ca, sa = _unit(J(omega * a), Y(omega * a))
    cb, sb = _unit(J(omega * b), Y(omega * b))
    return ca * sb - cb * sa
  return cross


def annulus_scalar_spectrum(D: int, Rin, Rout, bc: BoundaryCondition, omega_max: float) -> ModeList:
  g = Annulus(D, Rin, Rout)
  if g.dimension < 2:
    raise UnsupportedGeometryError("a one-dimensional annulus is a pair of intervals")
  a, b = float(g.inner_radius), float(g.outer_radius)
  step = min(SCAN_STEP / b, 0.1 * math.pi / (b - a))
  l_max = int(math.ceil(omega_max * b)) + D

  def roots_for(l: int) -> tuple[int, list[float]]:
    nu = l + D / 2 - 1
    return l, _scan_roots(_annulus_radial(nu, D, bc, a, b), max(1e-3, 0.5 * nu) / b, omega_max, step)

  omegas, mults = _collect(ordered_map(roots_for, range(l_max + 1)), D, 1.0)
  m = ModeList(omegas, mults, D, float(omega_max),
               {'kind': 'annulus', 'dimension': D, 'inner_radius': str(g.inner_radius),
                'outer_radius': str(g.outer_radius), 'bc': bc.value}, _weyl_tail(g))
  return _empty_warning(m)


def generate_spectrum(g: GeometryDescriptor, field_kind: FieldKind, bc: BoundaryCondition, omega_max: float,
                      p: int = 0) -> ModeList:
  """Spectrum for any supported geometry and field."""
  if field_kind is FieldKind.ELECTROMAGNETIC:
    raise UnsupportedGeometryError("one-form mode lists are not constructed; use em_heat_trace on boxes")
  degree = p if field_kind is FieldKind.PFORM else 0
  match g:
    case Interval(length=L) if degree == 0:
      return interval_spectrum(L, bc, omega_max)
    case Interval(length=L):
      return box_pform_spectrum((L,), degree, bc, omega_max)
    case Box(lengths=lengths):
      return box_pform_spectrum(lengths, degree, bc, omega_max)
    case Ball(dim=D, radius=R) if degree == 0:
      return ball_scalar_spectrum(D, R, bc, omega_max)
    case Annulus(dim=D, inner_radius=a, outer_radius=b) if degree == 0:
      return annulus_scalar_spectrum(D, a, b, bc, omega_max)
  raise UnsupportedGeometryError(f"no spectrum generator for {type(g).__name__} with {field_kind.value} field, p={degree}")

