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
from pathlib import Path
import hashlib
import logging
import math
import orjson
import yaml

from casimir.errors import CasimirError, ConfigParseError, ConfigValidationError
from casimir.geometry import (Annulus, Ball, Box, Generic, GeometryDescriptor, Interval, PistonConfiguration,
                              ShellConfiguration)
from casimir.hk_coeff import BoundaryCondition, FieldKind, parse_bc

logger = logging.getLogger(__name__)

# ============================================================================
# SCHEMA
# ============================================================================
GEOMETRY_KINDS = ('interval', 'box', 'ball', 'annulus', 'generic')
OUTPUT_FORMATS = ('csv', 'json', 'hdf5')
TOP_LEVEL_KEYS = {'geometry', 'field', 'p', 'bc', 'temperatures', 'mu', 'omega_max', 'lambdas', 'n_max', 'window',
                  's_values', 'shell', 'output', 'tolerances'}
GEOMETRY_KEYS = {
  'interval': {'length'},
  'box': {'lengths', 'allow_corners'},
  'ball': {'dimension', 'radius'},
  'annulus': {'dimension', 'inner_radius', 'outer_radius'},
  'generic': {'dimension', 'volume', 'boundary_volume', 'scalar_curvature_integral',
              'boundary_curvature_integral', 'allow_corners'},
}
SHELL_KEYS = {'r_list', 'r', 'inner_length', 'q', 'modes_per_region', 'omega_r'}

# CLI flag -> config key
OVERRIDES = {
  'omega_max': 'omega_max',
  'mu': 'mu',
  'bc': 'bc',
  'temperatures': 'temperatures',
  'n_max': 'n_max',
}


@dataclass
class RunConfig:
  raw: dict
  geometry: GeometryDescriptor | None = None
  field_kind: FieldKind = FieldKind.SCALAR
  p: int = 0
  bc: BoundaryCondition | None = None
  temperatures: list = field(default_factory=lambda: [0.0])
  mu: float = 1.0
  omega_max: float | None = None
  lambdas: list = field(default_factory=list)
  n_max: int | None = None
  window: tuple | None = None
  s_values: list = field(default_factory=lambda: [2.0])
  shell: dict = field(default_factory=dict)
  output_format: str = 'csv'
  output_path: str | None = None
  mode_cache: str | None = None
  rtol: float = 1e-10
  allow_corners: bool = False

  @property
  def config_hash(self) -> str:
    return config_hash(self.raw)


  @property
  def spectrum_key(self) -> str:
    """Hash of the resolved keys a spectrum depends on, overrides included."""
    return config_hash({'geometry': self.geometry, 'field': self.field_kind.value, 'p': self.p,
                        'bc': self.bc.value if self.bc is not None else None, 'omega_max': self.omega_max})


  def require(self, *names: str) -> None:
    """Raise a validation error naming the first missing key a subcommand needs."""
    for name in names:
      if getattr(self, name) is None:
        raise ConfigValidationError(f"'{name}' is required for this subcommand")


# ============================================================================
# LOADING
# ============================================================================
def load_config(path: str | Path | None) -> dict:
  if path is None:
    return {}
  path = Path(path)
  if not path.exists():
    raise ConfigParseError(f"Config file {path} not found.")
  try:
    with open(path, 'r') as f:
      raw = yaml.safe_load(f)
  except yaml.YAMLError as e:
    raise ConfigParseError(f"Config file {path} is not valid YAML: {e}") from e
  if raw is None:
    return {}
  if not isinstance(raw, dict):
    raise ConfigValidationError(f"Config file {path} must hold a mapping, got {type(raw).__name__}")
  return raw


def apply_overrides(raw: dict, overrides: dict) -> dict:
  """Copy of `raw` with non-None CLI values replacing file keys."""
  merged = dict(raw)
  for flag, key in OVERRIDES.items():
    if overrides.get(flag) is not None:
      merged[key] = overrides[flag]
  output = dict(merged.get('output') or {})
  if overrides.get('format') is not None:
    output['format'] = overrides['format']
  if overrides.get('output') is not None:
    output['path'] = str(overrides['output'])
  if output:
    merged['output'] = output
  return merged


def _canonical(value):
  if isinstance(value, dict):
    return {str(k): _canonical(v) for k, v in value.items()}
  if isinstance(value, (list, tuple)):
    return [_canonical(v) for v in value]
  if isinstance(value, (str, int, float, bool)) or value is None:
    return value
  return str(value)


def config_hash(raw: dict) -> str:
  return hashlib.sha256(orjson.dumps(_canonical(raw), option=orjson.OPT_SORT_KEYS)).hexdigest()


# ============================================================================
# VALIDATION
# ============================================================================
def _unknown(block: dict, allowed: set, where: str) -> None:
  unknown = sorted(set(block) - allowed)
  if unknown:
    raise ConfigValidationError(f"Unknown keys {unknown} in {where}")


def _number(value, name: str, positive: bool = False, non_negative: bool = False) -> float:
  try:
    x = float(value)
  except (TypeError, ValueError):
    raise ConfigValidationError(f"'{name}' must be a number, got {value!r}") from None
  if not math.isfinite(x):
    raise ConfigValidationError(f"'{name}' must be finite, got {value!r}")
  if positive and x <= 0:
    raise ConfigValidationError(f"'{name}' must be positive, got {value!r}")
  if non_negative and x < 0:
    raise ConfigValidationError(f"'{name}' must be non-negative, got {value!r}")
  return x


def _number_list(value, name: str, **kwargs) -> list[float]:
  if isinstance(value, (int, float, str)):
    value = [value]
  if not isinstance(value, (list, tuple)):
    raise ConfigValidationError(f"'{name}' must be a list of numbers, got {value!r}")
  return [_number(v, name, **kwargs) for v in value]


def _integer(value, name: str, minimum: int = 0) -> int:
  if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
    raise ConfigValidationError(f"'{name}' must be an integer >= {minimum}, got {value!r}")
  return value


def build_geometry(block: dict) -> GeometryDescriptor:
  if not isinstance(block, dict) or 'kind' not in block:
    raise ConfigValidationError("geometry block needs a 'kind'")
  kind = str(block['kind']).lower()
  if kind not in GEOMETRY_KINDS:
    raise ConfigValidationError(f"Unknown geometry kind {kind!r}, expected one of {GEOMETRY_KINDS}")
  params = {k: v for k, v in block.items() if k != 'kind'}
  _unknown(params, GEOMETRY_KEYS[kind], f"geometry ({kind})")
  try:
    match kind:
      case 'interval':
        return Interval(params['length'])
      case 'box':
        return Box(tuple(params['lengths']))
      case 'ball':
        return Ball(params['dimension'], params['radius'])
      case 'annulus':
        return Annulus(params['dimension'], params['inner_radius'], params['outer_radius'])
      case 'generic':
        return Generic(params['dimension'], params['volume'], params['boundary_volume'],
                       params.get('scalar_curvature_integral', 0), params.get('boundary_curvature_integral', 0),
                       has_corners=bool(params.get('allow_corners', False)))
  except KeyError as e:
    raise ConfigValidationError(f"geometry ({kind}) is missing {e.args[0]!r}") from None
  except TypeError as e:
    raise ConfigValidationError(f"geometry ({kind}) has malformed parameters: {e}") from None


def build_run_config(raw: dict) -> RunConfig:
  _unknown(raw, TOP_LEVEL_KEYS, "config")
  config = RunConfig(raw=raw)

  if raw.get('geometry') is not None:
    config.geometry = build_geometry(raw['geometry'])
    config.allow_corners = bool(raw['geometry'].get('allow_corners', False))

  try:
    config.field_kind = FieldKind(str(raw.get('field', 'scalar')).lower())
  except ValueError:
    raise ConfigValidationError(f"Unknown field {raw.get('field')!r}, expected one of "
                                f"{[f.value for f in FieldKind]}") from None
  if config.field_kind is FieldKind.PFORM:
    config.p = _integer(raw.get('p', 1), 'p')
    if config.geometry is not None and config.p > config.geometry.dimension:
      raise ConfigValidationError(f"form degree p={config.p} exceeds the dimension {config.geometry.dimension}")
  elif config.field_kind is FieldKind.ELECTROMAGNETIC:
    config.p = 1
  if raw.get('bc') is not None:
    config.bc = parse_bc(str(raw['bc']), config.field_kind, config.p)

  if 'temperatures' in raw:
    config.temperatures = _number_list(raw['temperatures'], 'temperatures', non_negative=True)
  if 'mu' in raw:
    config.mu = _number(raw['mu'], 'mu', positive=True)
  if raw.get('omega_max') is not None:
    config.omega_max = _number(raw['omega_max'], 'omega_max', positive=True)
  if 'lambdas' in raw:
    config.lambdas = _number_list(raw['lambdas'], 'lambdas', positive=True)
  if raw.get('n_max') is not None:
    config.n_max = _integer(raw['n_max'], 'n_max')
  if raw.get('window') is not None:
    window = _number_list(raw['window'], 'window', positive=True)
    if len(window) != 2 or window[0] >= window[1]:
      raise ConfigValidationError(f"'window' must be [t_min, t_max] with t_min < t_max, got {raw['window']!r}")
    config.window = tuple(window)
  if 's_values' in raw:
    config.s_values = _number_list(raw['s_values'], 's_values')

  shell = raw.get('shell') or {}
  if not isinstance(shell, dict):
    raise ConfigValidationError("'shell' must be a mapping")
  _unknown(shell, SHELL_KEYS, "shell")
  config.shell = dict(shell)
  if 'r_list' in shell:
    config.shell['r_list'] = _number_list(shell['r_list'], 'shell.r_list', positive=True)
  if shell.get('q') is not None:
    config.shell['q'] = _number(shell['q'], 'shell.q')
  if shell.get('omega_r') is not None:
    config.shell['omega_r'] = _number(shell['omega_r'], 'shell.omega_r', positive=True)

  output = raw.get('output') or {}
  if not isinstance(output, dict):
    raise ConfigValidationError("'output' must be a mapping")
  _unknown(output, {'format', 'path', 'modes'}, "output")
  config.output_format = str(output.get('format', 'csv')).lower()
  if config.output_format not in OUTPUT_FORMATS:
    raise ConfigValidationError(f"Unknown output format {config.output_format!r}, expected one of {OUTPUT_FORMATS}")
  config.output_path = output.get('path')
  config.mode_cache = output.get('modes')

  tolerances = raw.get('tolerances') or {}
  _unknown(tolerances, {'rtol'}, "tolerances")
  if 'rtol' in tolerances:
    config.rtol = _number(tolerances['rtol'], 'tolerances.rtol', positive=True)
  return config


def build_shell(config: RunConfig) -> ShellConfiguration | PistonConfiguration:
  """Piston for an interval geometry, concentric scaled copy otherwise."""
  config.require('geometry')
  r = config.shell.get('r', 2)
  try:
    if isinstance(config.geometry, Interval):
      return PistonConfiguration(config.shell.get('inner_length', config.geometry.length), r)
    return ShellConfiguration(config.geometry, r)
  except CasimirError:
    raise
  except (TypeError, ValueError) as e:
    raise ConfigValidationError(f"Malformed shell block: {e}") from None


def read_run_config(path: str | Path | None, overrides: dict | None = None) -> RunConfig:
  raw = apply_overrides(load_config(path), overrides or {})
  config = build_run_config(raw)
  logger.info("Loaded config %s (sha256 %s)", path, config.config_hash[:12])
  return config
