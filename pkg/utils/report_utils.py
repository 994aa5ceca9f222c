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
from datetime import datetime, timezone
from pathlib import Path
import io
import logging
import sys
import h5py
import numpy as np
import orjson
import pandas as pd

from casimir import SCHEMA_VERSION, __version__
from casimir.errors import ConfigValidationError
from casimir.spectrum import ModeList, TailModel

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY
FLOAT_FORMAT = '%.17g'


@dataclass
class Report:
  """Output of one subcommand: named tables (first is the main one) plus a JSON summary."""
  subcommand: str
  tables: dict = field(default_factory=dict)
  summary: dict = field(default_factory=dict)
  passed: bool = True


# ============================================================================
# HEADER
# ============================================================================
def header(config_hash: str, generated: str | None = None) -> dict:
  if generated is None:
    generated = datetime.now(timezone.utc).isoformat(timespec='seconds')
  return {'program': f'casimir-spectral {__version__}', 'schema': SCHEMA_VERSION,
          'config-sha256': config_hash, 'generated': generated}


def header_lines(head: dict) -> list[str]:
  return [head['program'], f"schema {head['schema']}", f"config-sha256 {head['config-sha256']}",
          f"generated {head['generated']}"]


# ============================================================================
# EMISSION
# ============================================================================
def _jsonable(value):
  if isinstance(value, dict):
    return {str(k): _jsonable(v) for k, v in value.items()}
  if isinstance(value, (list, tuple)):
    return [_jsonable(v) for v in value]
  if isinstance(value, np.generic):
    return value.item()
  if hasattr(value, 'to_dict'):
    return _jsonable(value.to_dict())
  if isinstance(value, (str, int, float, bool)) or value is None:
    return value
  return str(value)


def render_csv(report: Report, head: dict) -> str:
  buffer = io.StringIO()
  for line in header_lines(head):
    buffer.write(f"# {line}\n")
  buffer.write(f"# subcommand {report.subcommand}\n")
  for i, (name, table) in enumerate(report.tables.items()):
    if len(report.tables) > 1:
      if i:
        buffer.write("\n")
      buffer.write(f"# table {name}\n")
    table.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
  return buffer.getvalue()


def render_json(report: Report, head: dict) -> bytes:
  payload = {
    'header': head,
    'subcommand': report.subcommand,
    'passed': report.passed,
    'tables': {name: _jsonable(table.to_dict(orient='records')) for name, table in report.tables.items()},
    'summary': _jsonable(report.summary),
  }
  return orjson.dumps(payload, option=JSON_OPTIONS) + b"\n"


def _structured(table: pd.DataFrame) -> np.ndarray:
  columns = []
  for name in table.columns:
    values = table[name].to_numpy()
    if values.dtype == object:
      values = np.asarray([str(v).encode('utf-8') for v in values], dtype='S')
    columns.append((str(name), values))
  dtype = np.dtype([(name, values.dtype) for name, values in columns])
  array = np.zeros(len(table), dtype=dtype)
  for name, values in columns:
    array[name] = values
  return array


def write_hdf5(report: Report, head: dict, path: str | Path) -> None:
  with h5py.File(path, 'w') as hdf5:
    for key, value in head.items():
      hdf5.attrs[key] = value
    hdf5.attrs['subcommand'] = report.subcommand
    hdf5.attrs['summary'] = orjson.dumps(_jsonable(report.summary), option=orjson.OPT_SORT_KEYS).decode('utf-8')
    for name, table in report.tables.items():
      dataset = hdf5.create_dataset(name, data=_structured(table))
      dataset.attrs['rows'] = len(table)


def write_report(report: Report, output_format: str, path: str | Path | None, config_hash: str,
                 stream=None) -> None:
  head = header(config_hash)
  if path is not None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
  match output_format:
    case 'csv':
      text = render_csv(report, head)
      if path is None:
        (stream or sys.stdout).write(text)
      else:
        Path(path).write_text(text)
    case 'json':
      data = render_json(report, head)
      if path is None:
        stream = stream or sys.stdout
        if hasattr(stream, 'buffer'):
          stream.flush()
          stream.buffer.write(data)
        else:
          stream.write(data.decode('utf-8'))
      else:
        Path(path).write_bytes(data)
    case 'hdf5':
      if path is None:
        raise ConfigValidationError("hdf5 output needs output.path")
      write_hdf5(report, head, path)
    case _:
      raise ConfigValidationError(f"Unknown output format {output_format!r}")
  if path is not None:
    logger.info("Report saved -> %s", path)


# ============================================================================
# MODE LISTS
# ============================================================================
def save_mode_list(m: ModeList, path: str | Path, key: str | None = None) -> None:
  modes = np.zeros(len(m), dtype=np.dtype([('omega', np.float64), ('multiplicity', np.int64)]))
  modes['omega'] = m.omegas
  modes['multiplicity'] = m.multiplicities
  with h5py.File(path, 'w') as hdf5:
    dataset = hdf5.create_dataset('modes', data=modes)
    dataset.attrs['dimension'] = m.dimension
    dataset.attrs['omega_max'] = m.omega_max
    dataset.attrs['complete'] = m.complete
    dataset.attrs['source'] = orjson.dumps(_jsonable(m.source), option=orjson.OPT_SORT_KEYS).decode('utf-8')
    if key is not None:
      dataset.attrs['key'] = key
    if m.tail_model is not None:
      dataset.attrs['tail_c0'] = m.tail_model.c0
      dataset.attrs['tail_safety'] = m.tail_model.safety


def load_mode_list(path: str | Path, key: str | None = None) -> ModeList:
  """Read a mode list; with `key`, refuse a file saved under a different one."""
  path = Path(path)
  if not path.exists():
    raise FileNotFoundError(f"Mode list {path} not found.")
  with h5py.File(path, 'r') as hdf5:
    if 'modes' not in hdf5:
      raise ValueError(f"{path} holds no 'modes' dataset")
    dataset = hdf5['modes']
    modes = dataset[()]
    attrs = dict(dataset.attrs)
  if key is not None and attrs.get('key') != key:
    raise ValueError(f"{path} holds modes for a different spectrum")
  D = int(attrs['dimension'])
  tail = TailModel(float(attrs['tail_c0']), D, float(attrs['tail_safety'])) if 'tail_c0' in attrs else None
  return ModeList(np.asarray(modes['omega'], dtype=np.float64), np.asarray(modes['multiplicity'], dtype=np.int64),
                  D, float(attrs['omega_max']), orjson.loads(attrs['source']), tail, bool(attrs['complete']))
