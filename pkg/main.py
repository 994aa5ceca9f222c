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


# Hotfix run using python main.py (adding the repository root to path)
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import argparse
import logging

from casimir import __version__
from casimir.errors import CasimirError
from casimir.verify import CHECK_GROUPS
from components import *
from utils.config_utils import OUTPUT_FORMATS, read_run_config
from utils.log_utils import configure_logging
from utils.report_utils import write_report

logger = logging.getLogger('casimir')

# ============================================================================
# CONFIGURATION
# ============================================================================
SUBCOMMANDS = {
  'spectrum': (SpectrumComponent, "Eigenfrequencies with multiplicities up to omega_max."),
  'heat-kernel': (HeatKernelComponent, "Fit heat-trace coefficients from the spectrum."),
  'coefficients': (CoefficientsComponent, "Heat coefficients, closed forms first and fitted beyond."),
  'zeta': (ZetaComponent, "Spectral zeta function values, zeta'(0) and the s = -1/2 data."),
  'free-energy': (FreeEnergyComponent, "Regularized free energy over the temperature grid."),
  'asymptotics': (AsymptoticsComponent, "High-temperature series and its residual."),
  'shell': (ShellComponent, "Cavity enclosed in a large scaled copy of itself."),
  'verify': (VerifyComponent, "Run the built-in invariant suite."),
}


def build_parser() -> argparse.ArgumentParser:
  parser = argparse.ArgumentParser(prog='casimir-spectral',
                                   description="Finite-temperature Casimir free energies from spectral zeta functions.")
  parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
  subparsers = parser.add_subparsers(dest='subcommand', required=True)
  for name, (_, help_text) in SUBCOMMANDS.items():
    sub = subparsers.add_parser(name, help=help_text, description=help_text)
    sub.add_argument('config', nargs='?' if name == 'verify' else None, help="YAML run configuration.")
    sub.add_argument('-v', '--verbose', action='count', default=0, help="Increase verbosity (-v, -vv).")
    sub.add_argument('--omega-max', type=float, help="Spectrum cut-off, overrides omega_max.")
    sub.add_argument('--mu', type=float, help="Renormalization scale, overrides mu.")
    sub.add_argument('--bc', type=str, help="Boundary condition, overrides bc.")
    sub.add_argument('--temperatures', type=float, nargs='+', help="Temperature grid, overrides temperatures.")
    sub.add_argument('--n-max', type=int, help="Coefficient order, overrides n_max.")
    sub.add_argument('--format', choices=OUTPUT_FORMATS, help="Report format, overrides output.format.")
    sub.add_argument('--output', type=str, help="Report path, overrides output.path (default stdout).")
    if name == 'verify':
      sub.add_argument('--groups', nargs='+', choices=list(CHECK_GROUPS), help="Check groups to run (default all).")
  return parser


# ============================================================================
# ENTRY POINT
# ============================================================================
def main(argv: list[str] | None = None) -> int:
  args = build_parser().parse_args(argv)
  configure_logging(args.verbose)
  overrides = {key: getattr(args, key) for key in ('omega_max', 'mu', 'bc', 'temperatures', 'n_max', 'format', 'output')}

  try:
    config = read_run_config(args.config, overrides)
    component_cls, _ = SUBCOMMANDS[args.subcommand]
    if args.subcommand == 'verify':
      component = component_cls(config, args.groups)
    else:
      component = component_cls(config)
    report = component.run()
    write_report(report, config.output_format, config.output_path, config.config_hash)
    component.check()
  except CasimirError as e:
    logger.error("%s: %s", type(e).__name__, e)
    return e.exit_code
  except FileNotFoundError as e:
    logger.error(str(e))
    return 2
  except ValueError as e:
    logger.error("Invalid input: %s", e)
    return 3
  except ArithmeticError as e:
    logger.error("Numeric failure: %s", e)
    return 4
  return 0


if __name__ == '__main__':
  sys.exit(main())
