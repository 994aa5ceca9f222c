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


import logging
import sys
import warnings

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(message)s'


def verbosity_level(verbose: int) -> int:
  """-v for INFO, -vv for DEBUG, WARNING otherwise."""
  return max(logging.WARNING - 10 * verbose, logging.DEBUG)


def configure_logging(verbose: int = 0) -> None:
  # stdout carries the report, so everything else goes to stderr
  logging.basicConfig(level=verbosity_level(verbose), format=LOG_FORMAT, stream=sys.stderr, force=True)
  logging.captureWarnings(True)
  if verbose < 2:
    warnings.filterwarnings('ignore', category=RuntimeWarning, module='numpy')
