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

"""Exception hierarchy shared by the library and the command line front-end.

Every error carries the process exit status `main.py` reports for it.
"""


class CasimirError(Exception):
  exit_code = 4


# ============================================================================
# INPUT ERRORS (exit 2 and 3)
# ============================================================================
class ConfigParseError(CasimirError, ValueError):
  exit_code = 2


class ConfigValidationError(CasimirError, ValueError):
  exit_code = 3


class InvalidGeometryError(CasimirError, ValueError):
  exit_code = 3


class InvalidScaleError(CasimirError, ValueError):
  exit_code = 3


class DegenerateShellError(CasimirError, ValueError):
  exit_code = 3


class InvalidDegreeError(CasimirError, ValueError):
  exit_code = 3


class CornerContributionError(CasimirError, ValueError):
  exit_code = 3


class UnsupportedGeometryError(CasimirError, ValueError):
  exit_code = 3


# ============================================================================
# NUMERIC ERRORS (exit 4)
# ============================================================================
class RootFindingError(CasimirError, ArithmeticError):
  def __init__(self, message: str, bracket: tuple[float, float] | None = None):
    super().__init__(message if bracket is None else f"{message} (bracket [{bracket[0]:.17g}, {bracket[1]:.17g}])")
    self.bracket = bracket


class InsufficientSpectrumError(CasimirError, ArithmeticError):
  def __init__(self, message: str, minimal_t: float | None = None, required_omega: float | None = None):
    super().__init__(message)
    self.minimal_t = minimal_t
    self.required_omega = required_omega


class UnavailableBoundError(CasimirError, ArithmeticError):
  pass


class WindowTooNarrowError(CasimirError, ArithmeticError):
  pass


class DivergenceMarginError(CasimirError, ArithmeticError):
  pass


class ContinuationOrderError(CasimirError, ArithmeticError):
  pass


class PoleError(CasimirError, ArithmeticError):
  pass


class CoverageError(CasimirError, ArithmeticError):
  pass


class NoLimitError(CasimirError, ArithmeticError):
  pass


# ============================================================================
# VERIFY (exit 5)
# ============================================================================
class InvariantFailure(CasimirError, AssertionError):
  exit_code = 5
