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


from .AsymptoticsComponent import AsymptoticsComponent
from .BaseComponent import BaseComponent
from .CoefficientsComponent import CoefficientsComponent
from .FreeEnergyComponent import FreeEnergyComponent
from .HeatKernelComponent import HeatKernelComponent
from .ShellComponent import ShellComponent
from .SpectrumComponent import SpectrumComponent
from .VerifyComponent import VerifyComponent
from .ZetaComponent import ZetaComponent

__all__ = [
  'AsymptoticsComponent',
  'BaseComponent',
  'CoefficientsComponent',
  'FreeEnergyComponent',
  'HeatKernelComponent',
  'ShellComponent',
  'SpectrumComponent',
  'VerifyComponent',
  'ZetaComponent'
]
