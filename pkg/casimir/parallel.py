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

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar
import logging
import os

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

THREADS_ENV = 'CASIMIR_NUM_THREADS'


def num_threads() -> int:
  raw = os.environ.get(THREADS_ENV, '1')
  try:
    return max(1, int(raw))
  except ValueError:
    logger.warning("Ignoring %s=%r, expected an integer", THREADS_ENV, raw)
    return 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
  """Apply `fn` to every item, concurrently if configured, keeping input order."""
  items = list(items)
  workers = num_threads()
  if workers <= 1 or len(items) <= 1:
    return [fn(item) for item in items]
  with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
    return list(pool.map(fn, items))
