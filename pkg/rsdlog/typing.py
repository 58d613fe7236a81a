"""
This module defines type hints.
"""
from __future__ import annotations

from typing import (
	List,  # Replaced by `list` in 3.9.
	Tuple,  # Replaced by `tuple` in 3.9.
	Union)  # Replaced by `X | Y` in 3.10.

import numpy as np

Code = int
"""
An element of a table field stored as its integer code (the base *p* packing
of its coefficients, constant term in the least significant digit).
"""

Vector = Tuple[int, ...]
"""
A vector over a field as a :class:`tuple` of element codes.
"""

Matrix = List[List[int]]
"""
A dense row-major matrix of element codes.
"""

Seed = Union[int, np.random.Generator, np.random.SeedSequence, None]
"""
Anything accepted as a random seed: an :class:`int`, a
:class:`numpy.random.SeedSequence`, a ready :class:`numpy.random.Generator`,
or ``None`` for fresh entropy.
"""
