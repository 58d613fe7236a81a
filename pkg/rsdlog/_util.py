"""
This module defines internal utility methods.
"""

from collections.abc import (
	Sequence)

import numpy as np

from .typing import (
	Seed)


def is_sequence(value):
	"""
	Check whether the value is a sequence (excludes strings).

	*value* is the value to check,

	Returns whether *value* is a sequence (:class:`bool`).
	"""
	return isinstance(value, Sequence) and not isinstance(value, (str, bytes))


def make_rng(seed: Seed) -> np.random.Generator:
	"""
	Get the random generator for the seed.

	*seed* (:class:`int`, :class:`numpy.random.Generator`,
	:class:`numpy.random.SeedSequence`, or ``None``) is the seed. A generator is
	returned as is so that callers can share one stream.

	Returns the :class:`numpy.random.Generator`.
	"""
	if isinstance(seed, np.random.Generator):
		return seed
	return np.random.default_rng(seed)


def rand_below(rng: np.random.Generator, bound: int) -> int:
	"""
	Draw a uniform integer in ``[0, bound)``. Bounds beyond 64 bits are drawn
	from concatenated 32-bit words.
	"""
	if bound <= 0:
		raise ValueError(f"{bound=!r} is not positive.")
	if bound < 2**62:
		return int(rng.integers(0, bound))

	words = (bound.bit_length() + 31) // 32 + 1
	while True:
		value = 0
		for word in rng.integers(0, 2**32, size=words, dtype=np.uint64):
			value = (value << 32) | int(word)
		limit = (1 << (32 * words)) - (1 << (32 * words)) % bound
		if value < limit:
			return value % bound
