"""
This module implements size padding for moment subset-sum instances and a
brute-force oracle to check that padding preserves the answer.

An instance ``(A, k, m_1, ..., m_d)`` asks for a *k*-subset of *A* whose
power sums ``sum(s**r)`` equal ``m_r`` for ``r = 1..d``.
"""

import itertools
import logging
import math
from typing import (
	Any,
	Dict,  # Replaced by `dict` in 3.9.
	Iterable,  # Replaced by `collections.abc.Iterable` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple)  # Replaced by `tuple` in 3.9.

from ._util import (
	make_rng)
from .errors import (
	BadParams,
	InstanceTooLarge,
	MalformedInstance)
from .typing import (
	Seed)

logger = logging.getLogger(__name__)

DEFAULT_ENUM_BOUND = 10**7
"""
The default bound on the number of *k*-subsets the oracle may enumerate.
"""


class MSSInstance(object):
	"""
	The :class:`.MSSInstance` class is a moment subset-sum instance. The
	elements are kept sorted and the integers are unbounded.
	"""

	def __init__(self, A: Iterable[int], k: int, moments: Sequence[int]) -> None:
		"""
		Initializes the :class:`.MSSInstance` instance.

		*A* (:class:`~collections.abc.Iterable` of :class:`int`) contains the
		distinct elements.

		*k* (:class:`int`) is the subset size, ``1 <= k <= |A|``.

		*moments* (:class:`~collections.abc.Sequence` of :class:`int`) contains
		the targets ``m_1, ..., m_d`` with ``d >= 1``.
		"""
		A = [int(a) for a in A]
		if len(set(A)) != len(A):
			raise BadParams(f"{A=!r} contains repeated elements.")
		if not isinstance(k, int) or not 1 <= k <= len(A):
			raise BadParams(f"{k=!r} is not in [1, {len(A)}].")
		moments = tuple(int(m) for m in moments)
		if not moments:
			raise BadParams("At least one moment is required.")

		self.__A: Tuple[int, ...] = tuple(sorted(A))
		self.__k = k
		self.__moments = moments

	@property
	def A(self) -> Tuple[int, ...]:
		return self.__A

	@property
	def bound(self) -> int:
		"""
		*bound* (:class:`int`) is ``U = max |a|``.
		"""
		return max(abs(a) for a in self.__A)

	@property
	def d(self) -> int:
		return len(self.__moments)

	@property
	def k(self) -> int:
		return self.__k

	@property
	def moments(self) -> Tuple[int, ...]:
		return self.__moments

	def is_witness(self, subset: Sequence[int]) -> bool:
		"""
		Check whether *subset* is a *k*-subset of *A* matching every moment.
		"""
		members = set(self.__A)
		if len(subset) != self.__k or len(set(subset)) != self.__k or any(s not in members for s in subset):
			return False
		return all(sum(s**r for s in subset) == m for r, m in enumerate(self.__moments, 1))

	def to_json(self) -> Dict[str, Any]:
		return {'A': list(self.__A), 'k': self.__k, 'm': list(self.__moments)}

	def __eq__(self, other: Any) -> bool:
		if isinstance(other, MSSInstance):
			return (self.__A, self.__k, self.__moments) == (other.A, other.k, other.moments)
		return NotImplemented

	def __hash__(self) -> int:
		return hash((self.__A, self.__k, self.__moments))

	def __repr__(self) -> str:
		return f"MSSInstance(|A|={len(self.__A)}, k={self.__k}, m={list(self.__moments)!r})"


def load_mss(doc: Any, path: str = "mss") -> MSSInstance:
	"""
	Load an instance from ``{"A": [int], "k": int, "m": [int]}``.

	Raises :class:`.MalformedInstance` on a malformed document.
	"""
	if not isinstance(doc, dict):
		raise MalformedInstance(path, "expected an object")
	for key in ('A', 'm'):
		items = doc.get(key)
		if not isinstance(items, list):
			raise MalformedInstance(f"{path}.{key}", "expected a list")
		for i, item in enumerate(items):
			if not isinstance(item, int) or isinstance(item, bool):
				raise MalformedInstance(f"{path}.{key}[{i}]", "expected an integer")
	if not isinstance(doc.get('k'), int):
		raise MalformedInstance(f"{path}.k", "expected an integer")
	return MSSInstance(doc['A'], doc['k'], doc['m'])


def pad_instance(inst: MSSInstance, M: int) -> MSSInstance:
	"""
	Pad an instance with *M* dummy elements ``R, R + 1, ..., R + M - 1`` where
	``R = |m_1| + k U + 1`` and ``U = max |a|``.

	A *k*-subset using a dummy has first moment at least ``R - (k - 1) U``,
	which exceeds ``|m_1|``, so the padded instance has the same answer.

	*inst* (:class:`.MSSInstance`) is the instance.

	*M* (:class:`int`) is the number of dummies, at least 1.

	Returns the padded :class:`.MSSInstance`.
	"""
	if not isinstance(M, int) or M < 1:
		raise BadParams(f"{M=!r} is not a positive pad count.")
	R = abs(inst.moments[0]) + inst.k * inst.bound + 1
	return MSSInstance(inst.A + tuple(range(R, R + M)), inst.k, inst.moments)


def brute_force_mss(inst: MSSInstance, bound: int = DEFAULT_ENUM_BOUND) -> Optional[Tuple[int, ...]]:
	"""
	Decide an instance by enumeration.

	Subsets are visited in lexicographic order of the sorted elements. For
	each ``(k - 1)``-prefix the last element is fixed by ``m_1`` and looked up
	directly, so the first witness found is the lexicographically first.

	*inst* (:class:`.MSSInstance`) is the instance.

	*bound* (:class:`int`) bounds ``C(|A|, k)``.

	Raises :class:`.InstanceTooLarge` when ``C(|A|, k)`` exceeds *bound*.

	Returns the witness subset (:class:`tuple`), or ``None`` for NO.
	"""
	A, k = inst.A, inst.k
	count = math.comb(len(A), k)
	if count > bound:
		raise InstanceTooLarge(f"C({len(A)}, {k}) = {count} exceeds {bound}.")

	m1 = inst.moments[0]
	where = {a: i for i, a in enumerate(A)}
	for prefix in itertools.combinations(range(len(A) - 1), k - 1):
		need = m1 - sum(A[i] for i in prefix)
		j = where.get(need)
		if j is None or (prefix and j <= prefix[-1]):
			continue
		subset = tuple(A[i] for i in prefix) + (need,)
		if all(sum(s**r for s in subset) == m for r, m in enumerate(inst.moments[1:], 2)):
			logger.debug("Witness %r for %r.", subset, inst)
			return subset
	return None


def generate_instance(
	size: int,
	k: int,
	d: int,
	seed: Seed = None,
	planted: bool = True,
	value_bound: Optional[int] = None,
) -> MSSInstance:
	"""
	Generate a random instance.

	The elements are *size* distinct integers in ``[-V, V]``. The moments are
	those of a random *k*-subset, and when *planted* is ``False`` the first
	moment is shifted by a random nonzero amount, which usually (not always)
	gives a NO instance.

	*value_bound* (:class:`int` or ``None``) is *V*. Default is ``None`` for
	``3 * size``.

	Returns the :class:`.MSSInstance`.
	"""
	if d < 1:
		raise BadParams(f"{d=!r} is not positive.")
	rng = make_rng(seed)
	V = 3 * size if value_bound is None else value_bound
	if 2 * V + 1 < size:
		raise BadParams(f"Cannot draw {size} distinct values from [-{V}, {V}].")
	A = [int(a) - V for a in rng.choice(2 * V + 1, size=size, replace=False)]
	subset = [A[int(i)] for i in rng.choice(size, size=k, replace=False)]
	moments = [sum(s**r for s in subset) for r in range(1, d + 1)]
	if not planted:
		delta = int(rng.integers(1, V + 1)) * (1 if rng.random() < 0.5 else -1)
		moments[0] += delta
	return MSSInstance(A, k, moments)
