"""
This module implements Reed-Solomon code descriptors with their Vandermonde
generator and parity-check matrices, encoding, syndromes, the Hamming
metric, codeword enumeration and dual codes.
"""

import itertools
import logging
from typing import (
	Any,
	Dict,  # Replaced by `dict` in 3.9.
	Iterator,  # Replaced by `collections.abc.Iterator` in 3.9.
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple,  # Replaced by `tuple` in 3.9.
	Union)  # Replaced by `X | Y` in 3.10.

import numpy as np

from . import _linalg
from .errors import (
	CodeTooLarge,
	DegreeTooHigh,
	DuplicatePoint,
	FieldMismatch,
	LengthMismatch,
	MalformedInstance,
	OutOfRange)
from .ffield import (
	MAX_TABLE_ORDER,
	ExtField,
	FieldElem,
	construct_field,
	dump_element,
	field_from_json,
	field_of_order,
	load_element)
from .poly import (
	Poly,
	interpolate_codes)
from .typing import (
	Matrix,
	Vector)

logger = logging.getLogger(__name__)

DEFAULT_ENUM_BOUND = 2**24
"""
The largest number of codewords enumerated by brute force.
"""

_CHUNK = 2**14
"""
The number of messages encoded per vectorized block.
"""


class RSCode(object):
	"""
	The :class:`.RSCode` class describes the Reed-Solomon code
	``RS[n, k]_q = {(f(a_1), ..., f(a_n)) : deg f < k}``.
	"""

	def __init__(
		self,
		field: ExtField,
		k: int,
		n: Optional[int] = None,
		eval_points: Optional[Sequence[Union[int, FieldElem]]] = None,
	) -> None:
		"""
		Initializes the :class:`.RSCode` instance.

		*field* (:class:`.ExtField`) is F_q.

		*k* (:class:`int`) is the dimension.

		*n* (:class:`int` or ``None``) is the length. Default is ``None`` for the
		number of evaluation points, or *q* when those are omitted too.

		*eval_points* (:class:`~collections.abc.Sequence` or ``None``) contains the
		pairwise distinct evaluation points. Default is ``None`` for the first *n*
		elements in the field's canonical order.
		"""
		if not isinstance(field, ExtField):
			raise TypeError(f"{field=!r} is not an ExtField.")

		if eval_points is None:
			if n is None:
				n = field.q
			elif not 1 <= n <= field.q:
				raise OutOfRange(f"{n=!r} is not in [1, {field.q}].")
			points = tuple(field.elements()[:n])
		else:
			codes = []
			for a in eval_points:
				if isinstance(a, FieldElem):
					if a.field != field:
						raise FieldMismatch(f"Evaluation point {a!r} is not in {field!r}.")
					a = a.value
				a = int(a)
				if not 0 <= a < field.q:
					raise OutOfRange(f"Evaluation point {a!r} is not a code of {field!r}.")
				codes.append(a)
			if len(set(codes)) != len(codes):
				raise DuplicatePoint(f"Evaluation points {codes!r} are not distinct.")
			points = tuple(codes)
			if n is not None and n != len(points):
				raise LengthMismatch(f"{n=!r} does not match {len(points)} evaluation points.")
			n = len(points)

		if not isinstance(k, int) or not 1 <= k <= n:
			raise OutOfRange(f"{k=!r} is not in [1, {n}].")

		self.__field = field
		self.__n = n
		self.__k = k
		self.__points: Vector = points

		self.__generator: Optional[Matrix] = None
		self.__parity: Optional[Matrix] = None

	def __eq__(self, other: Any) -> bool:
		return (
			isinstance(other, RSCode)
			and other.field == self.__field
			and other.k == self.__k
			and other.eval_points == self.__points
		)

	def __hash__(self) -> int:
		return hash((self.__field.key, self.__k, self.__points))

	def __repr__(self) -> str:
		return f"RSCode(q={self.__field.q}, n={self.__n}, k={self.__k})"

	@property
	def eval_points(self) -> Vector:
		"""
		*eval_points* (:class:`tuple` of :class:`int`) contains the evaluation
		point codes.
		"""
		return self.__points

	@property
	def field(self) -> ExtField:
		return self.__field

	@property
	def full_support(self) -> bool:
		"""
		*full_support* (:class:`bool`) is whether the code is evaluated at every
		element of the field.
		"""
		return self.__n == self.__field.q

	@property
	def k(self) -> int:
		return self.__k

	@property
	def n(self) -> int:
		return self.__n

	@property
	def size(self) -> int:
		"""
		*size* (:class:`int`) is the number of codewords ``q**k``.
		"""
		return self.__field.q**self.__k

	def generator_matrix(self) -> Matrix:
		"""
		Get the ``k x n`` Vandermonde generator matrix with row *i* equal to
		``(a_1**i, ..., a_n**i)``.
		"""
		if self.__generator is None:
			self.__generator = _vandermonde(self.__field, self.__points, self.__k)
		return [list(r) for r in self.__generator]

	def parity_check_matrix(self) -> Matrix:
		"""
		Get the ``(n - k) x n`` parity-check matrix.

		For a full-support code this is the Vandermonde matrix with rows of
		powers ``0, ..., n - k - 1``. A punctured code additionally scales column
		*j* by ``1 / prod(a_j - a_l for l != j)`` so that ``G H^T = 0``.
		"""
		if self.__parity is None:
			field = self.__field
			rows = _vandermonde(field, self.__points, self.__n - self.__k)
			if not self.full_support:
				mults = []
				for j, a in enumerate(self.__points):
					denom = 1
					for l, b in enumerate(self.__points):
						if l != j:
							denom = field.mul(denom, field.sub(a, b))
					mults.append(field.inv(denom))
				rows = [[field.mul(x, v) for x, v in zip(row, mults)] for row in rows]
			self.__parity = rows
		return [list(r) for r in self.__parity]

	def dual(self) -> 'RSCode':
		"""
		Get the dual of a full-support code, which is ``RS[q, q - k]_q``.
		"""
		if not self.full_support:
			raise OutOfRange(f"{self!r} is not full support; use dual_basis().")
		elif self.__k == self.__n:
			raise OutOfRange(f"{self!r} has a trivial dual.")
		return RSCode(self.__field, self.__n - self.__k, eval_points=self.__points)

	def to_json(self) -> Dict[str, Any]:
		field = self.__field
		return {
			'q': field.to_json(),
			'n': self.__n,
			'k': self.__k,
			'eval_points': [dump_element(field, a) for a in self.__points],
		}


class ReceivedWord(object):
	"""
	The :class:`.ReceivedWord` class is a word of F_q^n attached to a code.
	"""

	def __init__(self, code: RSCode, entries: Sequence[Union[int, FieldElem]]) -> None:
		"""
		Initializes the :class:`.ReceivedWord` instance.

		*code* (:class:`.RSCode`) is the code.

		*entries* (:class:`~collections.abc.Sequence`) contains the *n* entries.
		"""
		self.__code = code
		self.__entries: Vector = _as_vector(code.field, entries, code.n)

	@property
	def code(self) -> RSCode:
		return self.__code

	@property
	def entries(self) -> Vector:
		return self.__entries

	def __len__(self) -> int:
		return len(self.__entries)

	def __iter__(self) -> Iterator[int]:
		return iter(self.__entries)

	def __repr__(self) -> str:
		return f"ReceivedWord({self.__code!r}, {list(self.__entries)!r})"


class Syndrome(object):
	"""
	The :class:`.Syndrome` class is ``H y^T`` for a word *y*.
	"""

	def __init__(self, code: RSCode, entries: Sequence[int]) -> None:
		self.__code = code
		self.__entries: Vector = _as_vector(code.field, entries, code.n - code.k)

	@property
	def code(self) -> RSCode:
		return self.__code

	@property
	def entries(self) -> Vector:
		return self.__entries

	def is_zero(self) -> bool:
		return not any(self.__entries)

	def __eq__(self, other: Any) -> bool:
		if isinstance(other, Syndrome):
			return other.code == self.__code and other.entries == self.__entries
		return NotImplemented

	def __hash__(self) -> int:
		return hash(self.__entries)

	def __repr__(self) -> str:
		return f"Syndrome({list(self.__entries)!r})"


def _vandermonde(field: ExtField, points: Sequence[int], rows: int) -> Matrix:
	out = []
	row = [1] * len(points)
	for _ in range(rows):
		out.append(list(row))
		row = [field.mul(x, a) for x, a in zip(row, points)]
	return out


def _as_vector(field: ExtField, entries: Sequence[Any], length: int) -> Vector:
	if isinstance(entries, (ReceivedWord, Syndrome)):
		entries = entries.entries
	out = []
	for e in entries:
		if isinstance(e, FieldElem):
			if e.field != field:
				raise FieldMismatch(f"Entry {e!r} is not in {field!r}.")
			e = e.value
		out.append(int(e))
	if len(out) != length:
		raise LengthMismatch(f"Expected {length} entries, got {len(out)}.")
	return tuple(out)


def generator_matrix(code: RSCode) -> Matrix:
	return code.generator_matrix()


def parity_check_matrix(code: RSCode) -> Matrix:
	return code.parity_check_matrix()


def encode(code: RSCode, message: Union[Poly, Sequence[int]]) -> Vector:
	"""
	Encode a message polynomial.

	*code* (:class:`.RSCode`) is the code.

	*message* (:class:`.Poly` or :class:`~collections.abc.Sequence` of codes) is
	the message of degree less than *k*.

	Raises :class:`.DegreeTooHigh` when the degree is at least *k*.

	Returns the codeword (:class:`tuple` of codes).
	"""
	field = code.field
	if isinstance(message, Poly):
		if message.field != field:
			raise FieldMismatch(f"{message!r} is not over {field!r}.")
		coeffs = list(message.coeffs)
	else:
		coeffs = list(_as_vector(field, message, len(message)))
		while coeffs and coeffs[-1] == 0:
			coeffs.pop()
	if len(coeffs) > code.k:
		raise DegreeTooHigh(f"Message degree {len(coeffs) - 1} is not below k={code.k}.")

	add, mul = field.add, field.mul
	out = []
	for a in code.eval_points:
		acc = 0
		for c in reversed(coeffs):
			acc = add(mul(acc, a), c)
		out.append(acc)
	return tuple(out)


def message_of(code: RSCode, codeword: Sequence[int]) -> Poly:
	"""
	Recover the message polynomial of a codeword by interpolating its first
	*k* coordinates.
	"""
	word = _as_vector(code.field, codeword, code.n)
	k = code.k
	return Poly(code.field, interpolate_codes(code.field, code.eval_points[:k], word[:k]))


def syndrome(code: RSCode, y: Union[ReceivedWord, Sequence[int]]) -> Syndrome:
	"""
	Compute the syndrome ``H y^T``.

	Raises :class:`.LengthMismatch` when *y* does not have length *n*.

	Returns the :class:`.Syndrome`.
	"""
	word = _as_vector(code.field, y, code.n)
	return Syndrome(code, _linalg.mat_vec(code.field, code.parity_check_matrix(), word))


def weight(y: Sequence[int]) -> int:
	return sum(1 for e in _codes(y) if e)


def _codes(y: Any) -> Tuple[Any, ...]:
	if isinstance(y, (ReceivedWord, Syndrome)):
		return y.entries
	return tuple(e.value if isinstance(e, FieldElem) else e for e in y)


def hamming(y: Sequence[int], z: Union[Sequence[int], RSCode, None] = None, bound: int = DEFAULT_ENUM_BOUND) -> int:
	"""
	Get a Hamming distance.

	*y* (:class:`~collections.abc.Sequence`) is a word.

	*z* (:class:`~collections.abc.Sequence`, :class:`.RSCode` or ``None``) is the
	second word, or a code to measure the distance from *y* to its nearest
	codeword. Default is ``None`` for the weight of *y*.

	*bound* (:class:`int`) caps the codeword enumeration.

	Returns the distance (:class:`int`).
	"""
	if z is None:
		return weight(y)
	elif isinstance(z, RSCode):
		return distance_to_code(y, z, bound=bound)
	a, b = _codes(y), _codes(z)
	if len(a) != len(b):
		raise LengthMismatch(f"Lengths {len(a)} and {len(b)} differ.")
	return sum(1 for x, w in zip(a, b) if x != w)


def message_codes(code: RSCode, start: int, stop: int) -> np.ndarray:
	"""
	Get the messages with lexicographic indices in ``[start, stop)``.

	Coordinate 0 is the most significant digit and digits follow the field's
	canonical element order.

	Returns the ``(stop - start) x k`` :class:`numpy.ndarray` of codes.
	"""
	field = code.field
	q, k = field.q, code.k
	elements = np.asarray(field.elements(), dtype=np.int64)
	idx = np.arange(start, stop, dtype=np.int64)
	digits = np.empty((len(idx), k), dtype=np.int64)
	for i in range(k - 1, -1, -1):
		digits[:, i] = idx % q
		idx //= q
	return elements[digits]


def encode_block(code: RSCode, messages: np.ndarray) -> np.ndarray:
	"""
	Encode a block of messages with the dense field tables.

	*messages* (:class:`numpy.ndarray`) is the ``m x k`` array of message codes.

	Returns the ``m x n`` :class:`numpy.ndarray` of codewords.
	"""
	add_t, mul_t, _ = code.field.tables()
	gen = np.asarray(code.generator_matrix(), dtype=np.int64)
	out = np.zeros((messages.shape[0], code.n), dtype=np.int64)
	for i in range(code.k):
		out = add_t[out, mul_t[messages[:, i][:, None], gen[i][None, :]]]
	return out


def codeword_blocks(code: RSCode, bound: int = DEFAULT_ENUM_BOUND) -> Iterator[Tuple[int, np.ndarray]]:
	"""
	Enumerate all codewords in lexicographic message order, block by block.

	Raises :class:`.CodeTooLarge` when ``q**k`` exceeds *bound*.

	Yields a :class:`tuple` of the first message index of the block and the
	block of codewords (:class:`numpy.ndarray`).
	"""
	total = code.size
	if total > bound:
		raise CodeTooLarge(f"{code!r} has {total} codewords, above bound {bound}.")
	if code.field.q > MAX_TABLE_ORDER:
		for start, word in enumerate(codewords(code, bound)):
			yield start, np.asarray([word], dtype=np.int64)
		return

	for start in range(0, total, _CHUNK):
		stop = min(total, start + _CHUNK)
		yield start, encode_block(code, message_codes(code, start, stop))


def codewords(code: RSCode, bound: int = DEFAULT_ENUM_BOUND) -> Iterator[Vector]:
	"""
	Iterate over all codewords in lexicographic message order.

	Raises :class:`.CodeTooLarge` when ``q**k`` exceeds *bound*.
	"""
	if code.size > bound:
		raise CodeTooLarge(f"{code!r} has {code.size} codewords, above bound {bound}.")
	for message in itertools.product(code.field.elements(), repeat=code.k):
		yield encode(code, list(message))


def distance_to_code(y: Sequence[int], code: RSCode, bound: int = DEFAULT_ENUM_BOUND) -> int:
	"""
	Get the distance from *y* to the nearest codeword by enumeration.
	"""
	word = np.asarray(_as_vector(code.field, y, code.n), dtype=np.int64)
	best = code.n
	for _, block in codeword_blocks(code, bound):
		dist = int((block != word[None, :]).sum(axis=1).min())
		best = min(best, dist)
	return best


def minimum_distance(code: RSCode, bound: int = DEFAULT_ENUM_BOUND) -> int:
	"""
	Get the minimum distance by enumerating every nonzero codeword.
	"""
	best = code.n
	for start, block in codeword_blocks(code, bound):
		weights = (block != 0).sum(axis=1)
		if start == 0:
			weights = weights[1:]
		if len(weights):
			best = min(best, int(weights.min()))
	return best


def dual_basis(code: RSCode) -> Matrix:
	"""
	Get a basis of the dual code as the right kernel of the generator matrix.
	"""
	return _linalg.kernel(code.field, code.generator_matrix(), code.n)


def dual_code(code: RSCode) -> Union[RSCode, Matrix]:
	"""
	Get the dual code: an :class:`.RSCode` for a full-support code, otherwise a
	basis matrix of the kernel of the generator matrix.
	"""
	if code.full_support and code.k < code.n:
		return code.dual()
	return dual_basis(code)


def same_span(field: ExtField, a: Matrix, b: Matrix) -> bool:
	"""
	Check whether two matrices have the same row space.
	"""
	ra = _linalg.rank(field, a)
	return ra == _linalg.rank(field, b) and ra == _linalg.rank(field, list(a) + list(b))


def code_from_json(doc: Any, path: str = "code") -> RSCode:
	"""
	Load a code descriptor ``{"q", "n", "k", "eval_points"}``.

	The ``"q"`` entry is either a field order or a field descriptor.

	Raises :class:`.MalformedInstance` on a malformed document.
	"""
	if not isinstance(doc, dict):
		raise MalformedInstance(path, "expected an object")
	q = doc.get('q')
	if isinstance(q, int):
		field = field_of_order(q)
	elif isinstance(q, dict):
		field = field_from_json(q, f"{path}.q")
		if not isinstance(field, ExtField):
			field = field.ground
	else:
		raise MalformedInstance(f"{path}.q", "expected a field order or descriptor")

	for key in ('n', 'k'):
		if not isinstance(doc.get(key), int):
			raise MalformedInstance(f"{path}.{key}", "expected an integer")

	points = doc.get('eval_points')
	if points is not None:
		if not isinstance(points, list):
			raise MalformedInstance(f"{path}.eval_points", "expected a list")
		points = [load_element(field, item, f"{path}.eval_points[{i}]") for i, item in enumerate(points)]
	return RSCode(field, doc['k'], n=doc['n'], eval_points=points)


def load_word(field: ExtField, items: Any, length: int, path: str) -> Vector:
	"""
	Load a vector written as a list of coefficient lists.

	Raises :class:`.MalformedInstance` on a malformed document.
	"""
	if not isinstance(items, list):
		raise MalformedInstance(path, "expected a list")
	elif len(items) != length:
		raise MalformedInstance(path, f"expected {length} entries, got {len(items)}")
	return tuple(load_element(field, item, f"{path}[{i}]") for i, item in enumerate(items))


def dump_word(field: ExtField, word: Sequence[int]) -> List[List[int]]:
	return [dump_element(field, a) for a in _codes(word)]


def prime_code(p: int, k: int, points: Optional[Sequence[int]] = None) -> RSCode:
	"""
	Build a code over the prime field F_p.
	"""
	return RSCode(construct_field(p), k, eval_points=points)
