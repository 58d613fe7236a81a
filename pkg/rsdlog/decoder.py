"""
This module implements bounded-distance and list decoders for Reed-Solomon
codes behind a single decoder contract: Berlekamp-Welch, Guruswami-Sudan,
and a brute-force oracle.
"""

import logging
import math
from typing import (
	Dict,  # Replaced by `dict` in 3.9.
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple)  # Replaced by `tuple` in 3.9.

import numpy as np

from . import _linalg
from . import _polyops
from .errors import (
	PostconditionError,
	RadiusTooLarge)
from .ffield import (
	ExtField)
from .poly import (
	root_codes)
from .rscode import (
	DEFAULT_ENUM_BOUND,
	RSCode,
	_as_vector,
	codeword_blocks,
	encode,
	hamming)
from .typing import (
	Vector)

logger = logging.getLogger(__name__)

DECODERS: Dict[str, 'DecoderContract'] = {}
"""
Maps decoder kind to its default decoder instance.
"""

DEFAULT_MAX_MULTIPLICITY = 4
"""
The largest interpolation multiplicity the Guruswami-Sudan decoder tries.
"""

Bivariate = Dict[Tuple[int, int], int]
"""
A bivariate polynomial as a mapping from ``(x degree, y degree)`` to a
nonzero coefficient code.
"""


class DecoderContract(object):
	"""
	The :class:`.DecoderContract` class is the base class for decoders. A
	decoder declares a radius for each code and returns every codeword it
	finds within that radius of the received word.
	"""

	kind: str = ''
	"""
	*kind* (:class:`str`) is the registry name of the decoder.
	"""

	def radius(self, code: RSCode) -> int:
		"""
		Get the guaranteed decoding radius for *code* (:class:`int`).
		"""
		raise NotImplementedError(f"{self.__class__.__qualname__} must implement radius().")

	def decode(self, code: RSCode, y: Sequence[int], t: Optional[int] = None) -> List[Vector]:
		"""
		Decode a received word.

		*code* (:class:`.RSCode`) is the code.

		*y* (:class:`.ReceivedWord` or :class:`~collections.abc.Sequence`) is the
		received word.

		*t* (:class:`int` or ``None``) is the radius. Default is ``None`` for
		:meth:`.radius`.

		Raises :class:`.PostconditionError` if a result lies outside the radius.

		Returns the codewords found (:class:`list` of :class:`tuple`).
		"""
		word = _as_vector(code.field, y, code.n)
		if t is None:
			t = self.radius(code)
		found = self._decode(code, word, t)
		for c in found:
			if hamming(c, word) > t:
				raise PostconditionError(f"{self.kind} returned a codeword at distance {hamming(c, word)} > {t}.")
		return found

	def _decode(self, code: RSCode, word: Vector, t: int) -> List[Vector]:
		raise NotImplementedError(f"{self.__class__.__qualname__} must implement _decode().")

	def __repr__(self) -> str:
		return f"{self.__class__.__name__}()"


class BerlekampWelchDecoder(DecoderContract):
	"""
	The :class:`.BerlekampWelchDecoder` class decodes up to half the minimum
	distance and returns at most one codeword.
	"""

	kind = 'bw'

	def radius(self, code: RSCode) -> int:
		return (code.n - code.k) // 2

	def _decode(self, code: RSCode, word: Vector, t: int) -> List[Vector]:
		if t > self.radius(code):
			raise RadiusTooLarge(f"{t=!r} exceeds the Berlekamp-Welch radius {self.radius(code)}.")
		c = berlekamp_welch(code, word)
		if c is None or hamming(c, word) > t:
			return []
		return [c]


class GuruswamiSudanDecoder(DecoderContract):
	"""
	The :class:`.GuruswamiSudanDecoder` class list decodes beyond half the
	minimum distance.
	"""

	kind = 'gs'

	def __init__(self, max_multiplicity: int = DEFAULT_MAX_MULTIPLICITY) -> None:
		"""
		Initializes the :class:`.GuruswamiSudanDecoder` instance.

		*max_multiplicity* (:class:`int`) is the largest multiplicity tried.
		"""
		self.max_multiplicity: int = max_multiplicity
		"""
		*max_multiplicity* (:class:`int`) is the largest multiplicity tried.
		"""

	def radius(self, code: RSCode) -> int:
		return gs_radius(code.n, code.k, self.max_multiplicity)

	def _decode(self, code: RSCode, word: Vector, t: int) -> List[Vector]:
		return guruswami_sudan(code, word, t, max_multiplicity=self.max_multiplicity)


class BruteForceDecoder(DecoderContract):
	"""
	The :class:`.BruteForceDecoder` class enumerates every codeword. Its
	default radius is half the minimum distance, but any radius is accepted.
	"""

	kind = 'brute'

	def __init__(self, bound: int = DEFAULT_ENUM_BOUND) -> None:
		self.bound: int = bound
		"""
		*bound* (:class:`int`) caps the number of codewords enumerated.
		"""

	def radius(self, code: RSCode) -> int:
		return (code.n - code.k) // 2

	def _decode(self, code: RSCode, word: Vector, t: int) -> List[Vector]:
		return brute_force_bdd(code, word, t, bound=self.bound)


def get_decoder(name: str, **kw) -> DecoderContract:
	"""
	Get a decoder by kind.

	*name* (:class:`str`) is ``"bw"``, ``"gs"`` or ``"brute"``.

	*kw* are passed to the decoder constructor. Without them the shared
	default instance is returned.

	Returns the :class:`.DecoderContract`.
	"""
	try:
		default = DECODERS[name]
	except KeyError:
		raise ValueError(f"{name=!r} is not a decoder ({', '.join(sorted(DECODERS))}).")
	if kw:
		return default.__class__(**kw)
	return default


def berlekamp_welch(code: RSCode, y: Sequence[int]) -> Optional[Vector]:
	"""
	Decode with the Berlekamp-Welch key equation.

	Solves ``Q(a_i) = y_i E(a_i)`` for a monic error locator *E* of degree
	``t = (n - k) // 2`` and *Q* of degree below ``k + t``, then divides.

	*code* (:class:`.RSCode`) is the code.

	*y* (:class:`.ReceivedWord` or :class:`~collections.abc.Sequence`) is the
	received word.

	Returns the unique codeword within distance *t* (:class:`tuple`), or
	``None`` on failure.
	"""
	field = code.field
	word = _as_vector(field, y, code.n)
	n, k = code.n, code.k
	t = (n - k) // 2
	mul, neg = field.mul, field.neg

	matrix = []
	rhs = []
	for a, yi in zip(code.eval_points, word):
		powers = [1]
		for _ in range(k + t):
			powers.append(mul(powers[-1], a))
		row = [neg(mul(yi, powers[j])) for j in range(t)] + powers[:k + t]
		matrix.append(row)
		rhs.append(mul(yi, powers[t]))

	sol = _linalg.solve(field, matrix, rhs)
	if sol is None:
		logger.debug("Berlekamp-Welch system is inconsistent.")
		return None

	locator = sol[:t] + [1]
	numer = sol[t:]
	quot, rem = _polyops.divmod_(field, numer, locator)
	if rem or len(quot) > k:
		return None
	c = encode(code, quot)
	if hamming(c, word) > t:
		return None
	return c


def _monomial_count(degree: int, w: int) -> int:
	if degree < 0:
		return 0
	return sum(degree - w * b + 1 for b in range(degree // w + 1))


def gs_parameters(n: int, k: int, t: int, max_multiplicity: int = DEFAULT_MAX_MULTIPLICITY) -> Optional[Tuple[int, int, int]]:
	"""
	Choose the Guruswami-Sudan parameters for radius *t*.

	The multiplicity *m* is the smallest for which the monomials of
	``(1, w)``-weighted degree at most ``D = m (n - t) - 1`` outnumber the
	``n m (m + 1) / 2`` interpolation constraints, where ``w = max(k - 1, 1)``.

	Returns a :class:`tuple` of ``(m, w, D)``, or ``None`` when the radius is
	beyond ``n - floor(sqrt((k - 1) n)) - 1`` or no multiplicity up to
	*max_multiplicity* works.
	"""
	if t < 0 or t >= n:
		return None
	elif t > n - math.isqrt((k - 1) * n) - 1:
		return None
	w = max(k - 1, 1)
	for m in range(1, max_multiplicity + 1):
		degree = m * (n - t) - 1
		if _monomial_count(degree, w) > n * m * (m + 1) // 2:
			return m, w, degree
	return None


def gs_radius(n: int, k: int, max_multiplicity: int = DEFAULT_MAX_MULTIPLICITY) -> int:
	"""
	Get the largest radius the Guruswami-Sudan decoder guarantees.
	"""
	for t in range(n - 1, -1, -1):
		if gs_parameters(n, k, t, max_multiplicity) is not None:
			return t
	return 0


def _interpolate(field: ExtField, points: Sequence[int], word: Sequence[int], m: int, w: int, degree: int) -> Bivariate:
	"""
	Find a nonzero Q(x, y) of weighted degree at most *degree* vanishing with
	multiplicity *m* at every ``(a_i, y_i)``.
	"""
	p = field.p
	mul = field.mul
	monomials = [(a, b) for b in range(degree // w + 1) for a in range(degree - w * b + 1)]

	rows = []
	for x0, y0 in zip(points, word):
		xpow = [1]
		ypow = [1]
		for _ in range(degree + 1):
			xpow.append(mul(xpow[-1], x0))
			ypow.append(mul(ypow[-1], y0))
		for r in range(m):
			for s in range(m - r):
				# Hasse derivative of order (r, s) at (x0, y0).
				row = []
				for a, b in monomials:
					if a < r or b < s:
						row.append(0)
						continue
					coef = math.comb(a, r) * math.comb(b, s) % p
					row.append(mul(coef, mul(xpow[a - r], ypow[b - s])) if coef else 0)
				rows.append(row)

	basis = _linalg.kernel(field, rows, len(monomials))
	assert basis, "Interpolation system has no nonzero solution."
	return {mono: c for mono, c in zip(monomials, basis[0]) if c}


def _strip_x(poly: Bivariate) -> Bivariate:
	low = min(a for a, _ in poly)
	if low == 0:
		return poly
	return {(a - low, b): c for (a, b), c in poly.items()}


def _substitute(field: ExtField, poly: Bivariate, gamma: int) -> Bivariate:
	"""
	Compute Q(x, x y + gamma).
	"""
	p = field.p
	add, mul = field.add, field.mul
	out: Bivariate = {}
	for (a, b), c in poly.items():
		gpow = [1]
		for _ in range(b):
			gpow.append(mul(gpow[-1], gamma))
		for j in range(b + 1):
			coef = math.comb(b, j) % p
			if not coef:
				continue
			term = mul(c, mul(coef, gpow[b - j]))
			if term:
				key = (a + j, j)
				out[key] = add(out.get(key, 0), term)
	return {key: c for key, c in out.items() if c}


def _roth_ruckenstein(field: ExtField, poly: Bivariate, k: int) -> List[List[int]]:
	"""
	Find every polynomial f of degree below *k* that is a y-root candidate of
	Q(x, y), returned as coefficient lists of length *k*.
	"""
	found = []

	def recurse(q: Bivariate, prefix: List[int]) -> None:
		q = _strip_x(q)
		if len(prefix) == k:
			found.append(list(prefix))
			return
		at_zero = [0] * (max(b for _, b in q) + 1)
		for (a, b), c in q.items():
			if a == 0:
				at_zero[b] = c
		for gamma in root_codes(field, _polyops.trim(at_zero)):
			recurse(_substitute(field, q, gamma), prefix + [gamma])

	recurse(poly, [])
	return found


def _message_key(field: ExtField, coeffs: Sequence[int], k: int) -> Tuple[int, ...]:
	padded = list(coeffs) + [0] * (k - len(coeffs))
	return tuple(field.position(c) for c in padded)


def guruswami_sudan(
	code: RSCode,
	y: Sequence[int],
	t: int,
	max_multiplicity: int = DEFAULT_MAX_MULTIPLICITY,
) -> List[Vector]:
	"""
	List decode with Guruswami-Sudan interpolation and Roth-Ruckenstein root
	finding.

	*code* (:class:`.RSCode`) is the code.

	*y* (:class:`.ReceivedWord` or :class:`~collections.abc.Sequence`) is the
	received word.

	*t* (:class:`int`) is the radius.

	*max_multiplicity* (:class:`int`) is the largest multiplicity tried.

	Raises :class:`.RadiusTooLarge` when *t* is beyond the guaranteed radius.

	Returns every codeword within distance *t*, in lexicographic message order
	(:class:`list` of :class:`tuple`).
	"""
	field = code.field
	word = _as_vector(field, y, code.n)
	n, k = code.n, code.k
	params = gs_parameters(n, k, t, max_multiplicity)
	if params is None:
		raise RadiusTooLarge(f"{t=!r} exceeds the Guruswami-Sudan radius {gs_radius(n, k, max_multiplicity)} of {code!r}.")
	m, w, degree = params
	logger.debug("Guruswami-Sudan on %r with t=%d, m=%d, D=%d.", code, t, m, degree)

	poly = _interpolate(field, code.eval_points, word, m, w, degree)
	results = {}
	for coeffs in _roth_ruckenstein(field, poly, k):
		c = encode(code, coeffs)
		if hamming(c, word) <= t:
			results[_message_key(field, coeffs, k)] = c
	return [results[key] for key in sorted(results)]


def brute_force_bdd(code: RSCode, y: Sequence[int], t: int, bound: int = DEFAULT_ENUM_BOUND) -> List[Vector]:
	"""
	Find every codeword within distance *t* by enumerating all messages.

	*bound* (:class:`int`) caps ``q**k``.

	Raises :class:`.CodeTooLarge` when the code is too large.

	Returns the codewords in lexicographic message order (:class:`list` of
	:class:`tuple`).
	"""
	word = np.asarray(_as_vector(code.field, y, code.n), dtype=np.int64)
	found = []
	for _, block in codeword_blocks(code, bound):
		dist = (block != word[None, :]).sum(axis=1)
		for row in block[dist <= t]:
			found.append(tuple(int(v) for v in row))
	return found


DECODERS['bw'] = BerlekampWelchDecoder()
DECODERS['gs'] = GuruswamiSudanDecoder()
DECODERS['brute'] = BruteForceDecoder()
