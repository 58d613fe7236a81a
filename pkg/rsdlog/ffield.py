"""
This module implements exact arithmetic in prime fields, extension fields
and two-level field towers, together with the absolute trace and the
additive characters built on it.

Elements of a :class:`.PrimeField` or :class:`.ExtField` are handled
internally as integer *codes*: the coefficients ``(c_0, ..., c_{s-1})`` in
the basis ``1, alpha, ..., alpha**(s-1)`` packed as ``sum(c_i * p**i)``.
Multiplication and addition of codes go through discrete-log, antilog and
Zech tables built once per field. :class:`.FieldElem` wraps a code with its
field and provides the operators.
"""

import cmath
import functools
import logging
from typing import (
	Any,
	Dict,  # Replaced by `dict` in 3.9.
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple,  # Replaced by `tuple` in 3.9.
	Union)  # Replaced by `X | Y` in 3.10.

import numpy as np
import sympy

from . import _polyops
from ._util import (
	is_sequence,
	make_rng)
from .errors import (
	DegreeMismatch,
	DivisionByZero,
	FieldMismatch,
	FieldTooLarge,
	LengthMismatch,
	MalformedInstance,
	NotPrime,
	Reducible)
from .typing import (
	Seed)

logger = logging.getLogger(__name__)

MAX_FIELD_ORDER = 2**20
"""
The largest field order for which log and Zech tables are built.
"""

MAX_TABLE_ORDER = 1024
"""
The largest field order for which dense :mod:`numpy` addition and
multiplication tables are built on request.
"""

TOLERANCE = 1e-9
"""
The tolerance used for floating point comparisons against exact zero.
"""


class PrimeField(object):
	"""
	The :class:`.PrimeField` class describes the prime field F_p. Elements are
	the integers ``0, ..., p - 1``.
	"""

	def __init__(self, p: int) -> None:
		"""
		Initializes the :class:`.PrimeField` instance.

		*p* (:class:`int`) is the prime modulus.
		"""
		if not isinstance(p, int):
			raise TypeError(f"{p=!r} is not an int.")
		elif p < 2 or not sympy.isprime(p):
			raise NotPrime(f"{p=!r} is not prime.")

		self.__p = p

	def __eq__(self, other: Any) -> bool:
		return isinstance(other, PrimeField) and other.p == self.__p

	def __hash__(self) -> int:
		return hash(('PrimeField', self.__p))

	def __repr__(self) -> str:
		return f"PrimeField({self.__p})"

	@property
	def key(self) -> Tuple[int, int, None]:
		return (self.__p, 1, None)

	@property
	def one(self) -> int:
		return 1

	@property
	def order(self) -> int:
		return self.__p

	@property
	def p(self) -> int:
		"""
		*p* (:class:`int`) is the prime modulus.
		"""
		return self.__p

	def add(self, a: int, b: int) -> int:
		return (a + b) % self.__p

	def sub(self, a: int, b: int) -> int:
		return (a - b) % self.__p

	def neg(self, a: int) -> int:
		return -a % self.__p

	def mul(self, a: int, b: int) -> int:
		return a * b % self.__p

	def inv(self, a: int) -> int:
		if a % self.__p == 0:
			raise DivisionByZero("Inverse of zero.")
		return pow(a, self.__p - 2, self.__p)

	def elem(self, value: int) -> 'FieldElem':
		return FieldElem(self, value % self.__p)

	def coeffs_of(self, value: int) -> Tuple[int, ...]:
		return (value,)

	@property
	def zero(self) -> int:
		return 0

	def __call__(self, value: int) -> 'FieldElem':
		return self.elem(value)


class ExtField(object):
	"""
	The :class:`.ExtField` class describes the field F_q = F_p[x]/(modulus)
	with ``q = p**s``. The degree ``s = 1`` case is the prime field itself with
	a linear modulus.

	Instances are immutable and are normally obtained from
	:func:`.construct_field`, which caches them.
	"""

	def __init__(
		self,
		base: PrimeField,
		s: int,
		modulus: Sequence[int],
	) -> None:
		"""
		Initializes the :class:`.ExtField` instance.

		*base* (:class:`.PrimeField`) is the prime field.

		*s* (:class:`int`) is the extension degree.

		*modulus* (:class:`~collections.abc.Sequence` of :class:`int`) is the monic
		irreducible modulus of degree *s*, little-endian over *base*.
		"""
		if not isinstance(base, PrimeField):
			raise TypeError(f"{base=!r} is not a PrimeField.")
		elif not isinstance(s, int) or s < 1:
			raise DegreeMismatch(f"{s=!r} is not a positive degree.")

		modulus = [int(c) % base.p for c in modulus]
		if len(modulus) != s + 1 or modulus[-1] != 1:
			raise DegreeMismatch(f"{modulus=!r} is not monic of degree {s}.")
		elif not _polyops.is_irreducible(base, modulus):
			raise Reducible(f"{modulus=!r} is reducible over F_{base.p}.")

		p = base.p
		q = p**s
		if q > MAX_FIELD_ORDER:
			raise FieldTooLarge(f"Field order {q} exceeds {MAX_FIELD_ORDER}.")

		self.__base = base
		self.__p = p
		self.__s = s
		self.__q = q
		self.__modulus: Tuple[int, ...] = tuple(modulus)

		self.__add_tables: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None
		"""
		*__add_tables* (:class:`tuple` or ``None``) caches the dense addition,
		multiplication and negation tables.
		"""

		self.__trace: Optional[List[int]] = None
		"""
		*__trace* (:class:`list` or ``None``) caches the trace of every code.
		"""

		self.__build_tables()

	def __build_tables(self) -> None:
		"""
		Find a primitive element and build the antilog, log and Zech tables.
		"""
		p, q = self.__p, self.__q
		order = q - 1
		primes = list(sympy.factorint(order)) if order > 1 else []

		# Prefer alpha itself, then the remaining codes in increasing order.
		candidates = [p] + [c for c in range(2, q) if c != p] if self.__s > 1 else list(range(1, p))
		gen = None
		for c in candidates:
			if c >= q or c == 0:
				continue
			if all(self.__slow_pow(c, order // r) != 1 for r in primes):
				gen = c
				break
		assert gen is not None, f"No primitive element in F_{q}."

		exp = [0] * (2 * order)
		log = [0] * q
		x = 1
		for i in range(order):
			exp[i] = x
			log[x] = i
			x = self.__slow_mul(x, gen)
		for i in range(order, 2 * order):
			exp[i] = exp[i - order]

		# zech[n] = log(1 + gen**n), or -1 when 1 + gen**n = 0.
		zech = [0] * order
		for n in range(order):
			y = exp[n]
			c0 = y % p
			one_plus = y - c0 + (c0 + 1) % p
			zech[n] = log[one_plus] if one_plus else -1

		self.__gen = gen
		self.__exp = exp
		self.__log = log
		self.__zech = zech
		self.__half = order // 2 if p != 2 else 0
		self.__elements: Tuple[int, ...] = tuple(range(p)) if self.__s == 1 else (0,) + tuple(exp[:order])
		position = [0] * q
		for i, c in enumerate(self.__elements):
			position[c] = i
		self.__position: Tuple[int, ...] = tuple(position)
		logger.debug("Built tables for F_%d with generator code %d.", q, gen)

	def __digits(self, a: int) -> List[int]:
		p = self.__p
		out = []
		for _ in range(self.__s):
			a, r = divmod(a, p)
			out.append(r)
		return out

	def __pack(self, digits: Sequence[int]) -> int:
		p = self.__p
		value = 0
		for c in reversed(digits):
			value = value * p + c
		return value

	def __slow_mul(self, a: int, b: int) -> int:
		prod = _polyops.mulmod(self.__base, self.__digits(a), self.__digits(b), self.__modulus)
		return self.__pack(prod)

	def __slow_pow(self, a: int, e: int) -> int:
		return self.__pack(_polyops.powmod(self.__base, self.__digits(a), e, self.__modulus))

	def __eq__(self, other: Any) -> bool:
		return isinstance(other, ExtField) and other.key == self.key

	def __hash__(self) -> int:
		return hash(self.key)

	def __repr__(self) -> str:
		return f"ExtField(p={self.__p}, s={self.__s}, modulus={list(self.__modulus)!r})"

	def __call__(self, value: Union[int, Sequence[int]]) -> 'FieldElem':
		return self.elem(value)

	@property
	def base(self) -> PrimeField:
		"""
		*base* (:class:`.PrimeField`) is the prime subfield.
		"""
		return self.__base

	@property
	def generator(self) -> int:
		"""
		*generator* (:class:`int`) is the code of the primitive element the tables
		are built on.
		"""
		return self.__gen

	@property
	def key(self) -> Tuple[int, int, Tuple[int, ...]]:
		return (self.__p, self.__s, self.__modulus)

	@property
	def modulus(self) -> Tuple[int, ...]:
		"""
		*modulus* (:class:`tuple` of :class:`int`) is the little-endian modulus.
		"""
		return self.__modulus

	@property
	def order(self) -> int:
		return self.__q

	@property
	def p(self) -> int:
		return self.__p

	@property
	def q(self) -> int:
		return self.__q

	@property
	def s(self) -> int:
		return self.__s

	# Code arithmetic.

	def add(self, a: int, b: int) -> int:
		if self.__s == 1:
			return (a + b) % self.__p
		elif self.__p == 2:
			return a ^ b
		elif a == 0:
			return b
		elif b == 0:
			return a
		log = self.__log
		la = log[a]
		z = self.__zech[(log[b] - la) % (self.__q - 1)]
		if z < 0:
			return 0
		return self.__exp[la + z]

	def neg(self, a: int) -> int:
		if self.__s == 1:
			return -a % self.__p
		elif self.__p == 2 or a == 0:
			return a
		return self.__exp[self.__log[a] + self.__half]

	def sub(self, a: int, b: int) -> int:
		return self.add(a, self.neg(b))

	def mul(self, a: int, b: int) -> int:
		if a == 0 or b == 0:
			return 0
		return self.__exp[self.__log[a] + self.__log[b]]

	def inv(self, a: int) -> int:
		if a == 0:
			raise DivisionByZero("Inverse of zero.")
		return self.__exp[(self.__q - 1 - self.__log[a]) % (self.__q - 1)]

	def div(self, a: int, b: int) -> int:
		return self.mul(a, self.inv(b))

	def pow(self, a: int, e: int) -> int:
		if a == 0:
			if e < 0:
				raise DivisionByZero("Inverse of zero.")
			return 1 if e == 0 else 0
		return self.__exp[self.__log[a] * e % (self.__q - 1)]

	def log(self, a: int) -> int:
		"""
		Get the discrete log of the nonzero code *a* to :attr:`.generator`.
		"""
		if a == 0:
			raise DivisionByZero("Logarithm of zero.")
		return self.__log[a]

	def exp(self, i: int) -> int:
		return self.__exp[i % (self.__q - 1)]

	def trace_code(self, a: int) -> int:
		"""
		Get the absolute trace of the code *a* as an integer in ``[0, p)``.
		"""
		if self.__trace is None:
			self.__trace = self.__build_trace()
		return self.__trace[a]

	def __build_trace(self) -> List[int]:
		# The trace is F_p-linear, so evaluate it on the basis and extend.
		p, s = self.__p, self.__s
		basis_trace = []
		for i in range(s):
			a = p**i
			acc = 0
			x = a
			for _ in range(s):
				acc = self.add(acc, x)
				x = self.pow(x, p)
			assert acc < p, f"Trace of {a} is not in the prime field."
			basis_trace.append(acc)

		table = [0] * self.__q
		for code in range(self.__q):
			digits = self.__digits(code)
			table[code] = sum(c * t for c, t in zip(digits, basis_trace)) % p
		return table

	# Representation.

	def coeffs_of(self, a: int) -> Tuple[int, ...]:
		"""
		Get the little-endian coefficient tuple of code *a*.
		"""
		return tuple(self.__digits(a))

	def code_of(self, coeffs: Sequence[int]) -> int:
		"""
		Get the code of a coefficient list (shorter lists are zero-padded).
		"""
		coeffs = [int(c) % self.__p for c in coeffs]
		if len(coeffs) > self.__s:
			raise LengthMismatch(f"{coeffs=!r} has more than {self.__s} coefficients.")
		return self.__pack(coeffs)

	def elem(self, value: Union[int, Sequence[int], 'FieldElem']) -> 'FieldElem':
		"""
		Get the element for *value*.

		*value* is either an integer code (for a prime field, simply the residue)
		or a little-endian coefficient list.

		Returns the :class:`.FieldElem`.
		"""
		if isinstance(value, FieldElem):
			if value.field != self:
				raise FieldMismatch(f"{value=!r} is not in {self!r}.")
			return value
		elif is_sequence(value):
			return FieldElem(self, self.code_of(value))
		elif isinstance(value, (int, np.integer)):
			value = int(value)
			if self.__s == 1:
				return FieldElem(self, value % self.__p)
			elif not 0 <= value < self.__q:
				raise ValueError(f"{value=!r} is not a code of {self!r}.")
			return FieldElem(self, value)
		raise TypeError(f"{value=!r} is not an int or coefficient sequence.")

	@property
	def alpha(self) -> 'FieldElem':
		"""
		*alpha* (:class:`.FieldElem`) is the canonical root of the modulus.
		"""
		if self.__s == 1:
			return FieldElem(self, -self.__modulus[0] % self.__p)
		return FieldElem(self, self.__p)

	@property
	def zero(self) -> int:
		return 0

	@property
	def one(self) -> int:
		return 1

	def elements(self) -> Tuple[int, ...]:
		"""
		Get the codes of all elements in canonical order: ``0, 1, ..., p - 1`` for
		a prime field, otherwise ``0`` followed by the successive powers of
		:attr:`.generator` starting at ``1``.
		"""
		return self.__elements

	def position(self, a: int) -> int:
		"""
		Get the index of code *a* in :meth:`.elements`.
		"""
		return self.__position[a]

	def positions(self) -> Tuple[int, ...]:
		return self.__position

	def tables(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
		"""
		Get dense code-indexed tables for vectorized arithmetic.

		Returns a :class:`tuple` of the ``q x q`` addition table, the ``q x q``
		multiplication table and the length-``q`` negation table
		(:class:`numpy.ndarray`).
		"""
		if self.__add_tables is None:
			q = self.__q
			if q > MAX_TABLE_ORDER:
				raise FieldTooLarge(f"Field order {q} exceeds dense table bound {MAX_TABLE_ORDER}.")
			add = np.empty((q, q), dtype=np.int64)
			mul = np.empty((q, q), dtype=np.int64)
			for a in range(q):
				add[a] = [self.add(a, b) for b in range(q)]
				mul[a] = [self.mul(a, b) for b in range(q)]
			neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
			self.__add_tables = (add, mul, neg)
		return self.__add_tables

	def to_json(self) -> Dict[str, Any]:
		return {'p': self.__p, 's': self.__s, 'modulus': list(self.__modulus)}


class FieldElem(object):
	"""
	The :class:`.FieldElem` class is an element of a field descriptor
	(:class:`.PrimeField`, :class:`.ExtField` or :class:`.FieldTower`).

	Instances are immutable and support ``+``, ``-``, ``*``, ``/``, ``**``,
	equality and hashing. Mixing elements of different fields raises
	:class:`.FieldMismatch`. Plain integers are coerced through the field.
	"""

	def __init__(self, field: Any, value: Any) -> None:
		"""
		Initializes the :class:`.FieldElem` instance.

		*field* is the owning field descriptor.

		*value* is the internal representation (an :class:`int` code, or a
		:class:`tuple` of ground codes for a tower).
		"""
		self.__field = field
		self.__value = value

	@property
	def coeffs(self) -> Tuple[Any, ...]:
		"""
		*coeffs* (:class:`tuple`) is the little-endian coefficient list in the
		basis ``1, alpha, ...``.
		"""
		return self.__field.coeffs_of(self.__value)

	@property
	def field(self) -> Any:
		return self.__field

	@property
	def value(self) -> Any:
		"""
		*value* is the internal representation of the element.
		"""
		return self.__value

	def __coerce(self, other: Any) -> 'FieldElem':
		if isinstance(other, FieldElem):
			if other.field is not self.__field and other.field != self.__field:
				raise FieldMismatch(f"{other!r} and {self!r} are in different fields.")
			return other
		elif isinstance(other, (int, np.integer)):
			return self.__field.elem(int(other))
		return NotImplemented

	def __add__(self, other: Any) -> 'FieldElem':
		other = self.__coerce(other)
		if other is NotImplemented:
			return other
		return FieldElem(self.__field, self.__field.add(self.__value, other.value))

	__radd__ = __add__

	def __sub__(self, other: Any) -> 'FieldElem':
		other = self.__coerce(other)
		if other is NotImplemented:
			return other
		return FieldElem(self.__field, self.__field.sub(self.__value, other.value))

	def __rsub__(self, other: Any) -> 'FieldElem':
		other = self.__coerce(other)
		if other is NotImplemented:
			return other
		return other - self

	def __neg__(self) -> 'FieldElem':
		return FieldElem(self.__field, self.__field.neg(self.__value))

	def __mul__(self, other: Any) -> 'FieldElem':
		other = self.__coerce(other)
		if other is NotImplemented:
			return other
		return FieldElem(self.__field, self.__field.mul(self.__value, other.value))

	__rmul__ = __mul__

	def __truediv__(self, other: Any) -> 'FieldElem':
		other = self.__coerce(other)
		if other is NotImplemented:
			return other
		return self * other.inverse()

	def __rtruediv__(self, other: Any) -> 'FieldElem':
		other = self.__coerce(other)
		if other is NotImplemented:
			return other
		return other * self.inverse()

	def inverse(self) -> 'FieldElem':
		return FieldElem(self.__field, self.__field.inv(self.__value))

	def __pow__(self, e: int) -> 'FieldElem':
		"""
		Raise to the integer power *e* by square-and-multiply. A negative *e*
		inverts first.
		"""
		if not isinstance(e, (int, np.integer)):
			raise TypeError(f"{e=!r} is not an int.")
		e = int(e)
		base = self.inverse() if e < 0 else self
		e = abs(e)
		mul = self.__field.mul
		result = self.__field.one
		b = base.value
		while e:
			if e & 1:
				result = mul(result, b)
			e >>= 1
			if e:
				b = mul(b, b)
		return FieldElem(self.__field, result)

	def __eq__(self, other: Any) -> bool:
		if isinstance(other, FieldElem):
			return self.__value == other.value and (other.field is self.__field or other.field == self.__field)
		elif isinstance(other, (int, np.integer)):
			return self.__value == self.__field.elem(int(other)).value
		return NotImplemented

	def __hash__(self) -> int:
		return hash((self.__field.key, self.__value))

	def __bool__(self) -> bool:
		return self.__value != self.__field.zero

	def __int__(self) -> int:
		if not isinstance(self.__value, int):
			raise TypeError(f"{self!r} has no integer code.")
		return self.__value

	def __repr__(self) -> str:
		return f"FieldElem({self.__field!r}, {self.coeffs!r})"



class FieldTower(object):
	"""
	The :class:`.FieldTower` class describes F_{q^h} = F_q[x]/(h_poly) over a
	ground field F_q, with a designated base *b* of the multiplicative group.

	Elements are stored as :class:`tuple` of *h* ground codes, the coefficients
	of the representative polynomial of degree less than *h*.
	"""

	def __init__(
		self,
		ground: ExtField,
		h: int,
		h_poly: Optional[Sequence[int]] = None,
		seed: Seed = 0,
		base: Optional[Sequence[int]] = None,
	) -> None:
		"""
		Initializes the :class:`.FieldTower` instance.

		*ground* (:class:`.ExtField`) is F_q.

		*h* (:class:`int`) is the tower degree.

		*h_poly* (:class:`~collections.abc.Sequence` of :class:`int` or ``None``) is
		the monic irreducible modulus over *ground* in codes. Default is ``None``
		to find one with *seed*.

		*seed* is the seed used to find *h_poly*.

		*base* (:class:`~collections.abc.Sequence` of :class:`int` or ``None``) is
		the DLOG base as a representative coefficient list. Default is ``None`` for
		the first primitive element in index order.
		"""
		if not isinstance(ground, ExtField):
			raise TypeError(f"{ground=!r} is not an ExtField.")
		elif not isinstance(h, int) or h < 1:
			raise DegreeMismatch(f"{h=!r} is not a positive degree.")

		if h_poly is None:
			h_poly = find_irreducible(ground, h, seed)
		h_poly = [int(c) for c in h_poly]
		if len(h_poly) != h + 1 or h_poly[-1] != 1:
			raise DegreeMismatch(f"{h_poly=!r} is not monic of degree {h}.")
		elif not _polyops.is_irreducible(ground, h_poly):
			raise Reducible(f"{h_poly=!r} is reducible over F_{ground.q}.")

		self.__ground = ground
		self.__h = h
		self.__h_poly: Tuple[int, ...] = tuple(h_poly)
		self.__N = ground.q**h - 1
		self.__factors: Dict[int, int] = dict(sympy.factorint(self.__N)) if self.__N > 1 else {}

		if base is None:
			b = self.__find_primitive()
		else:
			b = self.reduce(base)
			if b == self.zero:
				raise DivisionByZero("The DLOG base is zero.")
		self.__b: Tuple[int, ...] = b
		logger.debug("Tower F_%d^%d with h_poly %r and base %r.", ground.q, h, h_poly, b)

	def __find_primitive(self) -> Tuple[int, ...]:
		q, h = self.__ground.q, self.__h
		for index in range(1, q**h):
			digits = []
			x = index
			for _ in range(h):
				x, r = divmod(x, q)
				digits.append(r)
			cand = tuple(digits)
			if self.is_generator(cand):
				return cand
		raise AssertionError("No primitive element found.")

	def is_generator(self, a: Tuple[int, ...]) -> bool:
		"""
		Check whether *a* generates the multiplicative group.
		"""
		if a == self.zero:
			return False
		one = self.one
		return all(self.pow(a, self.__N // r) != one for r in self.__factors)

	def __eq__(self, other: Any) -> bool:
		return isinstance(other, FieldTower) and other.key == self.key

	def __hash__(self) -> int:
		return hash(self.key)

	def __repr__(self) -> str:
		return f"FieldTower(q={self.__ground.q}, h={self.__h}, h_poly={list(self.__h_poly)!r})"

	def __call__(self, value: Sequence[int]) -> FieldElem:
		return self.elem(value)

	@property
	def b(self) -> FieldElem:
		"""
		*b* (:class:`.FieldElem`) is the designated DLOG base.
		"""
		return FieldElem(self, self.__b)

	@property
	def factors(self) -> Dict[int, int]:
		"""
		*factors* (:class:`dict`) is the prime factorization of :attr:`.N`.
		"""
		return dict(self.__factors)

	@property
	def ground(self) -> ExtField:
		return self.__ground

	@property
	def h(self) -> int:
		return self.__h

	@property
	def h_poly(self) -> Tuple[int, ...]:
		return self.__h_poly

	@property
	def key(self) -> Tuple[Any, ...]:
		return (self.__ground.key, self.__h_poly, self.__b)

	@property
	def N(self) -> int:
		"""
		*N* (:class:`int`) is the order ``q**h - 1`` of the multiplicative group.
		"""
		return self.__N

	@property
	def order(self) -> int:
		return self.__N + 1

	@property
	def p(self) -> int:
		return self.__ground.p

	@property
	def zero(self) -> Tuple[int, ...]:
		return (0,) * self.__h

	@property
	def one(self) -> Tuple[int, ...]:
		return (1,) + (0,) * (self.__h - 1)

	@property
	def alpha(self) -> FieldElem:
		"""
		*alpha* (:class:`.FieldElem`) is the class of ``x`` in the tower.
		"""
		return FieldElem(self, self.reduce([0, 1]))

	def reduce(self, poly: Sequence[int]) -> Tuple[int, ...]:
		"""
		Reduce a ground polynomial modulo :attr:`.h_poly`.

		Returns the representative as a :class:`tuple` of *h* codes.
		"""
		rem = _polyops.mod(self.__ground, [int(c) for c in poly], self.__h_poly)
		return tuple(rem) + (0,) * (self.__h - len(rem))

	def linear(self, a: int) -> FieldElem:
		"""
		Get the factor base element ``alpha - a`` for the ground code *a*.
		"""
		return FieldElem(self, self.reduce([self.__ground.neg(a), 1]))

	def from_ground(self, a: int) -> FieldElem:
		return FieldElem(self, self.reduce([a]))

	def add(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
		gadd = self.__ground.add
		return tuple(gadd(x, y) for x, y in zip(a, b))

	def sub(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
		gsub = self.__ground.sub
		return tuple(gsub(x, y) for x, y in zip(a, b))

	def neg(self, a: Tuple[int, ...]) -> Tuple[int, ...]:
		gneg = self.__ground.neg
		return tuple(gneg(x) for x in a)

	def mul(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
		return self.reduce(_polyops.mul(self.__ground, a, b))

	def inv(self, a: Tuple[int, ...]) -> Tuple[int, ...]:
		if not any(a):
			raise DivisionByZero("Inverse of zero.")
		g, s, _ = _polyops.xgcd(self.__ground, a, self.__h_poly)
		if not g:
			raise DivisionByZero("Inverse of zero.")
		return self.reduce(s)

	def pow(self, a: Tuple[int, ...], e: int) -> Tuple[int, ...]:
		if e < 0:
			a, e = self.inv(a), -e
		return self.reduce(_polyops.powmod(self.__ground, a, e, self.__h_poly))

	def coeffs_of(self, a: Tuple[int, ...]) -> Tuple[int, ...]:
		return tuple(a)

	def elem(self, value: Union[Sequence[int], int, FieldElem]) -> FieldElem:
		"""
		Get the tower element for *value*: a coefficient list of ground codes, or
		an :class:`int` ground code embedded as a constant.
		"""
		if isinstance(value, FieldElem):
			if value.field == self:
				return value
			elif value.field == self.__ground:
				return self.from_ground(value.value)
			raise FieldMismatch(f"{value=!r} is not in {self!r}.")
		elif is_sequence(value):
			return FieldElem(self, self.reduce(value))
		elif isinstance(value, (int, np.integer)):
			return self.from_ground(int(value))
		raise TypeError(f"{value=!r} is not a coefficient sequence.")

	def to_json(self) -> Dict[str, Any]:
		ground = self.__ground
		doc = ground.to_json()
		doc['tower'] = {
			'h': self.__h,
			'h_poly': [list(ground.coeffs_of(c)) for c in self.__h_poly],
			'b': [list(ground.coeffs_of(c)) for c in self.__b],
		}
		return doc


@functools.lru_cache(maxsize=64)
def _cached_field(p: int, s: int, modulus: Tuple[int, ...]) -> ExtField:
	return ExtField(PrimeField(p), s, modulus)


def construct_field(
	p: int,
	s: int = 1,
	modulus: Optional[Sequence[int]] = None,
	seed: Seed = 0,
) -> ExtField:
	"""
	Construct the field F_{p^s}.

	*p* (:class:`int`) is the characteristic.

	*s* (:class:`int`) is the extension degree. Default is ``1``.

	*modulus* (:class:`~collections.abc.Sequence` of :class:`int` or ``None``) is
	the little-endian monic modulus over F_p. Default is ``None`` to find one
	with :func:`.find_irreducible`.

	*seed* is the seed for :func:`.find_irreducible`.

	Raises :class:`.NotPrime`, :class:`.Reducible` or :class:`.DegreeMismatch`.

	Returns the :class:`.ExtField`. Equal arguments return the same cached
	instance.
	"""
	base = PrimeField(p)
	if not isinstance(s, int) or s < 1:
		raise DegreeMismatch(f"{s=!r} is not a positive degree.")
	if modulus is None:
		modulus = find_irreducible(base, s, seed)
	return _cached_field(p, s, tuple(int(c) % p for c in modulus))


def field_of_order(q: int, seed: Seed = 0) -> ExtField:
	"""
	Construct a field of prime power order *q* with a seeded modulus.

	Raises :class:`.NotPrime` when *q* is not a prime power.
	"""
	factors = sympy.factorint(q) if isinstance(q, int) and q >= 2 else {}
	if len(factors) != 1:
		raise NotPrime(f"{q=!r} is not a prime power.")
	(p, s), = factors.items()
	return construct_field(p, s, seed=seed)


def find_irreducible(field: Union[PrimeField, ExtField], degree: int, seed: Seed = 0) -> List[int]:
	"""
	Find a monic irreducible polynomial.

	*field* (:class:`.PrimeField` or :class:`.ExtField`) is the coefficient field.

	*degree* (:class:`int`) is the degree, at least 1.

	*seed* is the random seed. The result is deterministic given the seed.

	Returns the little-endian coefficient list (:class:`list` of codes). The
	degree 1 answer is always ``x``.
	"""
	if not isinstance(degree, int) or degree < 1:
		raise DegreeMismatch(f"{degree=!r} is not a positive degree.")
	elif degree == 1:
		return [0, 1]

	rng = make_rng(seed)
	q = field.order
	while True:
		poly = [int(c) for c in rng.integers(0, q, size=degree)] + [1]
		if poly[0] != 0 and _polyops.is_irreducible(field, poly):
			return poly


def elem_arith(a: FieldElem, b: Optional[FieldElem], op: str, e: Optional[int] = None) -> FieldElem:
	"""
	Apply a named field operation.

	*a* (:class:`.FieldElem`) is the first operand.

	*b* (:class:`.FieldElem` or ``None``) is the second operand for binary
	operations.

	*op* (:class:`str`) is one of ``"add"``, ``"sub"``, ``"mul"``, ``"inv"`` or
	``"pow"``.

	*e* (:class:`int` or ``None``) is the exponent for ``"pow"``.

	Returns the result (:class:`.FieldElem`).
	"""
	if op == 'add':
		return a + b
	elif op == 'sub':
		return a - b
	elif op == 'mul':
		return a * b
	elif op == 'inv':
		return a.inverse()
	elif op == 'pow':
		if e is None:
			raise TypeError("pow requires an exponent.")
		return a ** e
	raise ValueError(f"{op=!r} is not a field operation.")


def trace(a: FieldElem) -> FieldElem:
	"""
	Get the absolute trace ``a + a**p + ... + a**(p**(s-1))``.

	*a* (:class:`.FieldElem`) is an element of an :class:`.ExtField`.

	Returns the trace as an element of the prime field (:class:`.FieldElem`).
	"""
	field = a.field
	if isinstance(field, PrimeField):
		return a
	elif not isinstance(field, ExtField):
		raise TypeError(f"{a=!r} is not in an extension of a prime field.")
	return FieldElem(field.base, field.trace_code(a.value))


def chi(y: Sequence[FieldElem], x: Sequence[FieldElem]) -> complex:
	"""
	Evaluate the additive character ``chi_y(x) = exp(2 pi i tr(x . y) / p)``.

	*y* and *x* (:class:`~collections.abc.Sequence` of :class:`.FieldElem`) are
	vectors of the same length over the same field. Bare elements are treated
	as vectors of length 1.

	Returns the root of unity (:class:`complex`).
	"""
	if isinstance(y, FieldElem):
		y = [y]
	if isinstance(x, FieldElem):
		x = [x]
	if len(y) != len(x):
		raise LengthMismatch(f"Lengths {len(y)} and {len(x)} differ.")
	elif not y:
		return complex(1.0)

	field = y[0].field
	acc = field.elem(0)
	for yi, xi in zip(y, x):
		acc = acc + yi * xi
	t = int(trace(acc))
	return cmath.exp(2j * cmath.pi * t / field.p)


def field_from_json(doc: Any, path: str = "field") -> Union[ExtField, FieldTower]:
	"""
	Load a field descriptor.

	*doc* (:class:`dict`) has the keys ``"p"``, ``"s"``, ``"modulus"`` and
	optionally ``"tower"`` with ``"h"``, ``"h_poly"`` and ``"b"``.

	*path* (:class:`str`) is the location of *doc* used in error messages.

	Raises :class:`.MalformedInstance` on a malformed document.

	Returns the :class:`.ExtField`, or the :class:`.FieldTower` when a tower is
	described.
	"""
	if not isinstance(doc, dict):
		raise MalformedInstance(path, "expected an object")
	for key in ('p', 's'):
		if not isinstance(doc.get(key), int):
			raise MalformedInstance(f"{path}.{key}", "expected an integer")
	modulus = doc.get('modulus')
	if modulus is not None and not (isinstance(modulus, list) and all(isinstance(c, int) for c in modulus)):
		raise MalformedInstance(f"{path}.modulus", "expected a list of integers")

	field = construct_field(doc['p'], doc['s'], modulus)
	tower = doc.get('tower')
	if tower is None:
		return field

	if not isinstance(tower, dict) or not isinstance(tower.get('h'), int):
		raise MalformedInstance(f"{path}.tower.h", "expected an integer")
	h_poly = _load_codes(field, tower.get('h_poly'), f"{path}.tower.h_poly") if 'h_poly' in tower else None
	base = _load_codes(field, tower.get('b'), f"{path}.tower.b") if 'b' in tower else None
	return FieldTower(field, tower['h'], h_poly, base=base)


def _load_codes(field: ExtField, items: Any, path: str) -> List[int]:
	if not isinstance(items, list):
		raise MalformedInstance(path, "expected a list")
	out = []
	for i, item in enumerate(items):
		out.append(load_element(field, item, f"{path}[{i}]"))
	return out


def load_element(field: ExtField, item: Any, path: str) -> int:
	"""
	Decode one element written as its coefficient list.

	Returns the element code (:class:`int`).
	"""
	if not (isinstance(item, list) and len(item) == field.s and all(isinstance(c, int) for c in item)):
		raise MalformedInstance(path, f"expected a list of {field.s} integers")
	if any(not 0 <= c < field.p for c in item):
		raise MalformedInstance(path, f"coefficients must lie in [0, {field.p})")
	return field.code_of(item)


def dump_element(field: ExtField, code: int) -> List[int]:
	return list(field.coeffs_of(code))
