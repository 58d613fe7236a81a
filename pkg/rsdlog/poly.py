"""
This module implements univariate polynomials over a table field: ring
arithmetic, evaluation (also at tower elements), Lagrange interpolation,
exhaustive root finding and splitting into distinct linear factors.
"""

import math
from typing import (
	Any,
	FrozenSet,  # Replaced by `frozenset` in 3.9.
	Iterable,  # Replaced by `collections.abc.Iterable` in 3.9.
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple,  # Replaced by `tuple` in 3.9.
	Union)  # Replaced by `X | Y` in 3.10.

from . import _polyops
from .errors import (
	DivisionByZero,
	DuplicatePoint,
	FieldMismatch,
	FieldTooLarge)
from .ffield import (
	ExtField,
	FieldElem,
	FieldTower)

DEFAULT_ROOT_BOUND = 2**16
"""
The largest field order searched exhaustively by :func:`.roots`.
"""

ZERO_DEGREE = -math.inf
"""
The degree of the zero polynomial.
"""


class Poly(object):
	"""
	The :class:`.Poly` class is an immutable polynomial over an
	:class:`.ExtField` stored as a little-endian tuple of element codes without
	trailing zeros.
	"""

	def __init__(self, field: ExtField, coeffs: Iterable[Union[int, FieldElem]] = ()) -> None:
		"""
		Initializes the :class:`.Poly` instance.

		*field* (:class:`.ExtField`) is the coefficient field.

		*coeffs* (:class:`~collections.abc.Iterable`) contains the coefficients,
		constant term first, as codes or :class:`.FieldElem` instances.
		"""
		if not isinstance(field, ExtField):
			raise TypeError(f"{field=!r} is not an ExtField.")

		codes = []
		for c in coeffs:
			if isinstance(c, FieldElem):
				if c.field != field:
					raise FieldMismatch(f"Coefficient {c!r} is not in {field!r}.")
				c = c.value
			codes.append(int(c))

		self.__field = field
		self.__coeffs: Tuple[int, ...] = tuple(_polyops.trim(codes))

	@classmethod
	def from_roots(cls, field: ExtField, roots: Iterable[Union[int, FieldElem]], lead: int = 1) -> 'Poly':
		"""
		Build ``lead * prod(x - a)`` over the given roots.
		"""
		codes = [r.value if isinstance(r, FieldElem) else int(r) for r in roots]
		return cls(field, _polyops.scale(field, _polyops.from_roots(field, codes), lead))

	@classmethod
	def monomial(cls, field: ExtField, degree: int, c: int = 1) -> 'Poly':
		return cls(field, [0] * degree + [c])

	@property
	def coeffs(self) -> Tuple[int, ...]:
		"""
		*coeffs* (:class:`tuple` of :class:`int`) contains the coefficient codes,
		constant term first.
		"""
		return self.__coeffs

	@property
	def degree(self) -> Union[int, float]:
		"""
		*degree* (:class:`int`) is the degree, or :data:`.ZERO_DEGREE` for the zero
		polynomial.
		"""
		return len(self.__coeffs) - 1 if self.__coeffs else ZERO_DEGREE

	@property
	def field(self) -> ExtField:
		return self.__field

	@property
	def lead(self) -> int:
		return self.__coeffs[-1] if self.__coeffs else 0

	def is_zero(self) -> bool:
		return not self.__coeffs

	def __check(self, other: Any) -> 'Poly':
		if not isinstance(other, Poly):
			raise TypeError(f"{other=!r} is not a Poly.")
		elif other.field != self.__field:
			raise FieldMismatch(f"{other!r} and {self!r} are over different fields.")
		return other

	def __add__(self, other: 'Poly') -> 'Poly':
		other = self.__check(other)
		return Poly(self.__field, _polyops.add(self.__field, self.__coeffs, other.coeffs))

	def __sub__(self, other: 'Poly') -> 'Poly':
		other = self.__check(other)
		return Poly(self.__field, _polyops.sub(self.__field, self.__coeffs, other.coeffs))

	def __neg__(self) -> 'Poly':
		return Poly(self.__field, _polyops.neg(self.__field, self.__coeffs))

	def __mul__(self, other: 'Poly') -> 'Poly':
		other = self.__check(other)
		return Poly(self.__field, _polyops.mul(self.__field, self.__coeffs, other.coeffs))

	def __divmod__(self, other: 'Poly') -> Tuple['Poly', 'Poly']:
		other = self.__check(other)
		if other.is_zero():
			raise DivisionByZero("Polynomial division by zero.")
		quot, rem = _polyops.divmod_(self.__field, self.__coeffs, other.coeffs)
		return Poly(self.__field, quot), Poly(self.__field, rem)

	def __floordiv__(self, other: 'Poly') -> 'Poly':
		return divmod(self, other)[0]

	def __mod__(self, other: 'Poly') -> 'Poly':
		return divmod(self, other)[1]

	def __eq__(self, other: Any) -> bool:
		if not isinstance(other, Poly):
			return NotImplemented
		return other.field == self.__field and other.coeffs == self.__coeffs

	def __hash__(self) -> int:
		return hash((self.__field.key, self.__coeffs))

	def __repr__(self) -> str:
		return f"Poly({self.__field!r}, {list(self.__coeffs)!r})"

	def __call__(self, a: Union[FieldElem, int]) -> FieldElem:
		return eval_poly(self, a)

	def derivative(self) -> 'Poly':
		return Poly(self.__field, _polyops.derivative(self.__field, self.__coeffs))

	def gcd(self, other: 'Poly') -> 'Poly':
		other = self.__check(other)
		return Poly(self.__field, _polyops.gcd(self.__field, self.__coeffs, other.coeffs))

	def monic(self) -> 'Poly':
		return Poly(self.__field, _polyops.monic(self.__field, self.__coeffs))

	def scale(self, c: int) -> 'Poly':
		return Poly(self.__field, _polyops.scale(self.__field, self.__coeffs, c))

	def to_json(self) -> List[List[int]]:
		field = self.__field
		return [list(field.coeffs_of(c)) for c in self.__coeffs]


def poly_arith(a: Poly, b: Poly, op: str) -> Union[Poly, Tuple[Poly, Poly]]:
	"""
	Apply a named ring operation.

	*a* and *b* (:class:`.Poly`) are the operands over the same field.

	*op* (:class:`str`) is one of ``"add"``, ``"sub"``, ``"mul"``, ``"divmod"``
	or ``"gcd"``.

	Returns the resulting :class:`.Poly`, or a :class:`tuple` of quotient and
	remainder for ``"divmod"``.
	"""
	if op == 'add':
		return a + b
	elif op == 'sub':
		return a - b
	elif op == 'mul':
		return a * b
	elif op == 'divmod':
		return divmod(a, b)
	elif op == 'gcd':
		return a.gcd(b)
	raise ValueError(f"{op=!r} is not a polynomial operation.")


def eval_poly(f: Poly, a: Union[FieldElem, int]) -> FieldElem:
	"""
	Evaluate *f* at *a* by Horner's rule.

	*f* (:class:`.Poly`) is the polynomial.

	*a* (:class:`.FieldElem` or :class:`int`) is the point: an element of *f*'s
	field, an element of a :class:`.FieldTower` over that field, or a bare code.

	Returns the value (:class:`.FieldElem`) in the field of *a*.
	"""
	field = f.field
	if isinstance(a, (int,)) or (isinstance(a, FieldElem) and a.field == field):
		x = a.value if isinstance(a, FieldElem) else int(a)
		return FieldElem(field, _polyops.evaluate(field, f.coeffs, x))
	elif isinstance(a, FieldElem) and isinstance(a.field, FieldTower) and a.field.ground == field:
		tower = a.field
		acc = tower.zero
		for c in reversed(f.coeffs):
			acc = tower.add(tower.mul(acc, a.value), tower.reduce([c]))
		return FieldElem(tower, acc)
	raise FieldMismatch(f"{a=!r} is not in an extension of {field!r}.")


def interpolate(points: Sequence[Tuple[Union[FieldElem, int], Union[FieldElem, int]]], field: Optional[ExtField] = None) -> Poly:
	"""
	Lagrange interpolation.

	*points* (:class:`~collections.abc.Sequence`) contains the ``(x, y)`` pairs
	with pairwise distinct *x*.

	*field* (:class:`.ExtField` or ``None``) is required only when the points
	are given as bare codes.

	Raises :class:`.DuplicatePoint` when two *x* coincide.

	Returns the unique :class:`.Poly` of degree less than ``len(points)``.
	"""
	if not points:
		raise ValueError("At least one point is required.")
	if field is None:
		field = points[0][0].field
	xs = [x.value if isinstance(x, FieldElem) else int(x) for x, _ in points]
	ys = [y.value if isinstance(y, FieldElem) else int(y) for _, y in points]
	if len(set(xs)) != len(xs):
		raise DuplicatePoint(f"Interpolation points {xs!r} are not distinct.")
	return Poly(field, interpolate_codes(field, xs, ys))


def interpolate_codes(field: ExtField, xs: Sequence[int], ys: Sequence[int]) -> List[int]:
	"""
	Interpolate on codes.

	Returns the coefficient list of degree less than ``len(xs)``.
	"""
	add, sub, mul = field.add, field.sub, field.mul
	full = _polyops.from_roots(field, xs)
	out: List[int] = []
	for i, (xi, yi) in enumerate(zip(xs, ys)):
		if yi == 0:
			continue
		# full / (x - xi) by synthetic division.
		basis = [0] * (len(full) - 1)
		carry = 0
		for j in range(len(full) - 1, 0, -1):
			carry = add(full[j], mul(carry, xi))
			basis[j - 1] = carry
		denom = 1
		for j, xj in enumerate(xs):
			if j != i:
				denom = mul(denom, sub(xi, xj))
		out = _polyops.add(field, out, _polyops.scale(field, basis, mul(yi, field.inv(denom))))
	return out


def roots(f: Poly, bound: int = DEFAULT_ROOT_BOUND) -> FrozenSet[FieldElem]:
	"""
	Find all roots of *f* in its field by exhaustive evaluation.

	*f* (:class:`.Poly`) is the nonzero polynomial.

	*bound* (:class:`int`) is the largest field order searched. Default is
	:data:`.DEFAULT_ROOT_BOUND`.

	Raises :class:`.FieldTooLarge` when the field exceeds *bound*.

	Returns the :class:`frozenset` of roots.
	"""
	if f.is_zero():
		raise ValueError("The zero polynomial has every element as a root.")
	field = f.field
	if field.q > bound:
		raise FieldTooLarge(f"Field order {field.q} exceeds root search bound {bound}.")
	return frozenset(FieldElem(field, a) for a in root_codes(field, f.coeffs))


def root_codes(field: ExtField, coeffs: Sequence[int]) -> List[int]:
	"""
	Get the codes of all roots in canonical element order.
	"""
	evaluate = _polyops.evaluate
	return [a for a in field.elements() if evaluate(field, coeffs, a) == 0]


def split_distinct_linear(f: Poly) -> Optional[Tuple[FieldElem, FrozenSet[FieldElem]]]:
	"""
	Split *f* into distinct linear factors.

	*f* (:class:`.Poly`) is the nonzero polynomial.

	Returns the :class:`tuple` of the leading coefficient *c*
	(:class:`.FieldElem`) and the root set *A* (:class:`frozenset`) with
	``f = c * prod(x - a for a in A)``, or ``None`` when *f* has a repeated
	root or an irreducible factor of degree above 1.
	"""
	if f.is_zero():
		raise ValueError("The zero polynomial does not split.")
	split = split_codes(f.field, f.coeffs)
	if split is None:
		return None
	lead, found = split
	field = f.field
	return FieldElem(field, lead), frozenset(FieldElem(field, a) for a in found)


def split_codes(field: ExtField, coeffs: Sequence[int]) -> Optional[Tuple[int, List[int]]]:
	"""
	Split on codes.

	Returns the leading code and the root codes in canonical order, or
	``None``.
	"""
	coeffs = _polyops.trim(coeffs)
	degree = len(coeffs) - 1
	if degree == 0:
		return coeffs[0], []

	# A repeated root divides the derivative too.
	if len(_polyops.gcd(field, coeffs, _polyops.derivative(field, coeffs))) > 1:
		return None

	found = root_codes(field, coeffs)
	if len(found) != degree:
		return None
	return coeffs[-1], found
