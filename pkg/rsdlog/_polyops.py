"""
This module contains internal polynomial arithmetic on little-endian
coefficient lists of element codes.

Every function takes the coefficient field first. The field only needs to
provide ``add``, ``sub``, ``neg``, ``mul`` and ``inv`` on codes with ``0`` as
zero and ``1`` as one, so the same routines serve prime fields (when
building extension fields) and table fields (for :mod:`rsdlog.poly`, the
decoders, and tower arithmetic).
"""

from typing import (
	List,  # Replaced by `list` in 3.9.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple)  # Replaced by `tuple` in 3.9.


def trim(a: Sequence[int]) -> List[int]:
	"""
	Strip trailing zero coefficients.

	*a* (:class:`~collections.abc.Sequence` of :class:`int`) is the coefficient
	list.

	Returns the trimmed coefficient list (:class:`list`). The zero polynomial is
	the empty list.
	"""
	end = len(a)
	while end and a[end - 1] == 0:
		end -= 1
	return list(a[:end])


def add(field, a: Sequence[int], b: Sequence[int]) -> List[int]:
	if len(a) < len(b):
		a, b = b, a
	out = list(a)
	fadd = field.add
	for i, c in enumerate(b):
		out[i] = fadd(out[i], c)
	return trim(out)


def neg(field, a: Sequence[int]) -> List[int]:
	fneg = field.neg
	return [fneg(c) for c in a]


def sub(field, a: Sequence[int], b: Sequence[int]) -> List[int]:
	return add(field, a, neg(field, b))


def scale(field, a: Sequence[int], c: int) -> List[int]:
	if c == 0:
		return []
	fmul = field.mul
	return trim([fmul(x, c) for x in a])


def mul(field, a: Sequence[int], b: Sequence[int]) -> List[int]:
	if not a or not b:
		return []
	fadd, fmul = field.add, field.mul
	out = [0] * (len(a) + len(b) - 1)
	for i, x in enumerate(a):
		if x == 0:
			continue
		for j, y in enumerate(b):
			if y:
				out[i + j] = fadd(out[i + j], fmul(x, y))
	return trim(out)


def divmod_(field, a: Sequence[int], b: Sequence[int]) -> Tuple[List[int], List[int]]:
	"""
	Divide with remainder.

	*a* and *b* are the dividend and the nonzero, trimmed divisor.

	Returns the :class:`tuple` of quotient and remainder.
	"""
	b = trim(b)
	if not b:
		raise ZeroDivisionError("Polynomial division by zero.")

	rem = trim(a)
	db = len(b) - 1
	if len(rem) - 1 < db:
		return [], rem

	fadd, fmul, fneg = field.add, field.mul, field.neg
	lead_inv = field.inv(b[-1])
	quot = [0] * (len(rem) - db)
	for i in range(len(rem) - 1, db - 1, -1):
		c = rem[i]
		if c == 0:
			continue
		c = fmul(c, lead_inv)
		quot[i - db] = c
		nc = fneg(c)
		for j, y in enumerate(b):
			if y:
				rem[i - db + j] = fadd(rem[i - db + j], fmul(nc, y))
	return trim(quot), trim(rem[:db])


def mod(field, a: Sequence[int], m: Sequence[int]) -> List[int]:
	return divmod_(field, a, m)[1]


def mulmod(field, a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> List[int]:
	return mod(field, mul(field, a, b), m)


def powmod(field, a: Sequence[int], e: int, m: Sequence[int]) -> List[int]:
	"""
	Raise *a* to the non-negative power *e* modulo *m* by square-and-multiply.
	"""
	result = mod(field, [1], m)
	base = mod(field, a, m)
	while e:
		if e & 1:
			result = mulmod(field, result, base, m)
		e >>= 1
		if e:
			base = mulmod(field, base, base, m)
	return result


def monic(field, a: Sequence[int]) -> List[int]:
	a = trim(a)
	if not a or a[-1] == 1:
		return a
	return scale(field, a, field.inv(a[-1]))


def gcd(field, a: Sequence[int], b: Sequence[int]) -> List[int]:
	"""
	Get the monic greatest common divisor (the zero polynomial when both
	arguments are zero).
	"""
	a, b = trim(a), trim(b)
	while b:
		a, b = b, mod(field, a, b)
	return monic(field, a)


def xgcd(field, a: Sequence[int], b: Sequence[int]) -> Tuple[List[int], List[int], List[int]]:
	"""
	Extended Euclid.

	Returns (*g*, *s*, *t*) with ``s*a + t*b = g`` and *g* monic.
	"""
	r0, r1 = trim(a), trim(b)
	s0, s1 = [1], []
	t0, t1 = [], [1]
	while r1:
		quot, rem = divmod_(field, r0, r1)
		r0, r1 = r1, rem
		s0, s1 = s1, sub(field, s0, mul(field, quot, s1))
		t0, t1 = t1, sub(field, t0, mul(field, quot, t1))
	if not r0:
		return [], s0, t0
	lead_inv = field.inv(r0[-1])
	return scale(field, r0, lead_inv), scale(field, s0, lead_inv), scale(field, t0, lead_inv)


def derivative(field, a: Sequence[int]) -> List[int]:
	out = []
	fadd = field.add
	for i in range(1, len(a)):
		# i * a[i] as repeated addition of the prime-field integer i.
		c = 0
		for _ in range(i % field.p):
			c = fadd(c, a[i])
		out.append(c)
	return trim(out)


def evaluate(field, a: Sequence[int], x: int) -> int:
	"""
	Evaluate by Horner's rule.
	"""
	fadd, fmul = field.add, field.mul
	acc = 0
	for c in reversed(a):
		acc = fadd(fmul(acc, x), c)
	return acc


def from_roots(field, roots: Sequence[int]) -> List[int]:
	"""
	Build the monic polynomial with the given roots.
	"""
	out = [1]
	for r in roots:
		out = mul(field, out, [field.neg(r), 1])
	return out


def is_irreducible(field, f: Sequence[int]) -> bool:
	"""
	Test a polynomial for irreducibility over *field*.

	A polynomial of degree at most 3 is irreducible iff it has no root. Above
	that, ``gcd(f, x**(q**i) - x) = 1`` must hold for ``1 <= i <= deg(f) // 2``.
	"""
	f = trim(f)
	d = len(f) - 1
	if d <= 0:
		return False
	elif d == 1:
		return True

	for a in range(field.order):
		if evaluate(field, f, a) == 0:
			return False

	if d <= 3:
		return True

	x = [0, 1]
	xq = x
	for _ in range(d // 2):
		xq = powmod(field, xq, field.order, f)
		if len(gcd(field, f, sub(field, xq, x))) > 1:
			return False
	return True
