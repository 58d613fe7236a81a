"""
This script tests polynomial arithmetic.
"""

import itertools
import unittest

import numpy as np

from rsdlog.errors import (
	DivisionByZero,
	DuplicatePoint,
	FieldMismatch,
	FieldTooLarge)
from rsdlog.ffield import (
	FieldTower,
	construct_field,
	field_of_order)
from rsdlog.poly import (
	Poly,
	eval_poly,
	interpolate,
	poly_arith,
	roots,
	split_distinct_linear)


class Test(unittest.TestCase):
	"""
	The :class:`Test` class tests the :mod:`rsdlog.poly` module.
	"""

	def setUp(self):
		self.f2 = construct_field(2)
		self.f5 = construct_field(5)
		self.f7 = construct_field(7)

	def test_1_divmod(self):
		"""
		Test division with remainder.
		"""
		f2 = self.f2
		quo, rem = poly_arith(Poly(f2, [1, 1, 1]), Poly(f2, [1, 1]), 'divmod')
		self.assertEqual(quo, Poly(f2, [0, 1]))
		self.assertEqual(rem, Poly(f2, [1]))
		with self.assertRaises(DivisionByZero):
			divmod(Poly(f2, [1, 1]), Poly(f2))

	def test_1_divmod_identity(self):
		"""
		Test that ``a = q b + r`` with ``deg r < deg b``.
		"""
		rng = np.random.default_rng(2)
		for q in (7, 9, 16):
			field = field_of_order(q)
			for _ in range(50):
				a = Poly(field, [int(c) for c in rng.integers(0, q, size=8)])
				b = Poly(field, [int(c) for c in rng.integers(0, q, size=4)] + [1])
				quo, rem = divmod(a, b)
				self.assertEqual(quo * b + rem, a)
				self.assertLess(rem.degree, b.degree)

	def test_1_gcd_and_zero(self):
		"""
		Test the monic gcd and the zero polynomial.
		"""
		f5 = self.f5
		g = poly_arith(Poly(f5, [4, 0, 1]), Poly(f5, [4, 1]), 'gcd')
		self.assertEqual(g, Poly(f5, [4, 1]))
		zero = Poly(f5)
		self.assertTrue((Poly(f5, [1, 2]) * zero).is_zero())
		self.assertEqual(zero.degree, float('-inf'))
		self.assertEqual(Poly(f5, [3]).degree, 0)
		with self.assertRaises(FieldMismatch):
			Poly(f5, [1]) + Poly(self.f7, [1])

	def test_2_eval(self):
		"""
		Test evaluation.
		"""
		f7 = self.f7
		self.assertEqual(eval_poly(Poly(f7, [0, 0, 1]), 3), 2)
		self.assertEqual(eval_poly(Poly(f7, [6, 1, 1]), 0), 6)
		self.assertEqual(eval_poly(Poly(f7), 4), 0)

	def test_2_eval_tower(self):
		"""
		Test evaluating a ground polynomial at a tower element.
		"""
		ground = field_of_order(4)
		tower = FieldTower(ground, 3)
		f = Poly(ground, [1, 2, 3])
		alpha = tower.alpha
		expected = tower.from_ground(1) + tower.from_ground(2) * alpha + tower.from_ground(3) * alpha * alpha
		self.assertEqual(eval_poly(f, alpha), expected)

		# The modulus vanishes at alpha.
		self.assertEqual(eval_poly(Poly(ground, tower.h_poly), alpha), tower.elem([0]))

	def test_3_interpolate(self):
		"""
		Test interpolation examples.
		"""
		f2, f7 = self.f2, self.f7
		self.assertEqual(interpolate([(0, 1), (1, 1)], f2), Poly(f2, [1]))
		self.assertEqual(interpolate([(1, 1), (2, 4), (3, 2)], f7), Poly(f7, [0, 0, 1]))
		self.assertEqual(interpolate([(f7.elem(5), f7.elem(3))]), Poly(f7, [3]))
		with self.assertRaises(DuplicatePoint):
			interpolate([(1, 1), (1, 2)], f7)

	def test_3_interpolate_round_trip(self):
		"""
		Test that interpolating the values of a polynomial recovers it.
		"""
		rng = np.random.default_rng(3)
		for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
			field = field_of_order(q)
			elements = field.elements()
			for m in range(1, min(q, 8) + 1):
				f = Poly(field, [int(c) for c in rng.integers(0, q, size=m)])
				points = [elements[int(i)] for i in rng.choice(q, size=m, replace=False)]
				pairs = [(a, eval_poly(f, a)) for a in points]
				self.assertEqual(interpolate(pairs, field), f)

	def test_4_roots(self):
		"""
		Test root finding.
		"""
		f2, f5 = self.f2, self.f5
		self.assertEqual(roots(Poly(f5, [4, 0, 1])), {f5.elem(1), f5.elem(4)})
		self.assertEqual(roots(Poly(f2, [1, 1, 1])), frozenset())
		for q in (4, 7, 9):
			field = field_of_order(q)
			self.assertEqual(roots(Poly.from_roots(field, [0, 1])), {field.elem(0), field.elem(1)})
		with self.assertRaises(FieldTooLarge):
			roots(Poly(field_of_order(7), [1, 1]), bound=5)

	def test_5_split(self):
		"""
		Test splitting into distinct linear factors.
		"""
		f5, f7 = self.f5, self.f7
		self.assertEqual(split_distinct_linear(Poly(f5, [4, 0, 1])), (f5.elem(1), frozenset({f5.elem(1), f5.elem(4)})))
		self.assertIsNone(split_distinct_linear(Poly(f5, [0, 0, 1])))
		self.assertEqual(split_distinct_linear(Poly(f7, [1, 3])), (f7.elem(3), frozenset({f7.elem(2)})))
		self.assertIsNone(split_distinct_linear(Poly(self.f2, [1, 1, 1])))

	def test_5_split_planted(self):
		"""
		Test that products of distinct linear factors split back.
		"""
		rng = np.random.default_rng(4)
		for trial in range(500):
			q = (5, 8, 9, 13, 16)[trial % 5]
			field = field_of_order(q)
			size = int(rng.integers(1, q + 1))
			A = [field.elements()[int(i)] for i in rng.choice(q, size=size, replace=False)]
			split = split_distinct_linear(Poly.from_roots(field, A))
			self.assertIsNotNone(split)
			lead, found = split
			self.assertEqual(lead, 1)
			self.assertEqual(found, frozenset(field.elem(a) for a in A))

	def test_5_roots_agree_with_split(self):
		"""
		Test that roots agree with the split whenever it succeeds.
		"""
		field = field_of_order(7)
		for coeffs in itertools.product(range(7), repeat=3):
			f = Poly(field, list(coeffs) + [1])
			split = split_distinct_linear(f)
			found = roots(f)
			self.assertEqual(found, frozenset(a for a in map(field.elem, range(7)) if eval_poly(f, a) == 0))
			if split is not None:
				self.assertEqual(split[1], found)
				self.assertEqual(len(found), 3)
