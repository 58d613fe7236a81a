"""
This script tests finite field arithmetic.
"""

import cmath
import itertools
import unittest

import numpy as np

from rsdlog import ffield
from rsdlog.errors import (
	DegreeMismatch,
	DivisionByZero,
	FieldMismatch,
	LengthMismatch,
	MalformedInstance,
	NotPrime,
	Reducible)
from rsdlog.ffield import (
	FieldTower,
	PrimeField,
	chi,
	construct_field,
	elem_arith,
	field_from_json,
	field_of_order,
	find_irreducible,
	trace)


class Test(unittest.TestCase):
	"""
	The :class:`Test` class tests the :mod:`rsdlog.ffield` module.
	"""

	def setUp(self):
		self.f4 = construct_field(2, 2, [1, 1, 1])

	def test_1_construct_prime(self):
		"""
		Test constructing a prime field.
		"""
		field = construct_field(2, 1)
		self.assertEqual(field.q, 2)
		self.assertEqual(field.modulus, (0, 1))
		self.assertEqual(field.elements(), (0, 1))

	def test_1_construct_extension(self):
		"""
		Test constructing F_4 from x^2 + x + 1.
		"""
		field = self.f4
		self.assertEqual((field.p, field.s, field.q), (2, 2, 4))
		self.assertEqual(sorted(field.elements()), [0, 1, 2, 3])
		self.assertIs(construct_field(2, 2, [1, 1, 1]), field)

	def test_1_construct_errors(self):
		"""
		Test the construction errors.
		"""
		with self.assertRaises(Reducible):
			construct_field(2, 2, [1, 0, 1])
		with self.assertRaises(NotPrime):
			construct_field(4, 1)
		with self.assertRaises(NotPrime):
			PrimeField(1)
		with self.assertRaises(DegreeMismatch):
			construct_field(2, 2, [1, 1])
		with self.assertRaises(NotPrime):
			field_of_order(6)

	def test_2_find_irreducible(self):
		"""
		Test finding irreducible polynomials.
		"""
		f2 = construct_field(2)
		f3 = construct_field(3)
		self.assertEqual(find_irreducible(f2, 1, seed=5), [0, 1])
		self.assertEqual(find_irreducible(f2, 2, seed=5), [1, 1, 1])
		for seed in range(10):
			self.assertIn(find_irreducible(f3, 2, seed=seed), ([1, 0, 1], [2, 1, 1], [2, 2, 1]))
		self.assertEqual(find_irreducible(f3, 4, seed=3), find_irreducible(f3, 4, seed=3))

	def test_3_arith_examples(self):
		"""
		Test field arithmetic examples.
		"""
		field = self.f4
		alpha = field.alpha
		self.assertEqual((alpha * alpha).coeffs, (1, 1))
		self.assertEqual(elem_arith(alpha, alpha, 'mul'), alpha + 1)
		self.assertEqual(elem_arith(alpha, None, 'inv') * alpha, field.elem(1))

		f7 = construct_field(7)
		self.assertEqual(f7.elem(3) ** 6, f7.elem(1))
		self.assertEqual(elem_arith(f7.elem(3), None, 'pow', e=6), 1)
		self.assertEqual(f7.elem(3) ** -1, f7.elem(5))
		self.assertEqual(f7.elem(2) / f7.elem(4), f7.elem(4))

	def test_3_arith_errors(self):
		"""
		Test field arithmetic errors.
		"""
		f7 = construct_field(7)
		f5 = construct_field(5)
		with self.assertRaises(DivisionByZero):
			f7.elem(0).inverse()
		with self.assertRaises(DivisionByZero):
			f7.elem(1) / 0
		with self.assertRaises(FieldMismatch):
			f7.elem(1) + f5.elem(1)
		with self.assertRaises(TypeError):
			f7.elem(2) ** 1.5

	def test_3_axioms(self):
		"""
		Test the field axioms on seeded random triples.
		"""
		rng = np.random.default_rng(0)
		for q in (8, 9, 25, 49, 64, 81):
			field = field_of_order(q)
			for _ in range(200):
				a, b, c = (field.elem(int(x)) for x in rng.integers(0, q, size=3))
				self.assertEqual((a + b) + c, a + (b + c))
				self.assertEqual((a * b) * c, a * (b * c))
				self.assertEqual(a + b, b + a)
				self.assertEqual(a * b, b * a)
				self.assertEqual(a * (b + c), a * b + a * c)
				self.assertEqual(a - a, 0)
				if a:
					self.assertEqual(a * a.inverse(), 1)

	def test_3_frobenius(self):
		"""
		Test that the Frobenius map is additive.
		"""
		for q in (4, 8, 9, 16, 25, 27, 49, 64):
			field = field_of_order(q)
			p = field.p
			for a, b in itertools.product(range(q), repeat=2):
				x, y = field.elem(a), field.elem(b)
				self.assertEqual((x + y) ** p, x ** p + y ** p)

	def test_4_trace(self):
		"""
		Test the trace examples and its linearity.
		"""
		field = self.f4
		self.assertEqual(trace(field.elem(0)), 0)
		self.assertEqual(int(trace(field.alpha)), 1)
		self.assertEqual(int(trace(field.elem(1))), 0)

		for q in (4, 8, 9, 16, 27, 32, 49, 64):
			field = field_of_order(q)
			p = field.p
			values = [field.trace_code(a) for a in range(q)]
			self.assertEqual(set(values), set(range(p)))
			for a, b in itertools.product(range(q), repeat=2):
				self.assertEqual(values[field.add(a, b)], (values[a] + values[b]) % p)
			for c in range(p):
				for a in range(q):
					self.assertEqual(values[field.mul(c, a)], c * values[a] % p)

	def test_5_chi_examples(self):
		"""
		Test the character examples.
		"""
		f2 = construct_field(2)
		f3 = construct_field(3)
		self.assertAlmostEqual(chi([f2.elem(1)], [f2.elem(1)]), -1, delta=ffield.TOLERANCE)
		self.assertAlmostEqual(chi(f3.elem(2), f3.elem(0)), 1, delta=ffield.TOLERANCE)
		total = sum(chi(f3.elem(y), f3.elem(1)) for y in range(3))
		self.assertLess(abs(total), ffield.TOLERANCE)
		with self.assertRaises(LengthMismatch):
			chi([f3.elem(1)], [f3.elem(1), f3.elem(2)])

	def test_5_chi_homomorphism(self):
		"""
		Test that characters are symmetric homomorphisms.
		"""
		rng = np.random.default_rng(1)
		for q in (4, 5, 9, 16):
			field = field_of_order(q)
			for _ in range(50):
				y, x, z = ([field.elem(int(c)) for c in rng.integers(0, q, size=3)] for _ in range(3))
				xz = [a + b for a, b in zip(x, z)]
				self.assertLess(abs(chi(y, xz) - chi(y, x) * chi(y, z)), ffield.TOLERANCE)
				self.assertLess(abs(chi(y, x) - chi(x, y)), ffield.TOLERANCE)

	def test_5_chi_orthogonality(self):
		"""
		Test character orthogonality over F_q^n.
		"""
		for q, n in ((2, 3), (3, 2), (4, 2), (5, 2), (7, 1), (8, 2), (9, 2)):
			field = field_of_order(q)
			vectors = [[field.elem(c) for c in v] for v in itertools.product(range(q), repeat=n)]
			table = np.array([[chi(y, x) for x in vectors] for y in vectors])
			gram = table.conj().T @ table
			np.testing.assert_allclose(gram, q**n * np.eye(q**n), atol=ffield.TOLERANCE)

	def test_6_tower(self):
		"""
		Test tower arithmetic and its generator.
		"""
		ground = field_of_order(16)
		tower = FieldTower(ground, 2)
		self.assertEqual(tower.N, 255)
		self.assertEqual(tower.factors, {3: 1, 5: 1, 17: 1})
		b = tower.b
		self.assertEqual(b ** tower.N, tower.elem([1]))
		self.assertTrue(all(b ** (tower.N // r) != tower.elem([1]) for r in tower.factors))

		a = tower.linear(3)
		self.assertEqual(a, tower.alpha - tower.from_ground(3))
		self.assertEqual(a * a.inverse(), tower.elem([1]))
		self.assertEqual(tower.from_ground(5) * tower.from_ground(7), tower.from_ground(ground.mul(5, 7)))

		with self.assertRaises(Reducible):
			FieldTower(ground, 2, h_poly=[1, 0, 1])

	def test_7_json(self):
		"""
		Test loading field descriptors.
		"""
		ground = field_of_order(9)
		tower = FieldTower(ground, 2)
		loaded = field_from_json(tower.to_json())
		self.assertEqual(loaded, tower)
		self.assertEqual(loaded.b, tower.b)
		self.assertEqual(field_from_json(ground.to_json()), ground)

		with self.assertRaises(MalformedInstance) as ctx:
			field_from_json({'p': 3, 's': "2"})
		self.assertEqual(ctx.exception.path, "field.s")
		with self.assertRaises(MalformedInstance):
			ffield.load_element(ground, [1, 5], "x")

	def test_8_character_phase(self):
		"""
		Test that characters are p-th roots of unity.
		"""
		field = field_of_order(25)
		for a in range(field.q):
			value = chi(field.elem(a), field.elem(1))
			self.assertAlmostEqual(value**5, 1, delta=1e-9)
			self.assertAlmostEqual(abs(value), 1.0, delta=1e-12)
			phase = cmath.phase(value) % (2 * cmath.pi)
			self.assertAlmostEqual(phase * 5 / (2 * cmath.pi), field.trace_code(a), delta=1e-9)
