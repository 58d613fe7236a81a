"""
This script tests Cheng-Wan instances, relation collection and the discrete
log solvers.
"""

import math
import unittest

import numpy as np

from rsdlog import chengwan
from rsdlog.chengwan import (
	CWParams,
	GAMMA,
	IndexCalculus,
	Relation,
	baseline_dlog,
	bsgs,
	collect_relations,
	decode_relation,
	extract_relation,
	gen_instance,
	index_calculus_dlog,
	load_instance,
	planted_instance,
	pohlig_hellman,
	pomerance_schedule,
	self_reduce_and_split,
	smooth_relation_sampler,
	solve_mod_N)
from rsdlog.decoder import (
	get_decoder)
from rsdlog.errors import (
	BadParams,
	CannotFactor,
	DegenerateTower,
	MalformedInstance,
	NotInSubgroup,
	PostconditionError,
	WrongWitnessSize)
from rsdlog.ffield import (
	FieldTower,
	field_of_order)
from rsdlog.poly import (
	Poly,
	eval_poly)
from rsdlog.rscode import (
	distance_to_code,
	encode,
	hamming,
	syndrome)


def make_tower(q, h):
	return FieldTower(field_of_order(q), h)


class Test(unittest.TestCase):
	"""
	The :class:`Test` class tests the :mod:`rsdlog.chengwan` module.
	"""

	@classmethod
	def setUpClass(cls):
		cls.t16 = make_tower(16, 2)

	def test_1_params(self):
		"""
		Test the derived code parameters.
		"""
		params = CWParams(self.t16, 12)
		self.assertEqual((params.n, params.k, params.t), (16, 10, 4))
		self.assertEqual(params.code.k, 10)
		self.assertFalse(params.strict_cw)
		self.assertEqual(CWParams(self.t16).g, 12)

		with self.assertRaises(BadParams):
			CWParams(self.t16, 2)
		with self.assertRaises(BadParams):
			CWParams(self.t16, 17)
		with self.assertRaises(BadParams):
			CWParams(self.t16, strict=True)

	def test_1_degree_one(self):
		"""
		Test that a degree one tower punctures the root of its modulus.
		"""
		tower = make_tower(16, 1)
		with self.assertLogs('rsdlog.chengwan', 'WARNING'):
			params = CWParams(tower, 4)
		self.assertEqual(params.n, 15)
		root = [a for a in tower.ground.elements() if a not in params.support]
		self.assertEqual(len(root), 1)
		self.assertEqual(eval_poly(Poly(tower.ground, tower.h_poly), root[0]), 0)
		with self.assertRaises(DegenerateTower):
			CWParams(tower, 8, strict=True)

	def test_2_gen_instance(self):
		"""
		Test received words against an independent evaluation.
		"""
		tower = self.t16
		ground = tower.ground
		params = CWParams(tower, 12)
		h_poly = Poly(ground, tower.h_poly)

		inst = gen_instance(params, 0)
		self.assertEqual(inst.f, Poly(ground, [1]))
		self.assertIsNone(inst.hidden_exponent)

		rng = np.random.default_rng(20)
		for i in [0, 1, 254] + [int(x) for x in rng.integers(0, tower.N, size=10)]:
			inst = gen_instance(params, i, keep_exponent=True)
			self.assertEqual(inst.hidden_exponent, i)
			self.assertEqual(inst.element, tower.b ** i)
			for a, y in zip(params.support, inst.received.entries):
				x = ground.elem(a)
				expected = -eval_poly(inst.f, x) / eval_poly(h_poly, x) - x ** params.k
				self.assertEqual(expected, ground.elem(y))
			self.assertEqual(inst.syndrome, syndrome(params.code, inst.received))

		with self.assertRaises(BadParams):
			gen_instance(params, tower.N)

	def test_3_planted_round_trip(self):
		"""
		Test that extracting the planted witness recovers the planted roots.
		"""
		for q, count in ((16, 200), (81, 200)):
			params = CWParams(make_tower(q, 2), 12)
			rng = np.random.default_rng(q)
			for _ in range(count):
				inst, witness = planted_instance(params, seed=rng)
				rel = extract_relation(inst, witness)
				self.assertIsNotNone(rel)
				A = set(rel.exps)
				self.assertEqual(len(A), params.g)
				for j, a in enumerate(params.support):
					if a in A:
						self.assertEqual(witness[j], inst.received.entries[j])
				self.assertLessEqual(hamming(inst.received.entries, witness), params.t)
				self.assertEqual(syndrome(params.code, inst.received), inst.syndrome)

	def test_3_planted_product(self):
		"""
		Test that the planted group element is the product of its factors.
		"""
		tower = self.t16
		params = CWParams(tower, 12)
		A = list(range(12))
		inst, witness = planted_instance(params, A)
		product = tower.elem([1])
		for a in A:
			product = product * tower.linear(a)
		self.assertEqual(inst.element, product)
		self.assertEqual(set(extract_relation(inst, witness).exps), set(A))

		with self.assertRaises(WrongWitnessSize):
			planted_instance(params, A[:11])
		with self.assertRaises(WrongWitnessSize):
			planted_instance(params, A[:11] + [0])

	def test_3_planted_distance(self):
		"""
		Test the distance of planted received words by enumeration.
		"""
		params = CWParams(self.t16, 6)
		rng = np.random.default_rng(21)
		for _ in range(3):
			inst, _ = planted_instance(params, seed=rng)
			self.assertLessEqual(distance_to_code(inst.received.entries, params.code), params.t)

	def test_3_unusable_codewords(self):
		"""
		Test that non-codewords and non-splitting codewords give no relation.
		"""
		params = CWParams(self.t16, 12)
		inst, witness = planted_instance(params, seed=22)
		broken = list(witness)
		broken[-1] = params.tower.ground.add(broken[-1], 1)
		self.assertIsNone(extract_relation(inst, broken))

		# A codeword whose polynomial has a repeated root.
		ground = params.tower.ground
		codes = [0, 0] + list(range(2, 12))
		big_p = Poly.from_roots(ground, codes)
		quo, rem = divmod(big_p, Poly(ground, params.tower.h_poly))
		message = quo - Poly(ground, [0] * params.k + [1])
		c = encode(params.code, message)
		other = load_instance(dict(inst.to_json(), f=rem.to_json()))
		self.assertIsNone(extract_relation(other, c))

	def test_3_decode_relation(self):
		"""
		Test decoding a planted instance with a large enough agreement.
		"""
		params = CWParams(make_tower(7, 2), 6)
		decoder = get_decoder('brute')
		inst, _ = planted_instance(params, seed=23)
		rel = decode_relation(inst, decoder, params.t)
		self.assertIsNotNone(rel)
		self.assertEqual(len(rel.exps), params.g)

	def test_4_relation(self):
		"""
		Test relation verification and rows.
		"""
		tower = self.t16
		sampler = smooth_relation_sampler(tower, seed=24)
		rel = sampler.ordinary()
		self.assertLessEqual(len(rel.exps), 1)

		# The powers of b**17 are the ground constants.
		lead, exps, lead_log = sampler.split(tower.b ** 17)
		self.assertEqual(exps, {})
		rel = Relation(tower, exps, lead=lead, lead_log=lead_log, exponent=17)
		columns = {s: i for i, s in enumerate(sampler.symbols)}
		row = rel.row(columns)
		self.assertEqual(row[columns[GAMMA]], lead_log)
		self.assertEqual(sum(row), lead_log)

		with self.assertRaises(PostconditionError):
			Relation(tower, {}, lead=1, exponent=1)

		rel = sampler.augmented(5)
		self.assertEqual(rel.inv_factor, 5)
		row = rel.row(columns)
		self.assertEqual(row[columns[5]], rel.exps.get(5, 0) + 1)

	def test_4_schedule(self):
		"""
		Test the sampling schedule.
		"""
		self.assertEqual(pomerance_schedule(1), 3)
		self.assertEqual(pomerance_schedule(17), 11)
		with self.assertRaises(BadParams):
			pomerance_schedule(0)

	def test_4_collect(self):
		"""
		Test that relation collection reaches full rank within ``O(q log q)``
		draws on nearly every seed.
		"""
		tower = self.t16
		limit = 4 * 16 * math.log2(16)
		draws = []
		for seed in range(100):
			system = collect_relations(smooth_relation_sampler(tower, seed=seed))
			self.assertEqual(system.rank(), system.dim)
			self.assertEqual(system.dim, 17)
			for row, i in zip(system.B, system.J):
				self.assertLess(max(row), tower.N)
				self.assertLess(i, tower.N)
			draws.append(system.draws)
		self.assertGreaterEqual(sum(d <= limit for d in draws), 95)
		self.assertLessEqual(np.mean(draws), 2 * 17 * pomerance_schedule(17))

	def test_4_collect_scaling(self):
		"""
		Test that the mean draws to full rank grow like ``q log q``.
		"""
		ratios = []
		for q in (16, 32, 64):
			sampler_draws = []
			for seed in range(10):
				system = collect_relations(smooth_relation_sampler(make_tower(q, 2), seed=100 + seed))
				self.assertEqual(system.rank(), system.dim)
				sampler_draws.append(system.draws)
			ratios.append(np.mean(sampler_draws) / (q * math.log(q)))
		self.assertLessEqual(max(ratios) / min(ratios), 2.0, ratios)

	def test_5_solve_mod_N(self):
		"""
		Test linear algebra modulo a composite.
		"""
		self.assertEqual(solve_mod_N([[1, 0], [0, 1]], [7, 11], 15), [7, 11])
		self.assertEqual(solve_mod_N([[1, 1], [1, 2]], [3, 5], 15), [1, 2])
		self.assertIsNone(solve_mod_N([[1, 1], [1, 1]], [1, 2], 15))
		self.assertEqual(solve_mod_N([[2]], [4], 8), [2])
		self.assertIsNone(solve_mod_N([[2]], [3], 8))
		with self.assertRaises(CannotFactor):
			solve_mod_N([[1]], [1], 101 * 103, factor_bound=50)
		with self.assertRaises(BadParams):
			solve_mod_N([[1]], [1], 1)

	def test_5_solve_mod_N_random(self):
		"""
		Test that solutions of planted systems satisfy them.
		"""
		rng = np.random.default_rng(25)
		for N in (48, 80, 255, 360):
			for _ in range(20):
				B = rng.integers(0, N, size=(6, 4)).tolist()
				x = rng.integers(0, N, size=4).tolist()
				J = [sum(a * b for a, b in zip(row, x)) % N for row in B]
				sol = solve_mod_N(B, J, N)
				self.assertIsNotNone(sol)
				for row, b in zip(B, J):
					self.assertEqual(sum(a * y for a, y in zip(row, sol)) % N, b)

	def test_6_baselines(self):
		"""
		Test the baseline solvers.
		"""
		f7 = field_of_order(7)
		self.assertEqual(bsgs(f7.elem(3), f7.elem(5), 6), 5)
		self.assertEqual(baseline_dlog(f7.elem(3), f7.elem(3), 6, 'pohlig_hellman'), 1)
		with self.assertRaises(NotInSubgroup):
			bsgs(f7.elem(2), f7.elem(3), 3)
		with self.assertRaises(ValueError):
			baseline_dlog(f7.elem(3), f7.elem(5), 6, 'rho')

		tower = self.t16
		rng = np.random.default_rng(26)
		for i in rng.integers(0, tower.N, size=50):
			y = tower.b ** int(i)
			self.assertEqual(pohlig_hellman(tower.b, y, tower.N), bsgs(tower.b, y, tower.N))
			self.assertEqual(bsgs(tower.b, y, tower.N), int(i))

	def test_7_index_calculus(self):
		"""
		Test index calculus against BSGS.
		"""
		for q in (16, 7):
			tower = make_tower(q, 2)
			solver = IndexCalculus(tower, seed=27)
			self.assertEqual(solver.log(tower.b), 1)
			self.assertEqual(solver.log(tower.elem([1])), 0)
			rng = np.random.default_rng(28)
			for i in rng.integers(1, tower.N, size=20):
				y = tower.b ** int(i)
				self.assertEqual(solver.log(y), bsgs(tower.b, y, tower.N))
			self.assertEqual(solver.system.rank(), solver.system.dim)

		tower = make_tower(5, 3)
		y = tower.b ** 77
		self.assertEqual(index_calculus_dlog(tower, y, seed=29), 77)

	def test_7_index_calculus_seeded(self):
		"""
		Test index calculus against BSGS on seeded targets over F_{16^2} and
		F_{32^2}, with the relation draws bounded on nearly every run.
		"""
		for q in (16, 32):
			tower = make_tower(q, 2)
			limit = 20 * q * math.log2(q)
			rng = np.random.default_rng(32 + q)
			within = 0
			for seed in range(50):
				y = tower.b ** int(rng.integers(1, tower.N))
				solver = IndexCalculus(tower, seed=seed)
				self.assertEqual(solver.log(y), bsgs(tower.b, y, tower.N))
				within += solver.system.draws <= limit
			self.assertGreaterEqual(within, 48)

	def test_8_self_reduction(self):
		"""
		Test random self-reduction.
		"""
		tower = self.t16
		f7 = field_of_order(7)
		components = [(f7.elem(3), 6), (tower.b, tower.N)]
		self.assertEqual(self_reduce_and_split(bsgs, components, [f7.elem(3), tower.b], seed=30), (1, 1))

		rng = np.random.default_rng(31)
		for i in rng.integers(0, tower.N, size=100):
			y = tower.b ** int(i)
			self.assertEqual(self_reduce_and_split(bsgs, [(tower.b, tower.N)], [y], seed=rng), (bsgs(tower.b, y, tower.N),))

		with self.assertRaises(BadParams):
			self_reduce_and_split(bsgs, components, [tower.b])

	def test_8_average_to_worst_case(self):
		"""
		Test that self-reduction turns an average-case solver into one with the
		same success rate on a fixed input.
		"""
		tower = self.t16
		N = tower.N
		half = N // 2

		def solver(base, target, order):
			z = bsgs(base, target, order)
			return z if z < half else None

		# Without the shift this input always fails.
		y = tower.b ** (N - 1)
		self.assertIsNone(solver(tower.b, y, N))

		rng = np.random.default_rng(32)
		results = [self_reduce_and_split(solver, [(tower.b, N)], [y], seed=rng)[0] for _ in range(2000)]
		solved = [z for z in results if z is not None]
		self.assertTrue(all(z == N - 1 for z in solved))
		self.assertAlmostEqual(len(solved) / 2000, half / N, delta=0.03)

	def test_9_statistics(self):
		"""
		Test the received word statistics report.
		"""
		params = CWParams(self.t16, 12)
		stats = chengwan.cw_statistics(params, 50, seed=33)
		self.assertEqual(stats['samples'], 50)
		self.assertEqual(stats['chi2_dof'], 15)
		for key in ('received', 'uniform_reference'):
			self.assertGreaterEqual(stats[key]['max_tv'], stats[key]['mean_tv'])
		with self.assertRaises(BadParams):
			chengwan.cw_statistics(params, 0)

	def test_9_json(self):
		"""
		Test loading instances.
		"""
		params = CWParams(self.t16, 12)
		inst = gen_instance(params, 3, keep_exponent=True)
		loaded = load_instance(inst.to_json())
		self.assertEqual(loaded.received.entries, inst.received.entries)
		self.assertEqual(loaded.hidden_exponent, 3)
		self.assertEqual(loaded.f, inst.f)

		doc = inst.to_json()
		doc['received'] = doc['received'][:-1]
		with self.assertRaises(MalformedInstance) as ctx:
			load_instance(doc)
		self.assertTrue(ctx.exception.path.startswith("instance.received"))

		doc = inst.to_json()
		doc['params']['g'] = "12"
		with self.assertRaises(MalformedInstance) as ctx:
			load_instance(doc)
		self.assertEqual(ctx.exception.path, "instance.params.g")
