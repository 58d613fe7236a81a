"""
This script tests the exact amplitude simulation.
"""

import itertools
import math
import unittest

import numpy as np

from rsdlog import qsim
from rsdlog.decoder import (
	get_decoder)
from rsdlog.errors import (
	BadParams,
	DecoderNotTotal,
	LengthMismatch,
	NoExactWeightSolution,
	OutOfRange,
	StateTooLarge,
	VanishingCoset)
from rsdlog.ffield import (
	field_of_order)
from rsdlog.qsim import (
	AmplitudeState,
	BernoulliAmplitude,
	RegevPipeline,
	binomial_tail,
	build_bernoulli_state,
	chernoff_tail_bound,
	dual_coset_states,
	ibdd_experiment,
	index_of,
	inverse_qft,
	pgm_basis,
	pgm_bdd,
	pgm_overlaps,
	qft,
	regev_pipeline,
	sample_product_fourier,
	tau_perp,
	tau_perp_expansion,
	tau_prime,
	usd_tau_perp,
	vector_of)
from rsdlog.rscode import (
	RSCode,
	codewords,
	dual_code,
	encode,
	syndrome,
	weight)

CHI2_CRITICAL_2DF = 9.21
"""
The chi-square critical value with two degrees of freedom at ``p = 0.01``.
"""


def random_state(field, n, rng):
	amps = rng.normal(size=field.q**n) + 1j * rng.normal(size=field.q**n)
	return AmplitudeState(field, n, amps / np.linalg.norm(amps))


def subspace_state(field, n, free):
	"""
	Get the uniform state over the vectors that vanish outside the *free*
	coordinates.
	"""
	amps = np.zeros(field.q**n, dtype=np.complex128)
	for values in itertools.product(field.elements(), repeat=len(free)):
		vector = [0] * n
		for j, c in zip(free, values):
			vector[j] = c
		amps[index_of(field, vector)] = 1.0
	return AmplitudeState(field, n, amps / np.linalg.norm(amps))


class Test(unittest.TestCase):
	"""
	The :class:`Test` class tests the :mod:`rsdlog.qsim` module.
	"""

	def test_1_indices(self):
		"""
		Test basis indices.
		"""
		f3 = field_of_order(3)
		self.assertEqual(index_of(f3, (1, 2)), 5)
		self.assertEqual(vector_of(f3, 2, 5), (1, 2))
		f8 = field_of_order(8)
		for index in (0, 7, 100, 511):
			self.assertEqual(index_of(f8, vector_of(f8, 3, index)), index)

	def test_1_state_errors(self):
		"""
		Test amplitude state validation.
		"""
		f3 = field_of_order(3)
		with self.assertRaises(LengthMismatch):
			AmplitudeState(f3, 2, np.ones(8) / math.sqrt(8))
		with self.assertRaises(BadParams):
			AmplitudeState(f3, 2, np.ones(9))
		with self.assertRaises(StateTooLarge):
			AmplitudeState.uniform(f3, 4, max_dim=27)
		with self.assertRaises(StateTooLarge):
			build_bernoulli_state(field_of_order(16), 0.1, 7)

	def test_2_qft_examples(self):
		"""
		Test QFT examples.
		"""
		for q in (2, 3, 4, 5, 8, 9):
			field = field_of_order(q)
			out = qft(AmplitudeState.basis(field, [0]))
			np.testing.assert_allclose(out.amps, np.full(q, 1 / math.sqrt(q)), atol=1e-12)

		# A uniform code state transforms to a uniform dual code state.
		for q, k in ((3, 1), (4, 2), (5, 2)):
			code = RSCode(field_of_order(q), k)
			field = code.field
			amps = np.zeros(q**q, dtype=np.complex128)
			for c in codewords(code):
				amps[index_of(field, c)] = 1.0
			out = qft(AmplitudeState(field, q, amps / np.linalg.norm(amps))).amps
			dual = dual_code(code)
			expected = np.zeros(q**q, dtype=np.complex128)
			for c in codewords(dual):
				expected[index_of(field, c)] = 1.0 / math.sqrt(dual.size)
			np.testing.assert_allclose(out, expected, atol=1e-9)

	def test_2_parseval(self):
		"""
		Test that the QFT preserves the norm and is inverted by its conjugate.
		"""
		rng = np.random.default_rng(40)
		shapes = [(2, 12), (3, 7), (4, 6), (5, 5), (7, 4), (8, 4), (9, 3), (16, 3)]
		for trial in range(500):
			q, n = shapes[trial % len(shapes)]
			state = random_state(field_of_order(q), n, rng)
			out = qft(state)
			self.assertAlmostEqual(out.norm(), 1.0, delta=1e-9)
			if trial < len(shapes):
				np.testing.assert_allclose(inverse_qft(out).amps, state.amps, atol=1e-9)

	def test_3_tau_perp(self):
		"""
		Test the dual noise rate.
		"""
		self.assertAlmostEqual(tau_perp(0.0, 2), 0.5, delta=1e-15)
		for q in (2, 3, 5, 16):
			self.assertAlmostEqual(tau_perp((q - 1) / q, q), 0.0, delta=1e-12)
		self.assertAlmostEqual(tau_perp(tau_perp(0.1, 5), 5), 0.1, delta=1e-12)
		for q in (2, 3, 4, 5, 7, 16, 256):
			for tau in np.linspace(0.0, 1.0 - 1.0 / q, 11):
				self.assertAlmostEqual(tau_perp(tau_perp(tau, q), q), tau, delta=1e-9)

		with self.assertRaises(OutOfRange):
			tau_perp(0.6, 2)
		with self.assertRaises(OutOfRange):
			tau_perp(-0.1, 3)

	def test_3_tau_perp_expansion(self):
		"""
		Test the small-rate expansion of the dual rate.
		"""
		for q in (64, 256, 1024):
			for t in (1, 2, 4):
				approx, remainder = tau_perp_expansion(t / q, q)
				self.assertAlmostEqual(approx + remainder, tau_perp(t / q, q), delta=1e-12)
				self.assertLessEqual(abs(remainder), 5 * t / q**2)

	def test_3_rates(self):
		"""
		Test the derived rates.
		"""
		self.assertEqual(usd_tau_perp(4, 2), 3 / 8)
		self.assertEqual(usd_tau_perp(16, 16), 0.0)
		with self.assertRaises(BadParams):
			usd_tau_perp(4, 5)

		tp = tau_perp(0.05, 16)
		self.assertAlmostEqual(tau_prime(0.05, 16), tp * (1 + (tp * 16)**(-1 / 3)), delta=1e-12)
		self.assertAlmostEqual(tau_prime((16 - 1) / 16, 16), 0.0, delta=1e-9)
		self.assertAlmostEqual(binomial_tail(0.5, 8, 6.5), 9 / 256, delta=1e-15)
		self.assertAlmostEqual(chernoff_tail_bound(0.5, 8), math.exp(-4**(1 / 3) / 3), delta=1e-15)

	def test_4_bernoulli(self):
		"""
		Test Bernoulli amplitudes and their transforms.
		"""
		for q in (2, 3, 4, 5, 8, 9):
			field = field_of_order(q)
			for tau in (0.0, 0.1, 0.3, (q - 1) / q):
				amp = BernoulliAmplitude(q, tau)
				self.assertAlmostEqual(float(np.sum(amp.vector**2)), 1.0, delta=1e-12)
				out = qft(AmplitudeState(field, 1, amp.vector)).amps
				np.testing.assert_allclose(out, amp.dual_vector, atol=1e-12)
				self.assertAlmostEqual(amp.dual_vector[0]**2, 1.0 - amp.tau_perp, delta=1e-12)

		f3 = field_of_order(3)
		state = build_bernoulli_state(f3, 0.4, 2)
		self.assertAlmostEqual(state.probabilities()[0], 0.36, delta=1e-12)
		np.testing.assert_allclose(build_bernoulli_state(f3, 0.0, 3).amps, AmplitudeState.basis(f3, [0, 0, 0]).amps)

		# Every coordinate of the transform is nonzero with probability tau_perp.
		probs = qft(build_bernoulli_state(f3, 0.4, 3)).probabilities().reshape(3, 3, 3)
		for axis in range(3):
			zero = np.take(probs, 0, axis=axis).sum()
			self.assertAlmostEqual(1.0 - zero, tau_perp(0.4, 3), delta=1e-9)

	def test_4_weight_tail(self):
		"""
		Test sampled dual weights against the exact tail and the Chernoff bound.
		"""
		q = n = 8
		tau = tau_perp(0.5, q)
		tp = tau_perp(tau, q)
		self.assertAlmostEqual(tp, 0.5, delta=1e-12)

		size = 20000
		samples = sample_product_fourier(q, tau, n, size, seed=41)
		self.assertEqual(samples.shape, (size, n))
		weights = (samples != 0).sum(axis=1)

		radius = tau_prime(tau, q) * n
		exact = binomial_tail(tp, n, radius)
		self.assertAlmostEqual(exact, 9 / 256, delta=1e-12)
		self.assertLess(exact, chernoff_tail_bound(tp, n))

		tail = float(np.mean(weights > radius))
		sigma = math.sqrt(exact * (1 - exact) / size)
		self.assertLess(abs(tail - exact), 4 * sigma)
		self.assertLessEqual(tail, chernoff_tail_bound(tp, n))

		mean_sigma = math.sqrt(n * tp * (1 - tp) / size)
		self.assertLess(abs(weights.mean() - tp * n), 4 * mean_sigma)

	def test_5_regev_point_mass(self):
		"""
		Test that a point mass error gives the uniform distribution over the
		syndrome coset.
		"""
		code = RSCode(field_of_order(3), 1)
		field = code.field
		f = AmplitudeState.basis(field, [0, 0, 0])
		pipe = RegevPipeline(code, f)
		self.assertTrue(pipe.is_perfect)
		self.assertEqual(pipe.p_dec, 1.0)

		u = (1, 2)
		dist = pipe.distribution(u)
		support = np.flatnonzero(dist)
		self.assertEqual(len(support), 3)
		np.testing.assert_allclose(dist[support], np.full(3, 1 / 3), atol=1e-9)

		samples = pipe.sample(u, seed=42, size=3000)
		members = [vector_of(field, 3, int(i)) for i in support]
		counts = np.array([sum(y == m for y in samples) for m in members])
		self.assertEqual(counts.sum(), 3000)
		chi2 = float(((counts - 1000)**2 / 1000).sum())
		self.assertLess(chi2, CHI2_CRITICAL_2DF)
		for y in set(samples):
			self.assertEqual(syndrome(code, y).entries, u)

	def test_5_regev_subspace(self):
		"""
		Test that an error amplitude whose transform is supported on a small
		weight subspace yields solutions within that weight.
		"""
		rng = np.random.default_rng(43)
		for q in (3, 4):
			code = RSCode(field_of_order(q), 1)
			field = code.field
			n, r = code.n, code.n - code.k
			t = n - 1
			f = subspace_state(field, n, [n - 1])
			f_tilde = qft(f).probabilities()
			self.assertTrue(all(weight(vector_of(field, n, int(i))) <= t for i in np.flatnonzero(f_tilde > 1e-12)))

			pipe = RegevPipeline(code, f)
			self.assertTrue(pipe.is_perfect)
			self.assertAlmostEqual(pipe.p_dec, 1.0, delta=1e-12)
			for u in itertools.product(field.elements(), repeat=r):
				dist = pipe.distribution(u)
				self.assertAlmostEqual(float(dist.sum()), 1.0, delta=1e-9)
				for i in np.flatnonzero(dist > 1e-12):
					y = vector_of(field, n, int(i))
					self.assertEqual(syndrome(code, y).entries, u)
					self.assertLessEqual(weight(y), t)

			for _ in range(5):
				u = tuple(int(c) for c in rng.choice(field.elements(), size=r))
				for y in pipe.sample(u, seed=rng, size=50):
					self.assertEqual(syndrome(code, y).entries, u)
					self.assertLessEqual(weight(y), t)

			y = regev_pipeline(code, u, f, dec=get_decoder('bw'), seed=44)
			self.assertEqual(syndrome(code, y).entries, u)

	def test_5_regev_imperfect(self):
		"""
		Test a decoder that fails on part of the error support. The output
		syndrome is still correct.
		"""
		code = RSCode(field_of_order(4), 2)
		field = code.field
		f = subspace_state(field, 4, [2, 3])
		pipe = RegevPipeline(code, f)
		self.assertFalse(pipe.is_perfect)
		# The support hits every coset once and holds ten coset leaders.
		self.assertAlmostEqual(pipe.p_dec, 10 / 16, delta=1e-12)

		rng = np.random.default_rng(50)
		for u in ((0, 0), (1, 2), (3, 3)):
			dist = pipe.distribution(u)
			self.assertAlmostEqual(float(dist.sum()), 1.0, delta=1e-9)
			for i in np.flatnonzero(dist > 1e-12):
				self.assertEqual(syndrome(code, vector_of(field, 4, int(i))).entries, u)
			for y in pipe.sample(u, seed=rng, size=50):
				self.assertEqual(syndrome(code, y).entries, u)

	def test_5_regev_nearest_codeword(self):
		"""
		Test that the decoder table is nearest codeword decoding of the dual
		with ties going to the lexicographically first error.
		"""
		for q, k in ((3, 1), (4, 2)):
			code = RSCode(field_of_order(q), k)
			field = code.field
			n = code.n
			duals = list(codewords(dual_code(code)))
			pipe = RegevPipeline(code, AmplitudeState.uniform(field, n))
			for y in itertools.product(field.elements(), repeat=n):
				errors = {c: tuple(field.sub(a, b) for a, b in zip(y, c)) for c in duals}
				best = min(weight(e) for e in errors.values())
				first = min(index_of(field, e) for e in errors.values() if weight(e) == best)

				c = pipe.decode_word(y)
				self.assertIn(c, errors)
				self.assertEqual(weight(errors[c]), best, y)
				self.assertEqual(index_of(field, errors[c]), first, y)

	def test_5_regev_not_total(self):
		"""
		Test that a partial decoder is totalized by nearest codeword decoding,
		and rejected without totalization.
		"""
		code = RSCode(field_of_order(4), 2)
		f = subspace_state(code.field, 4, [2, 3])
		pipe = RegevPipeline(code, f, dec=get_decoder('bw'))
		brute = RegevPipeline(code, f)
		np.testing.assert_array_equal(pipe.decoder_table, brute.decoder_table)
		self.assertAlmostEqual(pipe.p_dec, brute.p_dec, delta=1e-12)
		with self.assertRaises(DecoderNotTotal):
			RegevPipeline(code, f, dec=get_decoder('bw'), totalize=False)

	def test_6_ibdd_perfect(self):
		"""
		Test the IBDD experiment with a perfect decoder.
		"""
		code = RSCode(field_of_order(4), 2)
		record = ibdd_experiment(code, 0.0, trials=200, seed=45)
		self.assertEqual(record['successes'], 200)
		self.assertEqual(record['p_dec'], 1.0)
		self.assertEqual(record['eta'], 0.0)
		self.assertAlmostEqual(record['bound_rhs'], 1.0, delta=1e-12)
		self.assertAlmostEqual(record['exact_success'], 1.0, delta=1e-9)

	def test_6_ibdd_noisy(self):
		"""
		Test the IBDD experiment record with Bernoulli noise.
		"""
		code = RSCode(field_of_order(4), 2)
		record = ibdd_experiment(code, 0.1, trials=100, seed=46)
		for key in ('trials', 'successes', 'p_dec', 'eta', 'bound_rhs', 'bound_holds', 'mean_weight', 'gamma'):
			self.assertIn(key, record)
		self.assertLessEqual(record['p_dec'], 1.0)
		self.assertGreaterEqual(record['exact_success'], 0.0)
		self.assertLessEqual(record['exact_success'], 1.0 + 1e-9)
		self.assertEqual(record['success_rate'], record['successes'] / 100)
		self.assertEqual(record, ibdd_experiment(code, 0.1, trials=100, seed=46))
		with self.assertRaises(BadParams):
			ibdd_experiment(code, 0.1, trials=0)

	def test_6_ibdd_bound(self):
		"""
		Test that the exact success probability meets the lower bound across
		codes and noise rates.
		"""
		seed = 51
		for q, k in ((3, 1), (4, 2), (5, 2), (5, 3)):
			code = RSCode(field_of_order(q), k)
			for tau in (0.05, 0.1, 0.2, 0.3):
				record = ibdd_experiment(code, tau, trials=10, seed=seed)
				seed += 1
				self.assertTrue(record['bound_holds'], (q, k, tau, record))
				self.assertGreaterEqual(record['exact_success'], record['bound_rhs'] - 1e-9)

	def test_7_overlaps(self):
		"""
		Test dual coset norms and the PGM overlaps.
		"""
		code = RSCode(field_of_order(3), 1)
		field = code.field
		w, gamma, matrix = pgm_overlaps(code, AmplitudeState.uniform(field, 3))
		np.testing.assert_allclose(w, np.full(3, 1 / math.sqrt(3)), atol=1e-12)
		self.assertAlmostEqual(gamma, 1.0, delta=1e-12)
		self.assertIsNone(matrix)

		f_tilde = qft(build_bernoulli_state(field, 0.2, 3))
		w, gamma, matrix = pgm_overlaps(code, f_tilde, overlaps=True)
		diag = np.diag(matrix)
		np.testing.assert_allclose(diag, np.full(len(diag), diag[0]), atol=1e-9)
		self.assertAlmostEqual(complex(diag[0]), gamma, delta=1e-9)
		self.assertAlmostEqual(float(np.sum(w**2)), 1.0, delta=1e-9)
		self.assertLessEqual(gamma, 1.0 + 1e-9)

		basis = pgm_basis(code, f_tilde)
		np.testing.assert_allclose(basis @ basis.conj().T, np.eye(3), atol=1e-9)

		cosets = dual_coset_states(code, f_tilde)
		self.assertEqual(len(cosets), 3)
		np.testing.assert_allclose([c.norm for c in cosets], w, atol=1e-12)

		with self.assertRaises(VanishingCoset):
			pgm_overlaps(code, AmplitudeState.basis(field, [0, 0, 0]))

	def test_8_pgm_example(self):
		"""
		Test the PGM on the repetition code of length two.
		"""
		f2 = field_of_order(2)
		rng = np.random.default_rng(47)
		counts = {(1, 0): 0, (0, 1): 0}
		for _ in range(2000):
			out = pgm_bdd([[1, 1]], 1, (1, 0), seed=rng, field=f2)
			counts[out.x] += 1
			self.assertIn(out.codeword, ((0, 0), (1, 1)))
		self.assertAlmostEqual(out.gamma, 1.0, delta=1e-9)
		self.assertEqual(out.acceptance, 1.0)
		self.assertEqual(out.solutions, 2)
		self.assertTrue(out.support_ok)
		self.assertLess(abs(counts[(1, 0)] - 1000), 4 * math.sqrt(500))

	def test_8_pgm_codes(self):
		"""
		Test the PGM on Reed-Solomon codes. The instance code is the kernel of
		the generator, the dual code.
		"""
		rng = np.random.default_rng(48)
		for q, k in ((3, 2), (4, 2), (5, 2), (5, 3)):
			code = RSCode(field_of_order(q), k)
			dual = dual_code(code)
			field = code.field
			S = q**k
			radius = (dual.n - dual.k) // 2
			for _ in range(3):
				c = encode(dual, [int(x) for x in rng.integers(0, q, size=dual.k)])
				y0 = list(c)
				for j in rng.choice(q, size=radius, replace=False):
					y0[j] = field.add(y0[j], int(rng.integers(1, q)))
				out = pgm_bdd(code, radius, y0, seed=rng)
				self.assertGreaterEqual(out.gamma, 1 - 1 / S - 1e-9)
				self.assertGreaterEqual(out.postselect_probability, 1 - 2 / S - 1e-9)
				self.assertGreaterEqual(out.acceptance, 1 - 1 / q)
				self.assertTrue(out.support_ok)
				self.assertEqual(out.t, radius)
				self.assertEqual(weight(out.x), radius)
				self.assertEqual(syndrome(dual, out.x), syndrome(dual, y0))
				self.assertEqual(out.codeword, c)
				self.assertEqual(len(out.to_json()['trace']), 7)

	def test_8_pgm_postselect_rate(self):
		"""
		Test that post-selection succeeds on at least ``1 - 2/q**k`` of the
		attempts, counting the restarts actually taken.
		"""
		rng = np.random.default_rng(52)
		for q, k in ((3, 2), (4, 2)):
			code = RSCode(field_of_order(q), k)
			dual = dual_code(code)
			field = code.field
			S = q**k
			radius = (dual.n - dual.k) // 2
			runs, restarts = 100, 0
			for _ in range(runs):
				y0 = list(encode(dual, [int(x) for x in rng.integers(0, q, size=dual.k)]))
				for j in rng.choice(q, size=radius, replace=False):
					y0[j] = field.add(y0[j], int(rng.integers(1, q)))
				out = pgm_bdd(code, radius, y0, seed=rng)
				self.assertLessEqual(out.restarts + 1, out.prepare_attempts)
				restarts += out.restarts
			bound = 1 - 2 / S
			attempts = runs + restarts
			rate = runs / attempts
			self.assertGreaterEqual(rate, bound - 4 * math.sqrt(bound * (1 - bound) / attempts), (q, k, restarts))

	def test_8_pgm_errors(self):
		"""
		Test the PGM error cases.
		"""
		code = RSCode(field_of_order(4), 2)
		y0 = list(encode(dual_code(code), [1, 1]))
		y0[0] = code.field.add(y0[0], 1)
		with self.assertRaises(NoExactWeightSolution):
			pgm_bdd(code, 0, y0, seed=49)
		with self.assertRaises(StateTooLarge):
			pgm_bdd(code, 1, y0, seed=49, max_dim=1000)
		with self.assertRaises(BadParams):
			pgm_bdd([[1, 1]], 1, (1, 0))
		self.assertEqual(qsim.POSTSELECT_RETRIES, 64)
