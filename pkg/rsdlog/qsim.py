"""
This module simulates the quantum side exactly with dense amplitude arrays
over F_q^n: additive characters and the QFT, Bernoulli error states and the
``tau_perp`` duality, the Regev reduction pipeline, and the Pretty Good
Measurement algorithm for bounded-distance decoding.

A vector ``(x_0, ..., x_{n-1})`` is stored at the mixed-radix index of the
canonical positions of its entries, with coordinate 0 most significant.
"""

import functools
import logging
import math
from typing import (
	Any,
	Dict,  # Replaced by `dict` in 3.9.
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple,  # Replaced by `tuple` in 3.9.
	Union)  # Replaced by `X | Y` in 3.10.

import numpy as np

from ._util import (
	make_rng)
from .errors import (
	BadParams,
	BudgetExceeded,
	DecoderNotTotal,
	LengthMismatch,
	NoExactWeightSolution,
	OutOfRange,
	PostconditionError,
	StateTooLarge,
	VanishingCoset)
from .ffield import (
	TOLERANCE,
	ExtField)
from .rscode import (
	RSCode,
	Syndrome)
from .typing import (
	Matrix,
	Seed,
	Vector)

logger = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 2**24
"""
The default bound on the number of amplitudes in a simulated state.
"""

POSTSELECT_RETRIES = 64
"""
The number of times the PGM algorithm restarts after a failed
post-selection.
"""


# Index helpers.

@functools.lru_cache(maxsize=32)
def _field_arrays(field: ExtField) -> Tuple[np.ndarray, ...]:
	"""
	Get the position-to-code array, the code-to-position array, the code
	tables and the trace of every code.
	"""
	add, mul, neg = field.tables()
	elems = np.asarray(field.elements(), dtype=np.int64)
	pos = np.asarray(field.positions(), dtype=np.int64)
	trace = np.asarray([field.trace_code(c) for c in range(field.q)], dtype=np.int64)
	return elems, pos, add, mul, neg, trace


@functools.lru_cache(maxsize=32)
def _character_matrix(field: ExtField) -> np.ndarray:
	"""
	Get ``K[a, b] = chi(x_a * x_b)`` for the elements at positions *a* and *b*.
	"""
	elems, _, _, mul, _, trace = _field_arrays(field)
	phase = trace[mul[elems[:, None], elems[None, :]]]
	return np.exp(2j * np.pi * phase / field.p)


def _digits(q: int, n: int) -> np.ndarray:
	"""
	Get the position digits of every index as a ``(q**n, n)`` array.
	"""
	if n == 0:
		return np.zeros((1, 0), dtype=np.int64)
	return np.stack(np.unravel_index(np.arange(q**n), (q,) * n), axis=1).astype(np.int64)


def _pack(digits: np.ndarray, q: int) -> np.ndarray:
	n = digits.shape[-1]
	radix = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
	return digits @ radix


def index_of(field: ExtField, vector: Sequence[int]) -> int:
	"""
	Get the basis index of a vector of codes.
	"""
	_, pos, *_ = _field_arrays(field)
	idx = 0
	for c in vector:
		idx = idx * field.q + int(pos[int(c)])
	return idx


def vector_of(field: ExtField, n: int, index: int) -> Vector:
	"""
	Get the vector of codes at basis *index*.
	"""
	elems, *_ = _field_arrays(field)
	q = field.q
	out = []
	for _ in range(n):
		index, d = divmod(int(index), q)
		out.append(int(elems[d]))
	return tuple(reversed(out))


def _linear_map(field: ExtField, matrix: Sequence[Sequence[int]], n: int) -> np.ndarray:
	"""
	Get the index of ``M y^T`` for every basis index *y* of F_q^n.
	"""
	elems, pos, add, mul, _, _ = _field_arrays(field)
	q = field.q
	codes = elems[_digits(q, n)]
	out = np.zeros((codes.shape[0], len(matrix)), dtype=np.int64)
	for i, row in enumerate(matrix):
		acc = np.zeros(codes.shape[0], dtype=np.int64)
		for j, a in enumerate(row):
			if a:
				acc = add[acc, mul[a, codes[:, j]]]
		out[:, i] = acc
	return _pack(pos[out], q)


def _translate(field: ExtField, n: int, vector: Sequence[int]) -> np.ndarray:
	"""
	Get the index of ``e + v`` for every basis index *e*.
	"""
	elems, pos, add, *_ = _field_arrays(field)
	q = field.q
	codes = elems[_digits(q, n)]
	shifted = add[codes, np.asarray(vector, dtype=np.int64)[None, :]] if n else codes
	return _pack(pos[shifted], q)


def _weights(q: int, n: int) -> np.ndarray:
	return (_digits(q, n) != 0).sum(axis=1)


def _check_dim(q: int, n: int, extra: int, max_dim: int) -> int:
	dim = q**n
	if dim * extra > max_dim:
		raise StateTooLarge(f"State dimension {dim * extra} exceeds {max_dim}.")
	return dim


def _sample_indices(probs: np.ndarray, rng: np.random.Generator, size: int) -> np.ndarray:
	"""
	Sample indices by inverse CDF over an exact probability array.
	"""
	cdf = np.cumsum(probs)
	cdf /= cdf[-1]
	idx = np.searchsorted(cdf, rng.random(size), side='right')
	return np.minimum(idx, len(probs) - 1)


def _transform(field: ExtField, tensor: np.ndarray, axes: Sequence[int], inverse: bool) -> np.ndarray:
	kernel = _character_matrix(field) / math.sqrt(field.q)
	if inverse:
		kernel = kernel.conj()
	for axis in axes:
		tensor = np.moveaxis(np.tensordot(kernel, tensor, axes=([1], [axis])), 0, axis)
	return tensor


def _as_vector(field: ExtField, entries: Any, length: int, name: str) -> Vector:
	if isinstance(entries, Syndrome):
		entries = entries.entries
	entries = tuple(int(c) for c in entries)
	if len(entries) != length:
		raise LengthMismatch(f"{name} has length {len(entries)}, expected {length}.")
	return entries


# States.

class AmplitudeState(object):
	"""
	The :class:`.AmplitudeState` class is a normalized dense amplitude vector
	over F_q^n.
	"""

	def __init__(
		self,
		field: ExtField,
		n: int,
		amps: Any,
		max_dim: int = DEFAULT_MAX_DIM,
		normalized: bool = True,
	) -> None:
		"""
		Initializes the :class:`.AmplitudeState` instance.

		*field* (:class:`.ExtField`) is the field.

		*n* (:class:`int`) is the number of coordinates.

		*amps* (:class:`numpy.ndarray`) contains the ``q**n`` amplitudes in
		index order.

		*max_dim* (:class:`int`) bounds ``q**n``.

		*normalized* (:class:`bool`) is whether to require unit norm. Default is
		``True``.
		"""
		if not isinstance(field, ExtField):
			raise TypeError(f"{field=!r} is not an ExtField.")
		dim = _check_dim(field.q, n, 1, max_dim)
		amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
		if amps.size != dim:
			raise LengthMismatch(f"Expected {dim} amplitudes, got {amps.size}.")
		if normalized and abs(np.linalg.norm(amps) - 1.0) > TOLERANCE:
			raise BadParams(f"State norm {np.linalg.norm(amps)} is not 1.")

		self.__field = field
		self.__n = n
		self.__amps = amps

	@classmethod
	def basis(cls, field: ExtField, vector: Sequence[int], **kw) -> 'AmplitudeState':
		"""
		Get the computational basis state of *vector*.
		"""
		n = len(vector)
		amps = np.zeros(field.q**n, dtype=np.complex128)
		amps[index_of(field, vector)] = 1.0
		return cls(field, n, amps, **kw)

	@classmethod
	def uniform(cls, field: ExtField, n: int, **kw) -> 'AmplitudeState':
		dim = field.q**n
		return cls(field, n, np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128), **kw)

	@property
	def amps(self) -> np.ndarray:
		"""
		*amps* (:class:`numpy.ndarray`) is a copy of the amplitudes.
		"""
		return self.__amps.copy()

	@property
	def dim(self) -> int:
		return self.__amps.size

	@property
	def field(self) -> ExtField:
		return self.__field

	@property
	def n(self) -> int:
		return self.__n

	@property
	def q(self) -> int:
		return self.__field.q

	def index(self, vector: Sequence[int]) -> int:
		return index_of(self.__field, vector)

	def norm(self) -> float:
		return float(np.linalg.norm(self.__amps))

	def probabilities(self) -> np.ndarray:
		return np.abs(self.__amps)**2

	def sample(self, seed: Seed = None, size: int = 1) -> List[Vector]:
		"""
		Measure in the computational basis *size* times.

		Returns the measured vectors (:class:`list` of :class:`tuple`).
		"""
		rng = make_rng(seed)
		return [self.vector(i) for i in _sample_indices(self.probabilities(), rng, size)]

	def tensor(self) -> np.ndarray:
		"""
		Get the amplitudes reshaped to ``(q,) * n``.
		"""
		return self.__amps.reshape((self.q,) * self.__n)

	def vector(self, index: int) -> Vector:
		return vector_of(self.__field, self.__n, index)

	def __repr__(self) -> str:
		return f"AmplitudeState(q={self.q}, n={self.__n})"


def qft(state: AmplitudeState) -> AmplitudeState:
	"""
	Apply the quantum Fourier transform
	``f~(x) = q**(-n/2) * sum_y chi_x(y) f(y)``.

	Returns the transformed :class:`.AmplitudeState`.
	"""
	out = _transform(state.field, state.tensor(), range(state.n), inverse=False)
	return AmplitudeState(state.field, state.n, out, max_dim=state.dim, normalized=False)


def inverse_qft(state: AmplitudeState) -> AmplitudeState:
	"""
	Apply the inverse QFT (conjugate characters).
	"""
	out = _transform(state.field, state.tensor(), range(state.n), inverse=True)
	return AmplitudeState(state.field, state.n, out, max_dim=state.dim, normalized=False)


# Bernoulli noise.

def _check_tau(tau: float, q: int) -> float:
	if not isinstance(q, int) or q < 2:
		raise BadParams(f"{q=!r} is not a field size.")
	tau = float(tau)
	if not -1e-12 <= tau <= 1.0 - 1.0 / q + 1e-12:
		raise OutOfRange(f"{tau=!r} is not in [0, {1 - 1 / q}].")
	return min(max(tau, 0.0), 1.0 - 1.0 / q)


def tau_perp(tau: float, q: int) -> float:
	"""
	Get the Fourier-dual noise rate
	``(1/q) * (sqrt((q - 1)(1 - tau)) - sqrt(tau))**2``.

	*tau* (:class:`float`) is in ``[0, 1 - 1/q]``.

	*q* (:class:`int`) is the field size.

	Returns the dual rate (:class:`float`).
	"""
	tau = _check_tau(tau, q)
	return (math.sqrt((q - 1) * (1.0 - tau)) - math.sqrt(tau))**2 / q


def tau_perp_expansion(tau: float, q: int) -> Tuple[float, float]:
	"""
	Get the small-rate expansion ``1 - tau - 2 sqrt(t)/q - 1/q`` with
	``t = q tau`` and its remainder against :func:`.tau_perp`.

	Returns a :class:`tuple` of the expansion and the remainder.
	"""
	exact = tau_perp(tau, q)
	approx = 1.0 - tau - 2.0 * math.sqrt(q * tau) / q - 1.0 / q
	return approx, exact - approx


def tau_prime(tau: float, q: int) -> float:
	"""
	Get the IBDD error fraction ``tau_perp * (1 + (tau_perp q)**(-1/3))``.
	"""
	tp = tau_perp(tau, q)
	if tp == 0.0:
		return 0.0
	return tp * (1.0 + (tp * q)**(-1.0 / 3.0))


def usd_tau_perp(q: int, k: int) -> float:
	"""
	Get the dual rate ``(q - 1)(q - k) / q**2`` reached by unambiguous state
	discrimination on ``RS[q, q - k]_q``.
	"""
	if not isinstance(k, int) or not 0 <= k <= q:
		raise BadParams(f"{k=!r} is not in [0, {q}].")
	return (q - 1) * (q - k) / q**2


def chernoff_tail_bound(tp: float, n: int) -> float:
	"""
	Get the multiplicative Chernoff bound ``exp(-(tp n)**(1/3) / 3)`` on the
	probability that more than ``tp (1 + (tp n)**(-1/3)) n`` of *n* independent
	coordinates are nonzero.
	"""
	mean = tp * n
	if mean <= 0.0:
		return 1.0
	return math.exp(-mean**(1.0 / 3.0) / 3.0)


def binomial_tail(p: float, n: int, threshold: float) -> float:
	"""
	Get the exact probability that a binomial ``(n, p)`` exceeds *threshold*.
	"""
	return float(sum(math.comb(n, w) * p**w * (1.0 - p)**(n - w) for w in range(n + 1) if w > threshold))


class BernoulliAmplitude(object):
	"""
	The :class:`.BernoulliAmplitude` class is the single-coordinate amplitude
	``u(0) = sqrt(1 - tau)``, ``u(x) = sqrt(tau / (q - 1))`` otherwise.
	"""

	def __init__(self, q: int, tau: float) -> None:
		self.__tau = _check_tau(tau, q)
		self.__q = q

	@property
	def q(self) -> int:
		return self.__q

	@property
	def tau(self) -> float:
		return self.__tau

	@property
	def tau_perp(self) -> float:
		return tau_perp(self.__tau, self.__q)

	@property
	def vector(self) -> np.ndarray:
		"""
		*vector* (:class:`numpy.ndarray`) contains the amplitudes by position.
		"""
		q, tau = self.__q, self.__tau
		out = np.full(q, math.sqrt(tau / (q - 1)))
		out[0] = math.sqrt(1.0 - tau)
		return out

	@property
	def dual_vector(self) -> np.ndarray:
		"""
		*dual_vector* (:class:`numpy.ndarray`) contains the Fourier transform of
		:attr:`.vector` by position. It is real since the nonzero characters
		sum to -1.
		"""
		q, tau = self.__q, self.__tau
		a = math.sqrt(1.0 - tau)
		b = math.sqrt(tau / (q - 1))
		out = np.full(q, (a - b) / math.sqrt(q))
		out[0] = (a + (q - 1) * b) / math.sqrt(q)
		return out


def build_bernoulli_state(field: ExtField, tau: float, n: int, max_dim: int = DEFAULT_MAX_DIM) -> AmplitudeState:
	"""
	Build the product state of *n* :class:`.BernoulliAmplitude` coordinates.
	"""
	_check_dim(field.q, n, 1, max_dim)
	u = BernoulliAmplitude(field.q, tau).vector
	amps = functools.reduce(np.multiply.outer, [u] * n) if n else np.ones(1)
	return AmplitudeState(field, n, amps.reshape(-1), max_dim=max_dim)


def sample_product_fourier(q: int, tau: float, n: int, size: int, seed: Seed = None) -> np.ndarray:
	"""
	Sample the QFT of the Bernoulli product state coordinate by coordinate.

	Each coordinate is independent with distribution ``|u^(x)|**2``, so
	no dense state is built.

	Returns the sampled positions as a ``(size, n)`` array.
	"""
	rng = make_rng(seed)
	probs = BernoulliAmplitude(q, tau).dual_vector**2
	probs /= probs.sum()
	return rng.choice(q, size=(size, n), p=probs)


# Regev reduction.

class RegevPipeline(object):
	"""
	The :class:`.RegevPipeline` class runs the reduction from syndrome decoding
	of a code to the quantum decoding problem on its dual, for a fixed error
	amplitude *f* and coherent dual decoder.

	The joint state ``sum_e f(e)|e> (x) sum_s conj(chi_s(u))|s>`` is mapped by
	``|e>|s> -> |e + sH>|s>``, then ``|y>|a> -> |y>|a - Dec(y)>``, then the QFT
	on the first register, and measured.

	``Dec`` is nearest-codeword decoding of the dual: among the decoder
	candidates it takes the one with the smallest error weight, with ties
	going to the lexicographically first error ``y - Dec(y)``. Words without a
	candidate fall back to the nearest of all dual codewords under the same
	rule (totalization). Neither step looks at *f*, and the rule commutes with
	translation by dual codewords, so the output always has syndrome *u*.
	Whether ``Dec`` succeeds on the support of *f* is only measured, by
	:attr:`.is_perfect` and :attr:`.p_dec`.
	"""

	def __init__(
		self,
		code: RSCode,
		f: AmplitudeState,
		dec: Optional[Any] = None,
		totalize: bool = True,
		max_dim: int = DEFAULT_MAX_DIM,
	) -> None:
		"""
		Initializes the :class:`.RegevPipeline` instance.

		*code* (:class:`.RSCode`) is the code whose syndromes are decoded.

		*f* (:class:`.AmplitudeState`) is the error amplitude over F_q^n.

		*dec* (:class:`~rsdlog.decoder.DecoderContract` or ``None``) decodes the
		dual code. It requires a full-support code.

		*totalize* (:class:`bool`) is whether words without a decoder candidate
		fall back to nearest dual codeword. Default is ``True``.

		*max_dim* (:class:`int`) bounds ``q**n * q**(n - k)``.
		"""
		field = code.field
		q, n, r = field.q, code.n, code.n - code.k
		if f.field != field or f.n != n:
			raise BadParams(f"{f!r} does not match {code!r}.")
		if dec is not None and not code.full_support:
			raise BadParams("A named dual decoder needs a full-support code.")
		Q = _check_dim(q, n, q**r, max_dim)
		S = q**r

		H = code.parity_check_matrix()
		elems, pos, add, _, neg, _ = _field_arrays(field)
		self.__code = code
		self.__field = field
		self.__f = f
		self.__H = H
		self.__Q, self.__S, self.__r = Q, S, r
		self.__weights = _weights(q, n)
		self.__syndromes = _linear_map(field, H, n)

		s_codes = elems[_digits(q, r)]
		self.__s_codes = s_codes
		# Index of the dual codeword sH for every message s.
		cw_index = _linear_map(field, [list(col) for col in zip(*H)], r) if r else np.zeros(1, dtype=np.int64)
		self.__cw_index = cw_index
		self.__shifts = [_translate(field, n, vector_of(field, n, int(c))) for c in cw_index]

		self.__table = self.__build_table(dec, totalize)

		# Ancilla index of s - Dec(y) for every (s, y).
		dec_codes = s_codes[self.__table]
		anc = np.empty((S, Q), dtype=np.int64)
		for s in range(S):
			diff = add[s_codes[s][None, :], neg[dec_codes]] if r else dec_codes
			anc[s] = _pack(pos[diff], q)
		self.__ancilla = anc

	def __build_table(self, dec: Optional[Any], totalize: bool) -> np.ndarray:
		field = self.__field
		Q, S, n = self.__Q, self.__S, self.__code.n
		weights = self.__weights

		# err[y, s] is the index of y - sH.
		err = np.empty((Q, S), dtype=np.int64)
		for s, shift in enumerate(self.__shifts):
			err[shift, s] = np.arange(Q)
		key = weights[err] * Q + err
		brute = np.argmin(key, axis=1)
		if dec is None:
			return brute

		dual = self.__code.dual()
		lookup = {int(c): s for s, c in enumerate(self.__cw_index)}
		table = np.empty(Q, dtype=np.int64)
		for y in range(Q):
			word = vector_of(field, n, y)
			best = None
			for c in dec.decode(dual, word):
				s = lookup[index_of(field, c)]
				if best is None or key[y, s] < key[y, best]:
					best = s
			if best is None:
				if not totalize:
					raise DecoderNotTotal(f"{dec!r} has no candidate for {word!r}.")
				best = int(brute[y])
			table[y] = best
		return table

	@property
	def decoder_table(self) -> np.ndarray:
		"""
		*decoder_table* (:class:`numpy.ndarray`) maps each word index to the
		index of the decoded dual message.
		"""
		return self.__table.copy()

	def decode_word(self, y: Sequence[int]) -> Vector:
		"""
		Get the dual codeword ``Dec(y)`` chosen for the word *y*.
		"""
		index = index_of(self.__field, _as_vector(self.__field, y, self.__code.n, "y"))
		return vector_of(self.__field, self.__code.n, int(self.__cw_index[self.__table[index]]))

	@property
	def is_perfect(self) -> bool:
		"""
		*is_perfect* (:class:`bool`) is whether ``Dec(e + sH) = s`` on the
		support of *f*, so that the ancilla is returned to zero. The decoder
		commutes with translation by dual codewords, so ``s = 0`` decides it.
		"""
		mask = np.abs(self.__f.amps) > TOLERANCE
		return bool(np.all(self.__table[mask] == 0))

	@property
	def p_dec(self) -> float:
		"""
		*p_dec* (:class:`float`) is the classical decoding success
		``sum |f(e)|**2 [Dec(e + sH) = s]``, the same for every *s*.
		"""
		probs = self.__f.probabilities()
		return float(probs[self.__table == 0].sum())

	@property
	def weights(self) -> np.ndarray:
		return self.__weights

	def distribution(self, u: Union[Syndrome, Sequence[int]]) -> np.ndarray:
		"""
		Get the exact distribution of the measured word for syndrome *u*.

		Raises :class:`.PostconditionError` if a stage loses norm or a word of
		the wrong syndrome has weight.

		Returns the probabilities by word index (:class:`numpy.ndarray`).
		"""
		field = self.__field
		q, n, r = field.q, self.__code.n, self.__r
		Q, S = self.__Q, self.__S
		u = _as_vector(field, u, r, "u")
		u_index = index_of(field, u)

		_, _, add, mul, _, trace = _field_arrays(field)
		dots = np.zeros(S, dtype=np.int64)
		for i, ui in enumerate(u):
			if ui:
				dots = add[dots, mul[ui, self.__s_codes[:, i]]]
		phase = np.exp(-2j * np.pi * trace[dots] / field.p) / math.sqrt(S)

		f = self.__f.amps
		joint = np.zeros((Q, S), dtype=np.complex128)
		for s, shift in enumerate(self.__shifts):
			joint[shift, self.__ancilla[s, shift]] += f * phase[s]
		self.__check_norm(joint, "decoder")

		tensor = _transform(field, joint.reshape((q,) * n + (S,)), range(n), inverse=False)
		joint = tensor.reshape(Q, S)
		self.__check_norm(joint, "qft")

		probs = np.abs(joint)**2
		probs[probs < TOLERANCE**2] = 0.0
		marginal = probs.sum(axis=1)
		marginal /= marginal.sum()
		if np.any(self.__syndromes[marginal > 0] != u_index):
			raise PostconditionError(f"Output weight outside the syndrome coset of {u!r}.")
		return marginal

	def __check_norm(self, joint: np.ndarray, stage: str) -> None:
		norm = np.linalg.norm(joint)
		if abs(norm - 1.0) > TOLERANCE:
			raise PostconditionError(f"Norm {norm} after {stage}.")

	def sample(self, u: Union[Syndrome, Sequence[int]], seed: Seed = None, size: int = 1) -> List[Vector]:
		"""
		Run the pipeline *size* times for syndrome *u*.

		Returns the measured words (:class:`list` of :class:`tuple`).
		"""
		rng = make_rng(seed)
		dist = self.distribution(u)
		field, n = self.__field, self.__code.n
		return [vector_of(field, n, i) for i in _sample_indices(dist, rng, size)]


def regev_pipeline(
	code: RSCode,
	u: Union[Syndrome, Sequence[int]],
	f: AmplitudeState,
	dec: Optional[Any] = None,
	seed: Seed = None,
	size: Optional[int] = None,
	totalize: bool = True,
	max_dim: int = DEFAULT_MAX_DIM,
) -> Union[Vector, List[Vector]]:
	"""
	Run the Regev reduction pipeline and measure.

	*code* (:class:`.RSCode`) is the code.

	*u* (:class:`.Syndrome` or :class:`~collections.abc.Sequence`) is the target
	syndrome ``H y^T``.

	*f* (:class:`.AmplitudeState`) is the error amplitude.

	*dec* (:class:`~rsdlog.decoder.DecoderContract` or ``None``) decodes the
	dual.

	*seed* is the measurement seed.

	*size* (:class:`int` or ``None``) is the number of samples. Default is
	``None`` for a single vector.

	Returns a vector *y* with ``H y^T = u`` (:class:`tuple`), or a
	:class:`list` of them when *size* is given.
	"""
	pipe = RegevPipeline(code, f, dec=dec, totalize=totalize, max_dim=max_dim)
	out = pipe.sample(u, seed, 1 if size is None else size)
	return out[0] if size is None else out


def ibdd_experiment(
	code: RSCode,
	tau: float,
	dec: Optional[Any] = None,
	trials: int = 100,
	seed: Seed = None,
	totalize: bool = True,
	max_dim: int = DEFAULT_MAX_DIM,
) -> Dict[str, Any]:
	"""
	Run the Regev pipeline with Bernoulli noise on uniformly random syndromes
	and compare the success rate against the lower bound
	``p_dec (1 - eta) - 2 sqrt(eta p_dec (1 - p_dec))``.

	A trial succeeds when the measured word has weight at most ``tau' n``.
	*eta* is the exact weight of ``|f~|**2`` beyond that radius.
	``bound_holds`` compares the exact success probability, averaged over the
	drawn syndromes, against the bound.

	Returns the statistics record (:class:`dict`).
	"""
	if trials < 1:
		raise BadParams(f"{trials=!r} is not positive.")
	field = code.field
	q, n, r = field.q, code.n, code.n - code.k
	rng = make_rng(seed)

	f = build_bernoulli_state(field, tau, n, max_dim=max_dim)
	pipe = RegevPipeline(code, f, dec=dec, totalize=totalize, max_dim=max_dim)
	tp = tau_perp(tau, q)
	radius = tau_prime(tau, q) * n
	eta = binomial_tail(tp, n, radius)
	p_dec = pipe.p_dec
	bound = p_dec * (1.0 - eta) - 2.0 * math.sqrt(max(eta * p_dec * (1.0 - p_dec), 0.0))

	within = pipe.weights <= radius
	cache: Dict[int, np.ndarray] = {}
	successes = 0
	total_weight = 0
	exact = 0.0
	for _ in range(trials):
		u_index = int(rng.integers(0, q**r))
		dist = cache.get(u_index)
		if dist is None:
			dist = cache[u_index] = pipe.distribution(vector_of(field, r, u_index))
		y = int(_sample_indices(dist, rng, 1)[0])
		w = int(pipe.weights[y])
		total_weight += w
		successes += w <= radius
		exact += float(dist[within].sum())

	logger.info("IBDD: %d/%d successes, p_dec=%.4f, eta=%.4g.", successes, trials, p_dec, eta)
	return {
		'trials': trials,
		'successes': successes,
		'success_rate': successes / trials,
		'exact_success': exact / trials,
		'p_dec': p_dec,
		'eta': eta,
		'eta_chernoff': chernoff_tail_bound(tp, n),
		'bound_rhs': bound,
		'bound_holds': exact / trials >= bound - TOLERANCE,
		'mean_weight': total_weight / trials,
		'tau': tau,
		'tau_perp': tp,
		'radius': radius,
		'gamma': None,
	}


# Pretty Good Measurement.

def _generator(code: Union[RSCode, Matrix], field: Optional[ExtField]) -> Tuple[ExtField, Matrix, int]:
	if isinstance(code, RSCode):
		return code.field, code.generator_matrix(), code.n
	elif field is None:
		raise BadParams("A generator matrix needs its field.")
	G = [[int(c) for c in row] for row in code]
	if not G or any(len(row) != len(G[0]) for row in G):
		raise LengthMismatch(f"{G=!r} is not a rectangular matrix.")
	return field, G, len(G[0])


def _f_tilde(f_tilde: Union[AmplitudeState, np.ndarray]) -> np.ndarray:
	if isinstance(f_tilde, AmplitudeState):
		return f_tilde.amps
	return np.asarray(f_tilde, dtype=np.complex128).reshape(-1)


class DualCosetState(object):
	"""
	The :class:`.DualCosetState` class is the unnormalized restriction
	``W_u = sum_{y : G y^T = u} f~(y)|y>``.
	"""

	def __init__(self, u: Vector, indices: np.ndarray, amps: np.ndarray) -> None:
		self.__u = u
		self.__indices = indices
		self.__amps = amps

	@property
	def amps(self) -> np.ndarray:
		return self.__amps

	@property
	def indices(self) -> np.ndarray:
		"""
		*indices* (:class:`numpy.ndarray`) contains the coset's basis indices.
		"""
		return self.__indices

	@property
	def norm(self) -> float:
		"""
		*norm* (:class:`float`) is ``w_u``.
		"""
		return float(np.linalg.norm(self.__amps))

	@property
	def u(self) -> Vector:
		return self.__u

	def vector(self, dim: int) -> np.ndarray:
		out = np.zeros(dim, dtype=np.complex128)
		out[self.__indices] = self.__amps
		return out


def dual_coset_states(
	code: Union[RSCode, Matrix],
	f_tilde: Union[AmplitudeState, np.ndarray],
	field: Optional[ExtField] = None,
) -> List[DualCosetState]:
	"""
	Split *f_tilde* over the cosets ``{y : G y^T = u}``.

	Returns the :class:`.DualCosetState` of every *u* in index order.
	"""
	field, G, n = _generator(code, field)
	amps = _f_tilde(f_tilde)
	keys = _linear_map(field, G, n)
	k = len(G)
	return [
		DualCosetState(vector_of(field, k, u), idx, amps[idx])
		for u in range(field.q**k)
		for idx in [np.flatnonzero(keys == u)]
	]


def pgm_overlaps(
	code: Union[RSCode, Matrix],
	f_tilde: Union[AmplitudeState, np.ndarray],
	field: Optional[ExtField] = None,
	overlaps: bool = False,
) -> Tuple[np.ndarray, float, Optional[np.ndarray]]:
	"""
	Compute the dual-coset norms and the PGM overlaps.

	*code* (:class:`.RSCode` or matrix) gives the generator *G*.

	*f_tilde* (:class:`.AmplitudeState` or :class:`numpy.ndarray`) is the
	Fourier-side error amplitude.

	*field* (:class:`.ExtField`) is required when *code* is a matrix.

	*overlaps* (:class:`bool`) is whether to compute the full matrix
	``gamma[s, s'] = <Y_s|psi_s'>``.

	Raises :class:`.VanishingCoset` when some ``w_u`` is zero.

	Returns a :class:`tuple` of the norms ``w_u`` by coset index, ``Gamma``
	and the overlap matrix (or ``None``).
	"""
	field, G, n = _generator(code, field)
	amps = _f_tilde(f_tilde)
	k = len(G)
	S = field.q**k
	keys = _linear_map(field, G, n)
	w = np.sqrt(np.bincount(keys, weights=np.abs(amps)**2, minlength=S))
	empty = np.flatnonzero(w <= TOLERANCE)
	if empty.size:
		raise VanishingCoset(vector_of(field, k, int(empty[0])))
	gamma = float(w.sum() / math.sqrt(S))
	matrix = None
	if overlaps:
		chars = _coset_characters(field, k)
		y_hat = _pgm_basis_hat(chars, keys, amps, w)
		psi_hat = chars[:, keys] * amps[None, :]
		matrix = y_hat.conj() @ psi_hat.T
	return w, gamma, matrix


def _coset_characters(field: ExtField, k: int) -> np.ndarray:
	"""
	Get ``chi_u(s)`` for all *u* and *s* in F_q^k by index.
	"""
	K = _character_matrix(field)
	return functools.reduce(np.kron, [K] * k) if k else np.ones((1, 1), dtype=np.complex128)


def _pgm_basis_hat(chars: np.ndarray, keys: np.ndarray, amps: np.ndarray, w: np.ndarray) -> np.ndarray:
	"""
	Get the Fourier-side PGM basis
	``Y^_s = q**(-k/2) sum_u chi_u(s) W_u / w_u`` as rows.
	"""
	S = chars.shape[0]
	return chars[:, keys] * (amps / w[keys])[None, :] / math.sqrt(S)


def pgm_basis(
	code: Union[RSCode, Matrix],
	f_tilde: Union[AmplitudeState, np.ndarray],
	field: Optional[ExtField] = None,
) -> np.ndarray:
	"""
	Reconstruct the PGM basis ``{Y^_s}`` on the Fourier side and check that
	it is orthonormal.

	Raises :class:`.PostconditionError` when the Gram matrix is not the
	identity.

	Returns the basis as rows (:class:`numpy.ndarray`).
	"""
	field, G, n = _generator(code, field)
	amps = _f_tilde(f_tilde)
	w, _, _ = pgm_overlaps(G, amps, field=field)
	keys = _linear_map(field, G, n)
	basis = _pgm_basis_hat(_coset_characters(field, len(G)), keys, amps, w)
	gram = basis @ basis.conj().T
	if not np.allclose(gram, np.eye(len(basis)), atol=TOLERANCE):
		raise PostconditionError("The PGM basis is not orthonormal.")
	return basis


class PGMOutcome(object):
	"""
	The :class:`.PGMOutcome` class records one run of the PGM algorithm.
	"""

	def __init__(self, **kw: Any) -> None:
		self.x: Vector = kw['x']
		"""
		*x* (:class:`tuple`) is the measured solution with ``G x^T = u0`` and
		weight *t*.
		"""

		self.codeword: Vector = kw['codeword']
		"""
		*codeword* (:class:`tuple`) is ``y0 - x``.
		"""

		self.t: int = kw['t']
		"""
		*t* (:class:`int`) is the exact weight used.
		"""

		self.gamma: float = kw['gamma']
		"""
		*gamma* (:class:`float`) is the diagonal overlap ``Gamma``.
		"""

		self.acceptance: float = kw['acceptance']
		"""
		*acceptance* (:class:`float`) is the state preparation acceptance rate
		``|T| / q**n``.
		"""

		self.postselect_probability: float = kw['postselect_probability']
		"""
		*postselect_probability* (:class:`float`) is the probability of the
		outcome ``0^k``.
		"""

		self.prepare_attempts: int = kw['prepare_attempts']
		self.restarts: int = kw['restarts']
		"""
		*restarts* (:class:`int`) is the number of failed post-selections.
		"""

		self.solutions: int = kw['solutions']
		self.support_ok: bool = kw['support_ok']
		"""
		*support_ok* (:class:`bool`) is whether the final state is supported
		exactly on the weight-*t* members of the target coset.
		"""

		self.trace: List[Dict[str, Any]] = kw['trace']

	def to_json(self) -> Dict[str, Any]:
		return {
			'x': list(self.x),
			'codeword': list(self.codeword),
			't': self.t,
			'gamma': self.gamma,
			'acceptance': self.acceptance,
			'postselect_probability': self.postselect_probability,
			'prepare_attempts': self.prepare_attempts,
			'restarts': self.restarts,
			'solutions': self.solutions,
			'support_ok': self.support_ok,
			'trace': self.trace,
		}


def pgm_bdd(
	code: Union[RSCode, Matrix],
	t: int,
	y0: Sequence[int],
	seed: Seed = None,
	field: Optional[ExtField] = None,
	max_dim: int = DEFAULT_MAX_DIM,
) -> PGMOutcome:
	"""
	Solve a BDD instance with the Pretty Good Measurement.

	The exact weight is the first ``t' <= t`` for which the coset
	``{x : G x^T = G y0^T}`` has a member of weight ``t'``. The run then
	prepares ``f~ = g / ||g||`` with ``g(x) = 1`` iff ``G x^T != u0`` or
	``||x|| = t'`` by rejection sampling, builds the phase-encoded
	superposition, changes to the PGM basis, disentangles the syndrome
	register, post-selects on ``0^k`` (restarting on failure), applies the QFT
	and measures.

	*code* (:class:`.RSCode` or matrix) gives the generator *G*.

	*t* (:class:`int`) is the largest radius to try.

	*y0* (:class:`~collections.abc.Sequence`) is the received word.

	*seed* is the seed.

	*field* (:class:`.ExtField`) is required when *code* is a matrix.

	*max_dim* (:class:`int`) bounds ``q**n * q**k``.

	Raises :class:`.NoExactWeightSolution` when no radius up to *t* works, and
	:class:`.BudgetExceeded` after :data:`.POSTSELECT_RETRIES` restarts.

	Returns the :class:`.PGMOutcome`.
	"""
	field, G, n = _generator(code, field)
	q, k = field.q, len(G)
	S = q**k
	Q = _check_dim(q, n, S, max_dim)
	y0 = _as_vector(field, y0, n, "y0")
	rng = make_rng(seed)

	keys = _linear_map(field, G, n)
	weights = _weights(q, n)
	u0 = int(keys[index_of(field, y0)])
	in_coset = keys == u0
	for t_used in range(0, t + 1):
		target = in_coset & (weights == t_used)
		if target.any():
			break
	else:
		raise NoExactWeightSolution(f"No member of weight at most {t} in the coset of {y0!r}.")

	g = (~in_coset) | (weights == t_used)
	size_t = int(g.sum())
	f_tilde = g / math.sqrt(size_t)
	w, gamma, _ = pgm_overlaps(G, f_tilde, field=field)
	if gamma < 1.0 - 1.0 / S - TOLERANCE:
		raise PostconditionError(f"Gamma {gamma} is below 1 - 1/q^k.")

	chars = _coset_characters(field, k)
	y_hat = _pgm_basis_hat(chars, keys, f_tilde.astype(np.complex128), w)
	basis = np.stack([
		inverse_qft(AmplitudeState(field, n, row, max_dim=Q, normalized=False)).amps for row in y_hat
	])
	if not np.allclose(basis @ basis.conj().T, np.eye(S), atol=TOLERANCE):
		raise PostconditionError("The PGM basis is not orthonormal.")

	f = inverse_qft(AmplitudeState(field, n, f_tilde, max_dim=Q)).amps
	codewords = _linear_map(field, [list(col) for col in zip(*G)], k)
	elems, pos, add, mul, neg, trace = _field_arrays(field)
	s_codes = elems[_digits(q, k)]
	s_sum = np.empty((S, S), dtype=np.int64)
	for s in range(S):
		s_sum[s] = _pack(pos[add[s_codes[s][None, :], s_codes]], q) if k else 0
	dots = np.zeros(S, dtype=np.int64)
	u0_codes = vector_of(field, k, u0)
	for i, ui in enumerate(u0_codes):
		if ui:
			dots = add[dots, mul[ui, s_codes[:, i]]]
	phase = np.exp(-2j * np.pi * trace[dots] / field.p) / math.sqrt(S)

	acceptance = size_t / Q
	prepare_attempts = 0
	restarts = 0
	while True:
		# Step 0: rejection-sampled preparation of f~.
		for tries in range(1, POSTSELECT_RETRIES + 1):
			prepare_attempts += 1
			if rng.random() < acceptance:
				break
		else:
			raise BudgetExceeded(f"State preparation rejected {tries} times.")

		# Step 1: phase-encoded superposition, rows indexed by s.
		omega1 = np.empty((S, Q), dtype=np.complex128)
		for s in range(S):
			omega1[s] = 0.0
			omega1[s, _translate(field, n, vector_of(field, n, int(codewords[s])))] = f * phase[s]
		norm1 = float(np.linalg.norm(omega1))

		# Step 2: coefficients c[s', s] on |Y_s'>|s>.
		c = basis.conj() @ omega1.T
		norm2 = float(np.linalg.norm(c))

		# Step 3: |Y_s'>|s> -> |Y_s'>|s - s'>.
		c2 = np.empty_like(c)
		for sp in range(S):
			c2[sp] = c[sp, s_sum[:, sp]]

		# Step 4: post-select on 0^k.
		p0 = float(np.sum(np.abs(c2[:, 0])**2))
		if rng.random() < p0:
			break
		restarts += 1
		logger.info("Post-selection failed (p=%.6f), restarting.", p0)
		if restarts >= POSTSELECT_RETRIES:
			raise BudgetExceeded(f"Post-selection failed {restarts} times.")

	for stage, norm in (("phase", norm1), ("pgm_basis", norm2)):
		if abs(norm - 1.0) > TOLERANCE:
			raise PostconditionError(f"Norm {norm} after {stage}.")

	omega3 = (c2[:, 0] / math.sqrt(p0)) @ basis

	# Step 5: QFT.
	omega4 = qft(AmplitudeState(field, n, omega3, max_dim=Q)).amps

	# Step 6: measure.
	probs = np.abs(omega4)**2
	probs[probs < TOLERANCE**2] = 0.0
	support_ok = bool(np.array_equal(probs > 0, target))
	x_index = int(_sample_indices(probs, rng, 1)[0])
	x = vector_of(field, n, x_index)
	if keys[x_index] != u0 or weights[x_index] != t_used:
		raise PostconditionError(f"Measured {x!r} is not a weight-{t_used} coset member.")

	codeword = tuple(int(add[a, neg[b]]) for a, b in zip(y0, x))
	trace_log = [
		{'step': "prepare", 'attempts': prepare_attempts, 'acceptance': acceptance},
		{'step': "phase", 'norm': norm1},
		{'step': "pgm_basis", 'norm': norm2},
		{'step': "disentangle"},
		{'step': "postselect", 'probability': p0, 'restarts': restarts},
		{'step': "qft"},
		{'step': "measure", 'support': int((probs > 0).sum())},
	]
	return PGMOutcome(
		x=x,
		codeword=codeword,
		t=t_used,
		gamma=gamma,
		acceptance=acceptance,
		postselect_probability=p0,
		prepare_attempts=prepare_attempts,
		restarts=restarts,
		solutions=int(target.sum()),
		support_ok=support_ok,
		trace=trace_log,
	)
