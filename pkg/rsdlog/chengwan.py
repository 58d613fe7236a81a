"""
This module implements the classical reduction from discrete logarithms in
F_{q^h} to Reed-Solomon bounded-distance decoding: Cheng-Wan instance
generation, planted witnesses, relation extraction from decoded codewords,
smooth relation sampling with augmented relations, linear algebra modulo
``q**h - 1``, index-calculus DLOG, and the baseline BSGS and Pohlig-Hellman
solvers with random self-reduction.
"""

import logging
import math
from typing import (
	Any,
	Callable,  # Replaced by `collections.abc.Callable` in 3.9.
	Dict,  # Replaced by `dict` in 3.9.
	Iterator,  # Replaced by `collections.abc.Iterator` in 3.9.
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple,  # Replaced by `tuple` in 3.9.
	Union)  # Replaced by `X | Y` in 3.10.

import numpy as np
import sympy
from sympy.ntheory.modular import (
	crt)

from . import _polyops
from ._util import (
	make_rng,
	rand_below)
from .errors import (
	BadParams,
	BudgetExceeded,
	CannotFactor,
	DegenerateTower,
	DivisionByZero,
	MalformedInstance,
	NotInSubgroup,
	PostconditionError,
	WrongWitnessSize)
from .ffield import (
	FieldElem,
	FieldTower,
	field_from_json)
from .poly import (
	Poly,
	split_codes)
from .rscode import (
	ReceivedWord,
	RSCode,
	Syndrome,
	dump_word,
	encode,
	load_word,
	message_of,
	syndrome)
from .typing import (
	Seed,
	Vector)

logger = logging.getLogger(__name__)

DEFAULT_DRAW_CAP = 10**6
"""
The default number of sampler draws allowed before giving up.
"""

DEFAULT_FACTOR_BOUND = 2**32
"""
The default trial-division limit used to factor a modulus.
"""

GAMMA = -1
"""
The factor-base symbol standing for the generator of F_q^x.
"""


# Parameters and instances.

class CWParams(object):
	"""
	The :class:`.CWParams` class holds the parameters of a Cheng-Wan decoding
	instance: the tower, the agreement parameter *g*, and the derived code
	``RS[n, g - h]_q`` with radius ``n - g``.

	The evaluation support is every ``a`` in F_q with ``h(a) != 0``. That is
	all of F_q unless ``h = 1``, where the root of the linear modulus is
	removed.
	"""

	def __init__(self, tower: FieldTower, g: Optional[int] = None, strict: bool = False) -> None:
		"""
		Initializes the :class:`.CWParams` instance.

		*tower* (:class:`.FieldTower`) is the tower F_{q^h} over F_q.

		*g* (:class:`int` or ``None``) is the agreement parameter. Default is
		``None`` for the low-rate choice ``4h + 4``.

		*strict* (:class:`bool`) requires the low-rate hypotheses: ``h > 1``,
		``g = 4h + 4`` and ``h <= q**(1/4) - 2``.
		"""
		if not isinstance(tower, FieldTower):
			raise TypeError(f"{tower=!r} is not a FieldTower.")

		ground = tower.ground
		h = tower.h
		if g is None:
			g = 4 * h + 4
		if not isinstance(g, int):
			raise TypeError(f"{g=!r} is not an int.")

		support = tuple(a for a in ground.elements() if _polyops.evaluate(ground, tower.h_poly, a) != 0)
		n = len(support)
		if g <= h:
			raise BadParams(f"{g=!r} must exceed h={h}.")
		elif g > n:
			raise BadParams(f"{g=!r} exceeds the code length {n}.")

		self.__tower = tower
		self.__g = g
		self.__support = support
		self.__code = RSCode(ground, g - h, eval_points=support)

		if strict:
			if h == 1:
				raise DegenerateTower("Tower degree 1 is outside the low-rate construction.")
			elif not self.strict_cw:
				raise BadParams(f"{g=!r} and h={h} do not satisfy the low-rate hypotheses for q={ground.q}.")
		elif h == 1:
			logger.warning("Tower degree 1 is outside the stated hypothesis; using the punctured support.")

	@property
	def code(self) -> RSCode:
		return self.__code

	@property
	def g(self) -> int:
		return self.__g

	@property
	def h(self) -> int:
		return self.__tower.h

	@property
	def in_def_hypothesis(self) -> bool:
		"""
		*in_def_hypothesis* (:class:`bool`) is whether ``h > 1``.
		"""
		return self.__tower.h > 1

	@property
	def k(self) -> int:
		return self.__g - self.__tower.h

	@property
	def n(self) -> int:
		return len(self.__support)

	@property
	def q(self) -> int:
		return self.__tower.ground.q

	@property
	def strict_cw(self) -> bool:
		"""
		*strict_cw* (:class:`bool`) is whether ``g = 4h + 4`` and
		``h <= q**(1/4) - 2``.
		"""
		h = self.__tower.h
		return self.__g == 4 * h + 4 and h <= self.q**0.25 - 2

	@property
	def support(self) -> Vector:
		return self.__support

	@property
	def t(self) -> int:
		"""
		*t* (:class:`int`) is the decoding radius ``n - g``.
		"""
		return self.n - self.__g

	@property
	def tower(self) -> FieldTower:
		return self.__tower

	def to_json(self) -> Dict[str, Any]:
		return {
			'field': self.__tower.to_json(),
			'g': self.__g,
			'n': self.n,
			'k': self.k,
			't': self.t,
			'strict_cw': self.strict_cw,
		}


class CWInstance(object):
	"""
	The :class:`.CWInstance` class is a Cheng-Wan decoding instance: the
	received word ``y_a = -f(a) / h(a) - a**(g - h)`` for the representative
	*f* of a group element, with an optional planted witness codeword.
	"""

	def __init__(
		self,
		params: CWParams,
		f: Poly,
		received: ReceivedWord,
		witness: Optional[Vector] = None,
		exponent: Optional[int] = None,
	) -> None:
		"""
		Initializes the :class:`.CWInstance` instance.

		*params* (:class:`.CWParams`) are the parameters.

		*f* (:class:`.Poly`) is the representative of degree below *h*.

		*received* (:class:`.ReceivedWord`) is the received word.

		*witness* (:class:`tuple` or ``None``) is the planted codeword.

		*exponent* (:class:`int` or ``None``) is the hidden exponent kept for test
		harnesses.
		"""
		self.__params = params
		self.__f = f
		self.__received = received
		self.__witness = witness
		self.__exponent = exponent

	@property
	def f(self) -> Poly:
		return self.__f

	@property
	def element(self) -> FieldElem:
		"""
		*element* (:class:`.FieldElem`) is the group element ``f(alpha)``.
		"""
		return self.__params.tower.elem(list(self.__f.coeffs))

	@property
	def hidden_exponent(self) -> Optional[int]:
		"""
		*hidden_exponent* (:class:`int` or ``None``) is the exponent *i* when the
		instance was generated with ``keep_exponent=True``.
		"""
		return self.__exponent

	@property
	def params(self) -> CWParams:
		return self.__params

	@property
	def received(self) -> ReceivedWord:
		return self.__received

	@property
	def syndrome(self) -> Syndrome:
		return syndrome(self.__params.code, self.__received)

	@property
	def witness(self) -> Optional[Vector]:
		return self.__witness

	def to_json(self) -> Dict[str, Any]:
		ground = self.__params.tower.ground
		doc = {
			'params': self.__params.to_json(),
			'f': self.__f.to_json(),
			'received': dump_word(ground, self.__received.entries),
			'syndrome': dump_word(ground, self.syndrome.entries),
		}
		if self.__witness is not None:
			doc['witness'] = dump_word(ground, self.__witness)
		if self.__exponent is not None:
			doc['i'] = self.__exponent
		return doc


def _received_word(params: CWParams, f: Sequence[int]) -> ReceivedWord:
	tower = params.tower
	ground = tower.ground
	power = params.g - params.h
	entries = []
	for a in params.support:
		fa = _polyops.evaluate(ground, f, a)
		ha = _polyops.evaluate(ground, tower.h_poly, a)
		y = ground.sub(ground.neg(ground.div(fa, ha)), ground.pow(a, power))
		entries.append(y)
	return ReceivedWord(params.code, entries)


def gen_instance(params: CWParams, i: int, keep_exponent: bool = False) -> CWInstance:
	"""
	Generate the instance for the group element ``b**i``.

	*params* (:class:`.CWParams`) are the parameters.

	*i* (:class:`int`) is the exponent in ``[0, N)``.

	*keep_exponent* (:class:`bool`) stores *i* in the instance for test
	harnesses. Default is ``False``.

	Returns the :class:`.CWInstance`.
	"""
	tower = params.tower
	if not isinstance(i, int) or not 0 <= i < tower.N:
		raise BadParams(f"{i=!r} is not in [0, {tower.N}).")
	f = tower.b ** i
	poly = Poly(tower.ground, f.value)
	received = _received_word(params, poly.coeffs)
	return CWInstance(params, poly, received, exponent=i if keep_exponent else None)


def planted_instance(
	params: CWParams,
	A: Optional[Sequence[Union[int, FieldElem]]] = None,
	seed: Seed = None,
) -> Tuple[CWInstance, Vector]:
	"""
	Plant a witness codeword for a product of distinct linear factors.

	Builds ``P = prod(x - a)`` over *A*, ``f = P mod h``, ``t = (P - f) / h``
	and the witness message ``u* = t - x**(g - h)``.

	*params* (:class:`.CWParams`) are the parameters.

	*A* (:class:`~collections.abc.Sequence` or ``None``) contains *g* distinct
	support elements. Default is ``None`` to draw them with *seed*.

	*seed* is the seed used when *A* is omitted.

	Raises :class:`.WrongWitnessSize` unless *A* has exactly *g* distinct
	support elements.

	Returns a :class:`tuple` of the :class:`.CWInstance` and the witness
	codeword.
	"""
	tower = params.tower
	ground = tower.ground
	if A is None:
		rng = make_rng(seed)
		picks = rng.choice(len(params.support), size=params.g, replace=False)
		A = [params.support[int(j)] for j in sorted(picks)]
	codes = [a.value if isinstance(a, FieldElem) else int(a) for a in A]
	if len(codes) != params.g or len(set(codes)) != len(codes):
		raise WrongWitnessSize(f"Expected {params.g} distinct elements, got {codes!r}.")
	support = set(params.support)
	if any(a not in support for a in codes):
		raise WrongWitnessSize(f"{codes!r} is not contained in the evaluation support.")

	big_p = _polyops.from_roots(ground, codes)
	t, f = _polyops.divmod_(ground, big_p, tower.h_poly)
	message = _polyops.sub(ground, t, [0] * params.k + [1])
	witness = encode(params.code, message)
	received = _received_word(params, f)
	inst = CWInstance(params, Poly(ground, f), received, witness=witness)
	return inst, witness


def load_instance(doc: Any, path: str = "instance") -> CWInstance:
	"""
	Load an instance from its JSON document.

	Raises :class:`.MalformedInstance` on a malformed document.
	"""
	if not isinstance(doc, dict):
		raise MalformedInstance(path, "expected an object")
	params_doc = doc.get('params')
	if not isinstance(params_doc, dict):
		raise MalformedInstance(f"{path}.params", "expected an object")
	tower = field_from_json(params_doc.get('field'), f"{path}.params.field")
	if not isinstance(tower, FieldTower):
		raise MalformedInstance(f"{path}.params.field.tower", "expected a tower description")
	g = params_doc.get('g')
	if not isinstance(g, int):
		raise MalformedInstance(f"{path}.params.g", "expected an integer")
	params = CWParams(tower, g)
	ground = tower.ground

	f_doc = doc.get('f')
	if not isinstance(f_doc, list) or len(f_doc) > tower.h:
		raise MalformedInstance(f"{path}.f", f"expected at most {tower.h} coefficients")
	f = Poly(ground, load_word(ground, f_doc, len(f_doc), f"{path}.f"))
	received = ReceivedWord(params.code, load_word(ground, doc.get('received'), params.n, f"{path}.received"))
	witness = None
	if 'witness' in doc:
		witness = load_word(ground, doc['witness'], params.n, f"{path}.witness")
	exponent = doc.get('i')
	if exponent is not None and not isinstance(exponent, int):
		raise MalformedInstance(f"{path}.i", "expected an integer")
	return CWInstance(params, f, received, witness=witness, exponent=exponent)


# Relations.

class Relation(object):
	"""
	The :class:`.Relation` class is a verified multiplicative identity
	``b**i * (alpha - a0)**-1 = c * prod((alpha - a)**e_a)`` in F_{q^h}.

	The left side is given by its exponent *i* when known. Otherwise (for
	relations extracted from planted instances) it is given directly as a
	group element. The inverse factor may be ``alpha - a0`` for a support
	element *a0*, or the F_q^x generator (:data:`.GAMMA`).
	"""

	def __init__(
		self,
		tower: FieldTower,
		exps: Dict[int, int],
		lead: int = 1,
		lead_log: Optional[int] = None,
		exponent: Optional[int] = None,
		inv_factor: Optional[int] = None,
		element: Optional[FieldElem] = None,
	) -> None:
		"""
		Initializes the :class:`.Relation` instance.

		*tower* (:class:`.FieldTower`) is the tower.

		*exps* (:class:`dict`) maps support codes *a* to exponents of
		``alpha - a``.

		*lead* (:class:`int`) is the ground code of the constant *c*.

		*lead_log* (:class:`int` or ``None``) is the discrete log of *c* to the
		F_q^x generator.

		*exponent* (:class:`int` or ``None``) is *i*.

		*inv_factor* (:class:`int` or ``None``) is *a0*, or :data:`.GAMMA`.

		*element* (:class:`.FieldElem` or ``None``) is the left side group
		element when *exponent* is unknown.

		Raises :class:`.PostconditionError` if the identity does not hold.
		"""
		if exponent is None and element is None:
			raise ValueError("Either exponent or element is required.")
		if lead == 0:
			raise DivisionByZero("The leading constant is zero.")

		self.__tower = tower
		self.__exps: Dict[int, int] = {a: e for a, e in exps.items() if e}
		self.__lead = lead
		self.__lead_log = lead_log
		self.__exponent = exponent
		self.__inv_factor = inv_factor
		self.__element = element
		self.__verify()

	def __verify(self) -> None:
		tower = self.__tower
		lhs = tower.b ** self.__exponent if self.__exponent is not None else self.__element
		if self.__inv_factor == GAMMA:
			lhs = lhs / tower.from_ground(tower.ground.generator)
		elif self.__inv_factor is not None:
			lhs = lhs / tower.linear(self.__inv_factor)
		rhs = tower.from_ground(self.__lead)
		for a, e in self.__exps.items():
			rhs = rhs * tower.linear(a) ** e
		if lhs != rhs:
			raise PostconditionError(f"Relation {self!r} does not hold in {tower!r}.")
		if self.__lead_log is not None and tower.ground.pow(tower.ground.generator, self.__lead_log) != self.__lead:
			raise PostconditionError(f"Leading log {self.__lead_log} does not match {self.__lead}.")

	@property
	def exponent(self) -> Optional[int]:
		return self.__exponent

	@property
	def exps(self) -> Dict[int, int]:
		"""
		*exps* (:class:`dict`) maps support codes to nonzero exponents.
		"""
		return dict(self.__exps)

	@property
	def inv_factor(self) -> Optional[int]:
		return self.__inv_factor

	@property
	def lead(self) -> int:
		return self.__lead

	@property
	def lead_log(self) -> Optional[int]:
		return self.__lead_log

	@property
	def support(self) -> List[int]:
		"""
		*support* (:class:`list`) contains the support codes *a* with ``e_a != 0``.
		"""
		return sorted(self.__exps, key=self.__tower.ground.position)

	def row(self, columns: Dict[int, int]) -> List[int]:
		"""
		Get the row of the linear system ``J = B l``.

		*columns* (:class:`dict`) maps each symbol (support code or
		:data:`.GAMMA`) to its column.

		Returns the row (:class:`list` of :class:`int`).
		"""
		if self.__lead_log is None:
			raise ValueError("The leading constant has no known logarithm.")
		out = [0] * len(columns)
		for a, e in self.__exps.items():
			out[columns[a]] += e
		out[columns[GAMMA]] += self.__lead_log
		if self.__inv_factor is not None:
			out[columns[self.__inv_factor]] += 1
		return out

	def __repr__(self) -> str:
		return (
			f"Relation(exponent={self.__exponent!r}, inv_factor={self.__inv_factor!r}, "
			f"lead={self.__lead!r}, exps={self.__exps!r})"
		)


def extract_relation(inst: CWInstance, c: Sequence[int]) -> Optional[Relation]:
	"""
	Turn a codeword near the received word into a relation.

	Recovers ``u*`` from *c*, forms ``t = u* + x**(g - h)`` and
	``P = f + t h``, and splits *P* into distinct linear factors.

	*inst* (:class:`.CWInstance`) is the instance.

	*c* (:class:`~collections.abc.Sequence`) is a codeword.

	Returns the verified :class:`.Relation` ``f(alpha) = prod(alpha - a)``, or
	``None`` when *c* is not a codeword or *P* does not split into *g* distinct
	factors.
	"""
	params = inst.params
	tower = params.tower
	ground = tower.ground
	code = params.code

	message = message_of(code, c)
	if encode(code, message) != tuple(c):
		return None

	t = _polyops.add(ground, message.coeffs, [0] * params.k + [1])
	big_p = _polyops.add(ground, inst.f.coeffs, _polyops.mul(ground, t, tower.h_poly))
	split = split_codes(ground, big_p)
	if split is None:
		return None
	lead, found = split
	if lead != 1 or len(found) != params.g:
		return None

	exponent = inst.hidden_exponent
	return Relation(
		tower,
		{a: 1 for a in found},
		exponent=exponent,
		element=None if exponent is not None else inst.element,
	)


def decode_relation(inst: CWInstance, decoder: Any, t: Optional[int] = None) -> Optional[Relation]:
	"""
	Decode an instance and extract the first usable relation.

	*decoder* (:class:`~rsdlog.decoder.DecoderContract`) is the decoder.

	*t* (:class:`int` or ``None``) is the radius passed to the decoder.

	Returns the :class:`.Relation`, or ``None``.
	"""
	for c in decoder.decode(inst.params.code, inst.received, t):
		rel = extract_relation(inst, c)
		if rel is not None:
			return rel
	return None


# Baseline discrete logarithms.

def bsgs(g: FieldElem, y: FieldElem, order: int) -> int:
	"""
	Baby-step giant-step.

	*g* (:class:`.FieldElem`) is the base of order dividing *order*.

	*y* (:class:`.FieldElem`) is the target.

	*order* (:class:`int`) is the order of *g*.

	Raises :class:`.NotInSubgroup` when *y* is not a power of *g*.

	Returns the exponent in ``[0, order)`` (:class:`int`).
	"""
	m = math.isqrt(order)
	if m * m < order:
		m += 1

	table = {}
	pw = g ** 0
	for j in range(m):
		table.setdefault(pw, j)
		pw = pw * g

	giant = g ** -m
	gamma = y
	for i in range(m + 1):
		j = table.get(gamma)
		if j is not None:
			return (i * m + j) % order
		gamma = gamma * giant

	raise NotInSubgroup(f"{y!r} is not in the subgroup generated by {g!r}.")


def pohlig_hellman(g: FieldElem, y: FieldElem, order: int) -> int:
	"""
	Pohlig-Hellman over the prime-power factorization of *order*, with
	:func:`.bsgs` in each prime-order subgroup.

	Raises :class:`.NotInSubgroup` when *y* is not a power of *g*.
	"""
	factors = sympy.factorint(order)
	moduli = []
	residues = []
	g_inv = g ** -1
	for p, e in factors.items():
		pe = p**e
		gamma = g ** (order // p)
		x = 0
		for k in range(e):
			h_k = ((g_inv ** x) * y) ** (order // p**(k + 1))
			d_k = bsgs(gamma, h_k, p)
			x += d_k * p**k
		moduli.append(pe)
		residues.append(x % pe)

	x = int(crt(moduli, residues)[0]) % order if moduli else 0
	if g ** x != y:
		raise NotInSubgroup(f"{y!r} is not in the subgroup generated by {g!r}.")
	return x


BASELINES: Dict[str, Callable[[FieldElem, FieldElem, int], int]] = {
	'bsgs': bsgs,
	'pohlig_hellman': pohlig_hellman,
}
"""
Maps baseline method name to its solver.
"""


def baseline_dlog(g: FieldElem, y: FieldElem, order: int, method: str = 'bsgs') -> int:
	"""
	Solve ``g**k = y`` with a baseline method.

	*method* (:class:`str`) is ``"bsgs"`` or ``"pohlig_hellman"``.

	Returns *k* (:class:`int`).
	"""
	try:
		solver = BASELINES[method]
	except KeyError:
		raise ValueError(f"{method=!r} is not a baseline method.")
	return solver(g, y, order)


def self_reduce_and_split(
	solver: Callable[[Any, Any, int], Optional[int]],
	components: Sequence[Tuple[Any, ...]],
	y: Sequence[Any],
	seed: Seed = None,
) -> Tuple[Optional[int], ...]:
	"""
	Solve a product of cyclic groups componentwise through random
	self-reduction.

	For each component the target is shifted to ``y_i * b_i**r`` with *r*
	uniform modulo the order, the solver is called on the shifted target, and
	*r* is subtracted from its answer.

	*solver* (:class:`~collections.abc.Callable`) is called as
	``solver(b_i, target, n_i)`` and returns an exponent or ``None``.

	*components* (:class:`~collections.abc.Sequence`) contains ``(b_i, n_i)`` or
	``(b_i, n_i, field)`` tuples.

	*y* (:class:`~collections.abc.Sequence`) contains the targets.

	*seed* is the seed for the shifts.

	Returns the :class:`tuple` of exponents, with ``None`` where the solver
	failed.
	"""
	if len(components) != len(y):
		raise BadParams(f"{len(components)} components but {len(y)} targets.")
	rng = make_rng(seed)
	out = []
	for comp, target in zip(components, y):
		base, order = comp[0], comp[1]
		r = rand_below(rng, order)
		z = solver(base, target * base ** r, order)
		out.append(None if z is None else (z - r) % order)
	return tuple(out)


# Relation collection.

class SmoothRelationSampler(object):
	"""
	The :class:`.SmoothRelationSampler` class draws uniform powers of the base
	and keeps those whose representative splits into distinct linear factors
	over F_q. Iterating yields ordinary relations forever. The draw counter
	includes rejected draws.
	"""

	def __init__(self, tower: FieldTower, seed: Seed = None, draw_cap: int = DEFAULT_DRAW_CAP) -> None:
		"""
		Initializes the :class:`.SmoothRelationSampler` instance.

		*tower* (:class:`.FieldTower`) is the tower.

		*seed* is the seed.

		*draw_cap* (:class:`int`) is the number of draws after which
		:class:`.BudgetExceeded` is raised.
		"""
		ground = tower.ground
		self.__tower = tower
		self.__rng = make_rng(seed)
		self.__draw_cap = draw_cap
		self.__support = tuple(a for a in ground.elements() if _polyops.evaluate(ground, tower.h_poly, a) != 0)
		self.__gamma = FieldElem(ground, ground.generator)

		self.draws: int = 0
		"""
		*draws* (:class:`int`) is the number of draws so far.
		"""

	@property
	def rng(self) -> np.random.Generator:
		return self.__rng

	@property
	def support(self) -> Vector:
		"""
		*support* (:class:`tuple`) contains the codes *a* of the factor base
		``alpha - a`` in canonical order.
		"""
		return self.__support

	@property
	def symbols(self) -> List[int]:
		"""
		*symbols* (:class:`list`) contains the factor base codes followed by
		:data:`.GAMMA`.
		"""
		return list(self.__support) + [GAMMA]

	@property
	def tower(self) -> FieldTower:
		return self.__tower

	def __iter__(self) -> Iterator[Relation]:
		while True:
			yield self.ordinary()

	def lead_log(self, lead: int) -> int:
		"""
		Get the log of the ground code *lead* to the F_q^x generator by BSGS in
		the subgroup of order ``q - 1``.
		"""
		ground = self.__tower.ground
		return bsgs(self.__gamma, FieldElem(ground, lead), ground.q - 1)

	def draw(self) -> int:
		"""
		Draw a uniform exponent modulo *N*, counting it against the cap.

		Raises :class:`.BudgetExceeded` once the cap is reached.
		"""
		if self.draws >= self.__draw_cap:
			raise BudgetExceeded(f"Relation sampling exceeded {self.__draw_cap} draws.")
		self.draws += 1
		return rand_below(self.__rng, self.__tower.N)

	def split(self, element: FieldElem) -> Optional[Tuple[int, Dict[int, int], int]]:
		"""
		Split the representative of a group element over the factor base.

		Returns a :class:`tuple` of the leading code, the exponent map and the
		leading log, or ``None`` when it does not split.
		"""
		found = split_codes(self.__tower.ground, list(element.value))
		if found is None:
			return None
		lead, roots = found
		return lead, {a: 1 for a in roots}, self.lead_log(lead)

	def ordinary(self) -> Relation:
		"""
		Draw until some ``b**i`` splits.
		"""
		tower = self.__tower
		while True:
			i = self.draw()
			found = self.split(tower.b ** i)
			if found is not None:
				lead, exps, lead_log = found
				logger.debug("Relation for b^%d after %d draws.", i, self.draws)
				return Relation(tower, exps, lead=lead, lead_log=lead_log, exponent=i)

	def augmented(self, symbol: int) -> Relation:
		"""
		Draw until some ``b**j / s`` splits for the factor base symbol *s*.
		"""
		tower = self.__tower
		if symbol == GAMMA:
			divisor = tower.from_ground(tower.ground.generator)
		else:
			divisor = tower.linear(symbol)
		inverse = divisor ** -1
		while True:
			j = self.draw()
			found = self.split(tower.b ** j * inverse)
			if found is not None:
				lead, exps, lead_log = found
				return Relation(tower, exps, lead=lead, lead_log=lead_log, exponent=j, inv_factor=symbol)


def smooth_relation_sampler(tower: FieldTower, seed: Seed = None, draw_cap: int = DEFAULT_DRAW_CAP) -> SmoothRelationSampler:
	"""
	Create the relation stream for *tower*.

	Returns the :class:`.SmoothRelationSampler`.
	"""
	return SmoothRelationSampler(tower, seed, draw_cap=draw_cap)


class RelationSystem(object):
	"""
	The :class:`.RelationSystem` class accumulates relations into the linear
	system ``J = B l (mod N)`` and tracks its rank modulo every prime dividing
	*N*. The reported rank is the smallest of those.
	"""

	def __init__(self, tower: FieldTower, symbols: Sequence[int]) -> None:
		"""
		Initializes the :class:`.RelationSystem` instance.

		*tower* (:class:`.FieldTower`) is the tower.

		*symbols* (:class:`~collections.abc.Sequence`) contains the column symbols.
		"""
		self.__tower = tower
		self.__symbols: Tuple[int, ...] = tuple(symbols)
		self.__columns: Dict[int, int] = {s: i for i, s in enumerate(symbols)}
		self.__rows: List[List[int]] = []
		self.__rhs: List[int] = []
		self.__relations: List[Relation] = []
		self.__echelon: Dict[int, Dict[int, List[int]]] = {p: {} for p in tower.factors}

		self.draws: int = 0
		"""
		*draws* (:class:`int`) is the number of sampler draws spent.
		"""

	@property
	def B(self) -> List[List[int]]:
		return [list(r) for r in self.__rows]

	@property
	def J(self) -> List[int]:
		return list(self.__rhs)

	@property
	def N(self) -> int:
		return self.__tower.N

	@property
	def columns(self) -> Dict[int, int]:
		return dict(self.__columns)

	@property
	def dim(self) -> int:
		return len(self.__symbols)

	@property
	def relations(self) -> List[Relation]:
		return list(self.__relations)

	@property
	def symbols(self) -> Tuple[int, ...]:
		return self.__symbols

	def rank(self) -> int:
		if not self.__echelon:
			return self.dim
		return min(len(basis) for basis in self.__echelon.values())

	def add(self, relation: Relation) -> bool:
		"""
		Append a relation.

		Returns whether the rank increased (:class:`bool`).
		"""
		if relation.exponent is None:
			raise ValueError(f"{relation!r} has no exponent.")
		N = self.__tower.N
		row = [e % N for e in relation.row(self.__columns)]
		before = self.rank()
		self.__rows.append(row)
		self.__rhs.append(relation.exponent % N)
		self.__relations.append(relation)
		for p, basis in self.__echelon.items():
			_echelon_insert(basis, [e % p for e in row], p)
		return self.rank() > before


def _echelon_insert(basis: Dict[int, List[int]], row: List[int], p: int) -> bool:
	"""
	Reduce *row* modulo *p* against *basis* (keyed by leading column) and store
	it if it is independent.
	"""
	for col in range(len(row)):
		c = row[col]
		if not c:
			continue
		pivot = basis.get(col)
		if pivot is None:
			inv = pow(c, -1, p)
			basis[col] = [x * inv % p for x in row]
			return True
		row = [(x - c * y) % p for x, y in zip(row, pivot)]
	return False


def pomerance_schedule(d: int) -> int:
	"""
	Get the sampling multiplier ``floor(2 log2 d) + 3`` for a span of
	dimension *d*.
	"""
	if d < 1:
		raise BadParams(f"{d=!r} is not a positive dimension.")
	return math.floor(2 * math.log2(d)) + 3


def collect_relations(
	sampler: SmoothRelationSampler,
	dim_target: Optional[int] = None,
	seed: Seed = None,
) -> RelationSystem:
	"""
	Collect relations until the system has full rank.

	Draws ``d * L`` ordinary relations, then ``L`` rounds of one augmented
	relation per symbol (symbols shuffled uniformly each round), where
	``L = floor(2 log2 d) + 3``. Collection stops as soon as the rank reaches
	*dim_target*, and continues with ordinary relations past the schedule
	until the sampler's draw cap.

	*sampler* (:class:`.SmoothRelationSampler`) is the relation source.

	*dim_target* (:class:`int` or ``None``) is the rank to reach. Default is
	``None`` for the number of symbols.

	*seed* is the seed for the augmented schedule. Default is ``None`` to use
	the sampler's generator.

	Raises :class:`.BudgetExceeded` when the sampler runs out of draws.

	Returns the :class:`.RelationSystem` with :attr:`.RelationSystem.draws`
	set.
	"""
	symbols = sampler.symbols
	system = RelationSystem(sampler.tower, symbols)
	d = dim_target if dim_target is not None else len(symbols)
	lam = pomerance_schedule(d)
	rng = sampler.rng if seed is None else make_rng(seed)
	start = sampler.draws

	def done() -> bool:
		system.draws = sampler.draws - start
		return system.rank() >= d

	try:
		for _ in range(d * lam):
			system.add(sampler.ordinary())
			if done():
				return _finish(system)

		for _ in range(lam):
			for j in rng.permutation(len(symbols)):
				system.add(sampler.augmented(symbols[int(j)]))
				if done():
					return _finish(system)

		while not done():
			system.add(sampler.ordinary())
	except BudgetExceeded:
		logger.info("Stopped at rank %d of %d after %d draws.", system.rank(), d, sampler.draws - start)
		raise

	return _finish(system)


def _finish(system: RelationSystem) -> RelationSystem:
	logger.info("Collected %d relations, rank %d, in %d draws.", len(system.B), system.rank(), system.draws)
	return system


# Linear algebra modulo N.

def _valuation(x: int, p: int, e: int) -> int:
	if x == 0:
		return e
	v = 0
	while x % p == 0:
		x //= p
		v += 1
	return v


def _solve_prime_power(
	matrix: Sequence[Sequence[int]],
	rhs: Sequence[int],
	p: int,
	e: int,
) -> Optional[List[int]]:
	"""
	Solve ``A x = b (mod p**e)``.

	Elimination uses full pivoting on the entry of least *p*-adic valuation,
	so each pivot divides every entry left in the active block. A pivot
	``p**v * u`` fixes its unknown modulo ``p**(e - v)`` and requires the
	reduced right side to be divisible by ``p**v``.
	"""
	m = p**e
	ncols = len(matrix[0]) if matrix else 0
	rows = [[x % m for x in row] + [b % m] for row, b in zip(matrix, rhs)]
	cols = list(range(ncols))
	pivots: List[Tuple[int, int]] = []

	r = 0
	while r < len(rows) and r < ncols:
		best = None
		best_v = e
		for i in range(r, len(rows)):
			row = rows[i]
			for jj in range(r, ncols):
				x = row[cols[jj]]
				if x:
					v = _valuation(x, p, e)
					if v < best_v:
						best, best_v = (i, jj), v
						if v == 0:
							break
			if best_v == 0:
				break
		if best is None:
			break

		i, jj = best
		rows[r], rows[i] = rows[i], rows[r]
		cols[r], cols[jj] = cols[jj], cols[r]
		col = cols[r]
		pv = p**best_v
		unit_inv = pow(rows[r][col] // pv, -1, m)
		prow = rows[r] = [x * unit_inv % m for x in rows[r]]
		for i in range(r + 1, len(rows)):
			x = rows[i][col]
			if x:
				f = x // pv
				rows[i] = [(a - f * b) % m for a, b in zip(rows[i], prow)]
		pivots.append((col, best_v))
		r += 1

	for row in rows[r:]:
		if row[ncols] % m:
			return None

	x = [0] * ncols
	for idx in range(len(pivots) - 1, -1, -1):
		col, v = pivots[idx]
		row = rows[idx]
		s = row[ncols]
		for j in range(ncols):
			if j != col and row[j]:
				s -= row[j] * x[j]
		s %= m
		pv = p**v
		if s % pv:
			return None
		x[col] = (s // pv) % (m // pv)
	return x


def solve_mod_N(
	B: Sequence[Sequence[int]],
	J: Sequence[int],
	N: int,
	factor_bound: int = DEFAULT_FACTOR_BOUND,
) -> Optional[List[int]]:
	"""
	Solve ``B l = J (mod N)``.

	Factors *N*, solves modulo each prime power, and recombines with the
	Chinese remainder theorem.

	*B* (:class:`~collections.abc.Sequence`) contains the integer rows.

	*J* (:class:`~collections.abc.Sequence`) is the right side.

	*N* (:class:`int`) is the modulus, at least 2.

	*factor_bound* (:class:`int`) is the trial-division limit.

	Raises :class:`.CannotFactor` when *N* does not factor within the bound.

	Returns a solution (:class:`list` of :class:`int`), or ``None`` when the
	system is inconsistent.
	"""
	if not isinstance(N, int) or N < 2:
		raise BadParams(f"{N=!r} must be an integer of at least 2.")
	if len(B) != len(J):
		raise BadParams(f"{len(B)} rows but {len(J)} right-hand sides.")
	factors = sympy.factorint(N, limit=factor_bound)
	if any(not sympy.isprime(p) for p in factors):
		raise CannotFactor(f"{N=!r} does not factor with trial division up to {factor_bound}.")

	ncols = len(B[0]) if B else 0
	moduli = []
	parts = []
	for p, e in sorted(factors.items()):
		part = _solve_prime_power(B, J, p, e)
		if part is None:
			logger.debug("Inconsistent modulo %d^%d.", p, e)
			return None
		moduli.append(p**e)
		parts.append(part)

	sol = []
	for j in range(ncols):
		value = crt(moduli, [part[j] for part in parts])
		sol.append(int(value[0]) % N)

	for row, b in zip(B, J):
		if sum(a * x for a, x in zip(row, sol)) % N != b % N:
			raise PostconditionError("Solution does not satisfy the system.")
	return sol


# Index calculus.

class IndexCalculus(object):
	"""
	The :class:`.IndexCalculus` class computes discrete logs to the base *b*
	of a tower. The factor base logs are computed once by :meth:`.prepare`
	and reused for every target.
	"""

	def __init__(self, tower: FieldTower, seed: Seed = None, draw_cap: int = DEFAULT_DRAW_CAP) -> None:
		self.__tower = tower
		self.__sampler = SmoothRelationSampler(tower, seed, draw_cap=draw_cap)
		self.__logs: Optional[Dict[int, int]] = None

		self.system: Optional[RelationSystem] = None
		"""
		*system* (:class:`.RelationSystem` or ``None``) is the collected system.
		"""

	@property
	def logs(self) -> Dict[int, int]:
		"""
		*logs* (:class:`dict`) maps each factor base symbol to its log.
		"""
		if self.__logs is None:
			self.prepare()
		return dict(self.__logs)

	@property
	def sampler(self) -> SmoothRelationSampler:
		return self.__sampler

	def prepare(self) -> None:
		"""
		Collect relations and solve for the factor base logs.
		"""
		system = collect_relations(self.__sampler)
		sol = solve_mod_N(system.B, system.J, system.N)
		if sol is None:
			raise PostconditionError("The relation system is inconsistent.")
		self.system = system
		self.__logs = {s: sol[i] for s, i in system.columns.items()}

	def log(self, target: Union[FieldElem, Sequence[int]]) -> int:
		"""
		Get the discrete log of *target*.

		A random shift ``target * b**r`` is drawn until it splits over the factor
		base, and the result is verified before returning.

		Raises :class:`.BudgetExceeded` when the draw cap is reached.

		Returns the exponent in ``[0, N)`` (:class:`int`).
		"""
		tower = self.__tower
		target = tower.elem(target) if not isinstance(target, FieldElem) else target
		if not target:
			raise DivisionByZero("The logarithm of zero is undefined.")
		logs = self.logs
		N = tower.N
		sampler = self.__sampler
		while True:
			r = sampler.draw()
			found = sampler.split(target * tower.b ** r)
			if found is None:
				continue
			_, exps, lead_log = found
			value = lead_log * logs[GAMMA] - r
			for a, e in exps.items():
				value += e * logs[a]
			value %= N
			if tower.b ** value != target:
				raise PostconditionError(f"Computed log {value} does not verify.")
			return value


def index_calculus_dlog(tower: FieldTower, target: Union[FieldElem, Sequence[int]], seed: Seed = None, draw_cap: int = DEFAULT_DRAW_CAP) -> int:
	"""
	Compute ``log_b(target)`` in F_{q^h}^x by index calculus over the factor
	base ``{alpha - a}`` and the F_q^x generator.

	*tower* (:class:`.FieldTower`) is the tower.

	*target* (:class:`.FieldElem`) is the nonzero target.

	*seed* is the seed.

	*draw_cap* (:class:`int`) caps the sampler draws.

	Returns the exponent (:class:`int`).
	"""
	return IndexCalculus(tower, seed, draw_cap=draw_cap).log(target)


# Statistics.

def cw_statistics(params: CWParams, samples: int, seed: Seed = None) -> Dict[str, Any]:
	"""
	Measure how far the coordinates of random Cheng-Wan received words are
	from uniform.

	Draws *samples* exponents uniformly, and for every coordinate compares the
	empirical distribution of ``y_a`` against uniform on F_q. The same
	statistics for truly uniform words of the same count are reported as a
	reference. Nothing is asserted.

	Returns the statistics (:class:`dict`).
	"""
	if samples < 1:
		raise BadParams(f"{samples=!r} is not positive.")
	rng = make_rng(seed)
	ground = params.tower.ground
	q, n = ground.q, params.n
	positions = np.asarray(ground.positions(), dtype=np.int64)
	counts = np.zeros((n, q), dtype=np.int64)
	for _ in range(samples):
		inst = gen_instance(params, rand_below(rng, params.tower.N))
		counts[np.arange(n), positions[list(inst.received.entries)]] += 1
	reference = np.zeros((n, q), dtype=np.int64)
	draws = rng.integers(0, q, size=(samples, n))
	for j in range(n):
		reference[j] = np.bincount(draws[:, j], minlength=q)

	def summarize(table: np.ndarray) -> Dict[str, float]:
		freq = table / samples
		tv = 0.5 * np.abs(freq - 1.0 / q).sum(axis=1)
		expected = samples / q
		chi2 = ((table - expected)**2 / expected).sum(axis=1)
		return {
			'mean_tv': float(tv.mean()),
			'max_tv': float(tv.max()),
			'mean_chi2': float(chi2.mean()),
		}

	return {
		'q': q,
		'h': params.h,
		'g': params.g,
		'samples': samples,
		'received': summarize(counts),
		'uniform_reference': summarize(reference),
		'chi2_dof': q - 1,
	}
