"""
This module implements the ``rsdlog`` command-line interface.

Every subcommand writes one machine-readable record to stdout. Errors are
written as a JSON record too, with exit code 2 for bad input and 1 for a
computation that could not be completed. Logging goes to stderr.
"""

import argparse
import csv
import io
import json
import logging
import math
import sys
from typing import (
	Any,
	Callable,  # Replaced by `collections.abc.Callable` in 3.9.
	Dict,  # Replaced by `dict` in 3.9.
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence)  # Replaced by `collections.abc.Sequence` in 3.9.

import numpy as np

from . import (
	_linalg)
from ._meta import (
	__version__)
from .chengwan import (
	DEFAULT_DRAW_CAP,
	CWParams,
	IndexCalculus,
	baseline_dlog,
	cw_statistics,
	decode_relation,
	extract_relation,
	load_instance,
	planted_instance)
from .decoder import (
	DECODERS,
	get_decoder)
from .errors import (
	BadParams,
	ComputationError,
	Error,
	InputError,
	MalformedInstance,
	PostconditionError)
from .ffield import (
	FieldTower,
	field_of_order)
from .hardness import (
	DEFAULT_ENUM_BOUND,
	brute_force_mss,
	generate_instance,
	load_mss,
	pad_instance)
from .qsim import (
	DEFAULT_MAX_DIM,
	ibdd_experiment,
	pgm_bdd,
	tau_perp,
	tau_prime,
	usd_tau_perp)
from .rscode import (
	RSCode,
	dump_word,
	weight)

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ('json', 'csv', 'text')
"""
The supported output formats.
"""

STREAMS = ('chengwan', 'decoder', 'qsim', 'hardness')
"""
The per-module random streams spawned from the run seed, in spawn order.
"""


class RunConfig(object):
	"""
	The :class:`.RunConfig` class gathers the settings of one command-line run.
	"""

	def __init__(
		self,
		seed: int = 0,
		output: str = 'json',
		max_dim: int = DEFAULT_MAX_DIM,
		max_enum: int = DEFAULT_ENUM_BOUND,
		instance: Optional[str] = None,
		params: Optional[Dict[str, Any]] = None,
	) -> None:
		"""
		Initializes the :class:`.RunConfig` instance.

		*seed* (:class:`int`) is the 64-bit run seed.

		*output* (:class:`str`) is the output format.

		*max_dim* (:class:`int`) caps amplitude dimensions.

		*max_enum* (:class:`int`) caps brute-force enumerations.

		*instance* (:class:`str` or ``None``) is the path of an instance file.

		*params* (:class:`dict` or ``None``) contains the subcommand parameters.
		"""
		if not isinstance(seed, int) or not 0 <= seed < 2**64:
			raise BadParams(f"{seed=!r} is not a 64-bit seed.")
		if output not in OUTPUT_FORMATS:
			raise BadParams(f"{output=!r} is not one of {OUTPUT_FORMATS}.")
		for name, cap in (('max_dim', max_dim), ('max_enum', max_enum)):
			if not isinstance(cap, int) or cap < 1:
				raise BadParams(f"{name}={cap!r} is not a positive cap.")

		self.seed: int = seed
		self.output: str = output
		self.max_dim: int = max_dim
		self.max_enum: int = max_enum
		self.instance: Optional[str] = instance
		self.params: Dict[str, Any] = dict(params or {})

	def streams(self) -> Dict[str, np.random.Generator]:
		"""
		Get one generator per module, spawned from the run seed.

		Returns a :class:`dict` mapping each name in :data:`.STREAMS` to its
		:class:`numpy.random.Generator`.
		"""
		children = np.random.SeedSequence(self.seed).spawn(len(STREAMS))
		return {name: np.random.default_rng(child) for name, child in zip(STREAMS, children)}


# Helpers.

def _load_json(path: Optional[str]) -> Any:
	if path is None:
		raise MalformedInstance("instance", "an --instance file is required")
	try:
		with open(path, 'r', encoding='utf8') as fh:
			return json.load(fh)
	except OSError as e:
		raise MalformedInstance(path, f"cannot read file ({e.strerror})")
	except json.JSONDecodeError as e:
		raise MalformedInstance(path, f"invalid JSON at line {e.lineno} column {e.colno}")


def _parse_codes(text: str, q: int, name: str) -> List[int]:
	try:
		codes = [int(c) for c in text.split(',') if c.strip()]
	except ValueError:
		raise BadParams(f"{name}={text!r} is not a comma separated list of integers.")
	for c in codes:
		if not 0 <= c < q:
			raise BadParams(f"{name} entry {c} is not a field element code in [0, {q}).")
	return codes


def _parse_matrix(text: str, q: int, name: str) -> List[List[int]]:
	rows = [_parse_codes(row, q, name) for row in text.split(';') if row.strip()]
	if not rows or len({len(r) for r in rows}) != 1:
		raise BadParams(f"{name}={text!r} is not a rectangular matrix.")
	return rows


def _tower(q: int, h: int) -> FieldTower:
	return FieldTower(field_of_order(q), h)


# Subcommands.

def cmd_params(q: int, h: int) -> Dict[str, Any]:
	"""
	Tabulate the noise rates of the decoders at the Cheng-Wan parameters
	``k = 3h + 4``.

	For each decoder the table gives the rate *tau* it handles on the dual
	code, its dual rate and the IBDD error fraction ``tau'`` it yields on the
	primal code.

	*q* (:class:`int`) is the field size.

	*h* (:class:`int`) is the tower degree.

	Returns the table record (:class:`dict`).
	"""
	field_of_order(q)
	if not isinstance(h, int) or h < 1:
		raise BadParams(f"{h=!r} is not a positive degree.")
	k = 3 * h + 4
	if k > q:
		raise BadParams(f"k = 3h + 4 = {k} exceeds q = {q}.")

	usd_perp = usd_tau_perp(q, k)
	rates = [
		('bw', k / (2 * q)),
		('gs', 1.0 - math.sqrt((q - k) / q)),
		('usd', tau_perp(usd_perp, q)),
		('required', 4 * h / q),
	]
	rows = []
	for name, tau in rates:
		rows.append({
			'decoder': name,
			'tau': tau,
			'tau_perp': usd_perp if name == 'usd' else tau_perp(tau, q),
			'tau_prime': tau_prime(tau, q),
		})
	return {
		'q': q,
		'h': h,
		'k': k,
		'h_tilde': h / q,
		'in_regime': h <= q**0.25 - 2,
		'rows': rows,
	}


def run_params(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	return cmd_params(p['q'], p['h'])


def run_decode(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	inst = load_instance(_load_json(config.instance))
	name = config.params['decoder']
	decoder = get_decoder(name, bound=config.max_enum) if name == 'brute' else get_decoder(name)
	code = inst.params.code
	t = config.params.get('t')
	found = decoder.decode(code, inst.received, t)
	relation = None
	for c in found:
		relation = extract_relation(inst, c)
		if relation is not None:
			break

	ground = code.field
	return {
		'decoder': name,
		't': decoder.radius(code) if t is None else t,
		'codewords': [dump_word(ground, c) for c in found],
		'relation': None if relation is None else [list(ground.coeffs_of(a)) for a in relation.support],
	}


def run_cw_gen(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	params = CWParams(_tower(p['q'], p['h']), p.get('g'))
	inst, _ = planted_instance(params, seed=rng['chengwan'])
	return {'instance': inst.to_json()}


def run_cw_demo(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	params = CWParams(_tower(p['q'], p['h']), p.get('g'))
	picks = rng['chengwan'].choice(params.n, size=params.g, replace=False)
	A = [params.support[int(j)] for j in sorted(picks)]
	inst, witness = planted_instance(params, A)
	name = p['decoder']
	decoder = get_decoder(name, bound=config.max_enum) if name == 'brute' else get_decoder(name)

	t = params.n - params.g
	if t > decoder.radius(params.code) and name != 'brute':
		raise BadParams(f"Radius n - g = {t} exceeds the {name} radius {decoder.radius(params.code)}.")
	relation = decode_relation(inst, decoder, t)
	ground = params.tower.ground
	recovered = None if relation is None else sorted(relation.support, key=ground.position)
	expected = sorted(A, key=ground.position)
	return {
		'q': params.q,
		'h': params.h,
		'g': params.g,
		'decoder': name,
		'radius': t,
		'planted': [list(ground.coeffs_of(a)) for a in expected],
		'recovered': None if recovered is None else [list(ground.coeffs_of(a)) for a in recovered],
		'match': recovered == expected,
		'witness': dump_word(ground, witness),
	}


def run_dlog(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	tower = _tower(p['q'], p['h'])
	ground = tower.ground
	stream = rng['chengwan']
	if p.get('target') is not None:
		target = tower.elem(_parse_codes(p['target'], ground.q, 'target'))
	else:
		target = tower.b ** int(stream.integers(0, tower.N))
	if not target:
		raise BadParams("The target must be nonzero.")

	solver = IndexCalculus(tower, seed=stream, draw_cap=p.get('draw_cap') or DEFAULT_DRAW_CAP)
	exponent = solver.log(target)
	method = p['baseline']
	check = baseline_dlog(tower.b, target, tower.N, method)
	if check != exponent:
		raise PostconditionError(f"Index calculus gave {exponent}, {method} gave {check}.")

	system = solver.system
	return {
		'q': ground.q,
		'h': tower.h,
		'N': tower.N,
		'base': list(tower.coeffs_of(tower.b.value)),
		'target': list(tower.coeffs_of(target.value)),
		'exponent': exponent,
		'baseline': method,
		'verified': True,
		'relations': len(system.relations),
		'rank': system.rank(),
		'dim': system.dim,
		'draws': solver.sampler.draws,
	}


def run_regev_sim(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	code = RSCode(field_of_order(p['q']), p['k'])
	name = p.get('decoder')
	dec = None if name is None else get_decoder(name)
	record = ibdd_experiment(code, p['tau'], dec=dec, trials=p['trials'], seed=rng['qsim'], max_dim=config.max_dim)
	record.update({'q': code.field.q, 'n': code.n, 'k': code.k, 'decoder': name})
	return record


def run_pgm_sim(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	field = field_of_order(p['q'])
	q = field.q
	if p.get('G') is not None:
		G = _parse_matrix(p['G'], q, 'G')
	elif p.get('k') is not None:
		G = RSCode(field, p['k']).generator_matrix()
	else:
		raise BadParams("Either --G or --k is required.")
	n = len(G[0])
	if p.get('y0') is None:
		raise BadParams("--y0 is required.")
	y0 = _parse_codes(p['y0'], q, 'y0')
	if len(y0) != n:
		raise BadParams(f"y0 has length {len(y0)}, expected {n}.")
	trials = p['trials']
	if trials < 1:
		raise BadParams(f"{trials=!r} is not positive.")

	u0 = _linalg.mat_vec(field, G, y0)
	stream = rng['qsim']
	outcomes: Dict[str, int] = {}
	valid = 0
	gamma = acceptance = postselect = math.inf
	restarts = 0
	t_used = None
	for _ in range(trials):
		out = pgm_bdd(G, p['t'], y0, seed=stream, field=field, max_dim=config.max_dim)
		ok = out.support_ok and weight(out.x) == out.t and _linalg.mat_vec(field, G, list(out.x)) == u0
		valid += ok
		key = ','.join(str(c) for c in out.x)
		outcomes[key] = outcomes.get(key, 0) + 1
		gamma = min(gamma, out.gamma)
		acceptance = min(acceptance, out.acceptance)
		postselect = min(postselect, out.postselect_probability)
		restarts += out.restarts
		t_used = out.t

	return {
		'q': q,
		'n': n,
		'k': len(G),
		't': t_used,
		'trials': trials,
		'valid': valid,
		'gamma_min': gamma,
		'acceptance_min': acceptance,
		'postselect_min': postselect,
		'restarts': restarts,
		'outcomes': outcomes,
	}


def run_pad_mss(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	if config.instance is not None:
		inst = load_mss(_load_json(config.instance))
	else:
		inst = generate_instance(p['size'], p['k'], p['d'], seed=rng['hardness'], planted=not p['perturbed'])
	padded = pad_instance(inst, p['M'])
	before = brute_force_mss(inst, config.max_enum)
	after = brute_force_mss(padded, config.max_enum)
	dummies = set(padded.A) - set(inst.A)
	if after is not None and dummies.intersection(after):
		raise PostconditionError(f"Witness {after!r} uses a dummy element.")
	return {
		'instance': inst.to_json(),
		'M': p['M'],
		'R': min(dummies),
		'padded_size': len(padded.A),
		'yes': before is not None,
		'padded_yes': after is not None,
		'witness': None if before is None else list(before),
		'padded_witness': None if after is None else list(after),
		'equivalent': (before is None) == (after is None),
	}


def run_cw_stats(config: RunConfig, rng: Dict[str, np.random.Generator]) -> Dict[str, Any]:
	p = config.params
	params = CWParams(_tower(p['q'], p['h']), p.get('g'))
	return cw_statistics(params, p['samples'], seed=rng['chengwan'])


COMMANDS: Dict[str, Callable[[RunConfig, Dict[str, np.random.Generator]], Dict[str, Any]]] = {
	'params': run_params,
	'decode': run_decode,
	'cw-gen': run_cw_gen,
	'cw-demo': run_cw_demo,
	'dlog': run_dlog,
	'regev-sim': run_regev_sim,
	'pgm-sim': run_pgm_sim,
	'pad-mss': run_pad_mss,
	'cw-stats': run_cw_stats,
}
"""
Maps subcommand name to its runner.
"""


def cmd_run(command: str, config: RunConfig) -> Dict[str, Any]:
	"""
	Run a subcommand.

	*command* (:class:`str`) is the subcommand name.

	*config* (:class:`.RunConfig`) is the run configuration.

	Returns the output record (:class:`dict`), which echoes the seed.
	"""
	try:
		runner = COMMANDS[command]
	except KeyError:
		raise BadParams(f"{command=!r} is not a subcommand.")
	logger.info("Running %s with seed %d.", command, config.seed)
	record = runner(config, config.streams())
	record['command'] = command
	record['seed'] = config.seed
	return record


# Output.

def _flatten(record: Dict[str, Any], prefix: str = '') -> Dict[str, Any]:
	out = {}
	for key, value in record.items():
		name = f"{prefix}{key}"
		if isinstance(value, dict) and value and all(isinstance(v, (int, float, str, bool, type(None))) for v in value.values()) and key != 'outcomes':
			out.update(_flatten(value, f"{name}."))
		elif isinstance(value, (list, dict)):
			out[name] = json.dumps(value, sort_keys=True)
		else:
			out[name] = value
	return out


def _table(record: Dict[str, Any]) -> List[Dict[str, Any]]:
	rows = record.get('rows')
	if isinstance(rows, list) and rows:
		head = _flatten({k: v for k, v in record.items() if k != 'rows'})
		return [{**head, **_flatten(row)} for row in rows]
	return [_flatten(record)]


def render(record: Dict[str, Any], output: str) -> str:
	"""
	Render an output record.

	*record* (:class:`dict`) is the record.

	*output* (:class:`str`) is ``"json"``, ``"csv"`` or ``"text"``.

	Returns the rendered text (:class:`str`).
	"""
	if output == 'json':
		return json.dumps(record, sort_keys=True, indent=2) + "\n"

	rows = _table(record)
	fields = sorted({key for row in rows for key in row})
	if output == 'csv':
		buf = io.StringIO()
		writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
		writer.writeheader()
		writer.writerows(rows)
		return buf.getvalue()

	elif output == 'text':
		lines = []
		for i, row in enumerate(rows):
			if i:
				lines.append("")
			width = max(len(key) for key in row)
			for key in sorted(row):
				lines.append(f"{key:<{width}}  {row[key]}")
		return "\n".join(lines) + "\n"

	raise BadParams(f"{output=!r} is not one of {OUTPUT_FORMATS}.")


def error_record(error: Error) -> Dict[str, Any]:
	"""
	Get the machine-readable record of an error.
	"""
	record = {
		'error': error.__class__.__name__,
		'message': str(error),
		'kind': 'input' if isinstance(error, InputError) else 'computation',
	}
	path = getattr(error, 'path', None)
	if path is not None:
		record['path'] = path
	return record


# Entry point.

def _add_common(parser: argparse.ArgumentParser) -> None:
	parser.add_argument('--seed', type=int, default=0, help="The 64-bit run seed. Default is 0.")
	parser.add_argument('--out', choices=OUTPUT_FORMATS, default='json', help="The output format. Default is json.")
	parser.add_argument('--max-dim', type=int, default=DEFAULT_MAX_DIM, help="The amplitude dimension cap.")
	parser.add_argument('--max-enum', type=int, default=DEFAULT_ENUM_BOUND, help="The brute-force enumeration cap.")
	parser.add_argument('--instance', help="The path of an instance JSON file.")
	parser.add_argument('-v', '--verbose', action='count', default=0, help="Log INFO (-v) or DEBUG (-vv) to stderr.")


def build_parser() -> argparse.ArgumentParser:
	"""
	Build the argument parser.
	"""
	parser = argparse.ArgumentParser(
		prog='rsdlog',
		description="Discrete logarithms, Reed-Solomon decoding and exact simulation of the reductions between them.",
	)
	parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
	sub = parser.add_subparsers(dest='command', required=True)

	p = sub.add_parser('params', help="Tabulate decoder noise rates at the Cheng-Wan parameters.")
	p.add_argument('--q', type=int, required=True)
	p.add_argument('--h', type=int, required=True)

	p = sub.add_parser('decode', help="Decode a Cheng-Wan instance file.")
	p.add_argument('--decoder', choices=sorted(DECODERS), default='bw')
	p.add_argument('--t', type=int)

	p = sub.add_parser('cw-gen', help="Generate a planted Cheng-Wan instance.")
	p.add_argument('--q', type=int, required=True)
	p.add_argument('--h', type=int, required=True)
	p.add_argument('--g', type=int)

	p = sub.add_parser('cw-demo', help="Plant, decode and extract a Cheng-Wan relation.")
	p.add_argument('--q', type=int, default=16)
	p.add_argument('--h', type=int, default=2)
	p.add_argument('--g', type=int, default=14)
	p.add_argument('--decoder', choices=sorted(DECODERS), default='bw')

	p = sub.add_parser('dlog', help="Compute a discrete log by index calculus.")
	p.add_argument('--q', type=int, required=True)
	p.add_argument('--h', type=int, required=True)
	p.add_argument('--target', help="The target coefficients as comma separated ground codes.")
	p.add_argument('--baseline', choices=('bsgs', 'pohlig_hellman'), default='bsgs')
	p.add_argument('--draw-cap', type=int)

	p = sub.add_parser('regev-sim', help="Simulate the Regev reduction with Bernoulli noise.")
	p.add_argument('--q', type=int, required=True)
	p.add_argument('--k', type=int, required=True)
	p.add_argument('--tau', type=float, required=True)
	p.add_argument('--trials', type=int, default=100)
	p.add_argument('--decoder', choices=sorted(DECODERS))

	p = sub.add_parser('pgm-sim', help="Solve a BDD instance with the simulated PGM.")
	p.add_argument('--q', type=int, required=True)
	p.add_argument('--G', help="The generator matrix, rows separated by ';' and entries by ','.")
	p.add_argument('--k', type=int, help="Use RS[q, k]_q when --G is omitted.")
	p.add_argument('--y0', help="The received word as comma separated codes.")
	p.add_argument('--t', type=int, required=True)
	p.add_argument('--trials', type=int, default=1)

	p = sub.add_parser('pad-mss', help="Pad a moment subset-sum instance and compare answers.")
	p.add_argument('--M', type=int, required=True)
	p.add_argument('--size', type=int, default=8)
	p.add_argument('--k', type=int, default=2)
	p.add_argument('--d', type=int, default=1)
	p.add_argument('--perturbed', action='store_true', help="Shift the first moment of the planted subset.")

	p = sub.add_parser('cw-stats', help="Compare Cheng-Wan received words against uniform.")
	p.add_argument('--q', type=int, required=True)
	p.add_argument('--h', type=int, required=True)
	p.add_argument('--g', type=int)
	p.add_argument('--samples', type=int, default=1000)

	for p in sub.choices.values():
		_add_common(p)
	return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
	"""
	Run the command-line interface.

	*argv* (:class:`~collections.abc.Sequence` of :class:`str` or ``None``)
	contains the arguments. Default is ``None`` for :data:`sys.argv`.

	Returns the exit code (:class:`int`).
	"""
	args = build_parser().parse_args(argv)
	level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
	logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

	common = {'command', 'seed', 'out', 'max_dim', 'max_enum', 'instance', 'verbose'}
	params = {k: v for k, v in vars(args).items() if k not in common}
	try:
		config = RunConfig(
			seed=args.seed,
			output=args.out,
			max_dim=args.max_dim,
			max_enum=args.max_enum,
			instance=args.instance,
			params=params,
		)
		record = cmd_run(args.command, config)
	except InputError as e:
		logger.debug("Input error.", exc_info=True)
		sys.stdout.write(json.dumps(error_record(e), sort_keys=True) + "\n")
		return 2
	except ComputationError as e:
		logger.debug("Computation error.", exc_info=True)
		sys.stdout.write(json.dumps(error_record(e), sort_keys=True) + "\n")
		return 1

	sys.stdout.write(render(record, config.output))
	return 0
