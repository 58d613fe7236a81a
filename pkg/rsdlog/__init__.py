"""
:mod:`rsdlog` relates discrete logarithms in F_{q^h} to bounded distance
decoding of Reed-Solomon codes. It builds Cheng-Wan decoding instances,
collects relations for index calculus, and simulates the quantum reductions
(Regev's and the Pretty Good Measurement) exactly at small sizes.
"""

from .chengwan import (
	CWInstance,
	CWParams,
	IndexCalculus,
	Relation,
	RelationSystem,
	SmoothRelationSampler,
	baseline_dlog,
	bsgs,
	collect_relations,
	decode_relation,
	extract_relation,
	gen_instance,
	index_calculus_dlog,
	planted_instance,
	pohlig_hellman,
	self_reduce_and_split,
	solve_mod_N)
from .decoder import (
	DecoderContract,
	get_decoder)
from .errors import (
	ComputationError,
	Error,
	InputError)
from .ffield import (
	ExtField,
	FieldElem,
	FieldTower,
	PrimeField,
	chi,
	construct_field,
	field_of_order,
	trace)
from .hardness import (
	MSSInstance,
	brute_force_mss,
	pad_instance)
from .poly import (
	Poly,
	eval_poly,
	interpolate,
	roots,
	split_distinct_linear)
from .qsim import (
	AmplitudeState,
	build_bernoulli_state,
	ibdd_experiment,
	inverse_qft,
	pgm_bdd,
	qft,
	regev_pipeline,
	tau_perp)
from .rscode import (
	RSCode,
	encode,
	hamming,
	syndrome)

from ._meta import (
	__author__,
	__copyright__,
	__credits__,
	__license__,
	__version__)
