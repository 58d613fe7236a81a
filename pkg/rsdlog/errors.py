"""
This module defines the exceptions raised by :mod:`rsdlog`.

Every exception derives from :class:`.Error`. Bad input derives from
:class:`.InputError` (also a :class:`ValueError`), and computations that
exceed a budget or turn out to be infeasible derive from
:class:`.ComputationError` (also a :class:`RuntimeError`). The command-line
interface maps the former to exit code 2 and the latter to exit code 1.
"""

from typing import (
	Optional)  # Replaced by `X | None` in 3.10.


class Error(Exception):
	"""
	The :class:`.Error` class is the base class for all :mod:`rsdlog` errors.
	"""


class InputError(Error, ValueError):
	"""
	The :class:`.InputError` class indicates an invalid argument or instance.
	"""


class ComputationError(Error, RuntimeError):
	"""
	The :class:`.ComputationError` class indicates a computation could not be
	completed within its configured bounds.
	"""


# Input errors.

class NotPrime(InputError):
	"""
	The characteristic is not prime.
	"""


class Reducible(InputError):
	"""
	A modulus that must be irreducible is reducible.
	"""


class DegreeMismatch(InputError):
	"""
	A polynomial does not have the expected degree or is not monic.
	"""


class FieldMismatch(InputError):
	"""
	The operands belong to different fields.
	"""


class LengthMismatch(InputError):
	"""
	The vectors do not have matching lengths.
	"""


class DivisionByZero(InputError, ZeroDivisionError):
	"""
	Inversion of, or division by, zero.
	"""


class DuplicatePoint(InputError):
	"""
	Interpolation points share an x-coordinate.
	"""


class DegreeTooHigh(InputError):
	"""
	A message polynomial has degree at least the code dimension.
	"""


class WrongWitnessSize(InputError):
	"""
	A planted set does not have exactly *g* distinct elements.
	"""


class OutOfRange(InputError):
	"""
	A parameter lies outside its permitted range.
	"""


class BadParams(InputError):
	"""
	A parameter combination is invalid.
	"""


class DegenerateTower(InputError):
	"""
	The tower degree is not allowed for the requested construction.
	"""


class MalformedInstance(InputError):
	"""
	An instance document does not have the expected shape.
	"""

	def __init__(self, path: str, message: str) -> None:
		"""
		Initializes the :class:`.MalformedInstance` instance.

		*path* (:class:`str`) is the location of the offending field (e.g.,
		``"received[3]"``).

		*message* (:class:`str`) describes the problem.
		"""
		super().__init__(f"{path}: {message}")

		self.path: str = path
		"""
		*path* (:class:`str`) is the location of the offending field.
		"""


# Computational errors.

class FieldTooLarge(ComputationError):
	"""
	The field is too large for exhaustive search or table construction.
	"""


class CodeTooLarge(ComputationError):
	"""
	The code has too many codewords to enumerate.
	"""


class RadiusTooLarge(ComputationError):
	"""
	The requested radius exceeds the decoder's guaranteed radius.
	"""


class StateTooLarge(ComputationError):
	"""
	The amplitude array would exceed the configured dimension bound.
	"""


class InstanceTooLarge(ComputationError):
	"""
	The subset enumeration would exceed the configured bound.
	"""


class BudgetExceeded(ComputationError):
	"""
	A sampling loop ran out of draws.
	"""


class CannotFactor(ComputationError):
	"""
	A modulus could not be factored within the configured bound.
	"""


class NotInSubgroup(ComputationError):
	"""
	The element does not lie in the subgroup generated by the base.
	"""


class DecoderNotTotal(ComputationError):
	"""
	A coherent decoder returned no codeword for some basis vector.
	"""


class VanishingCoset(ComputationError):
	"""
	A dual coset carries no amplitude.
	"""

	def __init__(self, u: Optional[tuple] = None) -> None:
		"""
		Initializes the :class:`.VanishingCoset` instance.

		*u* (:class:`tuple` or ``None``) is the dual syndrome of the empty coset.
		"""
		super().__init__(f"Coset {u!r} has zero norm.")

		self.u = u
		"""
		*u* (:class:`tuple` or ``None``) is the dual syndrome of the empty coset.
		"""


class NoExactWeightSolution(ComputationError):
	"""
	No coset member has the required Hamming weight.
	"""


class PostconditionError(ComputationError):
	"""
	A result failed its verification check.
	"""
