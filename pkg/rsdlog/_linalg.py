"""
This module contains internal dense linear algebra over a table field.
Matrices are lists of rows of element codes. Pivots are chosen as the first
nonzero entry so that results are deterministic.
"""

from typing import (
	List,  # Replaced by `list` in 3.9.
	Optional,  # Replaced by `X | None` in 3.10.
	Sequence,  # Replaced by `collections.abc.Sequence` in 3.9.
	Tuple)  # Replaced by `tuple` in 3.9.


def row_reduce(field, matrix: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Tuple[List[List[int]], List[int]]:
	"""
	Bring a matrix to reduced row echelon form.

	*field* is the coefficient field.

	*matrix* (:class:`~collections.abc.Sequence`) contains the rows.

	*ncols* (:class:`int` or ``None``) limits pivoting to the leading columns
	(used to keep an augmented column out of the pivot search).

	Returns a :class:`tuple` of the reduced rows (nonzero rows first) and the
	pivot column of each nonzero row.
	"""
	rows = [list(r) for r in matrix]
	if not rows:
		return rows, []
	width = len(rows[0]) if ncols is None else ncols
	add, mul, neg, inv = field.add, field.mul, field.neg, field.inv

	pivots: List[int] = []
	r = 0
	for col in range(width):
		pivot = None
		for i in range(r, len(rows)):
			if rows[i][col]:
				pivot = i
				break
		if pivot is None:
			continue

		rows[r], rows[pivot] = rows[pivot], rows[r]
		prow = rows[r]
		scale = inv(prow[col])
		if scale != 1:
			prow = rows[r] = [mul(x, scale) for x in prow]

		for i in range(len(rows)):
			if i == r:
				continue
			factor = rows[i][col]
			if factor:
				nf = neg(factor)
				row = rows[i]
				rows[i] = [add(x, mul(nf, y)) if y else x for x, y in zip(row, prow)]

		pivots.append(col)
		r += 1
		if r == len(rows):
			break

	return rows, pivots


def rank(field, matrix: Sequence[Sequence[int]]) -> int:
	return len(row_reduce(field, matrix)[1])


def kernel(field, matrix: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
	"""
	Get a basis of the right kernel ``{x : M x = 0}``.

	*ncols* (:class:`int`) is the number of columns (needed for an empty
	matrix).

	Returns the basis vectors (:class:`list` of rows), one per free column in
	increasing order.
	"""
	if not matrix:
		return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
	rows, pivots = row_reduce(field, matrix)
	neg = field.neg
	pivot_set = set(pivots)
	basis = []
	for free in range(ncols):
		if free in pivot_set:
			continue
		vec = [0] * ncols
		vec[free] = 1
		for row, col in zip(rows, pivots):
			vec[col] = neg(row[free])
		basis.append(vec)
	return basis


def solve(field, matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[List[int]]:
	"""
	Find one solution of ``M x = rhs`` with all free variables set to zero.

	Returns the solution (:class:`list`), or ``None`` when inconsistent.
	"""
	if not matrix:
		return None if any(rhs) else []
	ncols = len(matrix[0])
	aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
	rows, pivots = row_reduce(field, aug, ncols=ncols)
	for row in rows[len(pivots):]:
		if row[ncols]:
			return None
	x = [0] * ncols
	for row, col in zip(rows, pivots):
		x[col] = row[ncols]
	return x


def mat_vec(field, matrix: Sequence[Sequence[int]], vec: Sequence[int]) -> List[int]:
	add, mul = field.add, field.mul
	out = []
	for row in matrix:
		acc = 0
		for a, b in zip(row, vec):
			if a and b:
				acc = add(acc, mul(a, b))
		out.append(acc)
	return out


def mat_mul_t(field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> List[List[int]]:
	"""
	Compute ``A B^T``.
	"""
	return [mat_vec(field, b, row) for row in a]
