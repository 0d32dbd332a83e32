"""
Exact linear algebra over the rationals.

Vectors and matrices are plain lists of `Fraction`; the heavy lifting (row reduction) is delegated to sympy's
DomainMatrix over QQ so that nothing here is ever rounded.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
import logging

logger = logging.getLogger(__name__)

Vector = List[Fraction]


def to_fraction(value) -> Fraction:
    """
    converts an int, Fraction, "p/q" string or QQ domain element into a Fraction
    :param value: the value to convert
    :return: Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    # sympy QQ elements (PythonMPQ or gmpy2.mpq) both expose numerator/denominator
    return Fraction(int(value.numerator), int(value.denominator))


def _domain_matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    converted = [[QQ(int(v.numerator), int(v.denominator)) for v in (to_fraction(x) for x in row)] for row in rows]
    return DomainMatrix(converted, (len(rows), ncols), QQ)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """
    reduced row echelon form of the given matrix
    :param rows: matrix rows, each of length ncols
    :param ncols: number of columns (needed when there are no rows)
    :return: a tuple of (reduced rows, pivot column indices). Zero rows are kept at the bottom.
    """
    if len(rows) == 0 or ncols == 0:
        return [[Fraction(0)] * ncols for _ in rows], tuple()
    reduced, pivots = _domain_matrix(rows, ncols).rref()
    return [[to_fraction(v) for v in row] for row in reduced.to_list()], tuple(pivots)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def row_space_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    """
    returns the non-zero rows of the reduced row echelon form, i.e. a canonical basis of the row space
    """
    reduced, pivots = rref(rows, ncols)
    return reduced[:len(pivots)]


def nullspace_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    """
    basis of {x : A x = 0}, one vector per free column in ascending order, with that free variable set to 1
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    result = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -reduced[r][free]
        result.append(x)
    return result


def solve(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[Vector]:
    """
    solves A x = b where the columns of A are given explicitly.
    free variables are set to zero, so the answer is deterministic.
    :param columns: list of column vectors, each the same length as `target`
    :param target: right-hand side
    :return: the solution vector, or None if the system is inconsistent
    """
    nrows = len(target)
    ncols = len(columns)
    for c in columns:
        if len(c) != nrows:
            raise ValueError("column of length {0} does not match right-hand side of length {1}".format(len(c), nrows))

    if nrows == 0:
        return [Fraction(0)] * ncols
    augmented = [[to_fraction(columns[c][r]) for c in range(ncols)] + [to_fraction(target[r])] for r in range(nrows)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][ncols]
    return x


def transpose(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    return [[rows[r][c] for r in range(len(rows))] for c in range(ncols)]


def mat_vec(rows: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, vector)), Fraction(0)) for row in rows]
