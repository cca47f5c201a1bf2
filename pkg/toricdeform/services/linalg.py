"""Exact rank and solves over the rationals by fraction-free elimination"""

import logging
from fractions import Fraction
from math import gcd, lcm

logger = logging.getLogger(__name__)


def _integer_row(row):
    denominators = [Fraction(x).denominator for x in row]
    scale = lcm(*denominators) if denominators else 1
    return [int(Fraction(x) * scale) for x in row]


def _bareiss_echelon(rows, ncols):
    """In-place fraction-free echelon form; returns pivot columns"""
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def rank(matrix):
    """Rank of a rational matrix given as a list of rows"""
    if not matrix or not matrix[0]:
        return 0
    rows = [_integer_row(row) for row in matrix]
    return len(_bareiss_echelon(rows, len(rows[0])))


def solve(matrix, rhs):
    """One exact solution x of matrix @ x == rhs, or None if there is none.

    Free variables are set to zero.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if len(rhs) != nrows:
        raise ValueError(f"right-hand side has length {len(rhs)}, expected {nrows}")
    if nrows == 0:
        return [Fraction(0)] * ncols
    augmented = [_integer_row(list(row) + [b]) for row, b in zip(matrix, rhs)]
    pivots = _bareiss_echelon(augmented, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    solution = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = augmented[r]
        acc = Fraction(row[ncols])
        for j in range(c + 1, ncols):
            if row[j]:
                acc -= row[j] * solution[j]
        solution[c] = acc / row[c]
    return solution


def mat_vec(matrix, vector):
    return [sum((a * b for a, b in zip(row, vector) if a), Fraction(0)) for row in matrix]


def normalize_integer_vector(vector):
    """Divide an integer vector by the gcd of its entries"""
    g = 0
    for x in vector:
        g = gcd(g, int(x))
    if g <= 1:
        return tuple(int(x) for x in vector)
    return tuple(int(x) // g for x in vector)


def coboundary_rank_profile(matrix, ncols):
    """(rank, nullity) of a matrix with a known column count"""
    r = rank(matrix) if matrix else 0
    return r, ncols - r
