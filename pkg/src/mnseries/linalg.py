"""Exact rank and left-nullspace computation.

Over the rationals, rows are cleared to integers and eliminated with the
fraction-free (Bareiss) single-step rule, so every intermediate value stays
an integer and every division is exact. Over prime fields and quadratic
fields, plain Gaussian elimination is already exact. Pivot columns are taken
in the caller's column order and the pivot row is always the first row with a
nonzero entry, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .scalars import QQ, field_of


def _clear_denominators(row):
    denom = 1
    for x in row:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    return [int(x * denom) for x in row], denom


def _eliminate_int(rows, pivot_cols):
    """Fraction-free elimination on integer rows (in place), pivoting on the
    given columns only; every row below the pivot is updated (also those with
    a zero head, which rescale) so the Bareiss divisions stay exact. Returns
    the rank."""
    if not rows:
        return 0
    pr = 0
    prev = 1
    for pc in pivot_cols:
        pivot_row = None
        for i in range(pr, len(rows)):
            if rows[i][pc]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][pc]
        row_p = rows[pr]
        width = len(row_p)
        for i in range(pr + 1, len(rows)):
            row_i = rows[i]
            head = row_i[pc]
            for j in range(width):
                row_i[j] = (row_i[j] * piv - head * row_p[j]) // prev
        prev = piv
        pr += 1
        if pr == len(rows):
            break
    return pr


def _eliminate_field(rows, pivot_cols, field):
    """Plain exact Gaussian elimination over a field (in place); returns the rank."""
    if not rows:
        return 0
    zero = field.zero
    pr = 0
    for pc in pivot_cols:
        pivot_row = None
        for i in range(pr, len(rows)):
            if rows[i][pc] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][pc]
        row_p = rows[pr]
        width = len(row_p)
        for i in range(pr + 1, len(rows)):
            row_i = rows[i]
            head = row_i[pc]
            if head != zero:
                factor = head / piv
                for j in range(width):
                    row_i[j] = row_i[j] - factor * row_p[j]
        pr += 1
        if pr == len(rows):
            break
    return pr


def exact_rank(matrix, field=None) -> int:
    """Rank of a matrix of exact scalars over their common field."""
    if not matrix or not matrix[0]:
        return 0
    n_cols = len(matrix[0])
    if field is None:
        field = field_of(matrix[0][0])
    if field == QQ:
        rows = [_clear_denominators([Fraction(x) for x in row])[0] for row in matrix]
        return _eliminate_int(rows, range(n_cols))
    rows = [list(row) for row in matrix]
    return _eliminate_field(rows, range(n_cols), field)


def rank_and_left_nullspace(matrix, field=None):
    """Rank, together with one nonzero vector y (if any) with y * M = 0.

    Elimination runs on [M | I]; the identity block records the row
    operations, so any row whose M-part vanished carries an exact dependency
    among the original rows in its augmented part."""
    n_rows = len(matrix)
    if n_rows == 0:
        return 0, None
    n_cols = len(matrix[0])
    if field is None:
        field = field_of(matrix[0][0])

    if field == QQ:
        rows = []
        denominators = []
        for i, row in enumerate(matrix):
            cleared, denom = _clear_denominators([Fraction(x) for x in row])
            denominators.append(denom)
            aug = [0] * n_rows
            aug[i] = 1
            rows.append(cleared + aug)
        rank = _eliminate_int(rows, range(n_cols))
        if rank == n_rows:
            return rank, None
        tail = rows[rank][n_cols:]
        # the augmented part combines the cleared rows d_i * M_i, so the
        # dependency on the original rows picks up the cleared denominators
        dependency = [Fraction(c) * d for c, d in zip(tail, denominators)]
        assert any(dependency)
        return rank, dependency

    one = field.one
    zero = field.zero
    rows = []
    for i, row in enumerate(matrix):
        aug = [zero] * n_rows
        aug[i] = one
        rows.append(list(row) + aug)
    rank = _eliminate_field(rows, range(n_cols), field)
    if rank == n_rows:
        return rank, None
    dependency = list(rows[rank][n_cols:])
    assert any(c != zero for c in dependency)
    return rank, dependency
