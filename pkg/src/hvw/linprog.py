"""Exact feasibility of equality systems with nonnegative variables.

Decides whether A x = b has a solution x >= 0 over the rationals, by a
phase-one simplex with Bland's anti-cycling rule carried out entirely in
`fractions.Fraction`. Infeasible systems come with a Farkas certificate y
(y.A >= 0 componentwise while y.b < 0), and `verify_farkas` /
`verify_solution` recheck either answer by direct arithmetic, independent of
the solver's internals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .models import ONE, ZERO


def _checked_system(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[list[list[Fraction]], list[Fraction]]:
    if len(rows) != len(rhs):
        raise InputError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
    matrix = [[Fraction(v) for v in row] for row in rows]
    width = {len(row) for row in matrix}
    if len(width) > 1:
        raise InputError(f"rows have inconsistent lengths: {sorted(width)}")
    return matrix, [Fraction(v) for v in rhs]


def feasible_point(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[list[Fraction] | None, list[Fraction] | None]:
    """Solve A x = b, x >= 0 exactly.

    Returns (x, None) with a nonnegative rational solution when the system is
    feasible, else (None, y) with a Farkas certificate of infeasibility.
    """
    matrix, b = _checked_system(rows, rhs)
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if m == 0:
        return [], None

    # Phase-one tableau: structural columns, artificial columns, rhs.
    # Rows with negative rhs are negated first (sign unwound in the certificate).
    flip = [-1 if value < 0 else 1 for value in b]
    tableau: list[list[Fraction]] = []
    for i in range(m):
        sign = flip[i]
        row = [sign * v for v in matrix[i]]
        row.extend(ONE if j == i else ZERO for j in range(m))
        row.append(sign * b[i])
        tableau.append(row)
    basis = [n + i for i in range(m)]
    # Reduced costs for min sum(artificials); last cell is minus the objective.
    cost = [-sum(tableau[i][j] for i in range(m)) for j in range(n)]
    cost.extend(ZERO for _ in range(m))
    cost.append(-sum(tableau[i][-1] for i in range(m)))

    total_cols = n + m
    while True:
        pivot_col = next((j for j in range(total_cols) if cost[j] < 0), None)
        if pivot_col is None:
            break
        pivot_row = -1
        best: Fraction | None = None
        for i in range(m):
            coeff = tableau[i][pivot_col]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pivot_row]):
                    best = ratio
                    pivot_row = i
        if pivot_row < 0:
            raise AssertionError("phase-one objective cannot be unbounded")
        _pivot(tableau, cost, basis, pivot_row, pivot_col)

    objective = -cost[-1]
    if objective == 0:
        x = [ZERO] * n
        for i, var in enumerate(basis):
            if var < n:
                x[var] = tableau[i][-1]
        return x, None

    # Optimal dual prices off the artificial columns, signs restored per row.
    y = [(cost[n + i] - 1) * flip[i] for i in range(m)]
    return None, y


def _pivot(
    tableau: list[list[Fraction]],
    cost: list[Fraction],
    basis: list[int],
    pivot_row: int,
    pivot_col: int,
) -> None:
    row = tableau[pivot_row]
    pivot = row[pivot_col]
    if pivot != 1:
        row = [v / pivot for v in row]
        tableau[pivot_row] = row
    for i, other in enumerate(tableau):
        if i == pivot_row:
            continue
        factor = other[pivot_col]
        if factor:
            tableau[i] = [a - factor * b for a, b in zip(other, row)]
    factor = cost[pivot_col]
    if factor:
        cost[:] = [a - factor * b for a, b in zip(cost, row)]
    basis[pivot_row] = pivot_col


def verify_solution(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], x: Sequence[Fraction]
) -> bool:
    """Directly recheck that x >= 0 and A x = b, term by term."""
    matrix, b = _checked_system(rows, rhs)
    if matrix and len(x) != len(matrix[0]):
        return False
    if any(v < 0 for v in x):
        return False
    for row, target in zip(matrix, b):
        if sum(c * v for c, v in zip(row, x)) != target:
            return False
    return True


def verify_farkas(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], y: Sequence[Fraction]
) -> bool:
    """Directly recheck a Farkas certificate: y.A >= 0 everywhere, y.b < 0.

    Any such y proves A x = b, x >= 0 unsolvable: it would force
    0 <= (y.A).x = y.b < 0.
    """
    matrix, b = _checked_system(rows, rhs)
    if len(y) != len(matrix):
        return False
    n = len(matrix[0]) if matrix else 0
    for j in range(n):
        if sum(y[i] * matrix[i][j] for i in range(len(matrix))) < 0:
            return False
    return sum(yi * bi for yi, bi in zip(y, b)) < 0
