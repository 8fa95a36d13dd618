"""Exact-arithmetic linear programming over the no-signaling polytope.

A small dense two-phase simplex on ``fractions.Fraction`` entries with
Bland's anti-cycling rule: deterministic, immune to floating-point pivot
noise, and exact on the rational data this package produces.  Problem sizes
here are tiny (at most ~64 variables), so clarity wins over speed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .errors import LPError, ValidationError

MAX_PIVOTS = 50_000


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    inv = 1 / piv
    tableau[row] = [v * inv for v in tableau[row]]
    prow = tableau[row]
    for r, trow in enumerate(tableau):
        if r != row and trow[col] != 0:
            factor = trow[col]
            tableau[r] = [v - factor * p for v, p in zip(trow, prow)]
    basis[row] = col


def _run_simplex(tableau, basis, n_cols, allowed):
    """Maximize the objective stored in the last tableau row (Bland's rule)."""
    obj = tableau[-1]
    for _ in range(MAX_PIVOTS):
        col = next((j for j in range(n_cols) if allowed[j] and obj[j] > 0), None)
        if col is None:
            return
        best_row, best_ratio = None, None
        for r in range(len(tableau) - 1):
            a = tableau[r][col]
            if a > 0:
                ratio = tableau[r][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[best_row])
                ):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            raise LPError("unbounded LP; the polytope should be compact")
        _pivot(tableau, basis, best_row, col)
        obj = tableau[-1]
    raise LPError("simplex exceeded the pivot budget")


def simplex_max(c, A, b) -> tuple[Fraction, list[Fraction]]:
    """Maximize c.x subject to A x = b, x >= 0 (all entries Fractions).

    Two-phase: artificial variables first (their zero-level leftovers mark
    redundant rows and are simply barred from re-entering), then the real
    objective.  Returns (optimal value, an optimal vertex).
    """
    m = len(A)
    n = len(c)
    A = [list(row) for row in A]
    b = list(b)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    width = n + m + 1  # structural | artificial | rhs
    tableau = []
    for i in range(m):
        row = A[i] + [Fraction(0)] * m + [b[i]]
        row[n + i] = Fraction(1)
        tableau.append(row)
    basis = list(range(n, n + m))

    # phase 1: maximize -(sum of artificials); reduced costs for the
    # all-artificial basis are the column sums, with value -(sum of b)
    obj = [Fraction(0)] * width
    for row in tableau:
        for j in range(width):
            obj[j] += row[j]
    for i in range(m):
        obj[n + i] = Fraction(0)
    tableau.append(obj)
    _run_simplex(tableau, basis, n + m, [True] * (n + m))
    if tableau[-1][-1] != 0:
        raise LPError("infeasible LP; the polytope should contain the uniform box")
    tableau.pop()

    # drive leftover zero-level artificials out; all-zero rows are redundant
    for r in range(len(basis) - 1, -1, -1):
        if basis[r] >= n:
            col = next((j for j in range(n) if tableau[r][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, r, col)
            else:
                tableau.pop(r)
                basis.pop(r)

    # phase 2: the real objective, artificials barred from entering
    obj = [Fraction(0)] * width
    for j in range(n):
        obj[j] = Fraction(c[j])
    for r, bj in enumerate(basis):
        if bj < n and obj[bj] != 0:
            factor = obj[bj]
            obj = [v - factor * t for v, t in zip(obj, tableau[r])]
    tableau.append(obj)
    _run_simplex(tableau, basis, n + m, [True] * n + [False] * m)

    x = [Fraction(0)] * n
    for r, bj in enumerate(basis):
        if bj < n:
            x[bj] = tableau[r][-1]
    value = -tableau[-1][-1]
    return value, x


def _var_index(n_parties, a, x):
    """Flat index of P(a|x): settings-major, outcomes minor, party order."""
    idx = 0
    for xi in x:
        idx = idx * 2 + xi
    for ai in a:
        idx = idx * 2 + ai
    return idx


def ns_polytope_constraints(n_parties: int):
    """Equality constraints (A, b) of the no-signaling polytope, 2 settings,
    2 outcomes: per-setting normalization plus marginal consistency for every
    party, every pair of that party's settings, and every context of the
    others' settings and outcomes."""
    n = n_parties
    n_vars = 4**n
    A: list[list[Fraction]] = []
    b: list[Fraction] = []

    for x in itertools.product(range(2), repeat=n):
        row = [Fraction(0)] * n_vars
        for a in itertools.product(range(2), repeat=n):
            row[_var_index(n, a, x)] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))

    for j in range(n):
        for x_rest in itertools.product(range(2), repeat=n - 1):
            for a_rest in itertools.product(range(2), repeat=n - 1):
                row = [Fraction(0)] * n_vars
                for xj, sign in ((0, Fraction(1)), (1, Fraction(-1))):
                    x = list(x_rest[:j]) + [xj] + list(x_rest[j:])
                    for aj in range(2):
                        a = list(a_rest[:j]) + [aj] + list(a_rest[j:])
                        row[_var_index(n, a, x)] += sign
                A.append(row)
                b.append(Fraction(0))
    return A, b


def ns_maximize(functional) -> tuple[Fraction, np.ndarray]:
    """Maximum of a Bell functional over the no-signaling polytope.

    Restricted to at most 3 parties with 2 settings and 2 outcomes (64
    variables); larger scenarios are rejected.
    """
    n = functional.n_parties
    if n > 3 or functional.n_settings != 2:
        raise ValidationError(
            "no-signaling LP supports at most 3 parties with 2 settings each"
        )
    exact = functional.exact_pcoef()
    c = [Fraction(0)] * (4**n)
    for x in itertools.product(range(2), repeat=n):
        for a in itertools.product(range(2), repeat=n):
            c[_var_index(n, a, x)] = Fraction(exact[x + a])
    A, b = ns_polytope_constraints(n)
    value, xopt = simplex_max(c, A, b)

    table = np.zeros((2,) * n + (2,) * n)
    for x in itertools.product(range(2), repeat=n):
        for a in itertools.product(range(2), repeat=n):
            table[x + a] = float(xopt[_var_index(n, a, x)])
    return value, table
