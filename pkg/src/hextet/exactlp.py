"""Exact rational linear feasibility with Farkas certificates.

Decides systems  A y >= 1  (y free) by Gale's alternative: exactly one of

    (P)  A y >= 1                         has a solution, or
    (D)  lam >= 0, A^T lam = 0, sum(lam) = 1   has a solution.

(D) is decided by a Phase-I simplex over Fractions with Bland's rule, so
the answer is exact.  A solution of (D) is a Farkas certificate of the
infeasibility of (P): the nonnegative combination lam of the rows of A
cancels to zero while the same combination of the right-hand sides is
positive.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def farkas_certificate(rows: list[dict[int, Fraction]], n_cols: int):
    """Solve (D) for the system {row . y >= 1}.

    `rows` give the sparse coefficients of A.  Returns a list of Fractions
    (one multiplier per row, summing to 1) when A y >= 1 is infeasible,
    or None when it is feasible.
    """
    m = len(rows)
    if m == 0:
        return None
    # Tableau for: A^T lam = 0 (n_cols rows), 1^T lam = 1, lam >= 0,
    # with one artificial per row; minimize the artificial sum.
    n_rows = n_cols + 1
    cols = m + n_rows  # lam variables then artificials
    tab = [[ZERO] * (cols + 1) for _ in range(n_rows)]
    for j, row in enumerate(rows):
        for c, coef in row.items():
            tab[c][j] = Fraction(coef)
    for j in range(m):
        tab[n_cols][j] = ONE
    tab[n_cols][cols] = ONE  # rhs of the normalization row
    # Make all rhs nonnegative (they already are: 0...0, 1).
    basis = []
    for i in range(n_rows):
        tab[i][m + i] = ONE
        basis.append(m + i)

    # objective: minimize sum of artificials = sum of rows (since each row
    # currently equals its artificial plus lam-terms)
    obj = [ZERO] * (cols + 1)
    for i in range(n_rows):
        for c in range(cols + 1):
            obj[c] += tab[i][c]

    def pivot(pr: int, pc: int):
        piv = tab[pr][pc]
        inv = ONE / piv
        row = tab[pr]
        for c in range(cols + 1):
            if row[c] != 0:
                row[c] *= inv
        for i in range(n_rows):
            if i == pr:
                continue
            f = tab[i][pc]
            if f != 0:
                ri = tab[i]
                for c in range(cols + 1):
                    if row[c] != 0:
                        ri[c] -= f * row[c]
        f = obj[pc]
        if f != 0:
            for c in range(cols + 1):
                if row[c] != 0:
                    obj[c] -= f * row[c]
        basis[pr] = pc

    while True:
        # Bland: entering = smallest index with positive reduced cost
        # (maximizing -sum(artificials); artificial columns never re-enter).
        pc = -1
        for c in range(m):
            if obj[c] > 0:
                pc = c
                break
        if pc == -1:
            break
        pr = -1
        best = None
        for i in range(n_rows):
            if tab[i][pc] > 0:
                ratio = tab[i][cols] / tab[i][pc]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best = ratio
                    pr = i
        if pr == -1:
            # objective unbounded above cannot happen for a Phase-I problem
            raise ArithmeticError("phase-I simplex lost boundedness")
        pivot(pr, pc)

    if obj[cols] != 0:
        return None  # artificials cannot vanish: (D) infeasible, (P) feasible
    lam = [ZERO] * m
    for i, b in enumerate(basis):
        if b < m:
            lam[b] = tab[i][cols]
    return lam


def verify_farkas(rows: list[dict[int, Fraction]], lam: list[Fraction], n_cols: int) -> bool:
    """Exact recheck: lam >= 0, lam^T A = 0, lam^T 1 > 0."""
    if len(lam) != len(rows) or any(l < 0 for l in lam):
        return False
    if sum(lam, ZERO) <= 0:
        return False
    acc = [ZERO] * n_cols
    for coef, row in zip(lam, rows):
        if coef == 0:
            continue
        for c, val in row.items():
            acc[c] += coef * val
    return all(v == 0 for v in acc)
