"""Smith normal form of small integer matrices."""

from __future__ import annotations


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix, ncols=None):
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` and ``D`` in Smith form.

    ``matrix`` is a list of integer rows; ``ncols`` is needed only when it
    has no rows.  ``U`` and ``V`` are unimodular.  The diagonal entries of
    ``D`` are non-negative and each divides the next.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row/column t to the pivot
                cands = [(abs(a[i][t]), i, "r") for i in range(t + 1, m) if a[i][t]]
                cands += [(abs(a[t][j]), j, "c") for j in range(t + 1, n) if a[t][j]]
                _, k, kind = min(cands)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            # the pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(matrix, ncols=None):
    """Non-zero diagonal entries of the Smith form, in dividing order."""
    d, _, _ = smith_normal_form(matrix, ncols)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def cokernel(matrix, ncols):
    """``Z^ncols`` modulo the row span: ``(free rank, torsion coefficients > 1)``."""
    factors = invariant_factors(matrix, ncols)
    return ncols - len(factors), [f for f in factors if f > 1]
