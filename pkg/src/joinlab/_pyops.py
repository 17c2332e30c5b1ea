"""Pure-Python fallback for the tableau row kernels.

Semantics must match joinlab._speedups exactly; both operate in place on
lists of exact rationals (Fraction or gmpy2.mpq) and skip zero entries, so
results are identical whichever backend is active.
"""

BACKEND = "python"


def scale(row, factor, zero):
    """row *= factor, skipping zeros."""
    for j, x in enumerate(row):
        if x != zero:
            row[j] = x * factor


def axpy(target, source, factor, zero):
    """target -= factor * source, skipping zero source entries."""
    for j, s in enumerate(source):
        if s != zero:
            target[j] = target[j] - factor * s


def pivot_all(rows, piv, col, zero, one):
    """Normalise rows[piv] at column col and eliminate that column from
    every other row."""
    prow = rows[piv]
    x = prow[col]
    if x != one:
        scale(prow, one / x, zero)
        prow[col] = one
    for i, row in enumerate(rows):
        if i == piv:
            continue
        f = row[col]
        if f != zero:
            axpy(row, prow, f, zero)
            row[col] = zero
