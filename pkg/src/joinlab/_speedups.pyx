# cython: boundscheck=False, wraparound=False
"""Compiled tableau row kernels.

Same contract as joinlab._pyops: in-place row operations over exact
rational objects (Fraction or gmpy2.mpq).  The arithmetic stays in the
objects themselves; compilation removes the interpreter overhead of the
inner loops, which dominate exact simplex runs.
"""

BACKEND = "cython"


def scale(list row, object factor, object zero):
    """row *= factor, skipping zeros."""
    cdef Py_ssize_t j, n = len(row)
    cdef object x
    for j in range(n):
        x = row[j]
        if x != zero:
            row[j] = x * factor


def axpy(list target, list source, object factor, object zero):
    """target -= factor * source, skipping zero source entries."""
    cdef Py_ssize_t j, n = len(source)
    cdef object s
    for j in range(n):
        s = source[j]
        if s != zero:
            target[j] = target[j] - factor * s


def pivot_all(list rows, Py_ssize_t piv, Py_ssize_t col, object zero, object one):
    """Normalise rows[piv] at column col and eliminate that column from
    every other row."""
    cdef list prow = <list>rows[piv]
    cdef object x = prow[col]
    cdef Py_ssize_t i, n = len(rows)
    cdef list row
    cdef object f
    if x != one:
        scale(prow, one / x, zero)
        prow[col] = one
    for i in range(n):
        if i == piv:
            continue
        row = <list>rows[i]
        f = row[col]
        if f != zero:
            axpy(row, prow, f, zero)
            row[col] = zero
