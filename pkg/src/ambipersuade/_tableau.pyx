# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pivot kernel for the integer-preserving simplex tableau.

Same contract as ``_tableau_py.pivot``. Rows whose entries (and the pivot
row) fit in a signed 64-bit integer are updated in C with overflow-checked
arithmetic; any row that would overflow is redone with Python integers.
"""

from libc.stdlib cimport free, malloc

cdef extern from "Python.h":
    long long PyLong_AsLongLongAndOverflow(object o, int *overflow) except? -1

cdef extern from *:
    """
    static inline int ap_mul_ovf(long long a, long long b, long long *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    static inline int ap_sub_ovf(long long a, long long b, long long *out) {
        return __builtin_sub_overflow(a, b, out);
    }
    """
    int ap_mul_ovf(long long a, long long b, long long *out) nogil
    int ap_sub_ovf(long long a, long long b, long long *out) nogil


cdef inline bint _as_ll(object o, long long *out):
    cdef int ovf = 0
    cdef long long v = PyLong_AsLongLongAndOverflow(o, &ovf)
    if ovf:
        return False
    out[0] = v
    return True


def pivot(list rows, Py_ssize_t r, Py_ssize_t c, object d):
    """Pivot ``rows`` in place on entry ``(r, c)``; return the new denominator."""
    cdef list prow = rows[r]
    cdef list row
    cdef Py_ssize_t n = len(prow)
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t i, k
    cdef long long pl = 0, dl = 0, fl = 0, a = 0, b = 0
    cdef bint prow_small, small_pd, fast
    cdef long long *pc
    cdef long long *rc

    p = prow[c]
    if p == 0:
        raise ZeroDivisionError("pivot on a zero entry")
    if p < 0:
        prow = [-v for v in prow]
        rows[r] = prow
        p = -p

    pc = <long long *> malloc(n * sizeof(long long))
    rc = <long long *> malloc(n * sizeof(long long))
    if pc == NULL or rc == NULL:
        free(pc)
        free(rc)
        raise MemoryError()
    try:
        prow_small = True
        for k in range(n):
            if not _as_ll(prow[k], &pc[k]):
                prow_small = False
                break
        small_pd = _as_ll(p, &pl) and _as_ll(d, &dl)

        for i in range(m):
            if i == r:
                continue
            row = <list> rows[i]
            f = row[c]
            if f == 0 and p == d:
                continue
            fast = prow_small and small_pd and _as_ll(f, &fl)
            if fast:
                for k in range(n):
                    if not _as_ll(row[k], &a):
                        fast = False
                        break
                    if ap_mul_ovf(a, pl, &a) or ap_mul_ovf(fl, pc[k], &b) or ap_sub_ovf(a, b, &a):
                        fast = False
                        break
                    rc[k] = a / dl
            if fast:
                rows[i] = [rc[k] for k in range(n)]
            elif f == 0:
                rows[i] = [v * p // d for v in row]
            else:
                rows[i] = [(v * p - f * w) // d for v, w in zip(row, prow)]
    finally:
        free(pc)
        free(rc)
    return p
