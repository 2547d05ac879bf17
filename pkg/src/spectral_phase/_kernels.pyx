# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must stay behaviourally identical to ``_kernels_py``."""

from libc.math cimport log, fabs, frexp, ldexp, INFINITY

cdef double LN2 = 0.6931471805599453

BACKEND = "cython"


cdef inline double _weight(double c1, double c2, long n) noexcept nogil:
    if n <= 0:
        return 0.0
    if n % 2 == 1:
        return c1 * n
    return c2 * n


cdef inline void _store(signed char[:] signs, double[:] logmag, Py_ssize_t i,
                        double x, long e) noexcept nogil:
    if x > 0.0:
        signs[i] = 1
        logmag[i] = log(x) + e * LN2
    elif x < 0.0:
        signs[i] = -1
        logmag[i] = log(-x) + e * LN2
    else:
        signs[i] = 0
        logmag[i] = -INFINITY


cdef inline long _rescale(double *a, double *b) noexcept nogil:
    cdef double m = fabs(a[0])
    cdef int k
    if fabs(b[0]) > m:
        m = fabs(b[0])
    if m == 0.0:
        return 0
    frexp(m, &k)
    a[0] = ldexp(a[0], -k)
    b[0] = ldexp(b[0], -k)
    return k


cdef inline long _sturm(const double[:] diag, const double[:] off, double x,
                        double pivmin) noexcept nogil:
    cdef Py_ssize_t i, n = diag.shape[0]
    cdef long count = 0
    cdef double d
    if n == 0:
        return 0
    d = diag[0] - x
    if fabs(d) < pivmin:
        d = pivmin
    if d < 0.0:
        count += 1
    for i in range(1, n):
        d = (diag[i] - x) - off[i - 1] * off[i - 1] / d
        if fabs(d) < pivmin:
            d = pivmin
        if d < 0.0:
            count += 1
    return count


def sturm_count(const double[:] diag, const double[:] off, double x, double pivmin):
    cdef long c
    with nogil:
        c = _sturm(diag, off, x, pivmin)
    return c


def bisect_eigenvalues(const double[:] diag, const double[:] off, double lo, double hi,
                       long j0, long j1, double tol, long maxit, double pivmin,
                       double[:] values, double[:] widths):
    cdef long j, it
    cdef double a, b, mid
    with nogil:
        for j in range(j0, j1):
            a = lo
            b = hi
            it = 0
            while b - a > tol and it < maxit:
                mid = 0.5 * (a + b)
                if mid <= a or mid >= b:
                    break
                if _sturm(diag, off, mid, pivmin) > j:
                    b = mid
                else:
                    a = mid
                it += 1
            values[j - j0] = 0.5 * (a + b)
            widths[j - j0] = b - a


def forward_recurrence(double c1, double c2, double lam, double u1, double u2,
                       signed char[:] signs, double[:] logmag):
    cdef Py_ssize_t n_total = signs.shape[0]
    cdef long m, e = 0
    cdef double a = u1, b = u2, c
    with nogil:
        _store(signs, logmag, 0, a, 0)
        if n_total > 1:
            _store(signs, logmag, 1, b, 0)
        e = _rescale(&a, &b)
        for m in range(2, n_total):
            c = -(_weight(c1, c2, m - 1) * a + (m - lam) * b) / _weight(c1, c2, m)
            _store(signs, logmag, m, c, e)
            a = b
            b = c
            e += _rescale(&a, &b)


def backward_recurrence(double c1, double c2, double lam, long m_start,
                        signed char[:] signs, double[:] logmag):
    cdef Py_ssize_t n_keep = signs.shape[0]
    cdef long m, e = 0
    cdef double a = 1.0, b = 0.0, c
    with nogil:
        if m_start <= n_keep:
            _store(signs, logmag, m_start - 1, a, 0)
        for m in range(m_start, 1, -1):
            c = -((m - lam) * a + _weight(c1, c2, m) * b) / _weight(c1, c2, m - 1)
            if m - 1 <= n_keep:
                _store(signs, logmag, m - 2, c, e)
            b = a
            a = c
            e += _rescale(&a, &b)
