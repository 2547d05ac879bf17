"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""

import math

BACKEND = "python"

_LN2 = 0.6931471805599453


def _weight(c1, c2, n):
    if n <= 0:
        return 0.0
    return (c1 if n % 2 == 1 else c2) * n


def _store(signs, logmag, i, x, e):
    if x > 0.0:
        signs[i] = 1
        logmag[i] = math.log(x) + e * _LN2
    elif x < 0.0:
        signs[i] = -1
        logmag[i] = math.log(-x) + e * _LN2
    else:
        signs[i] = 0
        logmag[i] = -math.inf


def _rescale(a, b):
    m = max(abs(a), abs(b))
    if m == 0.0:
        return a, b, 0
    k = math.frexp(m)[1]
    return math.ldexp(a, -k), math.ldexp(b, -k), k


def sturm_count(diag, off, x, pivmin):
    if hasattr(diag, "tolist"):
        diag, off = diag.tolist(), off.tolist()
    n = len(diag)
    if n == 0:
        return 0
    count = 0
    d = diag[0] - x
    if abs(d) < pivmin:
        d = pivmin
    if d < 0.0:
        count += 1
    for i in range(1, n):
        o = off[i - 1]
        d = (diag[i] - x) - o * o / d
        if abs(d) < pivmin:
            d = pivmin
        if d < 0.0:
            count += 1
    return count


def bisect_eigenvalues(diag, off, lo, hi, j0, j1, tol, maxit, pivmin, values, widths):
    diag = [float(v) for v in diag]
    off = [float(v) for v in off]
    values_out, widths_out = [], []
    for j in range(j0, j1):
        a, b = lo, hi
        it = 0
        while b - a > tol and it < maxit:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if sturm_count(diag, off, mid, pivmin) > j:
                b = mid
            else:
                a = mid
            it += 1
        values_out.append(0.5 * (a + b))
        widths_out.append(b - a)
    values[:] = values_out
    widths[:] = widths_out


def forward_recurrence(c1, c2, lam, u1, u2, signs_out, logmag_out):
    n_total = len(signs_out)
    signs, logmag = [0] * n_total, [0.0] * n_total
    a, b = float(u1), float(u2)
    _store(signs, logmag, 0, a, 0)
    if n_total > 1:
        _store(signs, logmag, 1, b, 0)
    a, b, e = _rescale(a, b)
    for m in range(2, n_total):
        c = -(_weight(c1, c2, m - 1) * a + (m - lam) * b) / _weight(c1, c2, m)
        _store(signs, logmag, m, c, e)
        a, b, k = _rescale(b, c)
        e += k
    signs_out[:] = signs
    logmag_out[:] = logmag


def backward_recurrence(c1, c2, lam, m_start, signs_out, logmag_out):
    n_keep = len(signs_out)
    signs, logmag = [0] * n_keep, [0.0] * n_keep
    a, b, e = 1.0, 0.0, 0
    if m_start <= n_keep:
        _store(signs, logmag, m_start - 1, a, 0)
    for m in range(m_start, 1, -1):
        c = -((m - lam) * a + _weight(c1, c2, m) * b) / _weight(c1, c2, m - 1)
        if m - 1 <= n_keep:
            _store(signs, logmag, m - 2, c, e)
        b = a
        a, b, k = _rescale(c, b)
        e += k
    signs_out[:] = signs
    logmag_out[:] = logmag
