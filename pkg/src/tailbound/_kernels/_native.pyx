# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels.

Algorithmically identical to _pyfallback; keep the two in sync. See the
fallback module for the commentary on the numerical choices.
"""

from libc.math cimport exp, log, log1p, sqrt, fabs, isfinite

cdef double _EPS = 2.220446049250313e-16
cdef double _EXP_MAX = 709.782712893384
cdef double _INF = float("inf")

cdef int _MAX_DEGREE = 64


cdef inline double _exp_sat(double x) nogil:
    if x > _EXP_MAX:
        return _INF
    return exp(x)


def taylor_remainder(int p, double x):
    cdef double term, total, partial
    cdef int j
    if fabs(x) <= 0.5 * p:
        term = 1.0
        for j in range(1, p):
            term *= x / j
        total = term
        j = p - 1
        while True:
            j += 1
            term *= x / j
            total += term
            if fabs(term) <= _EPS * fabs(total) or j > p + 400:
                return total
    partial = 0.0
    term = 1.0
    for j in range(p - 1):
        partial += term
        term *= x / (j + 1)
    return _exp_sat(x) - partial


def remainder_ratio(int p, double x):
    cdef double term, total
    cdef int j, m
    if fabs(x) < 1e-8:
        term = 1.0
        for j in range(1, p + 1):
            term /= j
        total = term
        m = 0
        while True:
            term *= x / (p + m + 1)
            total += term
            m += 1
            if fabs(term) <= _EPS * fabs(total) or m > 60:
                return total
    return taylor_remainder(p + 1, x) / x ** p


cdef double _w_halley(double x) nogil:
    cdef double w, l1, l2, ew, f, wp1, dw, tol
    cdef int i
    if x == 0.0:
        return 0.0
    if x < -0.3178794411714423:
        w = sqrt(5.43656365691809 * x + 2.0) - 1.0
    elif x < 3.0:
        w = log1p(x)
    else:
        l1 = log(x)
        l2 = log(l1)
        w = l1 - l2 + l2 / l1
    tol = 1e-14 * max(fabs(x), 1e-290)
    for i in range(50):
        ew = exp(w)
        f = w * ew - x
        if fabs(f) <= tol:
            break
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if fabs(dw) <= _EPS * (1.0 + fabs(w)):
            break
    return w


cdef double _w_log_newton(double u) nogil:
    cdef double w, f, dw
    cdef int i
    w = u - log(u)
    for i in range(50):
        f = w + log(w) - u
        dw = f * w / (w + 1.0)
        w -= dw
        if fabs(dw) <= _EPS * w:
            break
    return w


def lambert_w0(double x):
    if x > 1e300:
        return _w_log_newton(log(x))
    return _w_halley(x)


def lambert_w0_exp(double u):
    if u <= 690.0:
        return _w_halley(_exp_sat(u))
    return _w_log_newton(u)


cdef inline double _residual(double* a, int q, double x) nogil:
    cdef double poly = 0.0
    cdef int j
    for j in range(q, 0, -1):
        poly = (poly + a[j]) * x
    return a[0] - poly - _exp_sat(x)


cdef int _load_alpha(object alpha, double* a) except -1:
    cdef int q = len(alpha) - 1
    cdef int j
    if q >= _MAX_DEGREE:
        raise ValueError("polynomial degree too large for compiled kernel")
    for j in range(q + 1):
        a[j] = alpha[j]
    return q


def poly_exp_residual(alpha, double x):
    cdef double a[64]
    cdef int q = _load_alpha(alpha, a)
    return _residual(a, q, x)


cdef double _refine(double* a, int q, double lo, double hi, double flo,
                    double ftol) nogil:
    cdef double x, poly, dpoly, ex, f, scale, df, xn
    cdef int i, j
    x = 0.5 * (lo + hi)
    for i in range(200):
        poly = 0.0
        dpoly = 0.0
        for j in range(q, 0, -1):
            dpoly = dpoly * x + j * a[j]
            poly = (poly + a[j]) * x
        ex = _exp_sat(x)
        f = a[0] - poly - ex
        scale = 1.0 + (ex if isfinite(ex) else 1e308)
        if fabs(f) <= ftol * scale:
            return x
        if (f > 0.0) == (flo > 0.0):
            lo = x
        else:
            hi = x
        if hi - lo <= 4.0 * _EPS * (1.0 + fabs(x)):
            return x
        df = -dpoly - ex
        if df != 0.0 and isfinite(df):
            xn = x - f / df
        else:
            xn = 0.5 * (lo + hi)
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        x = xn
    return x


def poly_exp_scan(alpha, double x_max, double step, double ftol):
    cdef double a[64]
    cdef int q = _load_alpha(alpha, a)
    cdef double x_lo = 0.0
    cdef double x_hi, f_hi
    cdef double f_lo = _residual(a, q, 0.0)
    cdef long k = 1
    roots = []
    while x_lo < x_max:
        x_hi = k * step
        if x_hi > x_max:
            x_hi = x_max
        f_hi = _residual(a, q, x_hi)
        if f_hi == 0.0:
            roots.append(x_hi)
        elif f_lo != 0.0 and (f_lo > 0.0) != (f_hi > 0.0):
            roots.append(_refine(a, q, x_lo, x_hi, f_lo, ftol))
        x_lo = x_hi
        f_lo = f_hi
        k += 1
    return roots
