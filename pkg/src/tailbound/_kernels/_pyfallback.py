"""Pure-Python scalar kernels.

Fallback backend used when the compiled extension (_native) is unavailable.
The two implementations must stay algorithmically identical; the parity test
in tests/test_kernel_backends.py compares them point by point.

No argument validation happens here: the wrappers in tailbound.special own
the domain checks.
"""

import math

_EPS = 2.220446049250313e-16
_EXP_MAX = 709.782712893384


def _exp(x):
    # math.exp raises OverflowError instead of returning inf; saturate.
    if x > _EXP_MAX:
        return math.inf
    return math.exp(x)


def taylor_remainder(p, x):
    """exp(x) minus its Taylor polynomial of degree p-2 at 0.

    For |x| <= p/2 the tail series sum_{j>=p-1} x^j/j! is summed directly,
    which avoids the cancellation of exp(x) against the polynomial; the
    terms then shrink by at least a factor 2 per step so the alternating
    case is stable too.
    """
    if abs(x) <= 0.5 * p:
        # first tail term x^(p-1)/(p-1)!, built incrementally to dodge
        # overflow of x**(p-1) and factorial separately
        term = 1.0
        for j in range(1, p):
            term *= x / j
        total = term
        j = p - 1
        while True:
            j += 1
            term *= x / j
            total += term
            if abs(term) <= _EPS * abs(total) or j > p + 400:
                return total
    partial = 0.0
    term = 1.0
    for j in range(p - 1):
        partial += term
        term *= x / (j + 1)
    return _exp(x) - partial


def remainder_ratio(p, x):
    """taylor_remainder(p+1, x) / x**p with the x=0 singularity removed.

    Near zero the series sum_m x^m/(p+m)! is used; its value at 0 is 1/p!.
    """
    if abs(x) < 1e-8:
        term = 1.0
        for j in range(1, p + 1):
            term /= j
        total = term
        m = 0
        while True:
            term *= x / (p + m + 1)
            total += term
            m += 1
            if abs(term) <= _EPS * abs(total) or m > 60:
                return total
    return taylor_remainder(p + 1, x) / x ** p


def lambert_w0(x):
    """Principal branch of the Lambert W function, x >= -1/e.

    Series guess near the branch point, log-based guesses elsewhere, then
    Halley iterations until the defining residual w*exp(w)-x converges.
    """
    if x == 0.0:
        return 0.0
    if x > 1e300:
        # w*exp(w) would overflow during iteration; solve in log form
        return _w_log_newton(math.log(x))
    if x < -0.3178794411714423:
        # branch-point expansion: w ~ -1 + sqrt(2(e*x+1))
        w = math.sqrt(5.43656365691809 * x + 2.0) - 1.0
    elif x < 3.0:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    tol = 1e-14 * max(abs(x), 1e-290)
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= tol:
            break
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= _EPS * (1.0 + abs(w)):
            break
    return w


def _w_log_newton(u):
    # unique w > 0 with w + log(w) = u; only called for large u
    w = u - math.log(u)
    for _ in range(50):
        f = w + math.log(w) - u
        dw = f * w / (w + 1.0)
        w -= dw
        if abs(dw) <= _EPS * w:
            break
    return w


def lambert_w0_exp(u):
    """W(exp(u)) without forming exp(u) when it would overflow."""
    if u <= 690.0:
        return lambert_w0(_exp(u))
    return _w_log_newton(u)


def poly_exp_residual(alpha, x):
    """alpha[0] - sum_j alpha[j]*x^j - exp(x) for j = 1..len(alpha)-1."""
    q = len(alpha) - 1
    poly = 0.0
    for j in range(q, 0, -1):
        poly = (poly + alpha[j]) * x
    return alpha[0] - poly - _exp(x)


def _refine_root(alpha, lo, hi, flo, ftol):
    # safeguarded Newton within a sign-change bracket; flo = f(lo)
    q = len(alpha) - 1
    x = 0.5 * (lo + hi)
    for _ in range(200):
        poly = 0.0
        dpoly = 0.0
        for j in range(q, 0, -1):
            dpoly = dpoly * x + j * alpha[j]
            poly = (poly + alpha[j]) * x
        ex = _exp(x)
        f = alpha[0] - poly - ex
        scale = 1.0 + (ex if math.isfinite(ex) else 1e308)
        if abs(f) <= ftol * scale:
            return x
        if (f > 0.0) == (flo > 0.0):
            lo = x
        else:
            hi = x
        if hi - lo <= 4.0 * _EPS * (1.0 + abs(x)):
            return x
        df = -dpoly - ex
        xn = x - f / df if df != 0.0 and math.isfinite(df) else 0.5 * (lo + hi)
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        x = xn
    return x


def poly_exp_scan(alpha, x_max, step, ftol):
    """All sign-change roots of the poly-exp residual on (0, x_max].

    Walks a uniform grid and refines every bracket; exact zeros on grid
    points are kept as-is. Returns roots in ascending order.
    """
    roots = []
    x_lo = 0.0
    f_lo = poly_exp_residual(alpha, 0.0)
    k = 1
    while x_lo < x_max:
        x_hi = k * step
        if x_hi > x_max:
            x_hi = x_max
        f_hi = poly_exp_residual(alpha, x_hi)
        if f_hi == 0.0:
            roots.append(x_hi)
        elif f_lo != 0.0 and (f_lo > 0.0) != (f_hi > 0.0):
            roots.append(_refine_root(alpha, x_lo, x_hi, f_lo, ftol))
        x_lo = x_hi
        f_lo = f_hi
        k += 1
    return roots
