"""Moment-based envelopes of the moment-generating function.

The envelope for a variable X bounded above by b, built from its first p
moments, is

    m(s) = E max(X^p, 0)/b^p * T_{p+1}(s*b) + sum_{j=0}^{p-1} s^j E(X^j)/j!

with T the exponential-series tail. Its key property: the s-derivative of
the envelope is log-convex for nonnegative variables, which makes the
squared ratio of its second to first derivative (the improvement factor fed
into the deviation bounds) a closed-form, nondecreasing function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateDistributionError, DomainError, OrderError
from .moments import MomentVector, restrict_order
from .special import taylor_remainder

# beyond this the exp(y) terms are factored out of the C ratio to avoid
# overflow; the two branches agree to machine precision at the seam
_FACTOR_OUT_Y = 30.0


def mgf_upper_bound(mv: MomentVector, s: float) -> float:
    """Envelope value at s >= 0 for a variable bounded above by b > 0.

    Exactly 1 at s = 0. A Bernoulli variable attains the envelope with
    p = 1, so the inequality is tight in general.
    """
    s = float(s)
    if s < 0.0:
        raise DomainError(f"the envelope is defined for s >= 0; got {s}")
    b = mv.support.upper
    if b <= 0.0:
        raise DomainError(f"upper support bound must be positive; got {b}")
    tail = (mv.positive_part_pth / b ** mv.p) * taylor_remainder(mv.p + 1, s * b)
    poly = 0.0
    term = 1.0  # s^j / j!
    for j in range(mv.p):
        poly += term * mv.moment(j)
        term *= s / (j + 1)
    return tail + poly


@dataclass(frozen=True)
class MgfBoundCurve:
    """Callable record: s >= 0 mapsto the order-p envelope for one variable."""

    p: int
    moments: MomentVector

    def __post_init__(self):
        if self.p != self.moments.p:
            object.__setattr__(self, "moments", restrict_order(self.moments, self.p))

    def __call__(self, s: float) -> float:
        return mgf_upper_bound(self.moments, s)


def mgf_bound_sequence(mv: MomentVector, s: float,
                       p_list: Sequence[int]) -> list[float]:
    """Envelope values at one point s for several orders p.

    For even p the value at p dominates the value at p+1; on nonnegative
    supports the whole sequence is nonincreasing, so more moments never
    hurt.
    """
    if max(p_list) > mv.p:
        raise OrderError(
            f"sequence needs moments to order {max(p_list)}; have {mv.p}")
    return [mgf_upper_bound(restrict_order(mv, p), s) for p in p_list]


def v_derivatives(mv: MomentVector, y: float, k: int) -> float:
    """The envelope at unit scale (y = s*b) and its first two y-derivatives.

    v(y)    = mu_p/b^p T_{p+1}(y) + sum_{j=0}^{p-1} y^j mu_j / (b^j j!)
    v^{(k)}(y) shifts the tail order and the moment indices by k. At zero:
    v = 1, v' = mu_1/b, v'' = mu_2/b^2.
    """
    if k not in (0, 1, 2):
        raise DomainError(f"only derivatives of order 0..2 exist; got {k}")
    y = float(y)
    if y < 0.0:
        raise DomainError(f"derivatives are evaluated on y >= 0; got {y}")
    if not mv.support.is_nonnegative:
        raise DomainError("the derivative family needs a nonnegative support")
    return _v_raw(y, mv.support.upper, mv.mu, k)


def _v_raw(y: float, b: float, mu: tuple[float, ...], k: int) -> float:
    p = len(mu)
    order = p + 1 - k
    # tail order 0 or 1 both mean the bare exponential
    tail = math.exp(y) if order <= 1 else taylor_remainder(order, y)
    total = (mu[p - 1] / b ** p) * tail
    term = 1.0  # y^j / j!
    for j in range(p - k):
        mom = 1.0 if j + k == 0 else mu[j + k - 1]
        total += term * mom / b ** (j + k)
        term *= y / (j + 1)
    return total


def c_factor(mv: MomentVector, y: float) -> float:
    """Closed-form squared derivative ratio (v''/v')^2 at y >= 0.

    Always in (0, 1], nondecreasing in y, and equal to
    (mu_2/(mu_1*b))^2 at y = 0. Values below 1 are exactly the improvement
    the deviation bound gains from knowing p moments.
    """
    if not mv.support.is_nonnegative:
        raise DomainError("the improvement factor needs a nonnegative support")
    return c_factor_from_moments(y, mv.support.upper, mv.mu)


def c_factor_from_moments(y: float, b: float, mu: Sequence[float]) -> float:
    """c_factor on raw inputs; b may differ from the vector's own bound."""
    y = float(y)
    if y < 0.0:
        raise DomainError(f"the improvement factor is defined for y >= 0; got {y}")
    if b <= 0.0:
        raise DomainError(f"scale b must be positive; got {b}")
    mu = tuple(float(m) for m in mu)
    p = len(mu)
    if p < 1:
        raise DomainError("at least the first moment is required")
    if mu[0] <= 0.0:
        raise DegenerateDistributionError(
            f"first moment must be positive; got {mu[0]}")
    if p == 1:
        return 1.0
    mu_p = mu[-1]
    if mu_p <= 0.0:
        raise DegenerateDistributionError(
            f"highest moment must be positive; got {mu_p}")
    if p == 2:
        den = mu[1] * math.exp(y) + b * mu[0] - mu[1]
        return (mu[1] * math.exp(y) / den) ** 2

    if y <= _FACTOR_OUT_Y:
        ey = math.exp(y)
        num = mu_p * ey
        den = mu_p * ey
        term = 1.0  # y^j / j!
        for j in range(p - 1):
            if j <= p - 3:
                num += term * (b ** (p - j - 2) * mu[j + 1] - mu_p)
            den += term * (b ** (p - j - 1) * mu[j] - mu_p)
            term *= y / (j + 1)
        return (num / den) ** 2

    # large y: divide both sides by exp(y); y^j/j! * exp(-y) is a Poisson
    # weight, evaluated in log space so huge y cannot overflow
    num = mu_p
    den = mu_p
    for j in range(p - 1):
        w = math.exp(j * math.log(y) - math.lgamma(j + 1) - y)
        if j <= p - 3:
            num += w * (b ** (p - j - 2) * mu[j + 1] - mu_p)
        den += w * (b ** (p - j - 1) * mu[j] - mu_p)
    return (num / den) ** 2


def c_factor_via_derivatives(mv: MomentVector, y: float) -> float:
    """(v''/v')^2 computed from the derivative family directly.

    Redundant with c_factor by construction; kept as an independent code
    path so tests can guard the closed form against transcription slips.
    """
    v1 = v_derivatives(mv, y, 1)
    v2 = v_derivatives(mv, y, 2)
    return (v2 / v1) ** 2


def i_measure(mv: MomentVector, c: float) -> float:
    """How informative the p-th moment is given the first p-1, at scale c.

    Defined for variables on [0, 1]; always >= 1, with 1 meaning the top
    moment adds nothing (e.g. any Bernoulli). Its square is the reciprocal
    of c_factor at matched arguments.
    """
    c = float(c)
    if c <= 0.0:
        raise DomainError(f"the scale c must be positive; got {c}")
    sup = mv.support
    if sup.lower is None or abs(sup.lower) > 1e-12 or abs(sup.upper - 1.0) > 1e-12:
        raise DomainError(
            f"i_measure needs support [0, 1]; got [{sup.lower}, {sup.upper}] "
            "(rescale first)")
    if mv.mu[-1] <= 0.0:
        raise DegenerateDistributionError(
            f"highest moment must be positive; got {mv.mu[-1]}")
    if mv.p == 1:
        return 1.0
    num = _v_raw(c, 1.0, mv.mu, 1)
    den = _v_raw(c, 1.0, mv.mu, 2)
    return num / den
