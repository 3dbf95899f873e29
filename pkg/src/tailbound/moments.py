"""Raw-moment records for bounded random variables.

Raw moments E(X^k) are the canonical representation because every bound
formula consumes them directly. Construction validates the feasibility
inequalities that any genuine moment sequence satisfies; vectors that fail
validation are rejected rather than clamped, since bounds computed from
infeasible moments are meaningless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegenerateDistributionError,
    DomainError,
    InfeasibleMomentsError,
    OrderError,
)

_REL_TOL = 1e-9
_TINY = 1e-300


@dataclass(frozen=True)
class Support:
    """Almost-sure range of a variable: an interval [lower, upper], or only
    an upper bound (lower is None) for variables unbounded below."""

    lower: Optional[float]
    upper: float

    def __post_init__(self):
        if not math.isfinite(self.upper):
            raise DomainError(f"upper support bound must be finite; got {self.upper}")
        if self.lower is not None:
            if not math.isfinite(self.lower):
                raise DomainError("lower support bound must be finite or None")
            if not self.lower < self.upper:
                raise DomainError(
                    f"support needs lower < upper; got [{self.lower}, {self.upper}]")

    @classmethod
    def interval(cls, lower: float, upper: float) -> "Support":
        return cls(float(lower), float(upper))

    @classmethod
    def upper_only(cls, upper: float) -> "Support":
        return cls(None, float(upper))

    @property
    def width(self) -> float:
        if self.lower is None:
            raise DomainError("support has no lower bound")
        return self.upper - self.lower

    @property
    def is_nonnegative(self) -> bool:
        return self.lower is not None and self.lower >= 0.0

    def contains(self, x: float, tol: float = 1e-12) -> bool:
        if x > self.upper + tol:
            return False
        return self.lower is None or x >= self.lower - tol


@dataclass(frozen=True)
class MomentVector:
    """First p raw moments of one variable on a stated support.

    mu[k-1] = E(X^k) for k = 1..p. positive_part_pth stores E(max(X^p, 0)),
    which the above-bounded ("Bennett-style") formulas need; on nonnegative
    supports it defaults to mu[p] since max(X^p, 0) = X^p there. samples,
    when present, are the raw data the vector was computed from and let
    shift/reflect recompute moments directly instead of re-expanding.
    """

    p: int
    mu: tuple[float, ...]
    support: Support
    positive_part_pth: Optional[float] = None
    samples: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 1:
            raise DomainError(f"order p must be a positive integer; got {self.p!r}")
        mu = tuple(float(m) for m in self.mu)
        object.__setattr__(self, "mu", mu)
        if len(mu) != self.p:
            raise OrderError(f"expected {self.p} moments; got {len(mu)}")
        if any(not math.isfinite(m) for m in mu):
            raise DomainError(f"moments must be finite; got {mu}")
        self._validate_chains()
        self._resolve_positive_part()

    def _validate_chains(self):
        if not self.support.is_nonnegative:
            # feasibility inequalities below presume X >= 0; variables that
            # extend below zero are only used through the above-bounded
            # formulas, which take the supplied values as upper bounds
            return
        b = self.support.upper
        prev = 1.0  # mu[0]
        for k, m in enumerate(self.mu, start=1):
            scale = max(abs(b * prev), abs(m), _TINY)
            if m < -_REL_TOL * scale:
                raise InfeasibleMomentsError(
                    f"mu[{k}] = {m} is negative for a variable on "
                    f"[{self.support.lower}, {b}]")
            if m - b * prev > _REL_TOL * scale:
                raise InfeasibleMomentsError(
                    f"support chain violated: mu[{k}] = {m} exceeds "
                    f"upper*mu[{k - 1}] = {b * prev}")
            prev = m
        for d in range(1, self.p - 1):
            lhs = self.mu[d - 1] * self.mu[d + 1]
            rhs = self.mu[d] ** 2
            if lhs - rhs < -_REL_TOL * max(abs(lhs), rhs, _TINY):
                raise InfeasibleMomentsError(
                    f"Cauchy-Schwarz chain violated: mu[{d}]*mu[{d + 2}] = "
                    f"{lhs} < mu[{d + 1}]^2 = {rhs}")

    def _resolve_positive_part(self):
        pos = self.positive_part_pth
        if pos is None:
            if not self.support.is_nonnegative:
                raise DomainError(
                    "positive_part_pth (a bound on E max(X^p, 0)) is required "
                    "for supports extending below zero")
            object.__setattr__(self, "positive_part_pth", self.mu[-1])
            return
        pos = float(pos)
        object.__setattr__(self, "positive_part_pth", pos)
        if pos < 0.0:
            raise InfeasibleMomentsError(
                f"E max(X^p, 0) cannot be negative; got {pos}")
        if self.support.is_nonnegative:
            scale = max(abs(self.mu[-1]), _TINY)
            if pos - self.mu[-1] < -_REL_TOL * scale:
                raise InfeasibleMomentsError(
                    f"on a nonnegative support E max(X^p, 0) = E X^p = "
                    f"{self.mu[-1]}, but positive_part_pth = {pos}")

    def moment(self, k: int) -> float:
        """E(X^k) for k = 0..p (k = 0 is 1 by convention)."""
        if k == 0:
            return 1.0
        if not 1 <= k <= self.p:
            raise OrderError(f"moment of order {k} not available (p = {self.p})")
        return self.mu[k - 1]

    @property
    def mean(self) -> float:
        return self.mu[0]

    def require_positive_mean(self):
        if self.mu[0] <= 0.0:
            raise DegenerateDistributionError(
                f"first moment must be positive; got {self.mu[0]}")


def restrict_order(mv: MomentVector, q: int) -> MomentVector:
    """The same variable described by only its first q moments."""
    if q > mv.p:
        raise OrderError(f"cannot raise order from {mv.p} to {q}")
    if q == mv.p:
        return mv
    if mv.samples is not None:
        pos = float(np.mean(np.maximum(mv.samples ** q, 0.0)))
    elif q % 2 == 0 or mv.support.is_nonnegative:
        # max(x^q, 0) = x^q for even q, and for any q once x >= 0
        pos = mv.mu[q - 1]
    else:
        raise OrderError(
            f"E max(X^{q}, 0) is not determined by the stored moments for a "
            "variable unbounded below; construct the vector at that order")
    return MomentVector(q, mv.mu[:q], mv.support, pos, samples=mv.samples)


def moments_from_samples(data, p: int, support: Support) -> MomentVector:
    """Empirical raw moments of data constrained to the given support."""
    arr = np.asarray(data, dtype=float).ravel()
    if arr.size == 0:
        raise DomainError("cannot compute moments of an empty sample")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise DomainError(f"datum at index {bad} is not finite")
    tol = 1e-12
    outside = arr > support.upper + tol
    if support.lower is not None:
        outside |= arr < support.lower - tol
    if np.any(outside):
        bad = int(np.flatnonzero(outside)[0])
        raise DomainError(
            f"datum at index {bad} ({arr[bad]}) lies outside the support "
            f"[{support.lower}, {support.upper}]")
    mu = tuple(float(np.mean(arr ** k)) for k in range(1, p + 1))
    pos = float(np.mean(np.maximum(arr ** p, 0.0)))
    return MomentVector(p, mu, support, pos, samples=arr)


def moments_uniform(p: int, lo: float, hi: float) -> MomentVector:
    """Exact raw moments of the continuous uniform law on [lo, hi]."""
    if not lo < hi:
        raise DomainError(f"uniform needs lo < hi; got [{lo}, {hi}]")
    mu = tuple(
        (hi ** (k + 1) - lo ** (k + 1)) / ((k + 1) * (hi - lo))
        for k in range(1, p + 1)
    )
    support = Support.interval(lo, hi)
    # E max(X^p, 0): equals E X^p unless p is odd and the support dips below 0
    if p % 2 == 0 or lo >= 0:
        pos = mu[-1]
    elif hi <= 0:
        pos = 0.0
    else:
        pos = hi ** (p + 1) / ((p + 1) * (hi - lo))
    return MomentVector(p, mu, support, pos)


def moments_bernoulli(p: int, q: float) -> MomentVector:
    """Raw moments of a {0,1} variable with success probability q."""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"success probability must be in [0, 1]; got {q}")
    return MomentVector(p, (q,) * p, Support.interval(0.0, 1.0))


def moments_beta(p: int, a: float, b: float) -> MomentVector:
    """Raw moments of the Beta(a, b) law on [0, 1]."""
    if a <= 0 or b <= 0:
        raise DomainError(f"beta shape parameters must be positive; got {a}, {b}")
    mu = []
    m = 1.0
    for k in range(p):
        m *= (a + k) / (a + b + k)
        mu.append(m)
    return MomentVector(p, tuple(mu), Support.interval(0.0, 1.0))


def moments_point(p: int, c: float, support: Support) -> MomentVector:
    """Raw moments of the point mass at c inside the given support."""
    if not support.contains(c):
        raise DomainError(
            f"point mass at {c} lies outside [{support.lower}, {support.upper}]")
    mu = tuple(c ** k for k in range(1, p + 1))
    return MomentVector(p, mu, support, max(c ** p, 0.0))


def shift_to_origin(mv: MomentVector) -> MomentVector:
    """Moments of (Y - a) on [0, b - a] for Y described by mv on [a, b].

    Sample-backed vectors recompute from the shifted data; analytic ones
    use the binomial re-expansion E(Y - a)^k = sum_j C(k, j) E(Y^j) (-a)^(k-j),
    which needs all moments up to k (always present here).
    """
    a = mv.support.lower
    if a is None:
        raise DomainError("shifting requires a bounded-below support")
    if a == 0.0:
        return mv
    width = mv.support.width
    if mv.samples is not None:
        return moments_from_samples(mv.samples - a, mv.p,
                                    Support.interval(0.0, width))
    mu = tuple(_binomial_shift(mv, -a, k) for k in range(1, mv.p + 1))
    return MomentVector(mv.p, mu, Support.interval(0.0, width), mu[-1])


def reflect_moments(mv: MomentVector) -> MomentVector:
    """Moments of (b - Y) on [0, b - a] for Y described by mv on [a, b]."""
    a = mv.support.lower
    if a is None:
        raise DomainError("reflection requires a bounded-below support")
    b = mv.support.upper
    width = mv.support.width
    if mv.samples is not None:
        return moments_from_samples(b - mv.samples, mv.p,
                                    Support.interval(0.0, width))
    mu = tuple(
        sum(
            math.comb(k, j) * b ** (k - j) * (-1.0) ** j * mv.moment(j)
            for j in range(k + 1)
        )
        for k in range(1, mv.p + 1)
    )
    # reflected values live in [0, width]; clip the float dust at zero
    mu = tuple(0.0 if -1e-15 < m < 0.0 else m for m in mu)
    return MomentVector(mv.p, mu, Support.interval(0.0, width), mu[-1])


def _binomial_shift(mv: MomentVector, shift: float, k: int) -> float:
    if k > mv.p:
        raise OrderError(
            f"binomial expansion to order {k} needs moments beyond p = {mv.p}")
    total = 0.0
    for j in range(k + 1):
        total += math.comb(k, j) * mv.moment(j) * shift ** (k - j)
    return 0.0 if -1e-15 < total < 0.0 else total


@dataclass(frozen=True)
class EnsembleSpec:
    """The per-variable moment vectors defining a sum of independent terms."""

    variables: tuple[MomentVector, ...]
    iid: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) < 1:
            raise DomainError("an ensemble needs at least one variable")

    @classmethod
    def iid_replicate(cls, mv: MomentVector, n: int) -> "EnsembleSpec":
        if n < 1:
            raise DomainError(f"need n >= 1 variables; got {n}")
        return cls((mv,) * n, iid=True)

    @property
    def n(self) -> int:
        return len(self.variables)


def read_sample_file(path) -> np.ndarray:
    """Load sample values: one number per line, or two-column CSV (id,value).

    A single non-numeric header line is tolerated. Values are decimal
    floating point; locale-dependent formats are not.
    """
    values: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "," in line:
                parts = [part.strip() for part in line.split(",")]
                if len(parts) != 2:
                    raise DomainError(
                        f"{path}:{lineno}: expected two CSV columns (id,value)")
                token = parts[1]
            else:
                token = line
            try:
                values.append(float(token))
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise DomainError(
                    f"{path}:{lineno}: cannot parse {token!r} as a number")
    if not values:
        raise DomainError(f"{path}: no sample values found")
    return np.asarray(values, dtype=float)
