"""Lebesgue exponents, target domains and the continuity classifier.

The classifier answers: for which ``(p, q)`` does ``f -> Lf`` map
``L^p(0, inf)`` boundedly into ``L^q`` of the given domain, where
``Lf(x) = int_0^inf f(y) exp(-x y) dy``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

# Membership of the duality line 1/p + 1/q = 1 is decided with this slack.
DUALITY_TOL = 1e-12

ExponentLike = Union["LebesgueExponent", float, int, str, Fraction]


@dataclass(frozen=True)
class LebesgueExponent:
    """An exponent in ``[1, inf]``.

    Finite values are held as the exact rational equal to the input double,
    so conjugation is an exact involution. Infinity is a tag (``None``).
    """

    exact: Union[Fraction, None]

    def __post_init__(self):
        if self.exact is not None and self.exact < 1:
            raise ValueError(f"Lebesgue exponent must be >= 1, got {float(self.exact)!r}")

    @classmethod
    def of(cls, value: ExponentLike) -> "LebesgueExponent":
        if isinstance(value, LebesgueExponent):
            return value
        if isinstance(value, bool):
            raise TypeError("exponent must be numeric")
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("inf", "infinity", "+inf", "oo"):
                return cls(None)
            try:
                value = float(text)
            except ValueError:
                raise ValueError(f"not a Lebesgue exponent: {value!r}") from None
        if isinstance(value, Fraction):
            return cls(value)
        if not isinstance(value, (int, float)):
            raise TypeError(f"exponent must be numeric, got {type(value).__name__}")
        if math.isnan(value):
            raise ValueError("exponent is NaN")
        if math.isinf(value):
            if value < 0:
                raise ValueError("Lebesgue exponent must be >= 1, got -inf")
            return cls(None)
        return cls(Fraction(value))

    @classmethod
    def from_reciprocal(cls, r: Union[Fraction, float]) -> "LebesgueExponent":
        r = Fraction(r)
        if r == 0:
            return cls(None)
        return cls(1 / r)

    @property
    def is_infinite(self) -> bool:
        return self.exact is None

    @property
    def value(self) -> float:
        return math.inf if self.exact is None else float(self.exact)

    @property
    def reciprocal(self) -> float:
        return 0.0 if self.exact is None else float(1 / self.exact)

    @property
    def exact_reciprocal(self) -> Fraction:
        return Fraction(0) if self.exact is None else 1 / self.exact

    def conjugate(self) -> "LebesgueExponent":
        return conjugate(self)

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return "inf" if self.exact is None else repr(self.value)

    def __repr__(self) -> str:
        return f"LebesgueExponent({self})"


def conjugate(p: ExponentLike) -> LebesgueExponent:
    """Return ``p'`` with ``1/p + 1/p' = 1`` (``1 <-> inf``)."""
    p = LebesgueExponent.of(p)
    if p.exact is None:
        return LebesgueExponent(Fraction(1))
    if p.exact == 1:
        return LebesgueExponent(None)
    return LebesgueExponent(p.exact / (p.exact - 1))


# -- domains ----------------------------------------------------------------

@dataclass(frozen=True)
class FullHalfLine:
    @property
    def interval(self) -> Tuple[float, float]:
        return (0.0, math.inf)

    def __str__(self):
        return "full"


@dataclass(frozen=True)
class Bounded:
    a: float
    b: float

    def __post_init__(self):
        if not (0 <= self.a < self.b < math.inf):
            raise ValueError(f"bounded domain needs 0 <= a < b < inf, got a={self.a}, b={self.b}")

    @property
    def interval(self) -> Tuple[float, float]:
        return (float(self.a), float(self.b))

    def __str__(self):
        return f"bounded:{self.a!r},{self.b!r}"


@dataclass(frozen=True)
class Tail:
    s: float

    def __post_init__(self):
        if not (0 < self.s < math.inf):
            raise ValueError(f"tail domain needs 0 < s < inf, got s={self.s}")

    @property
    def interval(self) -> Tuple[float, float]:
        return (float(self.s), math.inf)

    def __str__(self):
        return f"tail:{self.s!r}"


DomainSpec = Union[FullHalfLine, Bounded, Tail]


def parse_domain(text: str) -> DomainSpec:
    """Parse ``full``, ``bounded:a,b`` or ``tail:s``."""
    kind, _, rest = text.strip().lower().partition(":")
    try:
        if kind == "full" and not rest:
            return FullHalfLine()
        if kind == "bounded":
            a, b = (float(v) for v in rest.split(","))
            return Bounded(a, b)
        if kind == "tail":
            return Tail(float(rest))
    except ValueError as exc:
        raise ValueError(f"bad domain {text!r}: {exc}") from None
    raise ValueError(f"bad domain {text!r}; expected full, bounded:a,b or tail:s")


# -- classifier -------------------------------------------------------------

class Reason(str, enum.Enum):
    HOLDER_LOCAL = "HolderLocal"
    TAIL_ESTIMATE = "TailEstimate"
    HARDY_DUALITY_LINE = "HardyDualityLine"
    SCALING_NECESSITY = "ScalingNecessity"
    COUNTEREXAMPLE_BLOWUP = "CounterexampleBlowup"
    TRIVIAL_CONSTANT = "TrivialConstant"
    BLOOM_FULL_LINE = "BloomFullLine"

    def __str__(self):
        return self.value


_CONTINUOUS_REASONS = {Reason.HOLDER_LOCAL, Reason.TAIL_ESTIMATE, Reason.HARDY_DUALITY_LINE}


@dataclass(frozen=True)
class ContinuityVerdict:
    continuous: bool
    reason: Reason

    def __post_init__(self):
        if self.continuous != (self.reason in _CONTINUOUS_REASONS):
            raise ValueError(f"reason {self.reason} inconsistent with continuous={self.continuous}")


def on_duality_line(p: ExponentLike, q: ExponentLike) -> bool:
    p, q = LebesgueExponent.of(p), LebesgueExponent.of(q)
    return abs(p.reciprocal + q.reciprocal - 1.0) < DUALITY_TOL


def classify(p: ExponentLike, q: ExponentLike, domain: DomainSpec) -> ContinuityVerdict:
    """Decide whether the Laplace operator maps ``L^p(R+)`` into ``L^q(domain)``."""
    p, q = LebesgueExponent.of(p), LebesgueExponent.of(q)
    s = p.reciprocal + q.reciprocal

    if abs(s - 1.0) < DUALITY_TOL:
        if p.is_infinite:
            # L{1}(x) = 1/x is not integrable at 0 nor at infinity.
            return ContinuityVerdict(False, Reason.TRIVIAL_CONSTANT)
        if p.value <= 2.0:
            return ContinuityVerdict(True, Reason.HARDY_DUALITY_LINE)
        if isinstance(domain, FullHalfLine):
            return ContinuityVerdict(False, Reason.BLOOM_FULL_LINE)
        return ContinuityVerdict(False, Reason.COUNTEREXAMPLE_BLOWUP)

    if isinstance(domain, Bounded):
        if s > 1.0:
            return ContinuityVerdict(True, Reason.HOLDER_LOCAL)
        return ContinuityVerdict(False, Reason.SCALING_NECESSITY)
    if isinstance(domain, Tail):
        if s < 1.0:
            return ContinuityVerdict(True, Reason.TAIL_ESTIMATE)
        return ContinuityVerdict(False, Reason.SCALING_NECESSITY)
    if isinstance(domain, FullHalfLine):
        return ContinuityVerdict(False, Reason.SCALING_NECESSITY)
    raise TypeError(f"unknown domain {domain!r}")


RegionPoint = Tuple[Fraction, Fraction, ContinuityVerdict]


def region_sweep(grid_step: float, domain: DomainSpec) -> List[RegionPoint]:
    """Classify every lattice point of ``[0, 1]^2`` in ``(1/p, 1/q)``.

    Points are returned row by row (``1/q`` outer, ``1/p`` inner), both
    coordinates as exact fractions; a zero coordinate stands for ``inf``.
    """
    if not (0 < grid_step <= 1):
        raise ValueError(f"grid_step must lie in (0, 1], got {grid_step}")
    n = round(1 / grid_step)
    if abs(n * grid_step - 1) > 1e-9:
        raise ValueError(f"grid_step {grid_step} does not divide 1 into whole cells")
    out = []
    for j in range(n + 1):
        for i in range(n + 1):
            rp, rq = Fraction(i, n), Fraction(j, n)
            verdict = classify(LebesgueExponent.from_reciprocal(rp),
                               LebesgueExponent.from_reciprocal(rq), domain)
            out.append((rp, rq, verdict))
    return out
