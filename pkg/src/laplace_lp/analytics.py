"""Explicit estimates: the pointwise Hoelder bound, the local and tail
constants, dilation identities and the two family lower bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .core import Bounded, ExponentLike, FullHalfLine, LebesgueExponent, Tail, conjugate
from .errors import DomainError
from .quadrature import (
    DEFAULT_TOL,
    Exponential,
    TestFunction,
    laplace_lq_norm,
    laplace_values,
    lp_norm,
)
from .testbed import upper_incomplete_gamma

# Slack used when comparing a computed norm with a proven lower bound.
LOWER_BOUND_SLACK = 1e-6


def _conj_powers(p: LebesgueExponent, x: float):
    """``(p'**(1/p'), x**(1/p'))`` with the ``p' = inf`` limits equal to 1."""
    pc = conjugate(p)
    if pc.is_infinite:
        return 1.0, 1.0
    r = pc.reciprocal
    return pc.value ** r, x ** r


def holder_pointwise_bound(p: ExponentLike, norm_f: float, x: float) -> float:
    """Upper bound for ``|Lf(x)|`` given only ``||f||_p``."""
    p = LebesgueExponent.of(p)
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x!r}")
    if not norm_f >= 0:
        raise DomainError(f"norm must be >= 0, got {norm_f!r}")
    c, xp = _conj_powers(p, x)
    return norm_f / (c * xp)


def holder_margin(f: TestFunction, p: ExponentLike, xs: Sequence[float],
                  tol: float = DEFAULT_TOL) -> float:
    """Largest ``Lf(x) / bound(x)`` over ``xs``; at most 1 when the bound holds."""
    xs = np.asarray(xs, dtype=float)
    norm = lp_norm(f, FullHalfLine(), p, tol)
    values = laplace_values(f, xs, tol).values
    bounds = np.array([holder_pointwise_bound(p, norm, x) for x in xs])
    return float(np.max(np.abs(values) / bounds))


def check_holder(f: TestFunction, p: ExponentLike, xs: Sequence[float],
                 tol: float = 1e-8) -> bool:
    return holder_margin(f, p, xs) <= 1.0 + tol


def scale(f: TestFunction, lam: float) -> TestFunction:
    """The dilation ``y -> f(lam * y)``."""
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be finite and > 0, got {lam!r}")
    if lam == 1:
        return f
    s0, s1 = f.support
    fn = f.fn
    decay = f.decay
    if isinstance(decay, Exponential):
        decay = Exponential(decay.rate * lam)
    return replace(f, fn=lambda y: fn(lam * y), support=(s0 / lam, s1 / lam),
                   decay=decay, label=f"{f.label}({lam:g}y)")


@dataclass(frozen=True)
class ScalingReport:
    lam: float
    max_identity_error: float
    norm_ratio_error: float
    lq_lower_bound_satisfied: bool


def scaling_grid(lo: float = 1e-3, hi: float = 1e3, per_decade: int = 33) -> np.ndarray:
    decades = math.log10(hi / lo)
    return np.logspace(math.log10(lo), math.log10(hi), int(round(decades * per_decade)) + 1)


def check_scaling_identity(f: TestFunction, lam: float, xs: Optional[Sequence[float]] = None,
                           tol: float = DEFAULT_TOL, p: ExponentLike = 2,
                           q: ExponentLike = 2) -> ScalingReport:
    """Compare ``f`` and its dilation by ``lam``.

    The transform identity ``L[f(lam .)](x) = L[f](x/lam) / lam`` is checked on
    ``xs``; the ``L^p`` norm law on the half line; and the ``L^q`` inequality
    ``||L f_lam|| >= lam**(1/q - 1) ||L f||`` on ``[0, 1]`` (``lam < 1``) or
    ``[1, inf)`` (``lam > 1``).
    """
    p, q = LebesgueExponent.of(p), LebesgueExponent.of(q)
    g = scale(f, lam)
    xs = scaling_grid() if xs is None else np.asarray(xs, dtype=float)
    lhs = laplace_values(g, xs, tol).values
    rhs = laplace_values(f, xs / lam, tol).values / lam
    denom = np.maximum(np.abs(rhs), np.finfo(float).tiny)
    identity_err = float(np.max(np.abs(lhs - rhs) / denom))

    nf = lp_norm(f, FullHalfLine(), p, tol)
    ng = lp_norm(g, FullHalfLine(), p, tol)
    norm_err = abs(ng * lam ** p.reciprocal / nf - 1.0)

    domain = Bounded(0.0, 1.0) if lam <= 1 else Tail(1.0)
    big = laplace_lq_norm(g, domain, q, tol)
    small = laplace_lq_norm(f, domain, q, tol)
    ok = big >= lam ** (q.reciprocal - 1.0) * small * (1.0 - LOWER_BOUND_SLACK)
    return ScalingReport(float(lam), identity_err, float(norm_err), bool(ok))


def _family_exponent(p: ExponentLike):
    p = LebesgueExponent.of(p)
    if p.is_infinite or not p.value > 1:
        raise DomainError(f"p must lie in (1, inf), got {p}")
    return p.value, conjugate(p).value


def thm1_lower_bound(p: ExponentLike, epsilon: float) -> float:
    """Lower bound for ``||Lf||`` on ``[0, 1]`` (conjugate exponent), ``f`` the thm1 family."""
    pv, q = _family_exponent(p)
    if not epsilon > 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon!r}")
    b = (1.0 + epsilon) / pv
    if b >= 1:
        raise DomainError(f"need (1+eps)/p < 1, got {b!r}")
    return (pv - 1.0) ** (1.0 / q) * epsilon ** (-1.0 / q) * upper_incomplete_gamma(1.0 - b, 1.0)


def thm2_lower_bound(p: ExponentLike, epsilon: float) -> float:
    """Lower bound for ``||Lf||`` on ``[1, inf)`` (conjugate exponent), ``f`` the thm2 family."""
    pv, q = _family_exponent(p)
    if not (0 < epsilon < 1.0 / pv):
        raise DomainError(f"epsilon must lie in (0, 1/p) = (0, {1 / pv:.17g}), got {epsilon!r}")
    k = q * ((1.0 - epsilon * pv) / pv - 1.0)
    if k >= -1:
        raise DomainError(f"x-integral exponent {k!r} >= -1 diverges")
    const = pv / (math.e * ((1.0 + epsilon) * pv - 1.0))
    return const * (1.0 / (-1.0 - k)) ** (1.0 / q)


def local_constant(p: ExponentLike, q: ExponentLike) -> float:
    """Constant ``C`` with ``||Lf||_{L^q(0,1)} <= C ||f||_p``, or ``inf``
    when the Hoelder route gives none."""
    p, q = LebesgueExponent.of(p), LebesgueExponent.of(q)
    pc = conjugate(p)
    c, _ = _conj_powers(p, 1.0)
    if q.is_infinite:
        # sup of x**(-1/p') over (0, 1] is finite only for p' = inf.
        return 1.0 / c if pc.is_infinite else math.inf
    r = q.value * pc.reciprocal
    if r >= 1:
        return math.inf
    return (1.0 / (1.0 - r)) ** (1.0 / q.value) / c


def tail_constant(p: ExponentLike, q: ExponentLike) -> float:
    """Constant ``C`` with ``||Lf||_{L^q(1,inf)} <= C ||f||_p``, or ``inf``."""
    p, q = LebesgueExponent.of(p), LebesgueExponent.of(q)
    pc = conjugate(p)
    c, _ = _conj_powers(p, 1.0)
    if q.is_infinite:
        return 1.0 / c
    r = q.value * pc.reciprocal
    if r <= 1:
        return math.inf
    return (1.0 / (r - 1.0)) ** (1.0 / q.value) / c
