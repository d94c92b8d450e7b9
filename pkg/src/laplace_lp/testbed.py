"""Concrete test functions: the two power-law families, a few functions with
known transforms, and the upper incomplete gamma function."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from .core import ExponentLike, LebesgueExponent
from .errors import DomainError
from .quadrature import (
    DEFAULT_TOL,
    CompactSupport,
    Exponential,
    PowerLaw,
    TestFunction,
    integrate,
)

THM1 = "thm1"
THM2 = "thm2"
VARIANTS = (THM1, THM2)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of a counterexample family.

    ``thm1``: ``f(y) = y**(-(1+eps)/p)`` on ``[1, inf)``, with ``0 < eps < 1``.
    ``thm2``: ``f(y) = y**(-(1-eps*p)/p)`` on ``[0, 1]``, with ``0 < eps < 1/p``.
    """

    p: LebesgueExponent
    epsilon: float
    variant: str = THM1

    def __post_init__(self):
        object.__setattr__(self, "p", LebesgueExponent.of(self.p))
        object.__setattr__(self, "variant", str(self.variant).lower())
        p, eps = self.p, self.epsilon
        if p.is_infinite or not p.value > 1:
            raise DomainError(f"family exponent p must lie in (1, inf), got {p}")
        if self.variant not in VARIANTS:
            raise DomainError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not (isinstance(eps, (int, float)) and math.isfinite(eps) and eps > 0):
            raise DomainError(f"epsilon must be > 0, got {eps!r}")
        if eps >= self.epsilon_max:
            raise DomainError(
                f"epsilon must be < {self.epsilon_max:.17g} for {self.variant}, got {eps!r}")

    @property
    def epsilon_max(self) -> float:
        return 1.0 if self.variant == THM1 else 1.0 / self.p.value

    @property
    def exponent(self) -> float:
        """The power ``b`` in ``f(y) = y**-b`` on the support."""
        p, eps = self.p.value, self.epsilon
        if self.variant == THM1:
            return (1.0 + eps) / p
        return (1.0 - eps * p) / p


def make_family(params: FamilyParams) -> TestFunction:
    b = params.exponent
    label = f"{params.variant}(p={params.p}, eps={params.epsilon!r})"
    if params.variant == THM1:
        def fn(y):
            with np.errstate(divide="ignore"):
                return np.where(y >= 1.0, np.maximum(y, 1.0) ** -b, 0.0)
        return TestFunction(fn, (1.0, math.inf), 0.0, PowerLaw(b), label)

    def fn(y):
        inside = (y > 0) & (y <= 1.0)
        safe = np.where(inside, y, 1.0)
        return np.where(inside, safe ** -b, 0.0)
    return TestFunction(fn, (0.0, 1.0), b, CompactSupport(), label)


def closed_form_norm(params: FamilyParams) -> float:
    p, eps = params.p.value, params.epsilon
    if params.variant == THM1:
        return eps ** (-1.0 / p)
    return (p * eps) ** (-1.0 / p)


def upper_incomplete_gamma(a: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """``int_x^inf s**(a-1) exp(-s) ds``, computed by the adaptive integrator."""
    if not (math.isfinite(a) and math.isfinite(x)) or x < 0:
        raise DomainError(f"need finite a and x >= 0, got a={a!r}, x={x!r}")
    if x == 0 and a <= 0:
        raise DomainError(f"integral diverges at 0 for a={a!r} <= 0")
    alpha = max(0.0, 1.0 - a) if x == 0 else 0.0

    def fn(s):
        inside = s >= x
        safe = np.where(inside & (s > 0), s, 1.0)
        with np.errstate(over="ignore", under="ignore"):
            return np.where(inside, safe ** (a - 1.0) * np.exp(-safe), 0.0)

    f = TestFunction(fn, (float(x), math.inf), alpha, Exponential(1.0), f"s^{a - 1}e^-s")
    return integrate(f, f.support, tol).value


def thm1_transform_closed_form(params: FamilyParams, x: float) -> float:
    """``Lf(x)`` for the ``thm1`` family, written with the incomplete gamma."""
    if params.variant != THM1:
        raise DomainError("thm1_transform_closed_form needs a thm1 family")
    if not (0 < x <= 1):
        raise DomainError(f"x must lie in (0, 1], got {x!r}")
    b = params.exponent
    return x ** (b - 1.0) * upper_incomplete_gamma(1.0 - b, x)


# -- other functions with known transforms --------------------------------------

def const1() -> TestFunction:
    return TestFunction(lambda y: np.ones_like(y), (0.0, math.inf), 0.0, PowerLaw(0.0), "const1")


def truncated_const(n: float = 1e6) -> TestFunction:
    """``1`` on ``[0, n]``: an ``L^p`` stand-in for the constant function."""
    if not n > 0:
        raise DomainError(f"truncation point must be > 0, got {n!r}")
    return TestFunction(lambda y: np.where((y >= 0) & (y <= n), 1.0, 0.0),
                        (0.0, float(n)), 0.0, CompactSupport(), f"const1[0,{n:g}]")


def exp_decay(a: float = 1.0) -> TestFunction:
    if not a > 0:
        raise DomainError(f"decay rate must be > 0, got {a!r}")

    def fn(y):
        with np.errstate(under="ignore"):
            return np.where(y >= 0, np.exp(-a * np.maximum(y, 0.0)), 0.0)
    return TestFunction(fn, (0.0, math.inf), 0.0, Exponential(a), f"exp(-{a:g}y)")


def indicator(a: float = 0.0, b: float = 1.0) -> TestFunction:
    if not (0 <= a < b < math.inf):
        raise DomainError(f"indicator needs 0 <= a < b < inf, got [{a!r}, {b!r}]")
    return TestFunction(lambda y: np.where((y >= a) & (y <= b), 1.0, 0.0),
                        (float(a), float(b)), 0.0, CompactSupport(), f"chi[{a:g},{b:g}]")


def power(a: float) -> TestFunction:
    """``y**(a-1)`` on ``(0, inf)``, whose transform is ``Gamma(a) / x**a``."""
    if not a > 0:
        raise DomainError(f"power needs a > 0, got {a!r}")
    alpha = max(0.0, 1.0 - a)

    def fn(y):
        inside = y > 0
        safe = np.where(inside, y, 1.0)
        return np.where(inside, safe ** (a - 1.0), 0.0)
    return TestFunction(fn, (0.0, math.inf), alpha, PowerLaw(1.0 - a), f"y^{a - 1:g}")


def family_function(variant: str, p: ExponentLike, epsilon: float) -> TestFunction:
    return make_family(FamilyParams(LebesgueExponent.of(p), epsilon, variant))


def named_functions() -> Dict[str, TestFunction]:
    """Functions addressable by name from the command line."""
    out = {"const1": const1(), "chi01": indicator(0.0, 1.0), "chi12": indicator(1.0, 2.0)}
    for a in (0.5, 1.0, 2.0, 3.0):
        out[f"exp{a:g}"] = exp_decay(a)
    for a in (0.5, 1.0, 1.5, 2.0):
        out[f"power{a:g}"] = power(a)
    return out


def lookup_function(name: str) -> TestFunction:
    """Resolve ``name`` or ``exp:a``, ``power:a``, ``indicator:a,b``, ``trunc:n``."""
    table = named_functions()
    if name in table:
        return table[name]
    kind, _, rest = name.partition(":")
    try:
        if kind == "exp":
            return exp_decay(float(rest))
        if kind == "power":
            return power(float(rest))
        if kind == "indicator":
            a, b = (float(v) for v in rest.split(","))
            return indicator(a, b)
        if kind == "trunc":
            return truncated_const(float(rest))
    except ValueError as exc:
        raise DomainError(f"bad function {name!r}: {exc}") from None
    raise DomainError(
        f"unknown function {name!r}; known: {', '.join(sorted(table))}, "
        "exp:a, power:a, indicator:a,b, trunc:n")
