"""Acceptance checks, one function per criterion, shared by the test suite
and ``laplace-lp verify-all``."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import analytics, blowup, testbed
from .core import Bounded, FullHalfLine, LebesgueExponent, Tail, classify, conjugate, region_sweep
from .quadrature import TestFunction, laplace_lq_norm, laplace_values, lp_norm


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float


def _generic_functions() -> List[TestFunction]:
    return [testbed.exp_decay(0.5), testbed.exp_decay(1.0), testbed.exp_decay(3.0),
            testbed.indicator(0.0, 1.0), testbed.indicator(1.0, 2.0),
            testbed.truncated_const(1e3)]


def library_functions(p: float) -> List[TestFunction]:
    """The library functions that belong to ``L^p``: the generic ones plus
    both families at exponent ``p`` (when ``1 < p < inf``)."""
    out = _generic_functions()
    p = LebesgueExponent.of(p)
    if not p.is_infinite and p.value > 1:
        for eps in (0.1, 0.01):
            out.append(testbed.family_function(testbed.THM1, p, eps))
            out.append(testbed.family_function(testbed.THM2, p, eps))
    return out


def closed_form_suite() -> List[Tuple[TestFunction, float, float]]:
    """(function, x, exact transform) triples."""
    cases = [(testbed.const1(), lambda x: 1.0 / x)]
    for a in (0.5, 1.0, 3.0):
        cases.append((testbed.exp_decay(a), lambda x, a=a: 1.0 / (a + x)))
    cases.append((testbed.indicator(0.0, 1.0), lambda x: -math.expm1(-x) / x))
    for a in (0.5, 1.5, 2.0, 3.0):
        cases.append((testbed.power(a), lambda x, a=a: math.gamma(a) / x ** a))
    return [(f, x, exact(x)) for f, exact in cases for x in (0.5, 1.0, 4.0)]


def criterion_1() -> Tuple[bool, str]:
    t0 = time.perf_counter()
    worst = 0.0
    suite = closed_form_suite()
    for f, x, exact in suite:
        got = laplace_values(f, [x]).values[0]
        worst = max(worst, abs(got / exact - 1.0))
    dt = time.perf_counter() - t0
    return worst <= 1e-8 and dt < 5, f"{len(suite)} pairs, max rel err {worst:.2e}, {dt:.2f}s"


def criterion_2() -> Tuple[bool, str]:
    worst = 0.0
    n = 0
    for variant in (testbed.THM1, testbed.THM2):
        for p in (2.0, 2.5, 3.0, 4.0):
            for eps in (1e-1, 1e-2, 1e-3):
                params = testbed.FamilyParams(p, eps, variant)
                got = lp_norm(testbed.make_family(params), FullHalfLine(), p)
                worst = max(worst, abs(got / testbed.closed_form_norm(params) - 1.0))
                n += 1
    return worst <= 1e-8, f"{n} norms, max rel err {worst:.2e}"


HOLDER_PS = (1.0, 1.5, 2.0, 3.0, 4.0, math.inf)
FAMILY_PS = (2.0, 2.5, 3.0, 4.0)


def criterion_3() -> Tuple[bool, str]:
    xs = np.geomspace(1e-3, 1e3, 33)
    worst = 0.0
    n = 0
    for p in HOLDER_PS:
        for f in _generic_functions():
            worst = max(worst, analytics.holder_margin(f, p, xs))
            n += 1
    for p in FAMILY_PS:
        for f in library_functions(p)[len(_generic_functions()):]:
            worst = max(worst, analytics.holder_margin(f, p, xs))
            n += 1
    return worst <= 1 + 1e-8, f"{n} (function, p) pairs x 33 points, max Lf/bound {worst:.12f}"


SCALING_LAMBDAS = (1 / 8, 1 / 2, 2.0, 8.0)


def scaling_cases():
    return [(testbed.indicator(0.0, 1.0), 2.0, 2.0), (testbed.exp_decay(1.0), 2.0, 2.0),
            (testbed.family_function(testbed.THM1, 3, 0.1), 3.0, 1.5),
            (testbed.family_function(testbed.THM2, 3, 0.05), 3.0, 1.5)]


def criterion_4() -> Tuple[bool, str]:
    ident = norm = 0.0
    lower_ok = True
    for f, p, q in scaling_cases():
        for lam in SCALING_LAMBDAS:
            rep = analytics.check_scaling_identity(f, lam, p=p, q=q)
            ident = max(ident, rep.max_identity_error)
            norm = max(norm, rep.norm_ratio_error)
            lower_ok &= rep.lq_lower_bound_satisfied
    ok = ident <= 1e-8 and norm <= 1e-8 and lower_ok
    return ok, f"identity {ident:.2e}, norm law {norm:.2e}, lower bounds {'hold' if lower_ok else 'FAIL'}"


CONSTANT_GRID = (1.25, 2.0, 3.0, 5.0)


def criterion_5() -> Tuple[bool, str]:
    violations = []
    checks = 0
    worst = 0.0
    for p in CONSTANT_GRID:
        for q in CONSTANT_GRID:
            s = 1 / p + 1 / q
            if s > 1:
                domain, const = Bounded(0.0, 1.0), analytics.local_constant(p, q)
            elif s < 1:
                domain, const = Tail(1.0), analytics.tail_constant(p, q)
            else:
                continue
            for f in library_functions(p):
                lhs = laplace_lq_norm(f, domain, q)
                rhs = const * lp_norm(f, FullHalfLine(), p)
                worst = max(worst, lhs / rhs)
                checks += 1
                if lhs > rhs * (1 + 1e-6):
                    violations.append((p, q, f.label))
    return not violations, f"{checks} checks, {len(violations)} violations, max ratio {worst:.4f}"


def criterion_6() -> Tuple[bool, str]:
    bad = []
    for p in (1.5, 2.0, 3.0, 10.0):
        g = testbed.upper_incomplete_gamma(1 - 1 / p, 1.0)
        for c in (2.0, 5.0, 10.0):
            if not (c ** (-1 / p) * (math.exp(-1) - math.exp(-c)) < g < math.exp(-1)):
                bad.append((p, c))
    return not bad, f"12 cases, {len(bad)} violated"


def duality_sweep_configs():
    out = []
    for p in FAMILY_PS:
        q = conjugate(p)
        out.append((p, q, Bounded(0.0, 1.0), testbed.THM1))
        out.append((p, q, Tail(1.0), testbed.THM2))
    return out


def criterion_7() -> Tuple[bool, str]:
    t0 = time.perf_counter()
    grid = blowup.standard_eps_grid()
    worst = 0.0
    parts = []
    for p, q, domain, variant in duality_sweep_configs():
        fit = blowup.fit_exponent(blowup.sweep(p, q, domain, variant, grid), p)
        dev = abs(fit.slope - fit.theoretical_slope)
        worst = max(worst, dev)
        parts.append(f"{variant} p={p:g}: {fit.slope:+.3f}")
    dt = time.perf_counter() - t0
    return worst <= 0.05 and dt < 60, f"max |slope - (2/p-1)| {worst:.4f}, {dt:.1f}s; " + ", ".join(parts)


NEAR_DUALITY_PS = (Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3), Fraction(4))
NEAR_DUALITY_OFFSETS = (Fraction(-1, 4), Fraction(-3, 20), Fraction(0), Fraction(3, 20), Fraction(1, 4))
BLOWUP_SLOPE = -0.1


def near_duality_grid():
    """``(p, q)`` with ``1/q = 1 - 1/p + delta``, exactly."""
    out = []
    for p in NEAR_DUALITY_PS:
        for d in NEAR_DUALITY_OFFSETS:
            out.append((LebesgueExponent(p), LebesgueExponent.from_reciprocal(1 - 1 / p + d)))
    return out


def empirically_discontinuous(p, q, domain, grid=None) -> Tuple[bool, str]:
    """Sweep the matching family and a dilated indicator; a fitted slope at
    most ``BLOWUP_SLOPE`` or an infinite norm counts as blow-up."""
    grid = blowup.standard_eps_grid() if grid is None else grid
    family = testbed.THM2 if isinstance(domain, Tail) else testbed.THM1
    notes = []
    blows = False
    for variant in (family, blowup.SCALING):
        recs = blowup.sweep(p, q, domain, variant, grid)
        if any(r.divergent for r in recs):
            blows = True
            notes.append(f"{variant}: divergent")
            continue
        fit = blowup.fit_exponent(recs, p)
        blows |= fit.slope <= BLOWUP_SLOPE
        notes.append(f"{variant}: {fit.slope:+.3f}")
    return blows, ", ".join(notes)


def criterion_8() -> Tuple[bool, str]:
    mismatches = []
    n = 0
    for domain in (Bounded(0.0, 1.0), Tail(1.0)):
        for p, q in near_duality_grid():
            verdict = classify(p, q, domain)
            blows, note = empirically_discontinuous(p, q, domain)
            n += 1
            if blows == verdict.continuous:
                mismatches.append(f"({p}, {q}, {domain}): {verdict.reason} vs {note}")
    detail = f"{n} configurations, {len(mismatches)} disagreements"
    if mismatches:
        detail += "; " + "; ".join(mismatches)
    return not mismatches, detail


HARDY_BAND = (1.755, 1.7725)
LARGE_Q = 1e4


def criterion_9() -> Tuple[bool, str]:
    hardy = blowup.discretized_opnorm(2, 2, FullHalfLine(), nodes=512)
    one = blowup.discretized_opnorm(1, LARGE_Q, FullHalfLine(), nodes=512)
    ok_h = HARDY_BAND[0] <= hardy <= HARDY_BAND[1]
    ok_1 = abs(one - 1) <= 0.01
    return ok_h and ok_1, (f"(2,2): {hardy:.6f} {'in' if ok_h else 'NOT in'} "
                           f"[{HARDY_BAND[0]}, {HARDY_BAND[1]}]; (1,{LARGE_Q:g}): {one:.6f}")


def figure_truth(i: int, j: int, n: int, domain) -> bool:
    """Membership read off the diagrams at lattice point ``(i/n, j/n)``."""
    if i + j == n:
        return 2 * i >= n
    if isinstance(domain, Bounded):
        return i + j > n
    return i + j < n


def criterion_10() -> Tuple[bool, str]:
    n = 16
    wrong = 0
    total = 0
    for domain in (Bounded(0.0, 1.0), Tail(1.0)):
        for rp, rq, verdict in region_sweep(1 / n, domain):
            total += 1
            i, j = int(rp * n), int(rq * n)
            wrong += verdict.continuous != figure_truth(i, j, n, domain)
    return wrong == 0, f"{total} lattice points, {wrong} mismatches"


CRITERIA: Dict[int, Tuple[str, Callable[[], Tuple[bool, str]]]] = {
    1: ("closed-form transforms", criterion_1),
    2: ("family norms", criterion_2),
    3: ("pointwise Hoelder bound", criterion_3),
    4: ("dilation identities", criterion_4),
    5: ("explicit constants", criterion_5),
    6: ("incomplete gamma sandwich", criterion_6),
    7: ("blow-up exponents", criterion_7),
    8: ("classifier vs sweeps", criterion_8),
    9: ("operator-norm probe", criterion_9),
    10: ("region diagrams", criterion_10),
}


def run(number: int) -> CriterionResult:
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a crashed report
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, title, bool(ok), detail, time.perf_counter() - t0)


def run_all() -> List[CriterionResult]:
    return [run(k) for k in sorted(CRITERIA)]
