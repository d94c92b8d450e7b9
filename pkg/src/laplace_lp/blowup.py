"""Epsilon sweeps of the norm ratio, log-log slope fits and a discretized
operator-norm maximizer."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .analytics import scale
from .core import (
    Bounded,
    DomainSpec,
    ExponentLike,
    FullHalfLine,
    LebesgueExponent,
    Tail,
)
from .errors import Divergent, DomainError, InsufficientData, NonConvergence, NumericalFailure
from .quadrature import DEFAULT_TOL, laplace_lq_norm, lp_norm
from .testbed import THM1, THM2, FamilyParams, closed_form_norm, indicator, make_family

SCALING = "scaling"
SWEEP_VARIANTS = (THM1, THM2, SCALING)

# Relative agreement demanded between quadrature and closed-form family norms.
NORM_CHECK = 1e-8

OPNORM_SPAN = (1e-6, 1e6)
ITER_CAP = 10_000


def standard_eps_grid() -> np.ndarray:
    """``10**-1, 10**-1.5, ..., 10**-4``."""
    return 10.0 ** (-np.arange(2, 9) / 2.0)


def eps_grid(start: float, stop: float, count: int) -> np.ndarray:
    """Geometric grid from ``start`` down to ``stop`` with ``count`` points."""
    if not (start > stop > 0):
        raise DomainError(f"eps grid needs start > stop > 0, got {start!r}, {stop!r}")
    if count < 2:
        raise DomainError(f"eps grid needs at least 2 points, got {count}")
    return np.geomspace(start, stop, count)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LAPLACE_LP_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepRecord:
    epsilon: float
    norm_f: float
    norm_Lf: float
    ratio: float
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    @property
    def divergent(self) -> bool:
        return self.failure is not None and self.failure.startswith("Divergent")


@dataclass(frozen=True)
class BlowupFit:
    slope: float
    intercept: float
    max_residual: float
    records: List[SweepRecord]
    theoretical_slope: float


def _scaling_lambda(domain: DomainSpec, eps: float) -> float:
    # Mass pushed towards infinity probes x near 0; towards 0 probes large x.
    return 1.0 / eps if isinstance(domain, Tail) else eps


def _one_record(p: LebesgueExponent, q: LebesgueExponent, domain: DomainSpec,
                variant: str, eps: float, tol: float) -> SweepRecord:
    norm_f = math.nan
    try:
        if variant == SCALING:
            lam = _scaling_lambda(domain, eps)
            f = scale(indicator(1.0, 2.0), lam)
            expected = lam ** (-p.reciprocal)
        else:
            params = FamilyParams(p, eps, variant)
            f = make_family(params)
            expected = closed_form_norm(params)
        norm_f = lp_norm(f, FullHalfLine(), p, tol)
        if abs(norm_f / expected - 1.0) > NORM_CHECK:
            return SweepRecord(eps, norm_f, math.nan, math.nan,
                               f"NormMismatch: quadrature {norm_f!r} vs closed form {expected!r}")
        norm_lf = laplace_lq_norm(f, domain, q, tol)
    except Divergent as exc:
        return SweepRecord(eps, norm_f, math.inf, math.inf, f"Divergent: {exc}")
    except NumericalFailure as exc:
        return SweepRecord(eps, norm_f, math.nan, math.nan, f"{type(exc).__name__}: {exc}")
    return SweepRecord(eps, norm_f, norm_lf, norm_lf / norm_f)


def sweep(p: ExponentLike, q: ExponentLike, domain: DomainSpec, variant: str,
          eps_grid: Sequence[float], tol: float = DEFAULT_TOL) -> List[SweepRecord]:
    """Norm ratios ``||Lf_eps||_q / ||f_eps||_p`` along ``eps_grid``.

    ``variant`` is ``thm1``, ``thm2`` or ``scaling``; the last one dilates
    the indicator of ``[1, 2]`` by ``eps`` (or ``1/eps`` on tail domains).
    Failed evaluations are kept as records with ``failure`` set.
    """
    p, q = LebesgueExponent.of(p), LebesgueExponent.of(q)
    variant = str(variant).lower()
    if p.is_infinite or not p.value > 1:
        raise DomainError(f"sweep needs finite p > 1, got {p}")
    if variant not in SWEEP_VARIANTS:
        raise DomainError(f"variant must be one of {SWEEP_VARIANTS}, got {variant!r}")
    grid = [float(e) for e in eps_grid]
    if len(grid) == 0:
        raise DomainError("empty eps grid")
    if any(not (b < a) for a, b in zip(grid, grid[1:])):
        raise DomainError("eps grid must be strictly decreasing")
    if variant == SCALING:
        if not all(0 < e < math.inf for e in grid):
            raise DomainError("scaling sweep needs eps > 0")
    else:
        for e in grid:
            FamilyParams(p, e, variant)

    jobs = [(p, q, domain, variant, e, tol) for e in grid]
    n = min(_threads(), len(jobs))
    if n > 1:
        with ThreadPoolExecutor(n) as pool:
            return list(pool.map(lambda a: _one_record(*a), jobs))
    return [_one_record(*a) for a in jobs]


def fit_exponent(records: Sequence[SweepRecord], p: ExponentLike) -> BlowupFit:
    """Least-squares slope of ``log ratio`` against ``log eps``."""
    p = LebesgueExponent.of(p)
    good = sorted((r for r in records if r.ok and r.ratio > 0 and math.isfinite(r.ratio)),
                  key=lambda r: -r.epsilon)
    if len(good) < 4:
        raise InsufficientData(f"need at least 4 successful records, got {len(good)}")
    eps = np.array([r.epsilon for r in good])
    if math.log10(eps.max() / eps.min()) < 2 - 1e-9:
        raise InsufficientData("records must span at least two decades of epsilon")
    x = np.log(eps)
    y = np.log([r.ratio for r in good])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.max(np.abs(y - (slope * x + intercept))))
    return BlowupFit(float(slope), float(intercept), resid, good, 2.0 * p.reciprocal - 1.0)


# -- discretized operator norm ----------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
_PANELS_PER_DECADE = 2


def _log_panels(lo: float, hi: float) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights in ``log x`` over ``[lo, hi]``."""
    a, b = math.log(lo), math.log(hi)
    n = max(1, int(math.ceil((b - a) / math.log(10) * _PANELS_PER_DECADE)))
    edges = np.linspace(a, b, n + 1)
    half = np.diff(edges)[:, None] / 2
    mid = (edges[:-1] + edges[1:])[:, None] / 2
    t = (mid + half * _GL_X).ravel()
    x = np.exp(t)
    w = (half * _GL_W).ravel() * x
    return x, w


def _x_quadrature(domain: DomainSpec, span: Tuple[float, float]):
    ylo, yhi = span
    x_lo, x_hi = 1e-3 / yhi, 1e3 / ylo
    if isinstance(domain, FullHalfLine):
        a, b = 0.0, math.inf
    elif isinstance(domain, (Bounded, Tail)):
        a, b = domain.interval
    else:
        raise TypeError(f"not a domain: {domain!r}")
    xs, ws = [], []
    start = max(a, x_lo)
    if a < x_lo:
        # Lf is nonincreasing, so (x_lo - a) * Lf(x_lo)**q underestimates [a, x_lo].
        xs.append(np.array([x_lo]))
        ws.append(np.array([x_lo - a]))
    stop = min(b, max(x_hi, 10 * start))
    if stop > start:
        x, w = _log_panels(start, stop)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


@dataclass(frozen=True)
class OpnormResult:
    value: float
    history: np.ndarray
    iterations: int
    weights: np.ndarray
    edges: np.ndarray


def _lq(v: np.ndarray, w: np.ndarray, q: float) -> float:
    m = float(np.max(v))
    if m <= 0:
        return 0.0
    return m * float(np.dot(w, (v / m) ** q)) ** (1.0 / q)


def opnorm_ascent(p: ExponentLike, q: ExponentLike, domain: DomainSpec, nodes: int = 512,
                  iters: int = ITER_CAP, span: Tuple[float, float] = OPNORM_SPAN) -> OpnormResult:
    """Maximize ``||Lf||_q / ||f||_p`` over nonnegative step functions.

    The steps live on ``nodes`` log-spaced cells covering ``span``.  The
    update is multiplicative, ``c <- c * rho**eta`` with ``rho`` the ratio of
    the two sides of the stationarity condition, followed by renormalization;
    ``eta`` is halved whenever the objective would drop.
    """
    p, q = LebesgueExponent.of(p), LebesgueExponent.of(q)
    if p.is_infinite or q.is_infinite:
        raise DomainError("discretized_opnorm needs finite p and q")
    if nodes < 16:
        raise DomainError(f"nodes must be >= 16, got {nodes}")
    if not (1 <= iters <= ITER_CAP):
        raise DomainError(f"iters must lie in [1, {ITER_CAP}], got {iters}")
    pv, qv = p.value, q.value
    edges = np.geomspace(span[0], span[1], nodes + 1)
    lo, width = edges[:-1], np.diff(edges)
    x, wx = _x_quadrature(domain, span)
    with np.errstate(under="ignore"):
        K = np.exp(-np.outer(x, lo)) * (-np.expm1(-np.outer(x, width))) / x[:, None]

    def norm_p(c):
        return float(np.dot(width, c ** pv)) ** (1.0 / pv)

    def normalize(c):
        return c / norm_p(c)

    c = normalize(np.sqrt(edges[:-1] * edges[1:]) ** (-1.0 / pv))
    value = _lq(K @ c, wx, qv)
    history = [value]
    eta0 = min(1.0 / (pv - 1.0), 4.0) if pv > 1 else 1.0
    eta = eta0
    done = 0
    for _ in range(iters):
        v = K @ c
        r = v / value
        g = K.T @ (wx * r ** (qv - 1.0))
        denom = value * width * c ** (pv - 1.0)
        # Cells that have underflowed to zero stay there.
        rho = np.divide(g, denom, out=np.ones_like(g), where=denom > 0)
        accepted = False
        for _ in range(60):
            with np.errstate(over="ignore", under="ignore"):
                trial = c * rho ** eta
            if np.all(np.isfinite(trial)) and np.any(trial > 0):
                trial = normalize(trial)
                new = _lq(K @ trial, wx, qv)
                if new >= value:
                    accepted = True
                    break
            eta /= 2
        if not accepted:
            break
        c, gain, value = trial, new - value, new
        history.append(value)
        done += 1
        eta = min(eta0, 2 * eta)
        if gain <= 1e-15 * value:
            break
    hist = np.array(history)
    if done >= ITER_CAP and hist.size > 200:
        recent = hist[-1] - hist[-101]
        earlier = hist[-101] - hist[-201]
        if recent > 1e-9 * hist[-1] and recent >= earlier:
            raise NonConvergence(
                f"ratio still growing at the iteration cap ({hist[-1]:.6g}); "
                f"the pair ({p}, {q}) is probably unbounded")
    return OpnormResult(value, hist, done, c, edges)


def discretized_opnorm(p: ExponentLike, q: ExponentLike, domain: DomainSpec,
                       nodes: int = 512, iters: int = ITER_CAP,
                       span: Tuple[float, float] = OPNORM_SPAN) -> float:
    """Lower bound for the norm of ``L: L^p(0, inf) -> L^q(domain)``."""
    return opnorm_ascent(p, q, domain, nodes, iters, span).value
