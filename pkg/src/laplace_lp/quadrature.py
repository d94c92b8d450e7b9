"""Singularity-aware adaptive quadrature on subsets of ``[0, inf)``.

Everything funnels into :func:`_adaptive`, a vectorised Gauss-Kronrod (7/15)
engine that refines many panels per sweep and accepts vector-valued
integrands.  On top of it sit a handful of variable changes:

* ``x = a + w u**(1/(1-alpha))`` removes an ``(x-a)**-alpha`` endpoint
  singularity;
* ``x = c u**(-1/(beta-1))`` turns an ``x**-beta`` tail into a bounded
  integrand on ``(0, 1]``;
* ``x = c + s t/(1-t)`` for exponentially decaying tails;
* ``x = a (b/a)**t`` for intervals spanning many decades.

When the declared exponents say an integral may diverge, dyadic windows are
summed instead and the integral is reported :class:`Divergent` once the
window contributions stop shrinking.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Tuple, Union

import numpy as np

from .core import Bounded, DomainSpec, ExponentLike, FullHalfLine, LebesgueExponent, Tail
from .errors import Divergent, InvalidInterval, NonConvergence

DEFAULT_TOL = 1e-10
ATOL_FLOOR = 1e-14
EVAL_BUDGET = 1_000_000

# Points closer than this to a singular endpoint are evaluated at this offset.
_SING_CLAMP = 1e-280
_WINDOW_STALL = 20
_WINDOW_SHRINK = 1e-6
_SUP_SAMPLES = 10_000

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[1:7:2] = _WG[:3]
_GW[7] = _WG[3]
_GW[9:15:2] = _WG[2::-1]
_NPT = 15


# -- metadata ---------------------------------------------------------------

@dataclass(frozen=True)
class CompactSupport:
    def scaled(self, power: float) -> "CompactSupport":
        return self


@dataclass(frozen=True)
class PowerLaw:
    """``|f(x)| ~ C x**-beta`` as ``x -> inf``; ``beta <= 0`` means no decay."""
    beta: float

    def scaled(self, power: float) -> "PowerLaw":
        return PowerLaw(self.beta * power)


@dataclass(frozen=True)
class Exponential:
    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError("exponential decay rate must be positive")

    def scaled(self, power: float) -> "Exponential":
        return Exponential(self.rate * power)


Decay = Union[CompactSupport, PowerLaw, Exponential]


@dataclass(frozen=True)
class TestFunction:
    """A real function on ``(0, inf)`` with the metadata the integrator needs.

    ``fn`` must accept numpy arrays of any shape and return zero outside
    ``support``.  ``alpha`` declares an ``(x - support[0])**-alpha``
    singularity at the left end of the support.
    """
    __test__ = False  # keep pytest from collecting this class

    fn: Callable[[np.ndarray], np.ndarray]
    support: Tuple[float, float]
    alpha: float = 0.0
    decay: Decay = field(default_factory=CompactSupport)
    label: str = "f"

    def __post_init__(self):
        s0, s1 = self.support
        if not (0 <= s0 < s1):
            raise ValueError(f"support must satisfy 0 <= s0 < s1, got {self.support}")
        if not (0 <= self.alpha < 1):
            raise ValueError(f"singularity exponent must lie in [0, 1), got {self.alpha}")
        if math.isinf(s1) and isinstance(self.decay, CompactSupport):
            raise ValueError("unbounded support cannot carry CompactSupport decay")

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    @property
    def integrable(self) -> bool:
        d = self.decay
        return not (isinstance(d, PowerLaw) and d.beta <= 1 and math.isinf(self.support[1]))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


# -- the engine -------------------------------------------------------------

def _panel_rules(func, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    t = mid[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(func(t.ravel()), dtype=float)
    y = y.reshape((a.size, _NPT) + y.shape[1:])
    y = np.where(np.isfinite(y), y, np.nan)
    hk = half.reshape((-1,) + (1,) * (y.ndim - 2))
    kron = hk * np.tensordot(y, _KW, axes=([1], [0])) if y.ndim > 2 else half * (y @ _KW)
    gauss = hk * np.tensordot(y, _GW, axes=([1], [0])) if y.ndim > 2 else half * (y @ _GW)
    return kron, np.abs(kron - gauss)


def _adaptive(func, breaks, tol, atol, budget=EVAL_BUDGET, what="integral"):
    """Integrate ``func`` over ``[breaks[0], breaks[-1]]``.

    ``func`` maps a 1-D array of abscissae to values of shape ``(n,)`` or
    ``(n, m)``.  Returns ``(value, error, evaluations)``.
    """
    edges = np.asarray(breaks, dtype=float)
    a, b = edges[:-1].copy(), edges[1:].copy()
    kron, err = _panel_rules(func, a, b)
    nevals = a.size * _NPT
    while True:
        if np.isnan(kron).any() or np.isnan(err).any():
            raise NonConvergence(f"{what}: integrand produced non-finite values")
        total = kron.sum(axis=0)
        etot = err.sum(axis=0)
        # Floor the target at what double precision can resolve.
        target = np.maximum(np.maximum(tol * np.abs(total), atol),
                            64 * np.finfo(float).eps * np.abs(kron).sum(axis=0))
        if np.all(etot <= target):
            return total, etot, nevals
        rel = err / target
        score = rel.max(axis=1) if rel.ndim > 1 else rel
        order = np.argsort(-score)
        remaining = score.sum() - np.cumsum(score[order])
        nsplit = int(np.searchsorted(-remaining, -0.5)) + 1
        nsplit = min(max(nsplit, 1), 4096, order.size)
        pick = order[:nsplit]
        pa, pb = a[pick], b[pick]
        pm = 0.5 * (pa + pb)
        ok = (pm > pa) & (pm < pb)
        if not ok.all():
            if not ok.any():
                raise NonConvergence(f"{what}: panels collapsed before reaching tolerance "
                                     f"(error {float(np.max(etot)):.3g})")
            pick, pa, pb, pm = pick[ok], pa[ok], pb[ok], pm[ok]
        if nevals + 2 * pick.size * _NPT > budget:
            raise NonConvergence(f"{what}: evaluation budget {budget} exhausted "
                                 f"(error {float(np.max(etot)):.3g})")
        na = np.concatenate([pa, pm])
        nb = np.concatenate([pm, pb])
        nk, ne = _panel_rules(func, na, nb)
        nevals += na.size * _NPT
        keep = np.ones(a.size, dtype=bool)
        keep[pick] = False
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        kron = np.concatenate([kron[keep], nk])
        err = np.concatenate([err[keep], ne])


# -- variable changes for a scalar integrand F on [lo, hi] -----------------

def _power_piece(F, lo, w, alpha):
    """u in [0,1] -> lo + w u**k, with the (x-lo)**-alpha factor absorbed."""
    k = 1.0 / (1.0 - alpha)
    floor = max(_SING_CLAMP, 4 * np.spacing(lo)) if lo > 0 else _SING_CLAMP
    scale = k * w ** (1.0 - alpha)

    def g(u):
        with np.errstate(under="ignore"):
            d = np.maximum(w * u ** k, floor)
        return scale * d ** alpha * F(lo + d)
    return g


def _log_piece(F, lo, hi):
    span = math.log(hi / lo)

    def g(t):
        x = lo * np.exp(span * t)
        return F(x) * x * span
    return g


def _affine_piece(F, lo, hi):
    w = hi - lo
    return lambda t: F(lo + w * t) * w


def _exp_tail_piece(F, c, s):
    def g(t):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            x = c + s * t / (1.0 - t)
            v = F(np.minimum(x, 1e300)) * (s / (1.0 - t) ** 2)
        return np.where(np.isfinite(x), v, 0.0)
    return g


def _power_tail_piece(F, c, beta):
    """u in (0,1] -> c u**(-k), k = 1/(beta-1), integrand k c**(1-beta) x**beta F(x)."""
    k = 1.0 / (beta - 1.0)
    xmax = 10.0 ** min(250.0, 200.0 / beta)
    scale = k * c ** (1.0 - beta)

    def g(u):
        with np.errstate(divide="ignore", over="ignore"):
            x = np.minimum(c * np.exp(-k * np.log(u)), xmax)
        return scale * x ** beta * F(x)
    return g


# Initial breakpoints for pieces whose left end sits at 0: a narrow feature
# there must be seen by at least one panel before refinement can find it.
_GEOMETRIC_BREAKS = np.concatenate([[0.0], 2.0 ** -np.arange(40, 0, -1), [1.0]])
_UNIT_BREAKS = np.array([0.0, 1.0])


def _power_breaks(k):
    """Breakpoints u = 2**(-j/k): the images of dyadic points under x = u**k.

    For large ``k`` the whole of ``x`` in (0, 1/2) is squeezed into
    ``u > 1 - 1/k``; without these the first panel never looks there.
    """
    u = 2.0 ** (-np.arange(0, 64) / k)
    return np.unique(np.concatenate([[0.0], u[u > 0], [1.0]]))


def _stack(pieces, breaks=None):
    """Lay out pieces on [0,1], [1,2], ... so one adaptive run covers them all.

    Returns the combined integrand and its initial breakpoints.
    """
    if breaks is None:
        breaks = [_UNIT_BREAKS] * len(pieces)
    edges = np.unique(np.concatenate([np.asarray(b) + i for i, b in enumerate(breaks)]))

    def g(t):
        idx = np.minimum(t.astype(int), len(pieces) - 1)
        out = None
        for i, piece in enumerate(pieces):
            sel = idx == i
            if sel.any():
                v = np.asarray(piece(t[sel] - i), dtype=float)
                if out is None:
                    out = np.empty((t.size,) + v.shape[1:])
                out[sel] = v
        return out
    return g, edges


def _windows(F, start, direction, span, tol, atol, budget, what):
    """Sum dyadic windows moving away from (right) or towards (left) ``start``.

    Right: ``[c 2**j, c 2**(j+1)]``.  Left: ``[start + span 2**-(j+1), start + span 2**-j]``.
    """
    total, etot, nevals = 0.0, 0.0, 0
    prev = None
    stall = 0
    j = 0
    while True:
        if direction > 0:
            wa, wb = start * 2.0 ** j, start * 2.0 ** (j + 1)
            if wb > 1e300:
                break
        else:
            wa, wb = start + span * 2.0 ** -(j + 1), start + span * 2.0 ** -j
            if not (start < wa < wb):
                break
        v, e, n = _adaptive(_affine_piece(F, wa, wb), [0.0, 1.0], tol, atol,
                            budget - nevals, what)
        total += float(v)
        etot += float(e)
        nevals += n
        w = abs(float(v))
        if total > 1e300:
            raise Divergent(f"{what}: partial sums exceed overflow guard")
        if prev is not None and prev > 0:
            ratio = w / prev
            if ratio >= 1 - _WINDOW_SHRINK:
                stall += 1
                if stall >= _WINDOW_STALL:
                    raise Divergent(f"{what}: {_WINDOW_STALL} consecutive dyadic windows "
                                    f"failed to shrink (ratio {ratio:.6f})")
            else:
                stall = 0
                rest = w * ratio / (1 - ratio)
                if j >= 3 and rest <= 0.1 * max(tol * abs(total), atol):
                    return total + rest, etot + rest, nevals
        elif prev == 0 and w == 0 and j >= 3:
            return total, etot, nevals
        prev = w
        j += 1
    if stall:
        raise Divergent(f"{what}: dyadic windows stopped shrinking before the float range ended")
    raise NonConvergence(f"{what}: dyadic windows ran out of float range")


def _integrate_scalar(F, lo, hi, alpha, decay, tol, atol, budget=EVAL_BUDGET, what="integral"):
    """``int_lo^hi F`` where ``F`` may carry ``(x-lo)**-alpha`` and a tail ``decay``."""
    if hi <= lo:
        return 0.0, 0.0, 0
    pieces, breaks = [], []
    total, etot, nevals = 0.0, 0.0, 0
    pos = lo
    if alpha > 0:
        w = min(hi - lo, 1.0)
        if alpha >= 1:
            v, e, n = _windows(F, lo, -1, w, tol, atol, budget, what)
            total, etot, nevals = total + v, etot + e, nevals + n
        else:
            pieces.append(_power_piece(F, lo, w, alpha))
            breaks.append(_power_breaks(1.0 / (1.0 - alpha)))
        pos = lo + w
    if math.isinf(hi):
        if isinstance(decay, PowerLaw):
            c = max(pos, 1.0)
        else:
            c = max(pos, 1.0 / decay.rate)
    else:
        c = hi
    if c > pos:
        if pos > 0 and c / pos > 64:
            pieces.append(_log_piece(F, pos, c))
            breaks.append(_UNIT_BREAKS)
        else:
            pieces.append(_affine_piece(F, pos, c))
            breaks.append(_GEOMETRIC_BREAKS if pos == 0 else _UNIT_BREAKS)
    if math.isinf(hi):
        if isinstance(decay, Exponential):
            pieces.append(_exp_tail_piece(F, c, 1.0 / decay.rate))
            breaks.append(_UNIT_BREAKS)
        elif isinstance(decay, PowerLaw) and decay.beta > 1:
            pieces.append(_power_tail_piece(F, c, decay.beta))
            breaks.append(_power_breaks(1.0 / (decay.beta - 1.0)))
        elif isinstance(decay, PowerLaw):
            v, e, n = _windows(F, c, 1, None, tol, atol, budget - nevals, what)
            total, etot, nevals = total + v, etot + e, nevals + n
        else:
            raise InvalidInterval(f"{what}: unbounded interval without decay information")
    if pieces:
        g, edges = _stack(pieces, breaks)
        v, e, n = _adaptive(g, edges, tol, atol, budget - nevals, what)
        total, etot, nevals = total + float(v), etot + float(e), nevals + n
    return total, etot, nevals


# -- public operations ------------------------------------------------------

def _as_interval(interval) -> Tuple[float, float]:
    if isinstance(interval, (FullHalfLine, Bounded, Tail)):
        return interval.interval
    try:
        lo, hi = (float(v) for v in interval)
    except (TypeError, ValueError):
        raise InvalidInterval(f"not an interval: {interval!r}") from None
    if math.isnan(lo) or math.isnan(hi) or lo < 0 or hi < lo or math.isinf(lo):
        raise InvalidInterval(f"interval must satisfy 0 <= lo <= hi, got ({lo}, {hi})")
    return lo, hi


def _atol(tol):
    # The engine's roundoff floor (relative to sum |panel|) already prevents
    # chasing noise; an absolute floor would wreck tiny-but-meaningful values
    # such as Lf(x) at large x.
    return 0.0


def _check_tol(tol):
    if not (tol > 0):
        raise ValueError(f"tolerance must be positive, got {tol}")


def integrate(f: TestFunction, interval, tol: float = DEFAULT_TOL,
              budget: int = EVAL_BUDGET) -> QuadratureResult:
    """Integrate ``f`` (extended by zero outside its support) over ``interval``."""
    _check_tol(tol)
    lo, hi = _as_interval(interval)
    s0, s1 = f.support
    a, b = max(lo, s0), min(hi, s1)
    alpha = f.alpha if a == s0 else 0.0
    v, e, n = _integrate_scalar(f.fn, a, b, alpha, f.decay, tol, _atol(tol),
                                budget, what=f"integral of {f.label}")
    return QuadratureResult(float(v), float(e), max(int(n), 1))


@dataclass(frozen=True)
class LaplaceValues:
    values: np.ndarray
    errors: np.ndarray
    evaluations: int


def laplace_values(f: TestFunction, xs, tol: float = DEFAULT_TOL,
                   budget: int = EVAL_BUDGET) -> LaplaceValues:
    """Evaluate ``Lf(x) = int f(y) exp(-x y) dy`` at every ``x > 0`` in ``xs``.

    The substitution ``s = x y`` gives ``Lf(x) = (1/x) int f(s/x) exp(-s) ds``,
    whose kernel has unit scale for every ``x``; all points share one
    vector-valued adaptive run.
    """
    _check_tol(tol)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if xs.size == 0:
        return LaplaceValues(xs.copy(), xs.copy(), 0)
    if not np.all(xs > 0) or not np.all(np.isfinite(xs)):
        raise InvalidInterval("Laplace transform points must be finite and > 0")
    s0, s1 = f.support
    alpha = f.alpha
    fn = f.fn
    L = xs * s0
    U = xs * s1 if math.isfinite(s1) else np.full_like(xs, np.inf)

    # Width of the region where exp(-s) f(s/x) lives, in units of s.
    if isinstance(f.decay, Exponential):
        scale = 1.0 / (1.0 + f.decay.rate / xs)
    else:
        scale = np.ones_like(xs)
    if alpha > 0:
        wA = np.minimum(U - L, scale)
        M = L + wA
    else:
        M = np.where(L >= scale, L, np.minimum(U, scale))
        M = np.maximum(M, L)
    use_log_a = (alpha == 0) & (L > 0) & (M > 4 * L)
    safe_L = np.where(L > 0, L, 1.0)
    span_a = np.where(use_log_a, np.log(np.where(use_log_a, M / safe_L, 1.0)), 0.0)
    k = 1.0 / (1.0 - alpha)
    inv_x = 1.0 / xs
    pref_pow = k * wA ** (1.0 - alpha) * xs ** (alpha - 1.0) if alpha > 0 else None

    finite_u = np.isfinite(U)
    use_log_b = finite_u & (M > 0) & (U > 64 * np.where(M > 0, M, 1.0))
    safe_M = np.where(M > 0, M, 1.0)
    span_b = np.where(use_log_b, np.log(np.where(use_log_b, U / safe_M, 1.0)), 0.0)
    width_b = np.where(finite_u, np.maximum(U - M, 0.0), 0.0)

    def kernel(sigma):
        with np.errstate(over="ignore", under="ignore"):
            y = sigma * inv_x
            return fn(y) * np.exp(-(sigma - L)) * inv_x

    def piece_a(t):
        t = t[:, None]
        if alpha > 0:
            with np.errstate(under="ignore"):
                d = wA * t ** k
            e = np.maximum(d * inv_x, _SING_CLAMP)
            return pref_pow * e ** alpha * fn(s0 + e) * np.exp(-d)
        logs = L * np.exp(span_a * t)
        lin = L + (M - L) * t
        sigma = np.where(use_log_a, logs, lin)
        jac = np.where(use_log_a, logs * span_a, M - L)
        return np.where(M > L, kernel(sigma) * jac, 0.0)

    def piece_b(t):
        t = t[:, None]
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            semi = M + scale * t / (1.0 - t)
            semi_jac = scale / (1.0 - t) ** 2
            logs = M * np.exp(span_b * t)
            lin = M + width_b * t
            sigma = np.where(finite_u, np.where(use_log_b, logs, lin), semi)
            jac = np.where(finite_u, np.where(use_log_b, logs * span_b, width_b), semi_jac)
            sigma = np.minimum(sigma, 1e300)
            v = kernel(sigma) * jac
        v = np.where(np.isfinite(v), v, 0.0)
        return np.where(finite_u & (U <= M), 0.0, v)

    g, edges = _stack([piece_a, piece_b],
                      [_power_breaks(k) if alpha > 0 else _GEOMETRIC_BREAKS, _UNIT_BREAKS])
    v, e, n = _adaptive(g, edges, tol, _atol(tol), budget,
                        what=f"Laplace transform of {f.label}")
    with np.errstate(under="ignore"):
        damp = np.exp(-L)
    return LaplaceValues(v * damp, e * damp, int(n))


def laplace_point(f: TestFunction, x: float, tol: float = DEFAULT_TOL,
                  budget: int = EVAL_BUDGET) -> QuadratureResult:
    """``Lf(x)``; ``x = 0`` is allowed only for integrable ``f`` (gives ``int f``)."""
    _check_tol(tol)
    x = float(x)
    if x < 0 or math.isnan(x) or math.isinf(x):
        raise InvalidInterval(f"Laplace transform point must be finite and >= 0, got {x}")
    if x == 0:
        if not f.integrable:
            raise Divergent(f"Lf(0) = int {f.label} diverges")
        return integrate(f, FullHalfLine(), tol, budget)
    r = laplace_values(f, [x], tol, budget)
    return QuadratureResult(float(r.values[0]), float(r.errors[0]), max(r.evaluations, 1))


def _domain_interval(domain: DomainSpec) -> Tuple[float, float]:
    if not isinstance(domain, (FullHalfLine, Bounded, Tail)):
        raise TypeError(f"not a domain: {domain!r}")
    return domain.interval


def _sup(F, lo, hi, alpha, what):
    """Essential sup of |F| on [lo, hi] by log-spaced sampling plus golden-section."""
    if alpha > 0:
        return math.inf
    top = hi if math.isfinite(hi) else max(lo, 1.0) * 1e12
    width = top - lo
    offsets = np.geomspace(width * 1e-24, width, _SUP_SAMPLES - 1)
    xs = np.concatenate([[lo], lo + offsets])
    xs = xs[xs <= top]
    vals = np.abs(np.asarray(F(xs), dtype=float))
    if not np.all(np.isfinite(vals)):
        raise NonConvergence(f"{what}: non-finite samples while searching the supremum")
    i = int(np.argmax(vals))
    best = float(vals[i])
    left, right = xs[max(i - 1, 0)], xs[min(i + 1, xs.size - 1)]
    invphi = (math.sqrt(5) - 1) / 2
    c = right - invphi * (right - left)
    d = left + invphi * (right - left)
    fc = float(abs(F(np.array([c]))[0]))
    fd = float(abs(F(np.array([d]))[0]))
    for _ in range(60):
        if right - left <= 1e-14 * max(abs(right), 1e-300):
            break
        if fc > fd:
            right, d, fd = d, c, fc
            c = right - invphi * (right - left)
            fc = float(abs(F(np.array([c]))[0]))
        else:
            left, c, fc = c, d, fd
            d = left + invphi * (right - left)
            fd = float(abs(F(np.array([d]))[0]))
        best = max(best, fc, fd)
    return best


def lp_norm(f: TestFunction, domain: DomainSpec, p: ExponentLike,
            tol: float = DEFAULT_TOL, budget: int = EVAL_BUDGET) -> float:
    """``(int_domain |f|**p)**(1/p)``, or the essential sup when ``p = inf``."""
    _check_tol(tol)
    p = LebesgueExponent.of(p)
    lo, hi = _domain_interval(domain)
    s0, s1 = f.support
    a, b = max(lo, s0), min(hi, s1)
    alpha = f.alpha if a == s0 else 0.0
    what = f"L^{p} norm of {f.label}"
    if b <= a:
        return 0.0
    if p.is_infinite:
        return _sup(f.fn, a, b, alpha, what)
    pv = p.value
    F = lambda x: np.abs(f.fn(x)) ** pv
    v, _, _ = _integrate_scalar(F, a, b, alpha * pv, f.decay.scaled(pv), tol / pv,
                                _atol(tol), budget, what)
    return float(v) ** (1.0 / pv)


def transform_metadata(f: TestFunction) -> Tuple[float, Decay]:
    """Singularity exponent at 0 and decay at infinity of ``x -> Lf(x)``."""
    d = f.decay
    if isinstance(d, PowerLaw) and math.isinf(f.support[1]) and d.beta < 1:
        alpha = 1.0 - d.beta
    else:
        alpha = 0.0
    s0 = f.support[0]
    decay = Exponential(s0) if s0 > 0 else PowerLaw(1.0 - f.alpha)
    return alpha, decay


def laplace_lq_norm(f: TestFunction, domain: DomainSpec, q: ExponentLike,
                    tol: float = DEFAULT_TOL, budget: int = EVAL_BUDGET) -> float:
    """``||Lf||`` in ``L^q(domain)``; the inner transforms run at ``tol/10``."""
    _check_tol(tol)
    q = LebesgueExponent.of(q)
    lo, hi = _domain_interval(domain)
    inner = tol / 10
    alpha_t, decay_t = transform_metadata(f)
    alpha = alpha_t if lo == 0 else 0.0
    what = f"L^{q} norm of L[{f.label}]"

    def Lf(x):
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        out = np.empty_like(flat)
        pos = flat > 0
        out[pos] = laplace_values(f, flat[pos], inner, budget).values
        if not pos.all():
            out[~pos] = laplace_point(f, 0.0, inner, budget).value
        return out.reshape(x.shape)

    if q.is_infinite:
        if alpha > 0:
            raise Divergent(f"{what}: transform is unbounded near 0")
        return _sup(Lf, max(lo, 0.0), hi, 0.0, what)
    qv = q.value
    F = lambda x: np.abs(Lf(x)) ** qv
    v, _, _ = _integrate_scalar(F, lo, hi, alpha * qv, decay_t.scaled(qv), tol / qv,
                                _atol(tol), budget, what)
    return float(v) ** (1.0 / qv)
