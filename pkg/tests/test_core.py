import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from laplace_lp.core import (
    Bounded,
    ContinuityVerdict,
    FullHalfLine,
    LebesgueExponent,
    Reason,
    Tail,
    classify,
    conjugate,
    on_duality_line,
    parse_domain,
    region_sweep,
)

INF = LebesgueExponent.of("inf")
DOMAINS = [Bounded(0.0, 1.0), Tail(1.0), FullHalfLine()]


@pytest.mark.parametrize("p, expected", [(2, 2.0), (1, math.inf), (3, 1.5), ("inf", 1.0)])
def test_conjugate_examples(p, expected):
    assert conjugate(p).value == expected


@pytest.mark.parametrize("bad", [0.5, -1, float("nan"), "-inf", "abc"])
def test_exponent_rejects_bad_values(bad):
    with pytest.raises(ValueError):
        LebesgueExponent.of(bad)


def test_exponent_rejects_non_numeric():
    with pytest.raises(TypeError):
        LebesgueExponent.of([2])


def test_infinity_is_exact():
    assert INF.is_infinite and INF.reciprocal == 0.0
    assert LebesgueExponent.of(float("inf")) == INF
    assert LebesgueExponent.of(1e300).exact is not None


@given(st.floats(min_value=1.0, max_value=1e12, allow_nan=False))
def test_conjugate_is_an_involution(x):
    p = LebesgueExponent.of(x)
    assert conjugate(conjugate(p)) == p


@given(st.floats(min_value=1.0, max_value=1e12, allow_nan=False))
def test_conjugate_reciprocals_sum_to_one(x):
    p = LebesgueExponent.of(x)
    assert p.exact_reciprocal + conjugate(p).exact_reciprocal == 1
    assert abs(p.reciprocal + conjugate(p).reciprocal - 1) < 1e-15


def test_conjugate_endpoints_swap():
    one = LebesgueExponent.of(1)
    assert conjugate(one) == INF and conjugate(INF) == one


@pytest.mark.parametrize("a, b", [(1, 1), (-1, 2), (0, math.inf)])
def test_bounded_validation(a, b):
    with pytest.raises(ValueError):
        Bounded(a, b)


@pytest.mark.parametrize("s", [0, -1, math.inf])
def test_tail_validation(s):
    with pytest.raises(ValueError):
        Tail(s)


def test_parse_domain():
    assert parse_domain("full") == FullHalfLine()
    assert parse_domain("bounded:0,1") == Bounded(0.0, 1.0)
    assert parse_domain(" Tail:2.5 ") == Tail(2.5)
    for bad in ("bounded:1", "tail:", "full:1", "ring:3", "bounded:2,1"):
        with pytest.raises(ValueError):
            parse_domain(bad)


@pytest.mark.parametrize("p, q, domain, continuous, reason", [
    (2, 2, Bounded(0, 1), True, Reason.HARDY_DUALITY_LINE),
    ("inf", 1, Tail(1), False, Reason.TRIVIAL_CONSTANT),
    (3, 1.5, Bounded(0, 1), False, Reason.COUNTEREXAMPLE_BLOWUP),
    (1, 1, Bounded(0, 1), True, Reason.HOLDER_LOCAL),
    (1, 1, Tail(1), False, Reason.SCALING_NECESSITY),
    (2, 4, Tail(1), True, Reason.TAIL_ESTIMATE),
    (3, 1.5, FullHalfLine(), False, Reason.BLOOM_FULL_LINE),
    (1.5, 3, FullHalfLine(), True, Reason.HARDY_DUALITY_LINE),
    (2, 3, FullHalfLine(), False, Reason.SCALING_NECESSITY),
    (1, "inf", FullHalfLine(), True, Reason.HARDY_DUALITY_LINE),
])
def test_classify_examples(p, q, domain, continuous, reason):
    v = classify(p, q, domain)
    assert (v.continuous, v.reason) == (continuous, reason)


def test_bounded_offset_classified_like_origin():
    for p, q in [(2, 2), (3, 1.5), (3, 1.2), (4, 2)]:
        assert classify(p, q, Bounded(0.5, 7)) == classify(p, q, Bounded(0, 7))


def test_verdict_reason_consistency_enforced():
    with pytest.raises(ValueError):
        ContinuityVerdict(True, Reason.SCALING_NECESSITY)
    with pytest.raises(ValueError):
        ContinuityVerdict(False, Reason.HOLDER_LOCAL)


def test_duality_line_tolerance():
    assert on_duality_line(3, 1.5)
    assert on_duality_line(3, 1.5 * (1 + 1e-14))
    assert not on_duality_line(3, 1.5 * (1 + 1e-9))


exponents = st.one_of(st.floats(min_value=1.0, max_value=1e6), st.just(math.inf))


@given(exponents)
def test_duality_line_above_two_is_discontinuous_everywhere(p):
    if p <= 2:
        return
    q = conjugate(p)
    for d in DOMAINS:
        assert not classify(p, q, d).continuous


@given(exponents, exponents)
def test_full_line_implies_both_pieces(p, q):
    if classify(p, q, FullHalfLine()).continuous:
        assert classify(p, q, Bounded(0, 1)).continuous
        assert classify(p, q, Tail(1)).continuous


@given(st.fractions(min_value=0, max_value=1), st.fractions(min_value=0, max_value=1),
       st.fractions(min_value=0, max_value=1), st.fractions(min_value=0, max_value=1))
def test_bounded_region_is_monotone(a, b, da, db):
    rp, rq = a, b
    rp2, rq2 = min(Fraction(1), a + da), min(Fraction(1), b + db)
    P = LebesgueExponent.from_reciprocal
    if classify(P(rp), P(rq), Bounded(0, 1)).continuous and rp2 + rq2 > 1:
        assert classify(P(rp2), P(rq2), Bounded(0, 1)).continuous


def _continuous_set(points):
    return {(float(a), float(b)) for a, b, v in points if v.continuous}


def test_region_sweep_half_step_bounded():
    pts = region_sweep(0.5, Bounded(0, 1))
    assert len(pts) == 9
    # (1/2, 1) has 1/p + 1/q = 3/2 > 1, so it sits inside the shaded triangle.
    assert _continuous_set(pts) == {(1, 1), (1, 0.5), (0.5, 0.5), (1, 0), (0.5, 1)}
    assert {(0, 0), (0.5, 0), (0, 0.5), (0, 1)}.isdisjoint(_continuous_set(pts))


def test_region_sweep_half_step_tail():
    pts = region_sweep(0.5, Tail(1))
    assert _continuous_set(pts) == {(0, 0), (0.5, 0), (0, 0.5), (0.5, 0.5), (1, 0)}


def test_region_sweep_full_line_corners():
    pts = region_sweep(1, FullHalfLine())
    assert _continuous_set(pts) == {(1, 0)}


def test_region_sweep_order_and_exactness():
    pts = region_sweep(0.25, Tail(1))
    assert len(pts) == 25
    assert [(a, b) for a, b, _ in pts[:6]] == [
        (Fraction(i, 4), Fraction(0)) for i in range(5)] + [(Fraction(0), Fraction(1, 4))]


@pytest.mark.parametrize("step", [0, 0.3, 1.5])
def test_region_sweep_rejects_bad_steps(step):
    with pytest.raises(ValueError):
        region_sweep(step, Tail(1))
