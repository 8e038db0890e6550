from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from localortho.boxes import (
    LinearFamily,
    count_roots,
    fig4_family,
    lhs_polynomial,
    lo_threshold,
    noisy_pr,
    noisy_pr_family,
    poly_eval,
    poly_mul,
    power,
    pr_box,
    sturm_sequence,
    tensor_product,
    zeros_box,
)
from localortho.errors import CapacityExceeded, InvalidParameter, NoViolationInRange, ScenarioMismatch
from localortho.inequalities import bundled_inequality, evaluate, gyni
from localortho.scenario import Event, Scenario, is_no_signaling, uniform_box

fractions01 = st.fractions(min_value=0, max_value=1, max_denominator=50)


def test_pr_box_entries():
    b = pr_box()
    assert b[Event.parse("00|00")] == Fraction(1, 2)
    assert b[Event.parse("01|11")] == Fraction(1, 2)
    assert b[Event.parse("00|11")] == 0


def test_fig4_endpoints():
    assert fig4_family(1, 0) == pr_box()
    assert fig4_family(0, 1) == zeros_box()
    assert fig4_family(0, 0) == uniform_box(Scenario(2, 2, 2))
    with pytest.raises(InvalidParameter):
        fig4_family(Fraction(2, 3), Fraction(1, 2))
    with pytest.raises(InvalidParameter):
        noisy_pr(Fraction(-1, 2))


@given(fractions01, fractions01)
def test_fig4_family_is_ns(xi, gamma):
    if xi + gamma > 1:
        return
    assert is_no_signaling(fig4_family(xi, gamma))


def test_tensor_product_order():
    # factor-major: parties are (A1, B1, A2, B2)
    b = tensor_product([pr_box(), zeros_box()])
    assert b.scenario == Scenario(4, 2, 2)
    assert b[Event.parse("0000|0000")] == Fraction(1, 2)
    assert b[Event.parse("1100|0000")] == Fraction(1, 2)
    assert b[Event.parse("0011|0000")] == 0


@given(fractions01, fractions01)
def test_tensor_product_entries_multiply(p, q):
    b = tensor_product([noisy_pr(p), noisy_pr(q)])
    e = Event.parse("0110|1101")
    assert b[e] == noisy_pr(p)[Event.parse("01|11")] * noisy_pr(q)[Event.parse("10|01")]
    assert is_no_signaling(b)


def test_tensor_capacity():
    with pytest.raises(CapacityExceeded):
        power(pr_box(), 5)


def test_polynomial_helpers():
    p = poly_mul([Fraction(-1), Fraction(1)], [Fraction(-1, 2), Fraction(1)])  # (q - 1)(q - 1/2)
    assert poly_eval(p, Fraction(1, 2)) == 0
    seq = sturm_sequence(p)
    assert count_roots(seq, Fraction(0), Fraction(1)) == 2
    assert count_roots(seq, Fraction(0), Fraction(3, 4)) == 1


def test_ten_event_polynomial():
    poly = lhs_polynomial(noisy_pr_family(), bundled_inequality("ten_event"), 2)
    assert poly == [Fraction(5, 8), Fraction(1, 4), Fraction(3, 8)]


@given(fractions01)
def test_polynomial_matches_direct_evaluation(q):
    ineq = bundled_inequality("five_event")
    poly = lhs_polynomial(noisy_pr_family(), ineq, 2)
    assert poly_eval(poly, q) == evaluate(ineq, power(noisy_pr(q), 2))


@pytest.mark.parametrize("name, root", [("ten_event", 0.72075922), ("five_event", 0.78885438)])
def test_thresholds(name, root):
    ineq = bundled_inequality(name)
    iv = lo_threshold(noisy_pr_family(), ineq, 2)
    assert iv.hi - iv.lo <= Fraction(1, 10**4)
    assert iv.lo <= root <= iv.hi
    assert evaluate(ineq, power(noisy_pr(iv.lo), 2)) < 1 <= evaluate(ineq, power(noisy_pr(iv.hi), 2))


def test_threshold_without_crossing():
    family = LinearFamily(uniform_box(Scenario(3, 2, 2)), uniform_box(Scenario(3, 2, 2)))
    with pytest.raises(NoViolationInRange):
        lo_threshold(family, gyni(3), 1)


def test_threshold_scenario_mismatch():
    with pytest.raises(ScenarioMismatch):
        lo_threshold(noisy_pr_family(), gyni(3), 2)
