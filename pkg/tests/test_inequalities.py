import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from localortho.boxes import pr_box, power
from localortho.errors import (
    InvalidArity,
    InvalidSymmetry,
    NotAnLOInequality,
    ScenarioMismatch,
)
from localortho.inequalities import (
    BUNDLED,
    LOInequality,
    SymmetryOp,
    apply_symmetry,
    bundled_inequality,
    evaluate,
    gyni,
    load_inequality,
    parse_inequality,
    relabel_behavior,
)
from localortho.nspolytope import random_ns_vertex
from localortho.scenario import Event, Scenario, is_no_signaling, uniform_box

from .helpers import symmetry_ops

S322 = Scenario(3, 2, 2)


def test_gyni3_events():
    g = gyni(3)
    assert {str(e) for e in g.events} == {"000|000", "110|011", "011|101", "101|110"}
    assert g.bound == 1


@pytest.mark.parametrize("n", [1, 2, 4])
def test_gyni_arity(n):
    with pytest.raises(InvalidArity):
        gyni(n)


def test_gyni5_is_lo():
    assert len(gyni(5)) == 16


def test_non_orthogonal_rejected():
    with pytest.raises(NotAnLOInequality):
        LOInequality(Scenario(2, 2, 2), (Event.parse("00|00"), Event.parse("00|11")))


@pytest.mark.parametrize("name, size, scenario", [("gyni", 4, (3, 2, 2)), ("five_event", 5, (4, 2, 2)), ("ten_event", 10, (4, 2, 2))])
def test_bundled(name, size, scenario):
    ineq = bundled_inequality(name)
    assert len(ineq) == size and ineq.scenario == Scenario(*scenario)


def test_bundled_gyni_is_gyni3():
    assert bundled_inequality("gyni") == gyni(3)


def test_pr_squared_values():
    b = power(pr_box(), 2)
    assert evaluate(bundled_inequality("five_event"), b) == Fraction(5, 4)
    assert evaluate(bundled_inequality("ten_event"), b) == Fraction(5, 4)


def test_text_roundtrip(tmp_path):
    for name in BUNDLED:
        ineq = bundled_inequality(name)
        path = tmp_path / f"{name}.txt"
        ineq.save(path)
        assert load_inequality(path) == ineq


def test_parse_without_header_needs_scenario():
    text = "000|000\n011|101\n101|110\n110|011\n"
    assert parse_inequality(text, S322) == gyni(3)
    with pytest.raises(Exception):
        parse_inequality(text)


def test_evaluate_scenario_mismatch():
    with pytest.raises(ScenarioMismatch):
        evaluate(gyni(3), pr_box())


def test_uniform_value_is_size_over_outcomes():
    assert evaluate(bundled_inequality("ten_event"), uniform_box(Scenario(4, 2, 2))) == Fraction(10, 16)


def test_symmetry_validation():
    with pytest.raises(InvalidSymmetry):
        SymmetryOp((0, 0), ((0, 1), (0, 1)), (((0, 1), (0, 1)),) * 2)
    op = SymmetryOp.identity(Scenario(2, 2, 2))
    with pytest.raises(InvalidSymmetry):
        apply_symmetry(op, gyni(3))


@given(symmetry_ops(3, 2, 2), symmetry_ops(3, 2, 2))
def test_symmetry_group_laws(f, g):
    e = Event.parse("011|101")
    assert f.compose(g).apply_event(e) == f.apply_event(g.apply_event(e))
    assert f.inverse().apply_event(f.apply_event(e)) == e
    assert f.compose(f.inverse()) == SymmetryOp.identity(S322)


@given(symmetry_ops(3, 2, 2))
def test_symmetry_preserves_lo(op):
    assert len(apply_symmetry(op, gyni(3))) == 4


@given(symmetry_ops(3, 2, 2), st.integers(0, 2**32))
def test_evaluate_is_relabeling_invariant(op, seed):
    b = random_ns_vertex(S322, random.Random(seed))
    b2 = relabel_behavior(op, b)
    assert is_no_signaling(b2)
    assert evaluate(apply_symmetry(op, gyni(3)), b2) == evaluate(gyni(3), b)
