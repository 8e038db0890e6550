import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from localortho.errors import InvalidBehavior, InvalidEvent, InvalidScenario
from localortho.scenario import (
    Behavior,
    Event,
    Scenario,
    deterministic_box,
    event_from_index,
    event_index,
    is_no_signaling,
    local_strategies,
    mix,
    uniform_box,
)
from localortho.boxes import fig4_family, noisy_pr, pr_box, tensor_product

from .oracles import marginal_no_signaling

small_scenarios = st.builds(
    Scenario, st.integers(1, 3), st.integers(1, 3), st.integers(2, 3)
)


@pytest.mark.parametrize(
    "scenario, event, expected",
    [
        ((2, 2, 2), "00|00", 0),
        ((2, 2, 2), "11|11", 15),
        ((3, 2, 2), "000|000", 0),
    ],
)
def test_event_index_examples(scenario, event, expected):
    assert event_index(Scenario(*scenario), Event.parse(event)) == expected


def test_event_index_rejects_out_of_range():
    with pytest.raises(InvalidEvent):
        event_index(Scenario(2, 2, 2), Event((0, 2), (0, 0)))
    with pytest.raises(InvalidEvent):
        event_index(Scenario(2, 2, 2), Event((0, 0), (2, 0)))
    with pytest.raises(InvalidEvent):
        event_index(Scenario(3, 2, 2), Event((0, 0), (0, 0)))


@given(small_scenarios, st.data())
def test_index_roundtrip(scenario, data):
    k = data.draw(st.integers(0, scenario.event_count - 1))
    assert event_index(scenario, event_from_index(scenario, k)) == k


def test_index_is_bijection_222():
    s = Scenario(2, 2, 2)
    assert sorted(event_index(s, e) for e in s.events()) == list(range(16))


@pytest.mark.parametrize("bad", [(0, 2, 2), (2, 0, 2), (2, 2, 1), (33, 2, 2)])
def test_scenario_validation(bad):
    with pytest.raises(InvalidScenario):
        Scenario(*bad)


def test_scenario_parse():
    assert Scenario.parse("3, 2,2") == Scenario(3, 2, 2)
    with pytest.raises(InvalidScenario):
        Scenario.parse("3,2")


@pytest.mark.parametrize("scenario, p", [((2, 2, 2), Fraction(1, 4)), ((3, 2, 2), Fraction(1, 8)), ((2, 2, 3), Fraction(1, 9))])
def test_uniform_box(scenario, p):
    b = uniform_box(Scenario(*scenario))
    assert set(b.table) == {p}
    assert is_no_signaling(b)


def test_pr_box_is_no_signaling():
    assert is_no_signaling(pr_box())


def test_signaling_box_detected():
    # Alice's outcome copies Bob's setting
    s = Scenario(2, 2, 2)
    b = Behavior.from_function(s, lambda e: Fraction(1, 2) if e.outcomes[0] == e.settings[1] else 0)
    assert not is_no_signaling(b)


def test_behavior_validation():
    s = Scenario(1, 1, 2)
    Behavior(s, (Fraction(1, 3), Fraction(2, 3)))
    with pytest.raises(InvalidBehavior):
        Behavior(s, (Fraction(-1, 3), Fraction(4, 3)))
    with pytest.raises(InvalidBehavior):
        Behavior(s, (Fraction(1, 3), Fraction(1, 3)))
    with pytest.raises(InvalidBehavior):
        Behavior(s, (0.5, 0.5))


def test_standard_boxes_are_no_signaling():
    s = Scenario(2, 2, 2)
    standard = [pr_box(), noisy_pr(Fraction(1, 3)), fig4_family(Fraction(1, 3), Fraction(1, 4)), uniform_box(s)]
    standard += [deterministic_box(s, strat) for strat in local_strategies(s)]
    standard.append(tensor_product([pr_box(), noisy_pr(Fraction(1, 2))]))
    assert all(is_no_signaling(b) for b in standard)


def _random_table(rng, scenario, signaling):
    """Random box; NS ones are mixtures of deterministic boxes, signaling ones are arbitrary."""
    if not signaling:
        strategies = list(local_strategies(scenario))
        picks = rng.sample(strategies, 3)
        w = [Fraction(rng.randint(1, 5)) for _ in picks]
        return mix([x / sum(w) for x in w], [deterministic_box(scenario, p) for p in picks]).table
    table = []
    for _ in scenario.joint_settings():
        raw = [Fraction(rng.randint(0, 4)) for _ in range(scenario.d**scenario.n)]
        raw[0] += 1
        table.append([r / sum(raw) for r in raw])
    # reorder from (settings-block, outcomes) to event index order
    out = [Fraction(0)] * scenario.event_count
    settings = list(scenario.joint_settings())
    outcomes = list(scenario.joint_outcomes())
    for si, xs in enumerate(settings):
        for oi, a in enumerate(outcomes):
            out[event_index(scenario, Event(a, xs))] = table[si][oi]
    return tuple(out)


@pytest.mark.parametrize("scenario", [Scenario(2, 2, 2), Scenario(3, 2, 2), Scenario(2, 3, 2)])
def test_single_party_ns_matches_full_definition(scenario):
    rng = random.Random(7)
    for trial in range(12):
        table = _random_table(rng, scenario, signaling=trial % 2 == 1)
        b = Behavior(scenario, table)
        assert is_no_signaling(b) == marginal_no_signaling(table, scenario.n, scenario.m, scenario.d)


def test_behavior_json_roundtrip(tmp_path):
    b = noisy_pr(Fraction(1, 3))
    path = tmp_path / "box.json"
    b.save(path)
    assert Behavior.load(path) == b
    doc = json.loads(path.read_text())
    assert doc["P"]["00|00"] == "1/3"


def test_behavior_json_missing_keys_default_to_zero():
    doc = {"n": 1, "m": 1, "d": 2, "P": {"0|0": "1"}}
    b = Behavior.from_json(doc)
    assert b.table == (1, 0)
    with pytest.raises(InvalidBehavior):
        Behavior.from_json({"n": 1, "m": 1, "d": 2, "P": {"0|0": "1/2"}})
