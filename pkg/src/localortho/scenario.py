"""Bell scenarios, events and behaviors (boxes) with exact rational entries.

Events are indexed party-major, setting-then-outcome: party ``i`` contributes
the digit ``settings[i] * d + outcomes[i]`` in base ``m * d``, party 0 being
the most significant digit.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidBehavior, InvalidEvent, InvalidScenario, ScenarioMismatch

MAX_EVENT_COUNT = 2**32

Rational = Fraction


def as_rational(value) -> Fraction:
    """Parse ``"p/q"``, an int, or a Fraction into a Fraction (floats are refused)."""
    if isinstance(value, float):
        raise InvalidBehavior(f"floats are not exact, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidBehavior(f"not a rational: {value!r}") from exc


@dataclass(frozen=True, order=True)
class Scenario:
    n_parties: int
    n_settings: int
    n_outcomes: int

    def __post_init__(self):
        n, m, d = self.n_parties, self.n_settings, self.n_outcomes
        if not all(isinstance(v, int) for v in (n, m, d)):
            raise InvalidScenario("scenario entries must be integers")
        if n < 1 or m < 1 or d < 2:
            raise InvalidScenario(f"need n >= 1, m >= 1, d >= 2; got ({n},{m},{d})")
        if (m * d) ** n > MAX_EVENT_COUNT:
            raise InvalidScenario(f"scenario ({n},{m},{d}) has more than 2^32 events")

    @classmethod
    def parse(cls, text: str) -> "Scenario":
        try:
            n, m, d = (int(t) for t in text.replace(" ", "").split(","))
        except ValueError as exc:
            raise InvalidScenario(f"expected 'n,m,d', got {text!r}") from exc
        return cls(n, m, d)

    @property
    def n(self) -> int:
        return self.n_parties

    @property
    def m(self) -> int:
        return self.n_settings

    @property
    def d(self) -> int:
        return self.n_outcomes

    @property
    def event_count(self) -> int:
        return (self.m * self.d) ** self.n

    @property
    def setting_count(self) -> int:
        """Number of joint settings, m^n."""
        return self.m**self.n

    def __str__(self) -> str:
        return f"({self.n},{self.m},{self.d})"

    def events(self) -> Iterator["Event"]:
        for k in range(self.event_count):
            yield event_from_index(self, k)

    def joint_settings(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.m), repeat=self.n)

    def joint_outcomes(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.d), repeat=self.n)

    @cached_property
    def settings_array(self) -> np.ndarray:
        """``(event_count, n)`` array of each event's settings."""
        digits = self._digits()
        return digits // self.d

    @cached_property
    def outcomes_array(self) -> np.ndarray:
        digits = self._digits()
        return digits % self.d

    def _digits(self) -> np.ndarray:
        base = self.m * self.d
        idx = np.arange(self.event_count, dtype=np.int64)
        cols = [(idx // base ** (self.n - 1 - i)) % base for i in range(self.n)]
        return np.stack(cols, axis=1)


@dataclass(frozen=True, order=True)
class Event:
    """Outcomes ``a`` obtained for settings ``x``, written ``a1..an|x1..xn``."""

    outcomes: tuple[int, ...]
    settings: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(int(a) for a in self.outcomes))
        object.__setattr__(self, "settings", tuple(int(x) for x in self.settings))
        if len(self.outcomes) != len(self.settings):
            raise InvalidEvent("outcome and setting vectors differ in length")

    @classmethod
    def parse(cls, text: str) -> "Event":
        try:
            a, x = text.strip().split("|")
            return cls(tuple(int(c) for c in a.strip()), tuple(int(c) for c in x.strip()))
        except ValueError as exc:
            raise InvalidEvent(f"cannot parse event {text!r}") from exc

    def __str__(self) -> str:
        return "".join(map(str, self.outcomes)) + "|" + "".join(map(str, self.settings))

    @property
    def n_parties(self) -> int:
        return len(self.outcomes)


def check_event(scenario: Scenario, e: Event) -> None:
    if e.n_parties != scenario.n:
        raise InvalidEvent(f"event {e} has {e.n_parties} parties, scenario {scenario} has {scenario.n}")
    for x, a in zip(e.settings, e.outcomes):
        if not (0 <= x < scenario.m and 0 <= a < scenario.d):
            raise InvalidEvent(f"event {e} out of range for scenario {scenario}")


def event_index(scenario: Scenario, e: Event) -> int:
    check_event(scenario, e)
    base = scenario.m * scenario.d
    k = 0
    for x, a in zip(e.settings, e.outcomes):
        k = k * base + x * scenario.d + a
    return k


def event_from_index(scenario: Scenario, k: int) -> Event:
    if not 0 <= k < scenario.event_count:
        raise InvalidEvent(f"index {k} out of range for scenario {scenario}")
    base = scenario.m * scenario.d
    digits = []
    for _ in range(scenario.n):
        k, r = divmod(k, base)
        digits.append(r)
    digits.reverse()
    return Event(tuple(t % scenario.d for t in digits), tuple(t // scenario.d for t in digits))


@dataclass(frozen=True)
class Behavior:
    """Conditional distribution P(a|x), stored densely by event index."""

    scenario: Scenario
    table: tuple[Fraction, ...]

    def __post_init__(self):
        table = tuple(as_rational(p) for p in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.scenario.event_count:
            raise InvalidBehavior(
                f"table has {len(table)} entries, scenario {self.scenario} needs {self.scenario.event_count}"
            )
        if any(p < 0 for p in table):
            raise InvalidBehavior("negative probability")
        sums = self.blocks().sum(axis=-1)
        for x, s in zip(self.scenario.joint_settings(), sums.ravel()):
            if s != 1:
                raise InvalidBehavior(f"probabilities for settings {x} sum to {s}, not 1")

    def __getitem__(self, key: Event | int) -> Fraction:
        if isinstance(key, Event):
            key = event_index(self.scenario, key)
        return self.table[key]

    def blocks(self) -> np.ndarray:
        """Object array of shape ``(m,)*n + (d**n,)``: one row of outcomes per joint setting."""
        n, m, d = self.scenario.n, self.scenario.m, self.scenario.d
        arr = self.tensor()
        # (x1,a1,...,xn,an) -> (x1..xn, a1..an)
        arr = arr.transpose([2 * i for i in range(n)] + [2 * i + 1 for i in range(n)])
        return arr.reshape((m,) * n + (d**n,))

    def tensor(self) -> np.ndarray:
        """Object array indexed ``[x1, a1, x2, a2, ..., xn, an]``."""
        s = self.scenario
        arr = np.empty(len(self.table), dtype=object)
        arr[:] = self.table
        return arr.reshape((s.m, s.d) * s.n)

    @property
    def support(self) -> list[int]:
        return [k for k, p in enumerate(self.table) if p > 0]

    @classmethod
    def from_function(cls, scenario: Scenario, fn: Callable[[Event], object]) -> "Behavior":
        return cls(scenario, tuple(as_rational(fn(e)) for e in scenario.events()))

    def to_json(self) -> dict:
        s = self.scenario
        probs = {str(event_from_index(s, k)): str(p) for k, p in enumerate(self.table) if p != 0}
        return {"n": s.n, "m": s.m, "d": s.d, "P": probs}

    @classmethod
    def from_json(cls, doc: dict) -> "Behavior":
        try:
            scenario = Scenario(int(doc["n"]), int(doc["m"]), int(doc["d"]))
            entries = doc.get("P", {})
        except (KeyError, TypeError) as exc:
            raise InvalidBehavior(f"malformed behavior document: {exc}") from exc
        if scenario.m > 10 or scenario.d > 10:
            raise InvalidBehavior("digit-string keys need m, d <= 10")
        table = [Fraction(0)] * scenario.event_count
        for key, value in entries.items():
            k = event_index(scenario, Event.parse(key))
            table[k] = as_rational(value)
        return cls(scenario, tuple(table))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "Behavior":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise InvalidBehavior(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_json(doc)


def same_scenario(*items) -> Scenario:
    scenarios = {it.scenario for it in items}
    if len(scenarios) != 1:
        raise ScenarioMismatch(f"scenarios differ: {sorted(map(str, scenarios))}")
    return scenarios.pop()


def is_no_signaling(b: Behavior) -> bool:
    """Single-party NS test.

    For each party, the marginal of the remaining parties (their settings and
    outcomes fixed) must not depend on that party's setting.  Conditions on
    larger subsets follow by summing these.
    """
    s = b.scenario
    arr = b.tensor()
    for i in range(s.n):
        marginal = arr.sum(axis=2 * i + 1)  # sum out a_i; axis 2*i is now x_i
        marginal = np.moveaxis(marginal, 2 * i, 0)
        if any(np.any(marginal[x] != marginal[0]) for x in range(1, s.m)):
            return False
    return True


def uniform_box(scenario: Scenario) -> Behavior:
    p = Fraction(1, scenario.d**scenario.n)
    return Behavior(scenario, (p,) * scenario.event_count)


def deterministic_box(scenario: Scenario, strategy: Sequence[Sequence[int]]) -> Behavior:
    """Local deterministic box: party ``i`` answers ``strategy[i][x_i]``."""
    if len(strategy) != scenario.n or any(len(g) != scenario.m for g in strategy):
        raise InvalidBehavior("strategy must give one outcome per party and setting")
    if any(not 0 <= a < scenario.d for g in strategy for a in g):
        raise InvalidBehavior("strategy outcome out of range")
    one, zero = Fraction(1), Fraction(0)
    return Behavior.from_function(
        scenario,
        lambda e: one if all(strategy[i][x] == a for i, (x, a) in enumerate(zip(e.settings, e.outcomes))) else zero,
    )


def local_strategies(scenario: Scenario) -> Iterator[tuple[tuple[int, ...], ...]]:
    per_party = list(itertools.product(range(scenario.d), repeat=scenario.m))
    return itertools.product(per_party, repeat=scenario.n)


def mix(weights: Iterable[Fraction], boxes: Sequence[Behavior]) -> Behavior:
    """Convex combination of behaviors on one scenario."""
    weights = [as_rational(w) for w in weights]
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise InvalidBehavior("mixture weights must be nonnegative and sum to 1")
    scenario = same_scenario(*boxes)
    table = [sum((w * b.table[k] for w, b in zip(weights, boxes)), Fraction(0)) for k in range(scenario.event_count)]
    return Behavior(scenario, tuple(table))
