"""No-signaling polytope: equality system and exact maximization over it."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .lp import ExactLP, Tableau, feasible_tableau, maximize_from
from .scenario import Behavior, Event, Scenario, event_index


def _ns_integer_rows(scenario: Scenario) -> tuple[np.ndarray, np.ndarray]:
    """Normalization rows (rhs 1) followed by single-party NS rows (rhs 0)."""
    n, m, d = scenario.n, scenario.m, scenario.d
    rows, rhs = [], []
    for xs in scenario.joint_settings():
        row = np.zeros(scenario.event_count, dtype=np.int64)
        for as_ in scenario.joint_outcomes():
            row[event_index(scenario, Event(as_, xs))] = 1
        rows.append(row)
        rhs.append(1)
    for i in range(n):
        for x, x2 in itertools.combinations(range(m), 2):
            for other_x in itertools.product(range(m), repeat=n - 1):
                for other_a in itertools.product(range(d), repeat=n - 1):
                    row = np.zeros(scenario.event_count, dtype=np.int64)
                    for a in range(d):
                        outcomes = other_a[:i] + (a,) + other_a[i:]
                        row[event_index(scenario, Event(outcomes, other_x[:i] + (x,) + other_x[i:]))] += 1
                        row[event_index(scenario, Event(outcomes, other_x[:i] + (x2,) + other_x[i:]))] -= 1
                    rows.append(row)
                    rhs.append(0)
    return np.array(rows), np.array(rhs)


@lru_cache(maxsize=None)
def ns_matrix(scenario: Scenario) -> tuple[np.ndarray, np.ndarray]:
    A, b = _ns_integer_rows(scenario)
    A.setflags(write=False)
    b.setflags(write=False)
    return A, b


def ns_constraint_system(scenario: Scenario, objective: Iterable | None = None) -> ExactLP:
    """Equality system of the NS polytope (redundant rows included)."""
    A, b = ns_matrix(scenario)
    c = [Fraction(0)] * scenario.event_count if objective is None else list(objective)
    return ExactLP(c, [[Fraction(int(v)) for v in row] for row in A], [Fraction(int(v)) for v in b])


@lru_cache(maxsize=8)
def _ns_tableau(scenario: Scenario) -> Tableau:
    lp = ns_constraint_system(scenario)
    return feasible_tableau(lp.eq_rows, lp.rhs, lp.n_vars)


def ns_maximize(scenario: Scenario, objective) -> tuple[Fraction, Behavior]:
    """Maximum of ``objective . P`` over NS behaviors, with an optimal vertex box."""
    value, x = maximize_from(_ns_tableau(scenario), [Fraction(c) for c in objective])
    return value, Behavior(scenario, tuple(x))


def ns_max(ineq) -> Fraction:
    """Exact maximum of an LO inequality's left-hand side over the NS polytope."""
    return ns_argmax(ineq)[0]


def ns_argmax(ineq) -> tuple[Fraction, Behavior]:
    c = [Fraction(0)] * ineq.scenario.event_count
    for k in ineq.indices:
        c[k] = Fraction(1)
    return ns_maximize(ineq.scenario, c)


def random_ns_vertex(scenario: Scenario, rng: random.Random, spread: int = 5) -> Behavior:
    """An NS vertex picked by maximizing a random integer objective."""
    c = [Fraction(rng.randint(-spread, spread)) for _ in range(scenario.event_count)]
    return ns_maximize(scenario, c)[1]
