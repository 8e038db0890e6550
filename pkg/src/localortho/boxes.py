"""Standard behaviors, k-copy products and noise thresholds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapacityExceeded, InvalidParameter, NoViolationInRange, ScenarioMismatch
from .inequalities import LOInequality
from .scenario import Behavior, Event, Scenario, as_rational, uniform_box

MAX_PRODUCT_EVENTS = 2**16
CHSH_TSIRELSON_Q = 2**-0.5  # comparison constant only

BIPARTITE = Scenario(2, 2, 2)


def pr_box() -> Behavior:
    half, zero = Fraction(1, 2), Fraction(0)
    return Behavior.from_function(
        BIPARTITE, lambda e: half if (e.outcomes[0] ^ e.outcomes[1]) == (e.settings[0] & e.settings[1]) else zero
    )


def zeros_box(scenario: Scenario = BIPARTITE) -> Behavior:
    """Deterministic box answering 0 to every setting."""
    return Behavior.from_function(scenario, lambda e: Fraction(int(not any(e.outcomes))))


def _check_unit(*params: Fraction) -> None:
    if any(p < 0 for p in params) or sum(params) > 1:
        raise InvalidParameter(f"parameters {tuple(map(str, params))} outside the unit simplex")


def noisy_pr(q) -> Behavior:
    """``q PR + (1 - q) uniform``."""
    q = as_rational(q)
    _check_unit(q)
    pr, flat = pr_box(), uniform_box(BIPARTITE)
    return Behavior(BIPARTITE, tuple(q * p + (1 - q) * u for p, u in zip(pr.table, flat.table)))


def fig4_family(xi, gamma) -> Behavior:
    """``xi PR + gamma P_L + (1 - xi - gamma) uniform`` with ``P_L`` the all-zeros box."""
    xi, gamma = as_rational(xi), as_rational(gamma)
    _check_unit(xi, gamma)
    rest = 1 - xi - gamma
    tables = zip(pr_box().table, zeros_box().table, uniform_box(BIPARTITE).table)
    return Behavior(BIPARTITE, tuple(xi * p + gamma * z + rest * u for p, z, u in tables))


def product_scenario(factors: Sequence[Scenario]) -> Scenario:
    ms = {s.m for s in factors}
    ds = {s.d for s in factors}
    if len(ms) != 1 or len(ds) != 1:
        raise ScenarioMismatch("tensor factors must share the numbers of settings and outcomes")
    scenario = Scenario(sum(s.n for s in factors), ms.pop(), ds.pop())
    if scenario.event_count > MAX_PRODUCT_EVENTS:
        raise CapacityExceeded(f"product scenario {scenario} exceeds {MAX_PRODUCT_EVENTS} events")
    return scenario


def tensor_product(factors: Sequence[Behavior]) -> Behavior:
    """Boxes side by side; parties are ordered factor-major (A1 B1 A2 B2 ...)."""
    if not factors:
        raise InvalidParameter("need at least one factor")
    scenario = product_scenario([b.scenario for b in factors])
    tensor = reduce(np.multiply.outer, (b.tensor() for b in factors))
    return Behavior(scenario, tuple(tensor.ravel()))


def power(b: Behavior, copies: int) -> Behavior:
    return tensor_product([b] * copies)


@dataclass(frozen=True)
class LinearFamily:
    """Behaviors ``(1 - q) at_zero + q at_one`` for ``q`` in [0, 1]."""

    at_zero: Behavior
    at_one: Behavior

    def __post_init__(self):
        if self.at_zero.scenario != self.at_one.scenario:
            raise ScenarioMismatch("family endpoints live in different scenarios")

    @property
    def scenario(self) -> Scenario:
        return self.at_zero.scenario

    def __call__(self, q) -> Behavior:
        q = as_rational(q)
        _check_unit(q)
        return Behavior(self.scenario, tuple((1 - q) * a + q * b for a, b in zip(self.at_zero.table, self.at_one.table)))


def noisy_pr_family() -> LinearFamily:
    return LinearFamily(uniform_box(BIPARTITE), pr_box())


# Polynomials are lists of Fraction coefficients, lowest degree first.

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_add(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def poly_eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_rem(p, q):
    p = list(p)
    while len(p) >= len(q):
        f = p[-1] / q[-1]
        shift = len(p) - len(q)
        for i, c in enumerate(q):
            p[shift + i] -= f * c
        p = _trim(p[:-1])
    return p


def sturm_sequence(p):
    seq = [_trim(list(p))]
    deriv = _trim([i * c for i, c in enumerate(p)][1:])
    if deriv:
        seq.append(deriv)
    while len(seq[-1]) > 1:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x: Fraction) -> int:
    signs = [v for v in (poly_eval(p, x) for p in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in ``(lo, hi]`` (requires ``p(lo) != 0``)."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def lhs_polynomial(family: LinearFamily, ineq: LOInequality, copies: int) -> list[Fraction]:
    """Left-hand side of ``ineq`` on ``copies`` copies of ``family(q)``, as a polynomial in q."""
    base = family.scenario
    expected = product_scenario([base] * copies)
    if ineq.scenario != expected:
        raise ScenarioMismatch(f"inequality lives on {ineq.scenario}, {copies} copies of {base} give {expected}")
    total = [Fraction(0)]
    n = base.n
    for e in ineq.events:
        term = [Fraction(1)]
        for j in range(copies):
            part = Event(e.outcomes[j * n:(j + 1) * n], e.settings[j * n:(j + 1) * n])
            a, b = family.at_zero[part], family.at_one[part]
            term = poly_mul(term, [a, b - a])
        total = poly_add(total, term)
    return _trim(total) or [Fraction(0)]


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)


def lo_threshold(family: LinearFamily, ineq: LOInequality, copies: int, width=Fraction(1, 10**4)) -> Interval:
    """Bracket the smallest ``q`` in (0, 1] with LHS(q) = 1.

    Root counting uses a Sturm sequence of the exact polynomial LHS(q) - 1,
    and the bracket is halved until narrower than ``width``.
    """
    p = poly_add(lhs_polynomial(family, ineq, copies), [Fraction(-1)])
    p = _trim(p)
    if not p:
        raise NoViolationInRange("LHS(q) = 1 identically; no crossing")
    while p[0] == 0:  # root at q = 0 lies outside (0, 1]
        p = p[1:]
    seq = sturm_sequence(p)
    lo, hi = Fraction(0), Fraction(1)
    if count_roots(seq, lo, hi) == 0:
        raise NoViolationInRange(f"LHS(q) never reaches 1 for q in (0, 1] ({ineq.scenario}, {copies} copies)")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if poly_eval(p, mid) != 0 and count_roots(seq, lo, mid) == 0:
            lo = mid
        else:
            hi = mid
    return Interval(lo, hi)
