"""LO inequalities: sets of pairwise orthogonal events with bound 1."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArity, InvalidSymmetry, NotAnLOInequality, ScenarioMismatch, ValidationError
from .graph import are_orthogonal
from .scenario import Behavior, Event, Scenario, check_event, event_from_index, event_index

BUNDLED = {
    "gyni": "gyni3.txt",
    "five_event": "five_event.txt",
    "ten_event": "ten_event.txt",
}


@dataclass(frozen=True)
class LOInequality:
    scenario: Scenario
    events: tuple[Event, ...]
    bound: Fraction = Fraction(1)

    def __post_init__(self):
        events = tuple(sorted(set(self.events), key=lambda e: event_index(self.scenario, e)))
        object.__setattr__(self, "events", events)
        for e in events:
            check_event(self.scenario, e)
        for e, f in itertools.combinations(events, 2):
            if not are_orthogonal(e, f):
                raise NotAnLOInequality(f"events {e} and {f} are not orthogonal")
        if self.bound != 1:
            raise ValidationError("LO inequalities have bound 1")

    @classmethod
    def from_indices(cls, scenario: Scenario, indices: Iterable[int]) -> "LOInequality":
        return cls(scenario, tuple(event_from_index(scenario, k) for k in indices))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(event_index(self.scenario, e) for e in self.events)

    def __len__(self) -> int:
        return len(self.events)

    def coefficients(self) -> list[int]:
        c = [0] * self.scenario.event_count
        for k in self.indices:
            c[k] = 1
        return c

    def __str__(self) -> str:
        return " + ".join(f"P({e})" for e in self.events) + " <= 1"

    def to_text(self) -> str:
        s = self.scenario
        return f"# scenario {s.n},{s.m},{s.d}\n" + "".join(f"{e}\n" for e in self.events)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())


def parse_inequality(text: str, scenario: Scenario | None = None) -> LOInequality:
    """Read the ``# scenario n,m,d`` header plus one ``a..|x..`` event per line."""
    events = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("scenario"):
                declared = Scenario.parse(body[len("scenario"):])
                if scenario is not None and declared != scenario:
                    raise ScenarioMismatch(f"file declares {declared}, expected {scenario}")
                scenario = declared
            continue
        events.append(Event.parse(line))
    if scenario is None:
        raise ValidationError("inequality text lacks a '# scenario n,m,d' header")
    return LOInequality(scenario, tuple(events))


def load_inequality(path: str | Path, scenario: Scenario | None = None) -> LOInequality:
    return parse_inequality(Path(path).read_text(), scenario)


def bundled_inequality(name: str) -> LOInequality:
    """One of the shipped inequalities: ``gyni``, ``five_event``, ``ten_event``."""
    try:
        fname = BUNDLED[name]
    except KeyError:
        raise ValidationError(f"no bundled inequality {name!r}; choose from {sorted(BUNDLED)}") from None
    return parse_inequality(resources.files("localortho.data").joinpath(fname).read_text())


def evaluate(ineq: LOInequality, b: Behavior) -> Fraction:
    if ineq.scenario != b.scenario:
        raise ScenarioMismatch(f"inequality on {ineq.scenario}, behavior on {b.scenario}")
    return sum((b.table[k] for k in ineq.indices), Fraction(0))


def gyni(n: int) -> LOInequality:
    """Guess-your-neighbour's-input: events ``(a | a_n a_1 ... a_{n-1})`` for even-parity ``a``."""
    if n < 3 or n % 2 == 0:
        raise InvalidArity(f"GYNI needs odd n >= 3, got {n}")
    events = [
        Event(a, (a[-1],) + a[:-1]) for a in itertools.product((0, 1), repeat=n) if sum(a) % 2 == 0
    ]
    return LOInequality(Scenario(n, 2, 2), tuple(events))


@dataclass(frozen=True)
class SymmetryOp:
    """Relabeling of parties, settings and outcomes.

    Party ``i`` moves to position ``party_perm[i]``; its setting ``x`` becomes
    ``setting_perms[i][x]`` and its outcome ``a`` (under setting ``x``)
    becomes ``outcome_perms[i][x][a]``.
    """

    party_perm: tuple[int, ...]
    setting_perms: tuple[tuple[int, ...], ...]
    outcome_perms: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "party_perm", tuple(self.party_perm))
        object.__setattr__(self, "setting_perms", tuple(tuple(p) for p in self.setting_perms))
        object.__setattr__(self, "outcome_perms", tuple(tuple(tuple(p) for p in q) for q in self.outcome_perms))
        n = len(self.party_perm)
        if sorted(self.party_perm) != list(range(n)):
            raise InvalidSymmetry("party_perm is not a permutation")
        if len(self.setting_perms) != n or len(self.outcome_perms) != n:
            raise InvalidSymmetry("need one setting and outcome relabeling per party")
        ms = {len(p) for p in self.setting_perms}
        ds = {len(p) for q in self.outcome_perms for p in q}
        if len(ms) != 1 or len(ds) != 1 or any(len(q) != len(self.setting_perms[0]) for q in self.outcome_perms):
            raise InvalidSymmetry("relabelings must be homogeneous across parties")
        for p in self.setting_perms:
            if sorted(p) != list(range(len(p))):
                raise InvalidSymmetry("setting relabeling is not a permutation")
        for q in self.outcome_perms:
            for p in q:
                if sorted(p) != list(range(len(p))):
                    raise InvalidSymmetry("outcome relabeling is not a permutation")

    @property
    def shape(self) -> tuple[int, int, int]:
        return len(self.party_perm), len(self.setting_perms[0]), len(self.outcome_perms[0][0])

    def check(self, scenario: Scenario) -> None:
        if self.shape != (scenario.n, scenario.m, scenario.d):
            raise InvalidSymmetry(f"symmetry of shape {self.shape} does not fit scenario {scenario}")

    @classmethod
    def identity(cls, scenario: Scenario) -> "SymmetryOp":
        n, m, d = scenario.n, scenario.m, scenario.d
        return cls(tuple(range(n)), ((tuple(range(m))),) * n, ((tuple(range(d)),) * m,) * n)

    def apply_event(self, e: Event) -> Event:
        n = len(self.party_perm)
        if e.n_parties != n:
            raise InvalidSymmetry(f"symmetry acts on {n} parties, event has {e.n_parties}")
        outcomes, settings = [0] * n, [0] * n
        for i, (x, a) in enumerate(zip(e.settings, e.outcomes)):
            j = self.party_perm[i]
            settings[j] = self.setting_perms[i][x]
            outcomes[j] = self.outcome_perms[i][x][a]
        return Event(tuple(outcomes), tuple(settings))

    def compose(self, other: "SymmetryOp") -> "SymmetryOp":
        """``self ∘ other``: apply ``other`` first."""
        if self.shape != other.shape:
            raise InvalidSymmetry("cannot compose symmetries of different shapes")
        n, m, _ = self.shape
        party, sets, outs = [], [], []
        for i in range(n):
            j = other.party_perm[i]
            party.append(self.party_perm[j])
            sets.append(tuple(self.setting_perms[j][other.setting_perms[i][x]] for x in range(m)))
            outs.append(
                tuple(
                    tuple(self.outcome_perms[j][other.setting_perms[i][x]][a] for a in other.outcome_perms[i][x])
                    for x in range(m)
                )
            )
        return SymmetryOp(tuple(party), tuple(sets), tuple(outs))

    def inverse(self) -> "SymmetryOp":
        n, m, d = self.shape
        party = [0] * n
        sets = [[0] * m for _ in range(n)]
        outs = [[[0] * d for _ in range(m)] for _ in range(n)]
        for i in range(n):
            j = self.party_perm[i]
            party[j] = i
            for x in range(m):
                y = self.setting_perms[i][x]
                sets[j][y] = x
                for a in range(d):
                    outs[j][y][self.outcome_perms[i][x][a]] = a
        return SymmetryOp(tuple(party), tuple(map(tuple, sets)), tuple(tuple(map(tuple, q)) for q in outs))

    def event_permutation(self, scenario: Scenario) -> np.ndarray:
        """Array ``perm`` with ``perm[k]`` the index of the image of event ``k``."""
        self.check(scenario)
        return np.array(
            [event_index(scenario, self.apply_event(event_from_index(scenario, k))) for k in range(scenario.event_count)]
        )


def apply_symmetry(op: SymmetryOp, ineq: LOInequality) -> LOInequality:
    op.check(ineq.scenario)
    return LOInequality(ineq.scenario, tuple(op.apply_event(e) for e in ineq.events))


def relabel_behavior(op: SymmetryOp, b: Behavior) -> Behavior:
    """Behavior ``b'`` with ``b'(op(e)) = b(e)``."""
    op.check(b.scenario)
    perm = op.event_permutation(b.scenario)
    table = [Fraction(0)] * len(b.table)
    for k, p in enumerate(b.table):
        table[perm[k]] = p
    return Behavior(b.scenario, tuple(table))


def inequality_from_clique(g, clique: Sequence[int] | object) -> LOInequality:
    """LO inequality on the events labelling a clique of graph ``g``."""
    vertices = getattr(clique, "vertices", clique)
    return LOInequality.from_indices(g.scenario, (g.labels[v] for v in vertices))
