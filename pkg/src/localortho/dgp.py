"""Distributed guessing problems (DGPs).

A referee draws ``a`` uniformly from ``S`` and hands player ``j`` the symbol
``f_j(a)``; the players win if every player outputs its own ``a_j``.  The
problem is maximally difficult when no classical strategy beats the blind
guess ``1/|S|``, which happens exactly when the events ``(a | f(a))`` are
pairwise orthogonal.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .errors import CapacityExceeded, NotAnLOInequality, ValidationError
from .inequalities import LOInequality
from .scenario import Event, Scenario

MAX_STRATEGIES = 10**8


@dataclass(frozen=True)
class DGPInstance:
    scenario: Scenario
    S: tuple[tuple[int, ...], ...]
    f: Mapping[tuple[int, ...], tuple[int, ...]]

    def __post_init__(self):
        n, m, d = self.scenario.n, self.scenario.m, self.scenario.d
        S = tuple(tuple(int(v) for v in a) for a in self.S)
        f = {tuple(int(v) for v in a): tuple(int(v) for v in x) for a, x in dict(self.f).items()}
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "f", f)
        if not S:
            raise ValidationError("S must be nonempty")
        if len(set(S)) != len(S):
            raise ValidationError("S contains duplicate inputs")
        for a in S:
            if len(a) != n or any(not 0 <= v < d for v in a):
                raise ValidationError(f"input {a} is not a length-{n} vector over 0..{d - 1}")
            if a not in f:
                raise ValidationError(f"encoding undefined on {a}")
        for a, x in f.items():
            if a not in S:
                raise ValidationError(f"encoding given for {a}, which is not in S")
            if len(x) != n or any(not 0 <= v < m for v in x):
                raise ValidationError(f"encoding {a} -> {x} is not a length-{n} vector over 0..{m - 1}")

    def events(self) -> list[Event]:
        return [Event(a, self.f[a]) for a in self.S]

    @classmethod
    def from_json(cls, doc: dict) -> "DGPInstance":
        try:
            scenario = Scenario(int(doc["n"]), int(doc["m"]), int(doc["d"]))
            S = [tuple(int(c) for c in s) for s in doc["S"]]
            f = {tuple(int(c) for c in k): tuple(int(c) for c in v) for k, v in doc["f"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed DGP instance: {exc}") from exc
        return cls(scenario, tuple(S), f)

    def to_json(self) -> dict:
        s = self.scenario
        word = lambda t: "".join(map(str, t))  # noqa: E731
        return {"n": s.n, "m": s.m, "d": s.d, "S": [word(a) for a in self.S], "f": {word(a): word(self.f[a]) for a in self.S}}

    @classmethod
    def load(cls, path: str | Path) -> "DGPInstance":
        try:
            return cls.from_json(json.loads(Path(path).read_text()))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def is_maximally_difficult(inst: DGPInstance) -> bool:
    for a, b in itertools.combinations(inst.S, 2):
        fa, fb = inst.f[a], inst.f[b]
        if not any(a[j] != b[j] and fa[j] == fb[j] for j in range(inst.scenario.n)):
            return False
    return True


def classical_value(inst: DGPInstance) -> Fraction:
    """Best winning probability over deterministic local strategies (uniform prior on S).

    Each player ``j`` picks a map ``g_j`` from symbols to guesses.  For every
    such map we precompute the bitmask of inputs on which the player guesses
    right; a joint strategy wins on the AND of its players' masks.
    """
    n, m, d = inst.scenario.n, inst.scenario.m, inst.scenario.d
    if (d**m) ** n > MAX_STRATEGIES:
        raise CapacityExceeded(f"{(d ** m) ** n} deterministic strategies exceed the cap of {MAX_STRATEGIES}")
    maps = list(itertools.product(range(d), repeat=m))
    masks = []
    for j in range(n):
        per_map = set()
        for g in maps:
            per_map.add(sum(1 << i for i, a in enumerate(inst.S) if g[inst.f[a][j]] == a[j]))
        masks.append(sorted(per_map, key=int.bit_count, reverse=True))
    best = 0

    def search(j: int, mask: int) -> None:
        nonlocal best
        if mask.bit_count() <= best:
            return
        if j == n:
            best = mask.bit_count()
            return
        for pm in masks[j]:
            search(j + 1, mask & pm)

    search(0, (1 << len(inst.S)) - 1)
    return Fraction(best, len(inst.S))


def dgp_to_inequality(inst: DGPInstance) -> LOInequality:
    if not is_maximally_difficult(inst):
        raise NotAnLOInequality("encoding is not maximally difficult; events are not pairwise orthogonal")
    return LOInequality(inst.scenario, tuple(inst.events()))


def inequality_to_dgp(ineq: LOInequality) -> DGPInstance:
    """Read an LO inequality as a DGP: inputs are outcome parts, encodings the setting parts."""
    return DGPInstance(ineq.scenario, tuple(e.outcomes for e in ineq.events), {e.outcomes: e.settings for e in ineq.events})


def gyni_instance(n: int = 3) -> DGPInstance:
    S = tuple(a for a in itertools.product((0, 1), repeat=n) if sum(a) % 2 == 0)
    return DGPInstance(Scenario(n, 2, 2), S, {a: (a[-1],) + a[:-1] for a in S})
