"""Equivalence classes of LO inequalities.

Two inequalities are equivalent when their homogenized coefficient vectors
``(c, -1)``, projected orthogonally off the span of the NS and normalization
equalities ``(A, -b)``, are related by a relabeling of parties, settings and
outcomes.  The projection is orthogonal, so it commutes with relabelings
(they permute coordinates and preserve the equality span); a class is keyed
by the lexicographically smallest permuted projection.

The relabeling group acts transitively on events, so every clique orbit has
a member through event 0.  Orbits are recorded through their members that
contain event 0 only, which keeps memory proportional to the cliques through
one vertex.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .cliques import CliqueStream
from .errors import CapacityExceeded, ScenarioMismatch
from .graph import build_graph
from .inequalities import LOInequality
from .nspolytope import ns_matrix, ns_maximize
from .scenario import Scenario

log = logging.getLogger(__name__)

MAX_GROUP_SIZE = 200_000
_CHUNK = 4096


def group_order(scenario: Scenario) -> int:
    n, m, d = scenario.n, scenario.m, scenario.d
    return math.factorial(n) * (math.factorial(m) * math.factorial(d) ** m) ** n


def local_relabelings(m: int, d: int) -> np.ndarray:
    """All relabelings of one party's ``(setting, outcome)`` pairs as permutations of ``x*d + a``."""
    perms = []
    for sp in itertools.permutations(range(m)):
        for ops in itertools.product(itertools.permutations(range(d)), repeat=m):
            perms.append([sp[x] * d + ops[x][a] for x in range(m) for a in range(d)])
    return np.array(perms, dtype=np.int64)


@lru_cache(maxsize=4)
def symmetry_group(scenario: Scenario) -> np.ndarray:
    """``(|G|, N)`` array; row ``g`` maps event index ``k`` to ``G[g, k]``."""
    size = group_order(scenario)
    if size > MAX_GROUP_SIZE:
        raise CapacityExceeded(f"symmetry group of {scenario} has {size} elements (limit {MAX_GROUP_SIZE})")
    n, base = scenario.n, scenario.m * scenario.d
    local = local_relabelings(scenario.m, scenario.d)
    digits = scenario.settings_array * scenario.d + scenario.outcomes_array
    blocks = []
    for pi in itertools.permutations(range(n)):
        total = np.zeros((1,) * n + (scenario.event_count,), dtype=np.int64)
        for i in range(n):
            part = local[:, digits[:, i]] * base ** (n - 1 - pi[i])
            shape = [1] * n + [scenario.event_count]
            shape[i] = len(local)
            total = total + part.reshape(shape)
        blocks.append(total.reshape(-1, scenario.event_count))
    group = np.concatenate(blocks).astype(np.int32 if scenario.event_count > 2**15 else np.int16)
    group.setflags(write=False)
    return group


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots, r = [], 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        nz = [j for j, v in enumerate(rows[r]) if v]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f:
                row_i = rows[i]
                for j in nz:
                    row_i[j] -= f * rows[r][j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass(frozen=True)
class NSProjection:
    """Integer matrix ``scale * P`` with ``P`` the orthogonal projection off the NS span."""

    scenario: Scenario
    matrix: np.ndarray
    scale: int

    def reduce(self, indices: Iterable[int]) -> np.ndarray:
        """Scaled projection of the homogenized vector of the event set ``indices``."""
        idx = list(indices)
        return self.matrix[:, idx].sum(axis=1) - self.matrix[:, -1]


@lru_cache(maxsize=4)
def ns_projection(scenario: Scenario) -> NSProjection:
    A, b = ns_matrix(scenario)
    hom = [[Fraction(int(v)) for v in row] + [Fraction(-int(r))] for row, r in zip(A, b)]
    basis, pivots = _rref(hom)
    ncols = scenario.event_count + 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    # nullspace basis: one vector per free column
    kernel = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(basis, pivots):
            vec[p] = -row[f]
        kernel.append(vec)
    k = len(kernel)
    gram = [[sum((a * b for a, b in zip(kernel[i], kernel[j]) if a and b), Fraction(0)) for j in range(k)] for i in range(k)]
    aug = [gram[i] + [Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    inv_rows, _ = _rref(aug)
    inv = [row[k:] for row in inv_rows]
    # P = K^T inv K with kernel vectors as rows of K
    kt_inv = [[sum((kernel[a][i] * inv[a][bb] for a in range(k) if kernel[a][i]), Fraction(0)) for bb in range(k)] for i in range(ncols)]
    proj = [[sum((kt_inv[i][a] * kernel[a][j] for a in range(k) if kernel[a][j]), Fraction(0)) for j in range(ncols)] for i in range(ncols)]
    scale = math.lcm(*(v.denominator for row in proj for v in row))
    matrix = np.array([[int(v * scale) for v in row] for row in proj], dtype=np.int64)
    matrix.setflags(write=False)
    return NSProjection(scenario, matrix, scale)


def lexmin_row(values: np.ndarray, group: np.ndarray) -> np.ndarray:
    """Lexicographically smallest ``values[group[g]]`` over all rows ``g``."""
    best = None
    for start in range(0, len(group), _CHUNK):
        rows = values[group[start:start + _CHUNK]]
        if best is not None:
            rows = np.vstack([best[None, :], rows])
        cand = np.arange(len(rows))
        for col in range(rows.shape[1]):
            column = rows[cand, col]
            cand = cand[column == column.min()]
            if len(cand) == 1:
                break
        best = rows[cand[0]].copy()
    return best


@dataclass
class CliqueOrbit:
    canonical: tuple[int, ...]  # lexicographically smallest member
    size: int
    key: tuple[int, ...] = ()
    input_count: int = 0


@dataclass
class EquivalenceClass:
    scenario: Scenario
    key: tuple[int, ...]
    scale: int
    representative: LOInequality
    orbit_size: int
    clique_orbits: int
    input_count: int
    ns_max: Fraction | None = None

    @property
    def reduced_vector(self) -> tuple[Fraction, ...]:
        """Canonical projected coefficient vector; the last entry pairs with the constant."""
        return tuple(Fraction(v, self.scale) for v in self.key)

    @property
    def trivial(self) -> bool | None:
        return None if self.ns_max is None else self.ns_max == 1

    def summary(self) -> dict:
        return {
            "representative": [str(e) for e in self.representative.events],
            "size": len(self.representative),
            "orbit_size": self.orbit_size,
            "clique_orbits": self.clique_orbits,
            "input_count": self.input_count,
            "ns_max": None if self.ns_max is None else str(self.ns_max),
            "trivial": self.trivial,
        }


class Classifier:
    """Incremental classifier; feed event-index sets or inequalities with :meth:`add`."""

    def __init__(self, scenario: Scenario, compute_ns_max: bool = True):
        self.scenario = scenario
        self.group = symmetry_group(scenario)
        self.projection = ns_projection(scenario)
        self.compute_ns_max = compute_ns_max
        # a group element sending each event to event 0
        self._to_zero = [int(np.flatnonzero(self.group[:, v] == 0)[0]) for v in range(scenario.event_count)]
        self._key_dtype = np.dtype(">u4" if scenario.event_count > 2**16 else ">u2")
        self._anchored: dict[bytes, int] = {}
        self.orbits: list[CliqueOrbit] = []
        self.inputs = 0

    def _orbit_id(self, idx: np.ndarray) -> int:
        g = self.group[self._to_zero[int(idx[0])]]
        key = np.sort(g[idx]).astype(self._key_dtype).tobytes()
        found = self._anchored.get(key)
        if found is not None:
            return found
        # big-endian bytes compare like the index tuples they encode
        raw = np.sort(self.group[:, idx], axis=1).astype(self._key_dtype).tobytes()
        width = len(idx) * self._key_dtype.itemsize
        images = {raw[i:i + width] for i in range(0, len(raw), width)}
        zero = bytes(self._key_dtype.itemsize)
        oid = len(self.orbits)
        for image in images:
            if image.startswith(zero):
                self._anchored[image] = oid
        canonical = np.frombuffer(min(images), dtype=self._key_dtype)
        self.orbits.append(CliqueOrbit(tuple(int(v) for v in canonical), len(images)))
        return oid

    def add(self, item) -> int:
        """Register one inequality; returns its clique-orbit id."""
        if isinstance(item, LOInequality):
            if item.scenario != self.scenario:
                raise ScenarioMismatch(f"inequality on {item.scenario}, classifier on {self.scenario}")
            item = item.indices
        idx = np.array(sorted(item), dtype=np.int64)
        oid = self._orbit_id(idx)
        self.orbits[oid].input_count += 1
        self.inputs += 1
        return oid

    def add_all(self, items: Iterable) -> "Classifier":
        for it in items:
            self.add(it)
        return self

    def orbit_key(self, orbit: CliqueOrbit) -> tuple[int, ...]:
        if not orbit.key:
            w = self.projection.reduce(orbit.canonical)
            body = lexmin_row(w[:-1], self.group)
            orbit.key = tuple(int(v) for v in body) + (int(w[-1]),)
        return orbit.key

    def classes(self) -> list[EquivalenceClass]:
        grouped: dict[tuple[int, ...], list[CliqueOrbit]] = {}
        for orbit in self.orbits:
            grouped.setdefault(self.orbit_key(orbit), []).append(orbit)
        out = []
        for key in sorted(grouped):
            members = grouped[key]
            rep = min(o.canonical for o in members)
            ec = EquivalenceClass(
                self.scenario,
                key,
                self.projection.scale,
                LOInequality.from_indices(self.scenario, rep),
                orbit_size=sum(o.size for o in members),
                clique_orbits=len(members),
                input_count=sum(o.input_count for o in members),
            )
            if self.compute_ns_max:
                c = [0] * self.scenario.event_count
                for k in rep:
                    c[k] = 1
                ec.ns_max = ns_maximize(self.scenario, c)[0]
            out.append(ec)
        return out


def classify(ineqs: Iterable, scenario: Scenario, compute_ns_max: bool = True) -> list[EquivalenceClass]:
    return Classifier(scenario, compute_ns_max).add_all(ineqs).classes()


def anchored_maximal_cliques(scenario: Scenario) -> Iterator[tuple[int, ...]]:
    """Maximal cliques of the full graph through event 0; they meet every clique orbit."""
    g = build_graph(scenario)
    for clique in CliqueStream(g, containing=0):
        yield clique.vertices


def classify_scenario(scenario: Scenario, compute_ns_max: bool = True, progress_every: int = 0) -> Classifier:
    """Classify all maximal cliques of a scenario's orthogonality graph."""
    clf = Classifier(scenario, compute_ns_max)
    for i, clique in enumerate(anchored_maximal_cliques(scenario), 1):
        clf.add(clique)
        if progress_every and i % progress_every == 0:
            log.info("%d anchored cliques, %d orbits", i, len(clf.orbits))
    return clf


def class_counts(classes: list[EquivalenceClass]) -> dict[str, int]:
    nontrivial = sum(1 for c in classes if c.trivial is False)
    return {"total": len(classes), "nontrivial": nontrivial, "trivial": len(classes) - nontrivial}
