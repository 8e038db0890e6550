"""Orthogonality graphs of events.

Two events are (locally) orthogonal when some party uses the same setting in
both but reports different outcomes.  Adjacency rows are packed into Python
ints so neighbourhood intersection is a single ``&``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import CapacityExceeded, InvalidVertex, ScenarioMismatch
from .scenario import Behavior, Event, Scenario, event_from_index, event_index

MAX_GRAPH_VERTICES = 4096


def are_orthogonal(e: Event, f: Event) -> bool:
    if e.n_parties != f.n_parties:
        raise ScenarioMismatch(f"events {e} and {f} have different party counts")
    return any(x == y and a != b for x, y, a, b in zip(e.settings, f.settings, e.outcomes, f.outcomes))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True, eq=False)
class OrthogonalityGraph:
    """Orthogonality graph on a subset of a scenario's events.

    ``labels[v]`` is the event index (in the scenario) of vertex ``v``; for the
    full graph ``labels[v] == v``.  ``adjacency[v]`` is the neighbour bitmask.
    """

    scenario: Scenario
    labels: tuple[int, ...]
    adjacency: tuple[int, ...]
    graph_id: str = ""
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: v for v, lab in enumerate(self.labels)})
        if not self.graph_id:
            object.__setattr__(self, "graph_id", f"G{self.scenario}[{len(self.labels)}]")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    @property
    def is_full(self) -> bool:
        return len(self.labels) == self.scenario.event_count

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def event(self, v: int) -> Event:
        return event_from_index(self.scenario, self.labels[v])

    def vertex_of(self, label: int) -> int:
        """Vertex carrying the given scenario event index."""
        try:
            return self._index[label]
        except KeyError:
            raise InvalidVertex(f"event index {label} is not a vertex of {self.graph_id}") from None

    def vertex_of_event(self, e: Event) -> int:
        return self.vertex_of(event_index(self.scenario, e))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = to_mask(vs)
        return all((self.adjacency[v] | 1 << v) & mask == mask for v in vs)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adjacency):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def write_text(self, path) -> None:
        """One ``id: a..|x..`` line per vertex, then one ``u v`` line per edge."""
        with open(path, "w") as fh:
            for v in range(self.n_vertices):
                fh.write(f"{v}: {self.event(v)}\n")
            for u, v in self.edges():
                fh.write(f"{u} {v}\n")


def _orthogonality_matrix(scenario: Scenario, labels: np.ndarray) -> np.ndarray:
    xs = scenario.settings_array[labels]
    as_ = scenario.outcomes_array[labels]
    ortho = np.zeros((len(labels), len(labels)), dtype=bool)
    for i in range(scenario.n):
        ortho |= (xs[:, i, None] == xs[None, :, i]) & (as_[:, i, None] != as_[None, :, i])
    return ortho


def _pack_rows(matrix: np.ndarray) -> tuple[int, ...]:
    # little-endian bit order so that bit v of the int is column v
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def build_graph(scenario: Scenario) -> OrthogonalityGraph:
    if scenario.event_count > MAX_GRAPH_VERTICES:
        raise CapacityExceeded(
            f"scenario {scenario} has {scenario.event_count} events; graphs are limited to {MAX_GRAPH_VERTICES}"
        )
    labels = np.arange(scenario.event_count)
    adjacency = _pack_rows(_orthogonality_matrix(scenario, labels))
    return OrthogonalityGraph(scenario, tuple(range(scenario.event_count)), adjacency, f"G{scenario}")


def induced_subgraph(g: OrthogonalityGraph, keep: Iterable[int]) -> OrthogonalityGraph:
    """Subgraph on vertices ``keep`` of ``g``; vertices are renumbered in increasing order."""
    keep = sorted(set(keep))
    if keep and not (0 <= keep[0] and keep[-1] < g.n_vertices):
        raise InvalidVertex(f"vertex set {keep[0]}..{keep[-1]} exceeds graph of size {g.n_vertices}")
    adjacency = []
    for v in keep:
        row = g.adjacency[v]
        adjacency.append(to_mask(i for i, u in enumerate(keep) if row >> u & 1))
    labels = tuple(g.labels[v] for v in keep)
    return OrthogonalityGraph(g.scenario, labels, tuple(adjacency), f"{g.graph_id}|{len(keep)}")


def support_vertices(g: OrthogonalityGraph, b: Behavior) -> set[int]:
    if g.scenario != b.scenario:
        raise ScenarioMismatch(f"graph scenario {g.scenario} differs from behavior scenario {b.scenario}")
    return {v for v, lab in enumerate(g.labels) if b.table[lab] > 0}


def possible_events_graph(b: Behavior, g: OrthogonalityGraph | None = None) -> OrthogonalityGraph:
    g = g if g is not None else build_graph(b.scenario)
    return induced_subgraph(g, support_vertices(g, b))


def graph_from_events(scenario: Scenario, events: Iterable[Event]) -> OrthogonalityGraph:
    """Orthogonality graph on an explicit event list (no full-graph build needed)."""
    labels = sorted({event_index(scenario, e) for e in events})
    adjacency = _pack_rows(_orthogonality_matrix(scenario, np.array(labels, dtype=np.int64)))
    return OrthogonalityGraph(scenario, tuple(labels), adjacency)
