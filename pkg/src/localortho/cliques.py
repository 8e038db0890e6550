"""Maximal cliques of orthogonality graphs, i.e. optimal LO inequalities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator

from .errors import InvalidVertex, NotAClique, ScenarioMismatch
from .graph import OrthogonalityGraph, induced_subgraph, iter_bits, support_vertices
from .scenario import Behavior


@dataclass(frozen=True)
class Clique:
    vertices: tuple[int, ...]
    graph_id: str = ""
    maximal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def degeneracy_order(g: OrthogonalityGraph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (ties: lowest index)."""
    remaining = (1 << g.n_vertices) - 1
    order = []
    while remaining:
        v = min(iter_bits(remaining), key=lambda u: ((g.adjacency[u] & remaining).bit_count(), u))
        order.append(v)
        remaining &= ~(1 << v)
    return order


class CliqueStream:
    """Iterable over maximal cliques of ``g`` with at least ``min_size`` vertices.

    Bron-Kerbosch with Tomita pivoting.  Iteration stops after ``limit``
    cliques; ``truncated`` is then set if more cliques existed.  With
    ``containing`` set, only maximal cliques through that vertex are produced.
    """

    def __init__(
        self,
        g: OrthogonalityGraph,
        min_size: int = 1,
        limit: int | None = None,
        ordering: str = "degeneracy",
        containing: int | None = None,
    ):
        if ordering not in ("degeneracy", "natural"):
            raise ValueError(f"unknown ordering {ordering!r}")
        if containing is not None and not 0 <= containing < g.n_vertices:
            raise InvalidVertex(f"vertex {containing} not in graph")
        self.graph = g
        self.min_size = min_size
        self.limit = limit
        self.ordering = ordering
        self.containing = containing
        self.truncated = False
        self.count = 0

    def __iter__(self) -> Iterator[Clique]:
        self.truncated = False
        self.count = 0
        gid = self.graph.graph_id
        for vertices in self._raw():
            if self.limit is not None and self.count >= self.limit:
                self.truncated = True
                return
            self.count += 1
            yield Clique(vertices, gid, maximal=True)

    def _raw(self) -> Iterator[tuple[int, ...]]:
        g = self.graph
        adj = g.adjacency
        if g.n_vertices == 0:
            return
        if self.containing is not None:
            v = self.containing
            yield from _expand(adj, [v], adj[v], 0, self.min_size)
            return
        if self.ordering == "natural":
            yield from _expand(adj, [], (1 << g.n_vertices) - 1, 0, self.min_size)
            return
        later = (1 << g.n_vertices) - 1
        for v in degeneracy_order(g):
            later &= ~(1 << v)
            earlier = ((1 << g.n_vertices) - 1) & ~later & ~(1 << v)
            yield from _expand(adj, [v], adj[v] & later, adj[v] & earlier, self.min_size)


def _expand(adj, R: list, P: int, X: int, min_size: int) -> Iterator[tuple[int, ...]]:
    if not P:
        if not X and len(R) >= min_size:
            yield tuple(sorted(R))
        return
    if len(R) + P.bit_count() < min_size:
        return
    pivot, best = -1, -1
    for u in iter_bits(P | X):
        c = (P & adj[u]).bit_count()
        if c > best:
            pivot, best = u, c
    for v in iter_bits(P & ~adj[pivot]):
        R.append(v)
        yield from _expand(adj, R, P & adj[v], X & adj[v], min_size)
        R.pop()
        bit = 1 << v
        P &= ~bit
        X |= bit
        if len(R) + P.bit_count() < min_size:
            return


def enumerate_maximal_cliques(
    g: OrthogonalityGraph, min_size: int = 1, limit: int | None = None, **kwargs
) -> CliqueStream:
    return CliqueStream(g, min_size=min_size, limit=limit, **kwargs)


def _as_vertices(seed) -> list[int]:
    return list(seed.vertices) if isinstance(seed, Clique) else list(seed)


def complete_to_maximal(g_full: OrthogonalityGraph, seed: Clique | Iterable[int]) -> Clique:
    """Greedily extend ``seed`` by the lowest-index admissible vertex until maximal."""
    vertices = _as_vertices(seed)
    if any(not 0 <= v < g_full.n_vertices for v in vertices):
        raise InvalidVertex("seed vertex outside graph")
    if not g_full.is_clique(vertices):
        raise NotAClique(f"seed {sorted(vertices)} is not a clique of {g_full.graph_id}")
    cand = (1 << g_full.n_vertices) - 1
    for v in vertices:
        cand &= g_full.adjacency[v]
    while cand:
        v = (cand & -cand).bit_length() - 1
        vertices.append(v)
        cand &= g_full.adjacency[v]
    return Clique(vertices, g_full.graph_id, maximal=True)


def lift_clique(sub: OrthogonalityGraph, clique: Clique | Iterable[int], parent: OrthogonalityGraph) -> Clique:
    """Re-identify a clique of ``sub`` in ``parent`` through the event labels."""
    if sub.scenario != parent.scenario:
        raise ScenarioMismatch("subgraph and parent belong to different scenarios")
    return Clique([parent.vertex_of(sub.labels[v]) for v in _as_vertices(clique)], parent.graph_id)


def clique_value(g: OrthogonalityGraph, clique: Clique | Iterable[int], b: Behavior) -> Fraction:
    return sum((b.table[g.labels[v]] for v in _as_vertices(clique)), Fraction(0))


def max_weight_clique(g: OrthogonalityGraph, weights: list[Fraction], floor: Fraction = Fraction(0)):
    """Exact maximum-weight clique by branch and bound.

    Returns ``(vertices, weight)`` for the heaviest clique whose weight exceeds
    ``floor``, or ``None`` if there is none.  The bound sums the heaviest
    vertex of each class of a partition into independent sets, taking the
    better of a greedy colouring and the colouring by joint outcome (events
    sharing an outcome vector are never orthogonal).
    """
    if g.n_vertices == 0:
        return None
    scale = lcm(*(w.denominator for w in weights), floor.denominator)
    w = [int(x * scale) for x in weights]
    adj = g.adjacency
    outcome_of = [g.event(v).outcomes for v in range(g.n_vertices)]
    # graphs built by hand need not respect orthogonality; then skip that bound
    same = {}
    for v, o in enumerate(outcome_of):
        same[o] = same.get(o, 0) | 1 << v
    use_outcomes = all(not (adj[v] & same[outcome_of[v]]) for v in range(g.n_vertices))
    best = [int(floor * scale), None]
    heavy_first = sorted(range(g.n_vertices), key=lambda v: (-w[v], v))

    def ordered_bounds(P: int) -> tuple[list[int], list[int]]:
        # first fit in order of decreasing weight keeps heavy vertices together
        greedy, masks = [], []
        for v in heavy_first:
            if not P >> v & 1:
                continue
            for cls, cm in zip(greedy, masks):
                if not adj[v] & cm[0]:
                    cls.append(v)
                    cm[0] |= 1 << v
                    break
            else:
                greedy.append([v])
                masks.append([1 << v])
        candidates = [greedy]
        if use_outcomes:
            by_outcome: dict = {}
            for v in iter_bits(P):
                by_outcome.setdefault(outcome_of[v], []).append(v)
            candidates.append(list(by_outcome.values()))
        classes = min(candidates, key=lambda cs: sum(max(w[v] for v in c) for c in cs))
        order, bounds, acc = [], [], 0
        for cls in classes:
            cls = sorted(cls, key=lambda v: (w[v], v))
            for v in cls:
                order.append(v)
                bounds.append(acc + w[v])
            acc += w[cls[-1]]
        return order, bounds

    def expand(R: list[int], wR: int, P: int):
        if not P:
            if wR > best[0]:
                best[0], best[1] = wR, list(R)
            return
        order, bounds = ordered_bounds(P)
        for j in range(len(order) - 1, -1, -1):
            if wR + bounds[j] <= best[0]:
                return
            v = order[j]
            R.append(v)
            expand(R, wR + w[v], P & adj[v])
            R.pop()
            P &= ~(1 << v)

    expand([], 0, (1 << g.n_vertices) - 1)
    if best[1] is None:
        return None
    return sorted(best[1]), Fraction(best[0], scale)


def violation_witness(b: Behavior, g: OrthogonalityGraph):
    """Find a maximal clique of the full graph on which ``b`` sums to more than 1.

    The heaviest clique of the possible-events subgraph is found first (events
    outside the support contribute nothing), then completed to a maximal
    clique of ``g`` and re-evaluated there.  Returns ``(Clique, value)`` or
    ``None``.
    """
    if g.scenario != b.scenario:
        raise ScenarioMismatch(f"graph scenario {g.scenario} differs from behavior scenario {b.scenario}")
    sub = induced_subgraph(g, support_vertices(g, b))
    found = max_weight_clique(sub, [b.table[lab] for lab in sub.labels], floor=Fraction(1))
    if found is None:
        return None
    seed = lift_clique(sub, found[0], g)
    full = complete_to_maximal(g, seed)
    return full, clique_value(g, full, b)


__all__ = [
    "Clique",
    "CliqueStream",
    "clique_value",
    "complete_to_maximal",
    "degeneracy_order",
    "enumerate_maximal_cliques",
    "lift_clique",
    "max_weight_clique",
    "violation_witness",
]
