"""Shared test fixtures that build library objects."""
from hypothesis import strategies as st

from localortho.cliques import CliqueStream
from localortho.graph import OrthogonalityGraph
from localortho.inequalities import SymmetryOp
from localortho.scenario import Scenario

HOST = Scenario(5, 2, 2)  # any scenario with enough events to label abstract vertices


def random_graph(n, p, rng):
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return OrthogonalityGraph(HOST, tuple(range(n)), tuple(adj)), edges


def cliques_of(g, **kw):
    return {frozenset(c.vertices) for c in CliqueStream(g, **kw)}


def symmetry_ops(n, m, d):
    perm = lambda k: st.permutations(list(range(k)))  # noqa: E731
    return st.builds(
        SymmetryOp,
        perm(n),
        st.lists(perm(m), min_size=n, max_size=n),
        st.lists(st.lists(perm(d), min_size=m, max_size=m), min_size=n, max_size=n),
    )
