import random
from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from localortho.boxes import pr_box
from localortho.cliques import enumerate_maximal_cliques
from localortho.inequalities import evaluate, gyni, inequality_from_clique
from localortho.nspolytope import ns_argmax, ns_matrix, ns_max, ns_maximize, random_ns_vertex
from localortho.scenario import Scenario, deterministic_box, is_no_signaling, local_strategies

S222 = Scenario(2, 2, 2)


def test_gyni3_ns_max():
    value, witness = ns_argmax(gyni(3))
    assert value == Fraction(4, 3)
    assert is_no_signaling(witness)
    assert evaluate(gyni(3), witness) == value


def test_bipartite_cliques_are_trivial(g222):
    for c in enumerate_maximal_cliques(g222):
        assert ns_max(inequality_from_clique(g222, c)) == 1


def test_chsh_ns_max_is_pr_value():
    # CHSH in probability form: P(a xor b = xy), averaged over settings
    c = [Fraction(0)] * 16
    for e_idx, e in enumerate(S222.events()):
        a, b = e.outcomes
        x, y = e.settings
        if a ^ b == x * y:
            c[e_idx] = Fraction(1, 4)
    value, box = ns_maximize(S222, c)
    assert value == 1
    assert sum(ci * p for ci, p in zip(c, pr_box().table)) == 1


def test_ns_matrix_annihilates_ns_boxes(s322):
    A, b = ns_matrix(s322)
    for strat in list(local_strategies(s322))[:10]:
        p = np.array(deterministic_box(s322, strat).table, dtype=object)
        assert (A.dot(p) == b).all()


def test_ns_matrix_rank():
    # NS polytope dimension in (2,2,2) is 8, so the equality rank is 16 - 8
    A, _ = ns_matrix(S222)
    assert np.linalg.matrix_rank(A.astype(float)) == 8


@given(st.integers(0, 2**32))
def test_random_vertex_is_ns_and_optimal_bound(seed):
    rng = random.Random(seed)
    b = random_ns_vertex(Scenario(3, 2, 2), rng)
    assert is_no_signaling(b)
    c = [Fraction(rng.randint(-3, 3)) for _ in range(64)]
    value, _ = ns_maximize(b.scenario, c)
    assert value >= sum(ci * p for ci, p in zip(c, b.table))
