"""Reference implementations used only by the tests.

They follow the definitions literally and share no code with the library
paths they check.
"""
import itertools
from fractions import Fraction


def all_events(n, m, d):
    """Events as (outcomes, settings) in the library's index order."""
    digits = itertools.product(range(m * d), repeat=n)
    return [(tuple(t % d for t in ds), tuple(t // d for t in ds)) for ds in digits]


def orthogonal(e, f):
    (a, x), (b, y) = e, f
    return any(x[i] == y[i] and a[i] != b[i] for i in range(len(a)))


def orthogonality_edges(n, m, d):
    evs = all_events(n, m, d)
    return {(i, j) for i, j in itertools.combinations(range(len(evs)), 2) if orthogonal(evs[i], evs[j])}


def naive_maximal_cliques(n_vertices, edges):
    """Grow every clique by increasing vertex, then keep those no vertex extends."""
    nbr = [set() for _ in range(n_vertices)]
    for u, v in edges:
        nbr[u].add(v)
        nbr[v].add(u)
    cliques = []

    def grow(clique, cands):
        cliques.append(clique)
        for v in sorted(cands):
            if not clique or v > clique[-1]:
                grow(clique + [v], cands & nbr[v])

    grow([], set(range(n_vertices)))
    out = set()
    for c in cliques:
        if not c:
            continue
        common = set(range(n_vertices)) - set(c)
        for v in c:
            common &= nbr[v]
        if not common:
            out.add(frozenset(c))
    return out


def marginal_no_signaling(table, n, m, d):
    """NS by the full definition: every subset marginal is independent of the rest's settings."""
    evs = all_events(n, m, d)
    prob = {e: p for e, p in zip(evs, table)}
    for r in range(1, n):
        for keep in itertools.combinations(range(n), r):
            seen = {}
            for xs in itertools.product(range(m), repeat=n):
                for a_keep in itertools.product(range(d), repeat=r):
                    total = Fraction(0)
                    for a in itertools.product(range(d), repeat=n):
                        if all(a[k] == v for k, v in zip(keep, a_keep)):
                            total += prob[(a, xs)]
                    key = (tuple(xs[k] for k in keep), a_keep)
                    if key in seen and seen[key] != total:
                        return False
                    seen[key] = total
    return True


def strategy_value(S, f, strategy):
    """Winning probability of a deterministic strategy; strategy[j][x] is player j's guess."""
    wins = sum(1 for a in S if all(strategy[j][f[a][j]] == a[j] for j in range(len(a))))
    return Fraction(wins, len(S))


def _solve_square(cols, rows, rhs):
    """Gauss-Jordan on the square system restricted to ``cols``; None if singular."""
    k = len(cols)
    aug = [[Fraction(rows[i][c]) for c in cols] + [Fraction(rhs[i])] for i in range(k)]
    for c in range(k):
        p = next((r for r in range(c, k) if aug[r][c]), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        aug[c] = [v / aug[c][c] for v in aug[c]]
        for r in range(k):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [aug[i][-1] for i in range(k)]


def lp_max_by_vertices(c, rows, rhs):
    """max c.x over {Ax = b, x >= 0} with A of full row rank, by trying every basis.

    Returns None when the region is empty.  Only for bounded problems.
    """
    n = len(c)
    best = None
    for cols in itertools.combinations(range(n), len(rows)):
        xb = _solve_square(cols, rows, rhs)
        if xb is None or any(v < 0 for v in xb):
            continue
        x = [Fraction(0)] * n
        for col, v in zip(cols, xb):
            x[col] = v
        val = sum(ci * xi for ci, xi in zip(c, x))
        if best is None or val > best:
            best = val
    return best
