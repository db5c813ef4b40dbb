"""Naive reference implementations used as independent oracles.

Everything here works on plain Python sets with direct definitional loops:
no bitmasks, no tables, no pruning.  Deliberately slow and obvious.
"""

from fractions import Fraction
from itertools import product


def naive_product(G, A, B):
    return {G.mul[a][b] for a in A for b in B}


def naive_inverse(G, A):
    return {G.inv[a] for a in A}


def naive_left_translate(G, x, A):
    return {G.mul[x][a] for a in A}


def naive_right_stabilizer(G, T):
    T = set(T)
    return {h for h in range(G.order) if {G.mul[t][h] for t in T} == T}


def naive_left_stabilizer(G, T):
    T = set(T)
    return {h for h in range(G.order) if {G.mul[h][t] for t in T} == T}


def naive_closure(G, gens):
    out = {G.identity} | set(gens)
    while True:
        grown = out | {G.mul[a][b] for a in out for b in out}
        if grown == out:
            return out
        out = grown


def is_subgroup_naive(G, H):
    H = set(H)
    if not H or G.identity not in H:
        return False
    return all(G.mul[a][b] in H for a in H for b in H)


def naive_subgroups(G):
    """All subgroups by checking every subset of G for closure."""
    n = G.order
    out = []
    for mask in range(1, 1 << n):
        H = {i for i in range(n) if (mask >> i) & 1}
        if is_subgroup_naive(G, H):
            out.append(frozenset(H))
    return out


def naive_cost(G, S, K, A):
    if not A:
        return Fraction(0)
    return Fraction(len(naive_product(G, A, S))) - Fraction(K) * len(A)


def naive_connectivity(G, S, K):
    """(kappa, all fragments) by scanning every nonempty subset."""
    n = G.order
    best = None
    fragments = []
    for mask in range(1, 1 << n):
        A = frozenset(i for i in range(n) if (mask >> i) & 1)
        c = naive_cost(G, S, K, A)
        if best is None or c < best:
            best = c
            fragments = [A]
        elif c == best:
            fragments.append(A)
    return best, fragments


def naive_identity_atom(G, S, K):
    kappa, fragments = naive_connectivity(G, S, K)
    containing = [f for f in fragments if G.identity in f]
    smallest = min(len(f) for f in containing)
    atoms = [f for f in containing if len(f) == smallest]
    assert len(atoms) == 1, "theory guarantees a unique identity atom for K < 1"
    return kappa, atoms[0]


def naive_convolve(G, u, v):
    n = G.order
    out = [Fraction(0)] * n
    for x, y in product(range(n), repeat=2):
        out[x] += u[y] * v[G.mul[G.inv[y]][x]]
    return out


def naive_autocorrelation(G, A):
    A = set(A)
    return [
        Fraction(len(A & naive_left_translate(G, x, A)), len(A)) for x in range(G.order)
    ]
