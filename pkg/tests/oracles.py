"""
Slow, definition-level reimplementations used as independent references.

Nothing here imports the statistics or forward-map code it is compared with.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import comb, factorial


def pairs(n):
    return itertools.combinations(range(1, n + 1), 2)


def des_set(p):
    return {i for i in range(1, len(p)) if p[i - 1] - p[i] >= 1}


def des2_set(p):
    return {i for i in range(1, len(p)) if p[i - 1] - p[i] >= 2}


def asc2_set(p):
    return {i for i in range(1, len(p)) if p[i] - p[i - 1] >= 2}


def exc_set(p):
    return {i for i in range(1, len(p) + 1) if p[i - 1] > i}


def inversions(p):
    return {(i, j) for i, j in pairs(len(p)) if p[i - 1] > p[j - 1]}


def two_inversions(p):
    return {(i, j) for i, j in inversions(p) if p[i - 1] - p[j - 1] == 1}


def inverse_word(p):
    return tuple(sorted(range(1, len(p) + 1), key=lambda i: p[i - 1]))


def statistics(p):
    """Every statistic straight from its definition."""
    d, d2, a2, e = des_set(p), des2_set(p), asc2_set(p), exc_set(p)
    return {
        "des": len(d), "maj": sum(d), "exc": len(e), "inv": len(inversions(p)),
        "ides": len(des_set(inverse_word(p))),
        "des2": len(d2), "maj2": sum(d2), "inv2": len(two_inversions(p)),
        "asc2": len(a2), "amaj2": sum(a2),
        "asc2t": len(a2) + (p[0] != 1),
    }


def tops_of(p):
    D = sorted(des2_set(p))
    out = {0: 0}
    for k, d in enumerate(D, 1):
        start = d
        while start - 1 in D:
            start -= 1
        out[k] = start
    return out


def capacities(p, reverse_ties=False):
    """
    Block capacities by trying every increasing subsequence of chain starts.
    ``reverse_ties`` breaks equal totals by the reversed position tuple.
    """
    D = sorted(des2_set(p))
    pool = {i: j for i, j in two_inversions(p)}
    top = tops_of(p)
    c = [0] * (len(D) + 1)

    def chain(i):
        out = []
        while i in pool:
            out.append(i)
            i = pool[i]
        return out

    for k in range(len(D), -1, -1):
        starts = sorted(i for i in pool if i >= top[k])
        best = None
        for m in range(1, len(starts) + 1):
            for seq in itertools.combinations(starts, m):
                if all(p[seq[a] - 1] < p[seq[a + 1] - 1] for a in range(m - 1)):
                    total = sum(len(chain(i)) for i in seq)
                    key = (total, tuple(reversed(seq)) if reverse_ties else seq)
                    if best is None or key > best[0]:
                        best = (key, seq)
        if best is None:
            continue
        removed = [x for i in best[1] for x in chain(i)]
        c[k] = len(removed)
        for x in removed:
            del pool[x]
    return tuple(c)


def mahonian_by_inversions(n):
    """Coefficients of sum over S_n of q^inv, which equals the q-factorial."""
    counts = Counter(len(inversions(p)) for p in itertools.permutations(range(1, n + 1)))
    return [counts[k] for k in range(max(counts) + 1)]


def eulerian_closed_form(n):
    """A(n, k) = sum_j (-1)^j C(n+1, j) (k+1-j)^n, k = 0..n-1."""
    return [sum((-1) ** j * comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 2))
            for k in range(n)]


def q_factorial_at(n, q):
    """[n]_q! evaluated at an integer q."""
    out = 1
    for i in range(1, n + 1):
        out *= sum(q ** a for a in range(i))
    return out


def n_factorial(n):
    return factorial(n)
