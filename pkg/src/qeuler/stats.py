"""
Permutation statistics: descents, exceedances, inversions, and their
"2-" variants where a descent must drop by at least two and an inversion
pairs consecutive values.

Every function takes a 1-based one-line word (any int sequence).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .perm import inverse

__all__ = [
    "descent_set", "des", "maj", "exceedance_set", "exc", "exceedance_values",
    "inv", "ides", "two_descent_set", "des2", "maj2", "TwoInversionSet",
    "two_inversion_set", "inv2", "des2_tilde", "des2_tilde_chain",
    "two_ascent_set", "asc2", "amaj2", "asc2_tilde", "StatTriple",
    "VECTORS", "stat_vector", "STATISTICS",
]


def descent_set(p: Sequence[int]) -> list[int]:
    return [i for i in range(1, len(p)) if p[i - 1] > p[i]]


def des(p: Sequence[int]) -> int:
    return len(descent_set(p))


def maj(p: Sequence[int]) -> int:
    return sum(descent_set(p))


def exceedance_set(p: Sequence[int]) -> list[int]:
    return [i for i, v in enumerate(p, 1) if v > i]


def exc(p: Sequence[int]) -> int:
    return len(exceedance_set(p))


def exceedance_values(p: Sequence[int]) -> set[int]:
    return {v for i, v in enumerate(p, 1) if v > i}


def inv(p: Sequence[int]) -> int:
    n = len(p)
    return sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])


def ides(p: Sequence[int]) -> int:
    return des(inverse(p))


def two_descent_set(p: Sequence[int]) -> list[int]:
    return [i for i in range(1, len(p)) if p[i - 1] > p[i] + 1]


def des2(p: Sequence[int]) -> int:
    return len(two_descent_set(p))


def maj2(p: Sequence[int]) -> int:
    return sum(two_descent_set(p))


@dataclass(frozen=True)
class TwoInversionSet:
    """Pairs (i, j), i < j, with p(i) = p(j) + 1, sorted by i."""
    pairs: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def as_map(self) -> dict[int, int]:
        """Beginning -> end.  Each position begins at most one pair."""
        return dict(self.pairs)

    @property
    def beginnings(self) -> list[int]:
        return [i for i, _ in self.pairs]

    @property
    def ends(self) -> list[int]:
        return [j for _, j in self.pairs]


def two_inversion_set(p: Sequence[int]) -> TwoInversionSet:
    pos = [0] * (len(p) + 2)
    for i, v in enumerate(p, 1):
        pos[v] = i
    pairs = sorted((pos[v + 1], pos[v]) for v in range(1, len(p))
                   if pos[v + 1] < pos[v])
    return TwoInversionSet(tuple(pairs))


def inv2(p: Sequence[int]) -> int:
    pos = [0] * (len(p) + 2)
    for i, v in enumerate(p, 1):
        pos[v] = i
    return sum(1 for v in range(1, len(p)) if pos[v + 1] < pos[v])


def des2_tilde(p: Sequence[int]) -> int:
    """
    Number of 2-descents, plus one when the first capacity block (the
    exceedances placed before the first 2-descent) is non-empty.

    This is the count that the forward map turns into descents of the image.
    """
    from .forward import compute_c0

    return des2(p) + (1 if compute_c0(p).values[0] > 0 else 0)


def des2_tilde_chain(p: Sequence[int]) -> int:
    """
    Twisted 2-descent count by the chain-of-2-descents property.

    Walks d < d' < d'' ... starting from the first 2-descent preceded only by
    fixed points (or the virtual position 0 with value n+1).  At each link,
    every 2-inversion beginning strictly between d and d' must start above
    p(d); if d' itself begins a 2-inversion, either p(d) < p(d') or the test
    continues from d'.  Not equidistributed with des for n >= 4; kept for
    comparison with des2_tilde.
    """
    n = len(p)
    D = two_descent_set(p)
    begins = set(two_inversion_set(p).beginnings)
    d = D[0] if D and all(p[i - 1] == i for i in range(1, D[0])) else 0

    def val(x):
        return n + 1 if x == 0 else p[x - 1]

    while True:
        later = [x for x in D if x > d]
        d_next = later[0] if later else n
        if any(val(d) >= p[i - 1] for i in begins if d < i < d_next):
            return len(D) + 1
        if d_next in begins and val(d) > p[d_next - 1]:
            d = d_next
            continue
        return len(D)


def two_ascent_set(p: Sequence[int]) -> list[int]:
    # a rise by at least two
    return [i for i in range(1, len(p)) if p[i - 1] + 1 < p[i]]


def asc2(p: Sequence[int]) -> int:
    return len(two_ascent_set(p))


def amaj2(p: Sequence[int]) -> int:
    return sum(two_ascent_set(p))


def asc2_tilde(p: Sequence[int]) -> int:
    return asc2(p) + (0 if p[0] == 1 else 1)


class StatTriple(NamedTuple):
    x: int
    y: int
    z: int
    vector: str


def _lhs(p):
    return maj2(p), des2_tilde(p), inv2(p)


def _rhs(p):
    e = exc(p)
    return maj(p) - e, des(p), e


def _hl(p):
    return amaj2(p), asc2_tilde(p), ides(p)


VECTORS: dict[str, Callable[[Sequence[int]], tuple[int, int, int]]] = {
    "LHS": _lhs,
    "RHS": _rhs,
    "HL": _hl,
}


def stat_vector(p: Sequence[int], vector_name: str) -> StatTriple:
    """
    LHS = (maj2, des2t, inv2), RHS = (maj - exc, des, exc),
    HL = (amaj2, asc2t, ides).
    """
    key = vector_name.upper()
    if key not in VECTORS:
        raise ValueError(f"unknown statistic vector {vector_name!r}")
    return StatTriple(*VECTORS[key](p), key)


# token -> function, as exposed on the command line
STATISTICS: dict[str, Callable[[Sequence[int]], int]] = {
    "des": des, "exc": exc, "maj": maj, "inv": inv, "ides": ides,
    "des2": des2, "inv2": inv2, "maj2": maj2, "asc2": asc2, "amaj2": amaj2,
    "asc2t": asc2_tilde, "des2t": des2_tilde,
}
