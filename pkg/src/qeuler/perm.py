"""
Permutations of [n] in one-line notation, 1-based.

A permutation is stored as a tuple whose entry at index i-1 is p(i).  All
public functions take and return 1-based positions and values.

>>> p = parse_permutation("34251")
>>> format_permutation(inverse(p))
'5,3,1,2,4'
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation", "PermutationError", "CapacityError", "ENUMERATION_CAP",
    "parse_permutation", "format_permutation", "compact_form", "identity", "inverse",
    "compose", "enumerate_permutations", "rank_ranges", "unrank",
]

# largest n accepted by enumerate_permutations (10! is about 3.6 million words)
ENUMERATION_CAP = 10


class PermutationError(ValueError):
    """Input is not a permutation of [n]."""


class CapacityError(ValueError):
    """Requested size is above the enumeration cap."""


class Permutation(tuple):
    """An immutable one-line word p(1) ... p(n) on [n]."""

    __slots__ = ()

    def __new__(cls, word: Iterable[int]):
        word = tuple(int(x) for x in word)
        n = len(word)
        if n == 0:
            raise PermutationError("empty permutation")
        seen = set()
        for x in word:
            if x < 1 or x > n:
                raise PermutationError(f"value {x} out of range [1, {n}]")
            if x in seen:
                raise PermutationError(f"value {x} appears twice")
            seen.add(x)
        return super().__new__(cls, word)

    @classmethod
    def _trusted(cls, word: Sequence[int]) -> "Permutation":
        # skip validation for words we built ourselves
        return tuple.__new__(cls, word)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        """Value at 1-based position i."""
        if i < 1:
            raise IndexError(i)
        return self[i - 1]

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({format_permutation(self)})"


def parse_permutation(text: str) -> Permutation:
    """
    Read a permutation from comma-separated integers, or from a digit string
    when n <= 9.

    >>> parse_permutation("3,1,2")
    Permutation(3,1,2)
    >>> parse_permutation("425736981")
    Permutation(4,2,5,7,3,6,9,8,1)
    """
    text = text.strip()
    if not text:
        raise PermutationError("empty permutation")
    if "," in text:
        parts = [s.strip() for s in text.split(",")]
        try:
            word = [int(s) for s in parts]
        except ValueError:
            bad = next(s for s in parts if not s.lstrip("-").isdigit())
            raise PermutationError(f"not an integer: {bad!r}") from None
    elif text.isdigit():
        word = [int(c) for c in text]
        if len(word) > 9 or 0 in word:
            raise PermutationError(
                f"digit form {text!r} is only valid for n <= 9; use commas")
    else:
        raise PermutationError(f"cannot read {text!r} as a permutation")
    return Permutation(word)


def format_permutation(p: Sequence[int]) -> str:
    return ",".join(str(x) for x in p)


def compact_form(p: Sequence[int]) -> str:
    """
    Digit string when n <= 9, comma form otherwise.  Reads back through
    parse_permutation either way.

    >>> compact_form([9, 5, 6, 3, 8, 2, 4, 7, 1])
    '956382471'
    """
    if len(p) <= 9:
        return "".join(str(x) for x in p)
    return format_permutation(p)


def identity(n: int) -> Permutation:
    return Permutation._trusted(range(1, n + 1))


def inverse(p: Sequence[int]) -> Permutation:
    q = [0] * len(p)
    for i, v in enumerate(p, 1):
        q[v - 1] = i
    return Permutation._trusted(q)


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """(p o q)(i) = p(q(i))."""
    if len(p) != len(q):
        raise PermutationError("cannot compose permutations of different size")
    return Permutation._trusted([p[v - 1] for v in q])


def _check_cap(n: int) -> None:
    if n < 1:
        raise CapacityError(f"n must be positive, got {n}")
    if n > ENUMERATION_CAP:
        raise CapacityError(f"n = {n} exceeds the enumeration cap {ENUMERATION_CAP}")


def unrank(n: int, rank: int) -> Permutation:
    """The permutation at 0-based lexicographic rank."""
    if not 0 <= rank < math.factorial(n):
        raise IndexError(rank)
    pool = list(range(1, n + 1))
    word = []
    for k in range(n - 1, -1, -1):
        f = math.factorial(k)
        idx, rank = divmod(rank, f)
        word.append(pool.pop(idx))
    return Permutation._trusted(word)


def _next_word(a: list[int]) -> bool:
    # in-place lexicographic successor; False at the last word
    i = len(a) - 2
    while i >= 0 and a[i] > a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(a) - 1
    while a[j] < a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1:] = reversed(a[i + 1:])
    return True


def enumerate_permutations(n: int, start: int = 0,
                           stop: int | None = None) -> Iterator[Permutation]:
    """
    Yield the permutations of [n] with lexicographic rank in [start, stop).

    The full range gives all n! words in lexicographic order; disjoint rank
    ranges concatenate to the same stream.
    """
    _check_cap(n)
    total = math.factorial(n)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    a = list(unrank(n, start))
    for _ in range(stop - start):
        yield Permutation._trusted(a)
        if not _next_word(a):
            break


def rank_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, n!) into at most `parts` contiguous, nearly equal ranges."""
    _check_cap(n)
    total = math.factorial(n)
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out
