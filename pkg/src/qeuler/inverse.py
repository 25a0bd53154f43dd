"""
Reconstruct a preimage under the forward map.

Given an image t, the positions of its descents and exceedances fix where
the preimage has its 2-descents (boxed vertices) and which values end its
2-inversions (arc ends).  What is left is a row of n vertices with partial
order information between them; values 1, 2, ... are then handed out in
increasing order, always to a vertex with nothing unlabelled below it.

Order information comes from:

- arrows between neighbours (a boxed vertex falls; an unboxed vertex that
  cannot begin an arc to its right neighbour rises),
- arcs: a source sits exactly one value above its end,
- images: two positions of t whose values can be swapped without changing
  the descent and exceedance sets must appear in the same relative order in
  the preimage (for arc ends, this orders the arc sources; for the other
  values, it orders the vertices that begin no arc).

The labelling loop hands the next value to the unique minimal vertex when
there is one; otherwise the image decides which minimal vertex comes first.
Ending an arc immediately labels its source with the next value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .forward import InvariantViolation, phi
from .perm import Permutation
from .stats import descent_set, exceedance_set

__all__ = [
    "InconsistencyError", "RoundTripError", "TauDecomposition", "decompose",
    "SkeletonGraph", "build_skeleton", "propagate", "phi_inverse",
    "phi_inverse_trace",
]


class InconsistencyError(RuntimeError):
    """The skeleton admits no completion along the prescribed choices."""


class RoundTripError(RuntimeError):
    """A completed labelling does not map back to the input."""


@dataclass(frozen=True)
class TauDecomposition:
    """
    Block structure read from an image: descent block ends, exceedances per
    block, block starts (the future 2-descents, 0 first) and tops.
    """
    r: int
    d_tau: tuple[int, ...]
    c_tau: tuple[int, ...]
    d2_tau: tuple[int, ...]
    t_tau: dict[int, int]


def decompose(t: Sequence[int]) -> TauDecomposition:
    """
    >>> decompose((9, 5, 6, 3, 8, 2, 4, 7, 1)).d2_tau
    (0, 1, 4, 8)
    """
    D = descent_set(t)
    d = tuple([0] + D) if t[0] == 1 else tuple(D)
    E = exceedance_set(t)
    c, prev = [], 0
    for x in d:
        c.append(sum(1 for e in E if prev < e <= x))
        prev = x
    d2 = tuple(x - ck for x, ck in zip(d, c))
    tops = {}
    for k in range(1, len(d2)):
        l = k
        while l > 1 and d2[l - 1] == d2[l] - 1:
            l -= 1
        tops[k] = d2[l]
    return TauDecomposition(len(d) - 1, d, tuple(c), d2, tops)


def _swappable(t, a, b):
    # swapping t(a) and t(b) keeps both the descent set and exceedance set
    n = len(t)
    w = list(t)
    w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
    if (w[a - 1] > a) != (t[a - 1] > a) or (w[b - 1] > b) != (t[b - 1] > b):
        return False
    for i in {a - 1, a, b - 1, b}:
        if 1 <= i < n and (w[i - 1] > w[i]) != (t[i - 1] > t[i]):
            return False
    return True


@dataclass
class SkeletonGraph:
    """
    Partially known linear graph of the preimage.

    ``cand[j]`` holds the possible sources of the arc ending at j while it is
    incomplete; ``src[j]`` the source once known.  ``labels[i-1]`` is 0 until
    vertex i is labelled.
    """
    t: tuple[int, ...]
    boxed: frozenset[int]
    cand: dict[int, set[int]]
    src: dict[int, int]
    labels: list[int]
    next_label: int = 1
    plain_labelled: int = 0   # labelled vertices that begin no arc

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def targets(self) -> set[int]:
        return set(self.cand) | set(self.src)

    def unlabelled(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if not self.labels[i - 1]]

    def arrow(self, i: int) -> str | None:
        """'D', 'A' or None between vertices i and i+1."""
        if i in self.boxed or self.src.get(i + 1) == i:
            return "D"
        if i in self.cand.get(i + 1, ()):
            return None
        return "A"

    def source_status(self, i: int) -> bool | None:
        """True if i begins an arc, False if it cannot, None if unknown."""
        if i in self.src.values():
            return True
        if any(i in s for s in self.cand.values()):
            return None
        return False

    def clone(self) -> "SkeletonGraph":
        return SkeletonGraph(self.t, self.boxed,
                             {j: set(s) for j, s in self.cand.items()},
                             dict(self.src), list(self.labels),
                             self.next_label, self.plain_labelled)

    def snapshot(self) -> dict:
        return {
            "boxes": sorted(self.boxed),
            "arcs_complete": [[i, j] for j, i in sorted(self.src.items())],
            "arcs_incomplete": {str(j): sorted(s) for j, s in sorted(self.cand.items())},
            "arrows": [self.arrow(i) for i in range(1, self.n)],
            "labels": [x or None for x in self.labels],
        }


def build_skeleton(t: Sequence[int]) -> SkeletonGraph:
    """Boxes at block starts, one arc end per exceedance value of t."""
    t = tuple(t)
    dec = decompose(t)
    boxed = frozenset(dec.d2_tau[1:])
    cand = {}
    for l in exceedance_set(t):
        j = t[l - 1]
        k = next(k for k in range(dec.r + 1) if dec.d2_tau[k] < l <= dec.d_tau[k])
        lo = dec.t_tau[k] if k >= 1 else 1
        cand[j] = {i for i in range(lo, j) if not (i in boxed and i + 1 == j)}
    return SkeletonGraph(t, boxed, cand, {}, [0] * len(t))


class _Context:
    # data derived once from the image
    def __init__(self, t):
        self.t = t
        n = len(t)
        exc = exceedance_set(t)
        self.circle_order = [
            (t[a - 1], t[b - 1]) for a in exc for b in exc
            if a < b and _swappable(t, a, b)
        ]
        self.dots = [l for l in range(1, n + 1) if t[l - 1] <= l]
        self.dot_values = sorted(t[l - 1] for l in self.dots)
        self.dot_swap = {
            (a, b) for a in self.dots for b in self.dots
            if a != b and _swappable(t, a, b)
        }
        self.pos = {v: i for i, v in enumerate(t, 1)}


def _edges(sk: SkeletonGraph, ctx: _Context) -> list[int]:
    # bitmask per vertex of the vertices directly known to hold smaller values
    n = sk.n
    below = [0] * (n + 1)
    for i in range(1, n):
        a = sk.arrow(i)
        if a == "D":
            below[i] |= 1 << (i + 1)
        elif a == "A":
            below[i + 1] |= 1 << i
    for j, i in sk.src.items():
        below[i] |= 1 << j
    # values are handed out in increasing order
    lab = sk.labels
    done = 0
    for v in sorted(range(1, n + 1), key=lambda v: lab[v - 1] or n + 1):
        if lab[v - 1]:
            below[v] |= done
            done |= 1 << v
    for v in range(1, n + 1):
        if not lab[v - 1]:
            below[v] |= done
    # vertices known to begin no arc, in order, match the dot positions of t
    rank, plain = {}, 0
    for i in range(1, n + 1):
        st = sk.source_status(i)
        if st is None:
            break
        if st is False:
            if plain == len(ctx.dots):
                raise InconsistencyError("more vertices begin no arc than t has dots")
            rank[i] = ctx.dots[plain]
            plain += 1
    for a, la in rank.items():
        for b, lb in rank.items():
            if (la, lb) in ctx.dot_swap and ctx.t[la - 1] > ctx.t[lb - 1]:
                below[a] |= 1 << b
    return below


def _closure(sk: SkeletonGraph, ctx: _Context) -> list[int]:
    """below[v]: bitmask of all vertices holding smaller values than v."""
    n = sk.n
    below = _edges(sk, ctx)
    arcs = list(sk.src.items())
    while True:
        for k in range(1, n + 1):
            bit = 1 << k
            for v in range(1, n + 1):
                if below[v] & bit:
                    below[v] |= below[k]
        # an arc source and its end are adjacent in value, so every third
        # vertex compares to both the same way
        grew = False
        for j, i in arcs:
            for w in range(1, n + 1):
                if w == i or w == j:
                    continue
                if below[w] >> j & 1 and not below[w] >> i & 1:
                    below[w] |= 1 << i
                    grew = True
                if below[i] >> w & 1 and not below[j] >> w & 1:
                    below[j] |= 1 << w
                    grew = True
        if not grew:
            break
    for v in range(1, n + 1):
        if below[v] >> v & 1:
            raise InconsistencyError(f"order relations form a cycle through vertex {v}")
    return below


def propagate(sk: SkeletonGraph, ctx: _Context | None = None) -> list[int]:
    """
    Narrow arc sources to a fixpoint, completing arcs with a single
    candidate.  Returns the final order closure.
    """
    ctx = ctx or _Context(sk.t)
    while True:
        changed = False
        taken = set(sk.src.values())
        for j, s in sk.cand.items():
            drop = {i for i in s if i in taken or sk.labels[i - 1]}
            if drop:
                s -= drop
                changed = True
        # swappable arc ends keep their sources in the same order
        for j, j2 in ctx.circle_order:
            lo = sk.cand.get(j, {sk.src.get(j)})
            hi = sk.cand.get(j2, {sk.src.get(j2)})
            if not lo or not hi:
                raise InconsistencyError(f"arc ending at {j if not lo else j2} has no possible source")
            if j2 in sk.cand:
                drop = {i for i in hi if i <= min(lo)}
                if drop:
                    hi -= drop
                    changed = True
            if j in sk.cand and hi:
                drop = {i for i in lo if i >= max(hi)}
                if drop:
                    lo -= drop
                    changed = True
        below = _closure(sk, ctx)
        for j, s in sk.cand.items():
            # a source lies directly above its end in value
            above_j = sum(1 << w for w in range(1, sk.n + 1)
                          if w != j and below[w] >> j & 1)
            drop = {i for i in s if below[j] >> i & 1 or below[i] & above_j}
            if drop:
                s -= drop
                changed = True
        for j in list(sk.cand):
            s = sk.cand[j]
            if not s:
                raise InconsistencyError(f"arc ending at {j} has no possible source")
            if len(s) == 1:
                sk.src[j] = s.pop()
                del sk.cand[j]
                changed = True
        if not changed:
            return below


def _minimal(sk, below):
    S = sk.unlabelled()
    mask = sum(1 << v for v in S)
    return [v for v in S if not below[v] & mask]


def _label(sk, v, plain):
    if sk.labels[v - 1]:
        raise InvariantViolation(f"vertex {v} labelled twice")
    sk.labels[v - 1] = sk.next_label
    sk.next_label += 1
    if plain:
        sk.plain_labelled += 1


def _vertex_options(sk, ctx, below, strict):
    # minimal vertices, the one chosen through the image first
    M = _minimal(sk, below)
    if len(M) <= 1:
        return M
    k = sk.plain_labelled
    if k >= len(ctx.dot_values):
        raise InconsistencyError("more plain vertices than dot values")
    e = ctx.dot_values[k]
    home = ctx.pos[e]
    ranks = [l for l in ctx.dots
             if ctx.t[l - 1] >= e and (l == home or (l, home) in ctx.dot_swap)]
    if len(ranks) != len(M) and strict:
        raise InconsistencyError(
            f"{len(M)} minimal vertices {M} but {len(ranks)} swappable dots {ranks}")
    # preferred vertex first, then its neighbours in the minimal list
    at = min(ranks.index(home), len(M) - 1)
    return sorted(M, key=lambda v: (abs(M.index(v) - at), -v))


def _source_options(sk, ctx, x):
    # sources for the arc ending at x, rightmost minimal candidate first
    if x in sk.src:
        return [sk.src[x]]
    below = propagate(sk, ctx)
    if x in sk.src:
        return [sk.src[x]]
    M = set(_minimal(sk, below))
    return sorted((i for i in sk.cand[x] if i in M), reverse=True)


class _Search:
    def __init__(self, t, strict, log):
        self.t = tuple(t)
        self.ctx = _Context(self.t)
        self.strict = strict
        self.log = log
        self.backtracks = 0

    def _try(self, sk, options, step):
        if not options:
            raise InconsistencyError("no vertex may take the next value")
        if self.strict:
            options = options[:1]
        last = None
        for choice in options:
            trial = sk if self.strict else sk.clone()
            try:
                return step(trial, choice)
            except (InconsistencyError, InvariantViolation) as err:
                last = err
                self.backtracks += 1
        raise last

    def finish(self, sk):
        if not self.strict and tuple(phi(sk.labels)) != self.t:
            raise InconsistencyError("completed labelling maps elsewhere")
        return sk

    def solve(self, sk):
        if not sk.unlabelled():
            return self.finish(sk)
        below = propagate(sk, self.ctx)
        if not sk.unlabelled():
            return self.finish(sk)
        options = _vertex_options(sk, self.ctx, below, self.strict)
        if self.log is not None:
            self.log.append({**sk.snapshot(), "minimal": _minimal(sk, below),
                             "choice": options[0] if options else None})

        def step(trial, v):
            _label(trial, v, plain=True)
            return self.chain(trial, v)
        return self._try(sk, options, step)

    def chain(self, sk, x):
        # x was just labelled; the source of an arc ending at x comes next
        if x not in sk.targets:
            return self.solve(sk)

        def step(trial, s):
            if x in trial.cand:
                del trial.cand[x]
                trial.src[x] = s
            _label(trial, s, plain=False)
            return self.chain(trial, s)
        return self._try(sk, _source_options(sk, self.ctx, x), step)


def _invert(t, strict, log):
    search = _Search(t, strict, log)
    done = search.solve(build_skeleton(search.t))
    preimage = Permutation(done.labels)
    image = phi(preimage)
    if tuple(image) != search.t:
        raise RoundTripError(
            f"labelling gave {preimage} whose image is {image}, not {Permutation(t)}")
    return preimage, search.backtracks


def phi_inverse(t: Sequence[int], strict: bool = False) -> Permutation:
    """
    Preimage of t.

    Choices are made in order of preference: the minimal vertex picked
    through the image, the rightmost admissible arc source.  A dead end, or
    a finished labelling whose image is not t, moves on to the next
    alternative.  With ``strict`` only the preferred choice is taken and a
    dead end raises InconsistencyError.

    >>> phi_inverse((9, 5, 6, 3, 8, 2, 4, 7, 1))
    Permutation(4,2,5,7,3,6,9,8,1)
    """
    return _invert(t, strict, None)[0]


def phi_inverse_trace(t: Sequence[int], strict: bool = False) -> dict:
    log: list = []
    preimage, backtracks = _invert(t, strict, log)
    return {
        "input": list(t),
        "decomposition": {
            k: (v if not isinstance(v, dict) else {str(a): b for a, b in v.items()})
            for k, v in decompose(t).__dict__.items()
        },
        "steps": log,
        "backtracks": backtracks,
        "output": list(preimage),
    }
