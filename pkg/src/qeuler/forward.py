"""
The forward map sending (maj2, des2t, inv2) of a permutation to
(maj - exc, des, exc) of its image.

Pipeline for a permutation p:

1. ``compute_c0``: split the 2-inversions of p into capacity blocks, one per
   gap between consecutive 2-descents, by repeatedly picking a heaviest
   increasing run of 2-inversion chains.
2. ``adjust_capacities``: move one unit of capacity left whenever two dots
   would otherwise form a descent that p does not have as a 2-descent.
3. ``build_graph``: lay out circles (future exceedances) right after each
   2-descent and dots elsewhere, with ascents and descents between
   neighbours.
4. ``label_circles`` / ``label_dots``: fill in values by candidate sets,
   pruning and singleton propagation.

The image is read off the labelled graph left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .perm import Permutation
from .stats import two_descent_set, two_inversion_set

__all__ = [
    "InvariantViolation", "CapacitySequence", "OmegaWord", "SlopeGraph",
    "tops", "compute_c0", "omega_word", "adjust_capacities", "build_graph",
    "label_circles", "label_dots", "phi", "phi_trace",
    "CIRCLE", "DOT", "ASC", "DESC",
]

CIRCLE, DOT = "circle", "dot"
ASC, DESC = "A", "D"


class InvariantViolation(RuntimeError):
    """A construction step reached a state its invariants rule out."""


@dataclass(frozen=True)
class CapacitySequence:
    """
    Per-block capacities c_0..c_r.  ``bounds`` holds the block starts
    0 = b_0 < b_1 < ... < b_r (the 2-descents) followed by n.
    """
    values: tuple[int, ...]
    bounds: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.values) - 1

    @property
    def n(self) -> int:
        return self.bounds[-1]

    def descents(self) -> list[int]:
        """Block ends b_k + c_k, dropping a zero at k = 0."""
        ends = [b + c for b, c in zip(self.bounds, self.values)]
        return [d for d in ends if d > 0]

    def violations(self) -> list[str]:
        """Broken capacity invariants, empty when the sequence is sound."""
        out = []
        vals = list(self.values) + [0]
        for k, c in enumerate(self.values):
            room = self.bounds[k + 1] - self.bounds[k]
            if c < 0:
                out.append(f"c_{k} = {c} is negative")
            elif c > room:
                out.append(f"c_{k} = {c} exceeds block width {room}")
            elif c == room and vals[k + 1] == 0:
                out.append(f"c_{k} fills its block but c_{k + 1} = 0")
        return out


@dataclass(frozen=True)
class OmegaWord:
    """Values of p at the positions that begin no 2-inversion."""
    positions: tuple[int, ...]
    letters: tuple[int, ...]


@dataclass
class SlopeGraph:
    """
    n vertices left to right.  ``kinds[i-1]`` is CIRCLE or DOT,
    ``relations[i-1]`` is ASC or DESC between vertices i and i+1, and
    ``labels[i-1]`` is the final value or None.
    """
    kinds: list[str]
    relations: list[str]
    labels: list[int | None] = field(default_factory=list)

    def __post_init__(self):
        if not self.labels:
            self.labels = [None] * len(self.kinds)

    @property
    def n(self) -> int:
        return len(self.kinds)

    def positions(self, kind: str) -> list[int]:
        return [i for i, k in enumerate(self.kinds, 1) if k == kind]

    def descents(self) -> list[int]:
        return [i for i, r in enumerate(self.relations, 1) if r == DESC]

    def records(self) -> list[dict]:
        out = []
        for i in range(1, self.n + 1):
            out.append({
                "position": i,
                "kind": self.kinds[i - 1],
                "label": self.labels[i - 1],
                "next": self.relations[i - 1] if i < self.n else None,
            })
        return out


def tops(p: Sequence[int]) -> dict[int, int]:
    """k -> start of the run of consecutive 2-descents ending at the k-th."""
    D = two_descent_set(p)
    out = {}
    for k in range(1, len(D) + 1):
        l = k
        while l > 1 and D[l - 2] == D[l - 1] - 1:
            l -= 1
        out[k] = D[l - 1]
    return out


def _heaviest_run(p, starts, weight):
    # DP over starts by position: best[i] = (total weight, positions), best
    # increasing-valued sequence beginning at i; ties go to the
    # lexicographically greatest position tuple
    best = {}
    for a in reversed(starts):
        tail = (0, ())
        for b, cand in best.items():
            if b > a and p[b - 1] > p[a - 1] and cand > tail:
                tail = cand
        best[a] = (weight[a] + tail[0], (a,) + tail[1])
    return max(best.values()) if best else (0, ())


def compute_c0(p: Sequence[int]) -> CapacitySequence:
    """
    Initial capacities.  From the last block down to block 0, choose among
    2-inversion beginnings at or right of the block's top an increasing
    (in value) subsequence maximising the total length of the 2-inversion
    chains they start; that total is the block's capacity and those chains
    leave the pool.
    """
    n = len(p)
    D = two_descent_set(p)
    pool = two_inversion_set(p).as_map()
    top = tops(p)
    top[0] = 0
    values = [0] * (len(D) + 1)
    for k in range(len(D), -1, -1):
        if not pool:
            break
        starts = sorted(i for i in pool if i >= top[k])
        chains = {}
        for i in starts:
            chain, x = [], i
            while x in pool:
                chain.append(x)
                x = pool[x]
            chains[i] = chain
        weight = {i: len(c) for i, c in chains.items()}
        total, seq = _heaviest_run(p, starts, weight)
        values[k] = total
        for i in seq:
            for x in chains[i]:
                del pool[x]
    if pool:
        raise InvariantViolation(f"2-inversions left unassigned: {sorted(pool)}")
    return CapacitySequence(tuple(values), tuple([0] + D + [n]))


def omega_word(p: Sequence[int]) -> OmegaWord:
    begins = set(two_inversion_set(p).beginnings)
    u = tuple(i for i in range(1, len(p) + 1) if i not in begins)
    return OmegaWord(u, tuple(p[i - 1] for i in u))


def build_graph(p: Sequence[int], c: CapacitySequence,
                omega: OmegaWord | None = None) -> SlopeGraph:
    """Unlabelled graph: circles fill ]b_k, b_k + c_k], dots follow omega."""
    n = len(p)
    if omega is None:
        omega = omega_word(p)
    kinds = [DOT] * n
    ends = set()
    for b, ck in zip(c.bounds, c.values):
        for x in range(b + 1, b + ck + 1):
            kinds[x - 1] = CIRCLE
        if ck:
            ends.add(b + ck)
    dot_rank = {}
    for i, k in enumerate(kinds, 1):
        if k == DOT:
            dot_rank[i] = len(dot_rank)
    w = omega.letters
    if len(w) != len(dot_rank):
        raise InvariantViolation(
            f"{len(dot_rank)} dots but omega has {len(w)} letters")
    rel = []
    for i in range(1, n):
        a, b = kinds[i - 1], kinds[i]
        if a == CIRCLE and b == DOT:
            rel.append(DESC)
        elif a == DOT and b == CIRCLE:
            rel.append(ASC)
        elif a == CIRCLE:
            # circle runs climb inside a block and fall across blocks
            rel.append(DESC if i in ends else ASC)
        else:
            m = dot_rank[i]
            rel.append(DESC if w[m] > w[m + 1] else ASC)
    return SlopeGraph(kinds, rel)


def adjust_capacities(p: Sequence[int], c0: CapacitySequence,
                      spill: bool = True) -> CapacitySequence:
    """
    Sweep i = 1..n-1 over the graph of the current capacities.  When dots i
    and i+1 form a descent although i is not a 2-descent of p, widen the
    block holding i by one circle and take that circle from the next block.

    With ``spill`` the circle is taken from the nearest following block that
    still has one; without it, only the immediately following block is used
    and an empty one raises InvariantViolation.
    """
    n = len(p)
    D = set(two_descent_set(p))
    omega = omega_word(p)
    bounds = c0.bounds
    c = list(c0.values)
    for i in range(1, n):
        g = build_graph(p, CapacitySequence(tuple(c), bounds), omega)
        if not (g.kinds[i - 1] == DOT and g.kinds[i] == DOT
                and g.relations[i - 1] == DESC and i not in D):
            continue
        ks = [k for k in range(len(c)) if bounds[k] + c[k] < i < bounds[k + 1]]
        if len(ks) != 1:
            raise InvariantViolation(f"position {i} lies in no single block gap")
        k = ks[0]
        m = k + 1
        if spill:
            while m < len(c) and c[m] == 0:
                m += 1
        if m >= len(c) or c[m] == 0:
            raise InvariantViolation(
                f"no capacity to move into block {k} at position {i}")
        c[k] += 1
        c[m] -= 1
    return CapacitySequence(tuple(c), bounds)


# candidate-set machinery shared by both labelling stages

def _snapshot(step, sets):
    return {"step": step, "sets": {str(i): sorted(s) for i, s in sorted(sets.items())}}


def _prune_bounds(g, sets, kind):
    # adjacent same-kind vertices: the lower one needs a value below the
    # larger's max, the upper one a value above the smaller's min
    changed = True
    while changed:
        changed = False
        for i in range(1, g.n):
            if g.kinds[i - 1] != kind or g.kinds[i] != kind:
                continue
            lo, hi = (i, i + 1) if g.relations[i - 1] == ASC else (i + 1, i)
            if not sets[lo] or not sets[hi]:
                continue
            top, bottom = max(sets[hi]), min(sets[lo])
            drop_lo = {x for x in sets[lo] if x >= top}
            drop_hi = {x for x in sets[hi] if x <= bottom}
            if drop_lo or drop_hi:
                sets[lo] -= drop_lo
                sets[hi] -= drop_hi
                changed = True


def _above_in_slopes(g, i, kind):
    # same-kind vertices higher than i on its descending run (to the left)
    # and on its ascending run (to the right)
    out = []
    x = i
    while x > 1 and g.relations[x - 2] == DESC:
        x -= 1
        if g.kinds[x - 1] == kind:
            out.append(x)
    x = i
    while x < g.n and g.relations[x - 1] == ASC:
        x += 1
        if g.kinds[x - 1] == kind:
            out.append(x)
    return out


def _prune_chain(g, sets, kind):
    # single pass: a vertex with m same-kind vertices above it loses its m
    # largest candidates, each of those loses its smallest
    for i in sorted(sets):
        above = _above_in_slopes(g, i, kind)
        if not above:
            continue
        keep = sorted(sets[i])[:max(0, len(sets[i]) - len(above))]
        sets[i] = set(keep)
        for x in above:
            if sets[x]:
                sets[x].discard(min(sets[x]))


_PRUNERS = {"bounds": _prune_bounds, "chain": _prune_chain}


def _propagate_singles(sets):
    changed = True
    while changed:
        changed = False
        for i, s in sets.items():
            if len(s) == 1:
                v = next(iter(s))
                for j, t in sets.items():
                    if j != i and v in t:
                        t.discard(v)
                        changed = True
        holders = {}
        for i, s in sets.items():
            for v in s:
                holders.setdefault(v, []).append(i)
        for v, hs in holders.items():
            if len(hs) == 1 and sets[hs[0]] != {v}:
                sets[hs[0]] = {v}
                changed = True


def _check_nonempty(sets, what):
    for i, s in sets.items():
        if not s:
            raise InvariantViolation(f"{what} at position {i} has no candidate left")


def label_circles(g: SlopeGraph, p: Sequence[int], pruning: str = "bounds",
                  residual: str = "circles",
                  passes: list | None = None) -> SlopeGraph:
    """
    Give each circle the end of one 2-inversion of p.

    A circle at i starts from the 2-inversion ends above i, sets are pruned
    along slopes and singletons propagated.  Circles still undecided are then
    settled against the ends in order of their 2-inversion's beginning:
    ``residual="circles"`` walks the circles left to right, each taking the
    first fitting end; ``residual="sequence"`` walks the ends, each going to
    the leftmost circle that can hold it.
    """
    ends = two_inversion_set(p).ends
    endset = set(ends)
    circles = g.positions(CIRCLE)
    if len(circles) != len(ends):
        raise InvariantViolation(f"{len(circles)} circles for {len(ends)} 2-inversions")
    sets = {i: {j for j in endset if j > i} for i in circles}
    if passes is not None:
        passes.append(_snapshot("init", sets))
    _PRUNERS[pruning](g, sets, CIRCLE)
    _check_nonempty(sets, "circle")
    _propagate_singles(sets)
    _check_nonempty(sets, "circle")
    if passes is not None:
        passes.append(_snapshot("pruned", sets))

    fixed = {i: next(iter(s)) for i, s in sets.items() if len(s) == 1}
    free = [j for j in ends if j not in fixed.values()]
    open_ = [i for i in circles if i not in fixed]
    if residual == "circles":
        for i in open_:
            j = next((j for j in free if j in sets[i]), None)
            if j is None:
                raise InvariantViolation(f"no end left for circle {i}")
            fixed[i] = j
            free.remove(j)
    elif residual == "sequence":
        for j in free:
            i = next((i for i in open_ if j in sets[i]), None)
            if i is None:
                raise InvariantViolation(f"no circle left for end {j}")
            fixed[i] = j
            open_.remove(i)
    else:
        raise ValueError(f"unknown residual rule {residual!r}")
    if passes is not None:
        passes.append(_snapshot("resolved", {i: {v} for i, v in fixed.items()}))

    labels = list(g.labels)
    for i, v in fixed.items():
        labels[i - 1] = v
    return SlopeGraph(list(g.kinds), list(g.relations), labels)


def label_dots(g: SlopeGraph, p: Sequence[int], pruning: str = "bounds",
               passes: list | None = None) -> SlopeGraph:
    """
    Give the dots the values that end no 2-inversion.

    The k-th dot (position q_k) may take values up to min(q_k, u_k), u_k the
    k-th omega position.  After pruning and singleton propagation the values
    are placed smallest first, each on the carrier whose omega letter is
    smallest.
    """
    omega = omega_word(p)
    endset = set(two_inversion_set(p).ends)
    E = [v for v in range(1, len(p) + 1) if v not in endset]
    dots = g.positions(DOT)
    sets = {}
    for k, q in enumerate(dots):
        cap = min(q, omega.positions[k])
        sets[q] = {e for e in E if e <= cap}
    letter = {q: omega.letters[k] for k, q in enumerate(dots)}
    if passes is not None:
        passes.append(_snapshot("init", sets))
    _PRUNERS[pruning](g, sets, DOT)
    _check_nonempty(sets, "dot")
    _propagate_singles(sets)
    _check_nonempty(sets, "dot")
    if passes is not None:
        passes.append(_snapshot("pruned", sets))

    for e in E:
        carriers = [q for q in dots if e in sets[q]]
        if not carriers:
            raise InvariantViolation(f"value {e} fits no dot")
        pick = min(carriers, key=letter.__getitem__)
        sets[pick] = {e}
        for q in dots:
            if q != pick:
                sets[q].discard(e)
        _check_nonempty(sets, "dot")
        _propagate_singles(sets)
        _check_nonempty(sets, "dot")
        if passes is not None:
            passes.append(_snapshot(f"place {e}", sets))

    labels = list(g.labels)
    for q in dots:
        if len(sets[q]) != 1:
            raise InvariantViolation(f"dot {q} left with {sorted(sets[q])}")
        labels[q - 1] = next(iter(sets[q]))
    return SlopeGraph(list(g.kinds), list(g.relations), labels)


def _run(p, trace, spill=True, pruning="bounds", residual="circles"):
    if pruning not in _PRUNERS:
        raise ValueError(f"unknown pruning rule {pruning!r}; expected one of {sorted(_PRUNERS)}")
    c0 = compute_c0(p)
    c = adjust_capacities(p, c0, spill=spill)
    g = build_graph(p, c)
    circle_passes = [] if trace is not None else None
    dot_passes = [] if trace is not None else None
    g = label_circles(g, p, pruning=pruning, residual=residual, passes=circle_passes)
    g = label_dots(g, p, pruning=pruning, passes=dot_passes)
    if sorted(g.labels) != list(range(1, len(p) + 1)):
        raise InvariantViolation(f"labels {g.labels} do not form a permutation")
    out = Permutation._trusted(g.labels)
    if trace is not None:
        inv2_pairs = two_inversion_set(p).pairs
        omega = omega_word(p)
        trace.update({
            "input": list(p),
            "des2_set": two_descent_set(p),
            "inv2_pairs": [list(x) for x in inv2_pairs],
            "tops": {str(k): v for k, v in tops(p).items()},
            "c0": list(c0.values),
            "c": list(c.values),
            "omega": {"positions": list(omega.positions), "letters": list(omega.letters)},
            "graph": g.records(),
            "circle_passes": circle_passes,
            "dot_passes": dot_passes,
            "output": list(out),
        })
    return out


def phi(p: Sequence[int], **options) -> Permutation:
    """
    Image of p.  Options select alternative readings of individual steps:
    ``spill`` (adjust_capacities), ``pruning`` ("bounds" or "chain") and
    ``residual`` ("circles" or "sequence").

    >>> phi((4, 2, 5, 7, 3, 6, 9, 8, 1))
    Permutation(9,5,6,3,8,2,4,7,1)
    """
    return _run(p, None, **options)


def phi_trace(p: Sequence[int], **options) -> dict:
    """phi(p) together with every intermediate, as plain JSON-ready data."""
    trace: dict = {}
    _run(p, trace, **options)
    return trace
