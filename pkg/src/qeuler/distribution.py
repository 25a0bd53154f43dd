"""
Joint distributions of statistic vectors over S_n, exact identity checks,
and the brute-force inverse table.

Distributions are exact integer polynomials in three variables, stored as
{(a, b, c): coefficient}.  Enumeration splits S_n into lexicographic rank
ranges, so partial results can be computed in worker processes and summed.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .forward import phi
from .perm import (Permutation, compact_form, enumerate_permutations,
                   format_permutation, rank_ranges)
from .stats import VECTORS, des, exc, maj

__all__ = [
    "Polynomial3", "joint_distribution", "IdentityReport", "verify_identity",
    "BijectionError", "oracle_inverse_table", "q_reference", "CACHE_ENV",
    "cache_dir", "code_version", "cached_distribution", "CheckResult",
    "CHECKS", "run_check",
]

CACHE_ENV = "QEULER_CACHE_DIR"


class Polynomial3:
    """Sparse polynomial sum coeff * x^a y^b z^c with positive coefficients."""

    def __init__(self, terms: dict[tuple[int, int, int], int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __eq__(self, other):
        return isinstance(other, Polynomial3) and self.terms == other.terms

    def __add__(self, other: "Polynomial3") -> "Polynomial3":
        out = Counter(self.terms)
        out.update(other.terms)
        return Polynomial3(dict(out))

    def __repr__(self):
        return f"Polynomial3({len(self.terms)} terms, total {self.total()})"

    def total(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list[tuple[int, int, int, int]]:
        return [(a, b, c, v) for (a, b, c), v in sorted(self.terms.items())]

    def specialize_y1(self) -> dict[tuple[int, int], int]:
        """Set the middle variable to 1."""
        out: Counter = Counter()
        for (a, _, c), v in self.terms.items():
            out[a, c] += v
        return dict(out)

    def marginal(self, axis: int) -> dict[int, int]:
        out: Counter = Counter()
        for key, v in self.terms.items():
            out[key[axis]] += v
        return dict(out)

    def to_json(self, n: int, vector: str) -> dict:
        return {"n": n, "vector": vector.lower(),
                "terms": [list(t) for t in self.sorted_terms()]}

    @classmethod
    def from_json(cls, doc: dict) -> "Polynomial3":
        return cls({(a, b, c): v for a, b, c, v in doc["terms"]})

    def write_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["a", "b", "c", "coeff"])
            w.writerows(self.sorted_terms())


def _count(n, vector, lo, hi):
    f = VECTORS[vector]
    return Counter(f(p) for p in enumerate_permutations(n, lo, hi))


def _fan_out(fn, n, jobs, *args):
    # run fn(n, *args, lo, hi) over rank ranges, in order
    ranges = rank_ranges(n, max(1, jobs) * 4 if jobs > 1 else 1)
    if jobs <= 1:
        return [fn(n, *args, lo, hi) for lo, hi in ranges]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, n, *args, lo, hi) for lo, hi in ranges]
        return [f.result() for f in futures]


def joint_distribution(n: int, vector_name: str, jobs: int = 1) -> Polynomial3:
    """
    Sum of x^a y^b z^c over S_n, (a, b, c) the chosen statistic vector.

    >>> joint_distribution(2, "LHS").sorted_terms()
    [(0, 0, 0, 1), (0, 1, 1, 1)]
    """
    vector = vector_name.upper()
    if vector not in VECTORS:
        raise ValueError(f"unknown statistic vector {vector_name!r}")
    total: Counter = Counter()
    for part in _fan_out(_count, n, jobs, vector):
        total.update(part)
    return Polynomial3(dict(total))


@dataclass
class IdentityReport:
    equal: bool
    first_discrepancy: tuple[tuple[int, int, int], int, int] | None = None


def verify_identity(n: int, lhs_vector: str, rhs_vector: str,
                    jobs: int = 1) -> IdentityReport:
    """Compare two joint distributions term by term."""
    left = joint_distribution(n, lhs_vector, jobs)
    right = joint_distribution(n, rhs_vector, jobs)
    for key in sorted(set(left.terms) | set(right.terms)):
        a, b = left.terms.get(key, 0), right.terms.get(key, 0)
        if a != b:
            return IdentityReport(False, (key, a, b))
    return IdentityReport(True)


class BijectionError(RuntimeError):
    """
    The forward map failed on `culprit`, or sent `culprit` and `other` to
    the same `image`.
    """

    def __init__(self, message, culprit, other=None, image=None):
        super().__init__(message)
        self.culprit = culprit
        self.other = other
        self.image = image


def _images(n, lo, hi):
    out = []
    for p in enumerate_permutations(n, lo, hi):
        try:
            out.append((tuple(phi(p)), tuple(p)))
        except Exception as err:
            out.append((None, tuple(p), f"{type(err).__name__}: {err}"))
    return out


def oracle_inverse_table(n: int, jobs: int = 1) -> dict[Permutation, Permutation]:
    """{image: preimage} over all of S_n, by running the forward map."""
    table: dict[Permutation, Permutation] = {}
    for part in _fan_out(_images, n, jobs):
        for item in part:
            if item[0] is None:
                raise BijectionError(
                    f"forward map failed on {format_permutation(item[1])}: {item[2]}",
                    item[1])
            image, p = item
            if image in table:
                raise BijectionError(
                    f"{format_permutation(table[image])} and {format_permutation(p)}"
                    f" both map to {format_permutation(image)}",
                    p, table[image], image)
            table[Permutation._trusted(image)] = Permutation._trusted(p)
    return table


def q_reference(n: int, kind: str) -> list[int]:
    """
    Coefficient list (index = exponent) of the q-factorial
    prod_{i<=n} (1 + q + ... + q^(i-1)) or of the Eulerian polynomial.

    >>> q_reference(3, "q_factorial")
    [1, 2, 2, 1]
    >>> q_reference(3, "eulerian")
    [1, 4, 1]
    """
    if kind == "q_factorial":
        poly = [1]
        for i in range(1, n + 1):
            nxt = [0] * (len(poly) + i - 1)
            for a, v in enumerate(poly):
                for b in range(i):
                    nxt[a + b] += v
            poly = nxt
        return poly
    if kind == "eulerian":
        # A(n, k) = (k+1) A(n-1, k) + (n-k) A(n-1, k-1)
        row = [1]
        for m in range(2, n + 1):
            row = [(k + 1) * (row[k] if k < len(row) else 0)
                   + (m - k) * (row[k - 1] if 0 < k <= len(row) else 0)
                   for k in range(m)]
        return row
    raise ValueError(f"unknown reference polynomial {kind!r}")


# cache

def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "qeuler"


def code_version() -> str:
    """Hash of the sources a cached distribution depends on."""
    h = hashlib.sha256()
    here = Path(__file__).parent
    for name in ("perm.py", "stats.py", "forward.py", "distribution.py"):
        h.update((here / name).read_bytes())
    return h.hexdigest()[:12]


def cached_distribution(n: int, vector_name: str, jobs: int = 1,
                        directory: Path | None = None) -> Polynomial3:
    """joint_distribution with a JSON file cache; unreadable entries are recomputed."""
    vector = vector_name.upper()
    directory = Path(directory) if directory else cache_dir()
    path = directory / f"{vector.lower()}-n{n}-{code_version()}.json"
    try:
        doc = json.loads(path.read_text())
        if doc.get("n") == n and doc.get("vector") == vector.lower():
            return Polynomial3.from_json(doc)
    except (OSError, ValueError, KeyError, TypeError):
        pass
    poly = joint_distribution(n, vector, jobs)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(poly.to_json(n, vector)))
    except OSError:
        pass
    return poly


# named exhaustive checks, as run by the command line

@dataclass
class CheckResult:
    name: str
    n: int
    ok: bool
    detail: str = ""
    counterexample: str | None = None


def _check_bijection(n, jobs):
    try:
        table = oracle_inverse_table(n, jobs)
    except BijectionError as err:
        return CheckResult("bijection", n, False, str(err),
                           compact_form(err.culprit))
    ok = len(table) == math.factorial(n)
    return CheckResult("bijection", n, ok, f"{len(table)} distinct images")


def _triples(n, lo, hi):
    lhs, rhs = VECTORS["LHS"], VECTORS["RHS"]
    for p in enumerate_permutations(n, lo, hi):
        try:
            t = phi(p)
        except Exception as err:
            return compact_form(p), f"forward map failed: {err}"
        if rhs(t) != lhs(p):
            return compact_form(p), f"{lhs(p)} -> {rhs(t)}"
    return None


def _check_triple(n, jobs):
    for res in _fan_out(_triples, n, jobs):
        if res:
            return CheckResult("triple", n, False, res[1], res[0])
    return CheckResult("triple", n, True, "all triples preserved")


def _identity_check(name, lhs, rhs, y1=False):
    def check(n, jobs):
        left = joint_distribution(n, lhs, jobs)
        right = joint_distribution(n, rhs, jobs)
        a = left.specialize_y1() if y1 else left.terms
        b = right.specialize_y1() if y1 else right.terms
        if a == b:
            return CheckResult(name, n, True, f"{len(a)} terms agree")
        key = min(k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0))
        return CheckResult(name, n, False,
                           f"coefficient of {key}: {a.get(key, 0)} vs {b.get(key, 0)}")
    return check


def _maj_des_exc(n, lo, hi):
    out = Counter(), Counter(), Counter()
    for p in enumerate_permutations(n, lo, hi):
        out[0][maj(p)] += 1
        out[1][des(p)] += 1
        out[2][exc(p)] += 1
    return out


def _check_mahonian(n, jobs):
    m, d, e = Counter(), Counter(), Counter()
    for a, b, c in _fan_out(_maj_des_exc, n, jobs):
        m.update(a)
        d.update(b)
        e.update(c)
    qf = q_reference(n, "q_factorial")
    eu = q_reference(n, "eulerian")
    if [m.get(k, 0) for k in range(len(qf))] != qf or sum(m.values()) != sum(qf):
        return CheckResult("mahonian", n, False, "maj is not q-factorial distributed")
    if d != e or [d.get(k, 0) for k in range(len(eu))] != eu:
        return CheckResult("mahonian", n, False, "des and exc differ from the Eulerian numbers")
    return CheckResult("mahonian", n, True, "maj, des, exc match references")


CHECKS: dict[str, Callable[[int, int], CheckResult]] = {
    "bijection": _check_bijection,
    "triple": _check_triple,
    "eq1": _identity_check("eq1", "LHS", "RHS", y1=True),
    "eq2": _identity_check("eq2", "HL", "RHS"),
    "eq3": _identity_check("eq3", "LHS", "RHS"),
    "mahonian": _check_mahonian,
}


def run_check(name: str, n: int, jobs: int = 1) -> CheckResult:
    if name not in CHECKS:
        raise ValueError(f"unknown check {name!r}")
    return CHECKS[name](n, jobs)
