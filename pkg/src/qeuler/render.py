"""
Linear and planar drawings of a permutation, as SVG or as ASCII art.

A linear diagram writes the word in one row, boxes every entry that starts a
drop of at least two, and joins the positions of v+1 and v by an arc when
v+1 comes first.  A planar diagram puts the entries on alternating up and
down slopes and rings each exceedance.

Both are built as a Diagram of grid primitives first, so the two output
formats share one layout and element counts can be checked on either.

>>> print(render_linear([3, 4, 2, 5, 1], "ascii"), end="")
           .---------.
           |         |
           |         |
 .---------+         |
 |         |         |
 |         |         |
     +-+       +-+
 3   |4|   2   |5|   1
     +-+       +-+
>>> ascii_word(render_planar([3, 2, 5, 4, 1], "ascii"))
[3, 2, 5, 4, 1]
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Sequence

from .stats import exceedance_set, two_descent_set, two_inversion_set

__all__ = [
    "VERTEX", "BOX", "ARC", "RING", "SLOPE", "Element", "Diagram",
    "linear_diagram", "planar_diagram", "to_svg", "to_ascii",
    "render_linear", "render_planar", "render", "ascii_word", "FORMATS",
]

VERTEX, BOX, ARC, RING, SLOPE = "vertex", "box", "arc", "ring", "slope"
FORMATS = ("svg", "ascii")


@dataclass(frozen=True)
class Element:
    """
    One drawing primitive on an integer grid.

    Vertices, boxes and rings sit at (x, y).  An arc spans columns x..x2 at
    level y.  A slope runs from (x, y) to (x2, y2).
    """
    kind: str
    x: int
    y: int
    x2: int = 0
    y2: int = 0
    label: str = ""


@dataclass
class Diagram:
    kind: str
    word: tuple[int, ...]
    elements: list[Element] = field(default_factory=list)

    def count(self, kind: str) -> int:
        return sum(1 for e in self.elements if e.kind == kind)

    def of(self, kind: str) -> list[Element]:
        return [e for e in self.elements if e.kind == kind]


def _arc_levels(pairs):
    # shorter arcs first; an arc sits one level above anything it touches
    placed: list[tuple[int, int, int]] = []
    for i, j in sorted(pairs, key=lambda a: (a[1] - a[0], a[0])):
        level = 1 + max((lv for a, b, lv in placed if a <= j and i <= b), default=0)
        placed.append((i, j, level))
    return sorted(placed)


def linear_diagram(p: Sequence[int]) -> Diagram:
    """
    >>> d = linear_diagram([4, 2, 5, 7, 3, 6, 9, 8, 1])
    >>> d.count(ARC), d.count(BOX)
    (4, 3)
    """
    p = tuple(p)
    d = Diagram("linear", p)
    for k, v in enumerate(p, 1):
        d.elements.append(Element(VERTEX, k, 0, label=str(v)))
    for k in two_descent_set(p):
        d.elements.append(Element(BOX, k, 0))
    for i, j, level in _arc_levels(two_inversion_set(p).pairs):
        d.elements.append(Element(ARC, i, level, x2=j))
    return d


def planar_diagram(t: Sequence[int]) -> Diagram:
    """
    Heights go up one step on an ascent and down one on a descent, then
    shift so the lowest vertex is at height 0.

    >>> d = planar_diagram([3, 2, 5, 4, 1])
    >>> [e.y for e in d.of(VERTEX)], d.count(RING)
    ([2, 1, 2, 1, 0], 2)
    """
    t = tuple(t)
    heights = [0]
    for a, b in zip(t, t[1:]):
        heights.append(heights[-1] + (1 if b > a else -1))
    low = min(heights)
    heights = [h - low for h in heights]
    d = Diagram("planar", t)
    for k, (v, h) in enumerate(zip(t, heights), 1):
        d.elements.append(Element(VERTEX, k, h, label=str(v)))
    for k in exceedance_set(t):
        d.elements.append(Element(RING, k, heights[k - 1]))
    for k in range(1, len(t)):
        d.elements.append(Element(SLOPE, k, heights[k - 1], x2=k + 1, y2=heights[k]))
    return d


# SVG

_STEP = 40       # horizontal pixels per position
_LEVEL = 30      # vertical pixels per height level or arc level
_MARGIN = 30


def to_svg(d: Diagram) -> str:
    n = len(d.word)
    top = max((e.y for e in d.elements), default=0)
    width = 2 * _MARGIN + _STEP * max(n - 1, 0)
    height = 2 * _MARGIN + _LEVEL * (top + 1)
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                     width=str(width), height=str(height),
                     viewBox=f"0 0 {width} {height}")
    ET.SubElement(svg, "title").text = f"{d.kind} graph of {','.join(map(str, d.word))}"

    def px(k):
        return _MARGIN + _STEP * (k - 1)

    base = height - _MARGIN

    def py(level):
        return base - _LEVEL * level

    for e in d.elements:
        if e.kind == ARC:
            x1, x2 = px(e.x), px(e.x2)
            rx = (x2 - x1) / 2
            ry = _LEVEL * e.y
            y = base - 12
            ET.SubElement(svg, "path", {
                "class": "arc", "fill": "none", "stroke": "black",
                "d": f"M {x1} {y} A {rx} {ry} 0 0 1 {x2} {y}"})
        elif e.kind == SLOPE:
            ET.SubElement(svg, "line", {
                "class": "slope " + ("ascent" if e.y2 > e.y else "descent"),
                "stroke": "black",
                "x1": str(px(e.x)), "y1": str(py(e.y)),
                "x2": str(px(e.x2)), "y2": str(py(e.y2))})
    for e in d.elements:
        y = base if d.kind == "linear" else py(e.y)
        if e.kind == BOX:
            ET.SubElement(svg, "rect", {
                "class": "box", "fill": "none", "stroke": "black",
                "x": str(px(e.x) - 10), "y": str(y - 10),
                "width": "20", "height": "20"})
        elif e.kind == RING:
            ET.SubElement(svg, "circle", {
                "class": "ring", "fill": "white", "stroke": "black",
                "cx": str(px(e.x)), "cy": str(y), "r": "11"})
    for e in d.of(VERTEX):
        y = base if d.kind == "linear" else py(e.y)
        if d.kind == "planar" and not any(r.x == e.x for r in d.of(RING)):
            ET.SubElement(svg, "circle", {
                "class": "dot", "fill": "white", "stroke": "none",
                "cx": str(px(e.x)), "cy": str(y), "r": "9"})
        text = ET.SubElement(svg, "text", {
            "class": "vertex", "x": str(px(e.x)), "y": str(y + 5),
            "text-anchor": "middle", "font-family": "monospace", "font-size": "14"})
        text.text = e.label
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


# ASCII

_GAP = 2    # blank columns between vertex cells; slopes are drawn here


class _Canvas:
    def __init__(self, rows, cols):
        self.grid = [[" "] * cols for _ in range(rows)]

    def put(self, r, c, ch):
        old = self.grid[r][c]
        if old != " " and old != ch and {old, ch} <= {"-", "|", ".", "+"}:
            ch = "+"
        self.grid[r][c] = ch

    def text(self, r, c, s):
        for k, ch in enumerate(s):
            self.grid[r][c + k] = ch

    def __str__(self):
        return "\n".join("".join(row).rstrip() for row in self.grid)


def to_ascii(d: Diagram) -> str:
    """Three text rows per level; every vertex occupies one fixed-width cell."""
    n = len(d.word)
    w = max(len(e.label) for e in d.of(VERTEX)) + 2
    cols = n * (w + _GAP)

    def left(k):
        return (k - 1) * (w + _GAP)

    def centre(k):
        return left(k) + w // 2

    if d.kind == "linear":
        levels = max((e.y for e in d.of(ARC)), default=0)
        canvas = _Canvas(3 * (levels + 1), cols)
        boxed = {e.x for e in d.of(BOX)}
        base = 3 * levels
        for e in d.of(VERTEX):
            cell = e.label.center(w - 2)
            if e.x in boxed:
                canvas.text(base, left(e.x), "+" + "-" * (w - 2) + "+")
                canvas.text(base + 1, left(e.x), "|" + cell + "|")
                canvas.text(base + 2, left(e.x), "+" + "-" * (w - 2) + "+")
            else:
                canvas.text(base + 1, left(e.x), " " + cell + " ")
        for e in d.of(ARC):
            row = 3 * (levels - e.y)
            a, b = centre(e.x), centre(e.x2)
            for c in range(a + 1, b):
                canvas.put(row, c, "-")
            canvas.put(row, a, ".")
            canvas.put(row, b, ".")
            for r in range(row + 1, base):
                canvas.put(r, a, "|")
                canvas.put(r, b, "|")
        return str(canvas) + "\n"

    top = max(e.y for e in d.of(VERTEX))
    canvas = _Canvas(3 * (top + 1), cols)

    def mid(h):
        return 3 * (top - h) + 1

    ringed = {e.x for e in d.of(RING)}
    for e in d.of(VERTEX):
        cell = e.label.center(w - 2)
        canvas.text(mid(e.y), left(e.x), ("(" + cell + ")") if e.x in ringed
                    else (" " + cell + " "))
    for e in d.of(SLOPE):
        g = left(e.x) + w
        lo, hi = min(e.y, e.y2), max(e.y, e.y2)
        upper, lower = mid(hi) + 1, mid(lo) - 1
        if e.y2 > e.y:
            canvas.put(lower, g, "/")
            canvas.put(upper, g + 1, "/")
        else:
            canvas.put(upper, g, "\\")
            canvas.put(lower, g + 1, "\\")
    return str(canvas) + "\n"


def ascii_word(text: str) -> list[int]:
    """Read the vertex labels of an ASCII diagram back, left to right."""
    rows = text.splitlines()
    found: list[tuple[int, int]] = []
    for row in rows:
        for m in re.finditer(r"\d+", row):
            found.append((m.start(), int(m.group())))
    return [v for _, v in sorted(found)]


def _emit(d: Diagram, fmt: str) -> str:
    if fmt == "svg":
        return to_svg(d)
    if fmt == "ascii":
        return to_ascii(d)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def render_linear(p: Sequence[int], fmt: str = "svg") -> str:
    return _emit(linear_diagram(p), fmt)


def render_planar(t: Sequence[int], fmt: str = "svg") -> str:
    return _emit(planar_diagram(t), fmt)


def render(p: Sequence[int], kind: str, fmt: str = "svg") -> str:
    if kind == "linear":
        return render_linear(p, fmt)
    if kind == "planar":
        return render_planar(p, fmt)
    raise ValueError(f"unknown diagram kind {kind!r}")
