"""
Drawing permutations
====================

Linear diagrams box the big drops and join v+1 to v by an arc when v+1
comes first.  Planar diagrams ride up and down the slopes and ring the
exceedances.
"""

import tempfile
from pathlib import Path

from qeuler import linear_diagram, render_linear, render_planar

print(render_linear([3, 4, 2, 5, 1], "ascii"))
print(render_planar([3, 2, 5, 4, 1], "ascii"))

# the same layout as primitives
d = linear_diagram([4, 2, 5, 7, 3, 6, 9, 8, 1])
print(d.count("arc"), "arcs,", d.count("box"), "boxes")

out = Path(tempfile.mkdtemp())
(out / "linear.svg").write_text(render_linear([4, 2, 5, 7, 3, 6, 9, 8, 1], "svg"))
(out / "planar.svg").write_text(render_planar([9, 5, 6, 3, 8, 2, 4, 7, 1], "svg"))
print("SVG files in", out)
