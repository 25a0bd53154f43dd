"""
Where the construction stops being a bijection
==============================================

Up to n = 5 the forward map is a bijection.  At n = 6 two pairs of
permutations share an image, and from n = 7 some inputs get stuck.
"""

from collections import defaultdict

from qeuler import enumerate_permutations, phi, phi_inverse, InvariantViolation
from qeuler.inverse import InconsistencyError
from qeuler.perm import compact_form

for n in range(1, 8):
    hits = defaultdict(list)
    stuck = 0
    for p in enumerate_permutations(n):
        try:
            hits[phi(p)].append(p)
        except InvariantViolation:
            stuck += 1
    shared = {t: ps for t, ps in hits.items() if len(ps) > 1}
    print(n, len(hits), "images,", len(shared), "shared,", stuck, "stuck")
    if n == 6:
        for t, ps in shared.items():
            print("   ", " and ".join(map(compact_form, ps)), "->", compact_form(t))

# the inverse rejects words nothing maps to
for word in ("652134", "652143"):
    try:
        phi_inverse([int(c) for c in word])
    except InconsistencyError as err:
        print(word, "has no preimage:", err)

# taking only the preferred choice at every step already fails on 132
try:
    phi_inverse((1, 3, 2), strict=True)
except InconsistencyError as err:
    print("strict inverse of 132:", err)
print("with backtracking:", compact_form(phi_inverse((1, 3, 2))))
