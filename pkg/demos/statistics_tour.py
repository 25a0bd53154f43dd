"""
A tour of the statistics
========================

Descents that drop by at least two, inversions between consecutive values,
and the vectors built from them.
"""

from qeuler import parse_permutation, stat_vector, STATISTICS

# a permutation can be typed as digits (n <= 9) or with commas
p = parse_permutation("34251")
print("p =", p)

# every statistic the command line knows about
for name, fn in STATISTICS.items():
    print(f"  {name:>6} = {fn(p)}")

# the left vector of p and the right vector of another word agree
print(stat_vector(p, "LHS"))
print(stat_vector(parse_permutation("32541"), "RHS"))

# inv2 always equals the number of descents of the inverse
from qeuler import enumerate_permutations
from qeuler.stats import inv2, ides
print(all(inv2(q) == ides(q) for q in enumerate_permutations(6)))
