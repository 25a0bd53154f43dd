"""
Equidistribution by brute force
===============================

Joint distributions are exact integer polynomials; equality is checked
coefficient by coefficient.
"""

from qeuler import joint_distribution, q_reference

for n in range(1, 8):
    lhs = joint_distribution(n, "LHS")
    rhs = joint_distribution(n, "RHS")
    hl = joint_distribution(n, "HL")
    print(n, len(lhs.terms), "terms", lhs == rhs, hl == rhs)

# the n = 4 table, one line per monomial x^a y^b z^c
for a, b, c, coeff in joint_distribution(4, "RHS").sorted_terms():
    print(f"  x^{a} y^{b} z^{c}  * {coeff}")

# setting y = 1 leaves a two-variable identity
print(joint_distribution(5, "LHS").specialize_y1() == joint_distribution(5, "RHS").specialize_y1())

# the references used by the sanity checks
print(q_reference(4, "q_factorial"), q_reference(4, "eulerian"))
