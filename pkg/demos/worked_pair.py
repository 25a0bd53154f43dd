"""
Following one permutation through the map
=========================================

Every intermediate of the forward map, then the way back.
"""

from qeuler import parse_permutation, phi_trace, phi_inverse_trace

p = parse_permutation("425736981")
trace = phi_trace(p)

print("2-descents        ", trace["des2_set"])
print("2-inversions      ", trace["inv2_pairs"])
print("initial capacities", trace["c0"])
print("after adjustment  ", trace["c"])
print("omega letters     ", trace["omega"]["letters"])

# the slope graph: circles become exceedances, D marks a descent to the right
for row in trace["graph"]:
    print(f"  {row['position']}  {row['kind']:<6} {row['label']}  {row['next'] or ''}")

print("image", "".join(map(str, trace["output"])))

# back again; the search reports how often it had to change its mind
back = phi_inverse_trace(trace["output"])
print("preimage", "".join(map(str, back["output"])), "after", back["backtracks"], "backtracks")
print("block starts of the image", back["decomposition"]["d2_tau"])
