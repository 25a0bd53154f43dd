"""Permutation statistics and a bijection carrying (maj2, des2t, inv2) to (maj - exc, des, exc)."""

from .perm import (
    Permutation, PermutationError, CapacityError, ENUMERATION_CAP,
    parse_permutation, format_permutation, compact_form, identity, inverse,
    compose, enumerate_permutations, rank_ranges,
)
from .stats import stat_vector, StatTriple, STATISTICS
from .forward import (
    InvariantViolation, compute_c0, adjust_capacities, omega_word, tops,
    build_graph, label_circles, label_dots, phi, phi_trace,
)
from .inverse import (
    InconsistencyError, RoundTripError, decompose, build_skeleton,
    phi_inverse, phi_inverse_trace,
)
from .distribution import (
    Polynomial3, BijectionError, joint_distribution, verify_identity,
    oracle_inverse_table, q_reference, cached_distribution, run_check,
)
from .render import Diagram, linear_diagram, planar_diagram, render_linear, render_planar

__version__ = "0.1.0"
