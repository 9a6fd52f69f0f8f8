"""Exact subspace lattices, windowed linear operads and their lattice-indexed filtrations."""
from .filtration import (CLAUSES, AssociatedGraded, ClosureResult, Filtration, LinearMap, associated_graded,
                         block_swap, bracket_subspace, bracket_terms, check_d_filtration, check_filtration, check_strictly_monotonic, closure, counting,
                         d_bracket, depth_filtration, element_bracket, filtration_flags, filtration_lattice_ops,
                         from_function, graded_failures, index_bracket, is_filtration, pullback, pushforward,
                         seed_at, standard_d_filtration, tautological, transport_filtration, trivial,
                         walk_filtration, config_setup, load_config, ne_walk_setup, ne_graded_dimensions,
                         expected_ne_dimension, check_strictly_monotonic as strictly_monotonic_report)
from .subspace import Subspace, fmt_vector, vector
from .windows import (IndexWindow, LinearOperadWindow, box, commutative, free_operad, linearize,
                      monomial_act, monomial_compose, monomial_counts, monomial_depths, sub_operad)


def subspace_compose(P: LinearOperadWindow, V: Subspace, i: int, U: Subspace) -> Subspace:
    return P.compose_subspaces(V, i, U)
