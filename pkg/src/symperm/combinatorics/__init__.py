"""Symmetrized permutation ensembles, LIS, RSK and the walker bijection."""
from .ensembles import (
    EnsembleSpec,
    Permutation,
    PointConfig,
    SymmetryType,
    floor_param,
    fp_count,
    ifp_count,
    involution_fixed_point_weights,
    lds_of_permutation,
    lis_length,
    lis_of_permutation,
    lis_of_sequence,
    sample_ensemble_element,
    sample_images,
    sample_involution,
    sample_point_config,
    sample_unconstrained_involution,
)
from .tableaux import Partition, Tableau, first_row, hook_dim, partitions, rsk, rsk_shape, standard_tableaux
from .walker import (
    WalkHistory,
    enumerate_histories,
    first_particle_law,
    sample_uniform_history,
    simulate_random_turn,
    tableau_to_walk,
    walk_to_tableau,
)

__all__ = [
    "EnsembleSpec", "Permutation", "PointConfig", "SymmetryType", "floor_param", "fp_count",
    "ifp_count", "involution_fixed_point_weights", "lds_of_permutation", "lis_length",
    "lis_of_permutation", "lis_of_sequence", "sample_ensemble_element", "sample_images",
    "sample_involution", "sample_point_config", "sample_unconstrained_involution",
    "Partition", "Tableau", "first_row", "hook_dim", "partitions", "rsk", "rsk_shape",
    "standard_tableaux", "WalkHistory", "enumerate_histories", "first_particle_law",
    "sample_uniform_history", "simulate_random_turn", "tableau_to_walk", "walk_to_tableau",
]
