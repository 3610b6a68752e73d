"""Equitable partitions of tensors and spectra of generalized power hypergraphs."""
from .equitable import (
    Partition,
    characteristic_matrix,
    coarsest_equitable_refinement,
    is_equitable,
    lift_eigenvector,
    quotient_tensor,
    verify_intertwine,
)
from .hypergraph import (
    Graph,
    Hypergraph,
    adjacency_apply,
    adjacency_tensor,
    degrees,
    is_odd_bipartite,
    laplacian_apply,
    laplacian_tensor,
    signless_apply,
    signless_tensor,
)
from .power import (
    GenPowerLabeling,
    build_generalized_power,
    embed_in_regular,
    natural_partition,
    quotient_apply,
    quotient_closed_form,
    regular_perron_vector,
    regular_radius,
)
from .solver import (
    ConvergenceError,
    EigenPair,
    NotOddBipartiteError,
    SolverConfig,
    adjacency_radius,
    laplacian_radius_odd_bipartite,
    largest_h_eigenvalue,
    residual,
    signless_radius,
)
from .tensor import (
    SparseTensor,
    TensorOperator,
    collatz_wielandt_bounds,
    diagonal_similarity,
    general_product,
    hadamard_power,
    is_lower_triangular_block,
    tensor_apply,
    weak_irreducibility,
)
from .verify import quotient_radius, verify_monotonicity

__version__ = "0.1.0"
