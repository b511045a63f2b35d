"""Random real quantum states with prescribed bipartite entanglement.

Modules:
    linalg: Kronecker products, sign-fixed QR, one-sided Jacobi SVD, permutations.
    sampling: counter-based seedable streams, Gaussian and Haar-orthogonal draws.
    schmidt: Schmidt decomposition, reduced density matrices, entropies.
    circuit: gate list, statevector simulation, dense circuit matrices, JSON.
    builders: circuits that prepare a state from its Schmidt decomposition.
    graphs: weighted acyclic graphs and their sequential Schmidt circuits.
    ensemble: random-state ensembles and pairwise-angle statistics.
    cli: the ``schmidtgen`` command line tool.
"""

from .builders import (
    build_general_schmidt,
    build_permutation_p,
    build_s_block,
    build_two_qubit_schmidt,
    s_block_matrix,
)
from .circuit import Circuit, Gate, circuit_matrix, simulate
from .ensemble import EnsembleSpec, histogram, moment_stats, pairwise_angles, run_ensemble
from .errors import DimensionError, GraphError, NumericalError, RankDeficientError, ValidationError
from .graphs import WeightedGraph, build_graph_circuit, parse_graph, plan_traversal, verify_cut_entropies
from .linalg import PermutationMap, frobenius_norm, kron, permutation_matrix, qr_orthonormalize, svd_small
from .sampling import RngState, gauss_matrix, haar_orthogonal, random_schmidt_coefficients
from .schmidt import (
    BipartiteSplit,
    SchmidtDecomposition,
    coefficients_for_entropy,
    entanglement_entropy,
    reduced_density,
    schmidt_decompose,
    von_neumann_entropy,
)

__version__ = "0.1.0"
