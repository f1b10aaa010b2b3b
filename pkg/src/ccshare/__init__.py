"""Monte Carlo toolkit for the shareability of classical correlations in
random multiqubit pure states."""

from .linalg import (
    DensityMatrix,
    NumericalValidityError,
    PureState,
    hermitian_eigenvalues,
    partial_trace,
    reduce_pair,
    tensor_product,
    von_neumann_entropy,
)
from .measures import (
    classical_correlator,
    cqd,
    czz_one_rest,
    cc_one_rest_pure,
    directional_pair_sum,
    ggm,
    incompatibility_bound,
    local_work,
    measured_mutual_information,
    monogamy_score,
    sum_pairwise,
)
from .optimize import (
    BlochMeasurement,
    OptimizationError,
    OptimizerSettings,
    bloch_projectors,
    maximize_over_product_bases,
    minimize_over_qubit_basis,
)
from .sampling import SampleSeed, haar_random_pure

__version__ = "0.1.0"

__all__ = [
    "BlochMeasurement",
    "DensityMatrix",
    "NumericalValidityError",
    "OptimizationError",
    "OptimizerSettings",
    "PureState",
    "SampleSeed",
    "bloch_projectors",
    "cc_one_rest_pure",
    "classical_correlator",
    "cqd",
    "czz_one_rest",
    "directional_pair_sum",
    "ggm",
    "haar_random_pure",
    "hermitian_eigenvalues",
    "incompatibility_bound",
    "local_work",
    "maximize_over_product_bases",
    "measured_mutual_information",
    "minimize_over_qubit_basis",
    "monogamy_score",
    "partial_trace",
    "reduce_pair",
    "sum_pairwise",
    "tensor_product",
    "von_neumann_entropy",
]
