"""Weighted means and divergences on the positive definite cone.

The package computes the divergence-weighted right mean of the alpha-z
Bures-Wasserstein family together with the classical power, Cartan,
Wasserstein, arithmetic and harmonic means it is compared against, and
ships a randomized harness that mechanically checks the operator
inequalities and identities relating them.
"""

from .divergences import (
    AlphaZ,
    bures_wasserstein_distance,
    log_det_alpha_divergence,
    phi_alpha_z,
    q_alpha_z,
)
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    DomainError,
    NotPositiveDefiniteError,
    NumericalFailureError,
    PDMeansError,
)
from .linalg import (
    EigenDecomposition,
    HermitianMatrix,
    PDMatrix,
    SolverConfig,
    SolverReport,
    congruence,
    det_via_eigs,
    eigh,
    loewner_leq,
    mpow,
    random_pd,
    random_unitary,
    trace,
)
from .means import (
    PDTuple,
    WeightVector,
    arithmetic_mean,
    cartan_mean,
    geometric_mean_two,
    harmonic_mean,
    power_mean,
    riemannian_distance,
    thompson_distance,
)
from .rightmean import residual, residual_geomform, right_mean
from .structure import (
    MajorizationVerdict,
    hadamard_product,
    psi_extract,
    tensor_product,
    tuple_hadamard,
    tuple_tensor,
    weak_log_majorizes,
    weak_majorizes,
    weight_tensor,
)
from .wasserstein import k_map, trace_inequality_check, wasserstein_mean

__version__ = "0.1.0"

__all__ = [
    "AlphaZ",
    "ConvergenceError",
    "DimensionMismatchError",
    "DomainError",
    "EigenDecomposition",
    "HermitianMatrix",
    "MajorizationVerdict",
    "NotPositiveDefiniteError",
    "NumericalFailureError",
    "PDMatrix",
    "PDMeansError",
    "PDTuple",
    "SolverConfig",
    "SolverReport",
    "WeightVector",
    "arithmetic_mean",
    "bures_wasserstein_distance",
    "cartan_mean",
    "congruence",
    "det_via_eigs",
    "eigh",
    "geometric_mean_two",
    "hadamard_product",
    "harmonic_mean",
    "k_map",
    "loewner_leq",
    "log_det_alpha_divergence",
    "mpow",
    "phi_alpha_z",
    "power_mean",
    "psi_extract",
    "q_alpha_z",
    "random_pd",
    "random_unitary",
    "residual",
    "residual_geomform",
    "riemannian_distance",
    "right_mean",
    "tensor_product",
    "thompson_distance",
    "trace",
    "trace_inequality_check",
    "tuple_hadamard",
    "tuple_tensor",
    "wasserstein_mean",
    "weak_log_majorizes",
    "weak_majorizes",
    "weight_tensor",
]
