"""Operator calculus and inequality checks on weighted partite simplicial complexes."""

from .complex import (
    ComplexError,
    FaceFunction,
    MeasureView,
    PartiteComplex,
    SubAssignment,
    build_explicit,
    build_product,
    embed_symmetrized,
    link,
    marginal,
    perturb,
    restrict_function,
    tensor_power,
    tensor_power_function,
)
from .efron_stein import Decomposition, decompose, level_profile, total_influence, truncate
from .expansion import ExpansionCertificate, gamma_certificate, opnorm_q_lower
from .hypercontractivity import bonami_check, booster_search, globalness, kkl_witness, notable_coordinates
from .operators import (
    Operator,
    coord_noise,
    coord_noise_chain,
    laplacian,
    noise_operator,
    projection_E,
    stationary_walk,
    swap_walk,
)
from .records import CheckRecord
from .symmetrization import sandwich_check, sym_noise_norm, symmetrize

__version__ = "0.1.0"

__all__ = [
    "CheckRecord",
    "ComplexError",
    "Decomposition",
    "ExpansionCertificate",
    "FaceFunction",
    "MeasureView",
    "Operator",
    "PartiteComplex",
    "SubAssignment",
    "bonami_check",
    "booster_search",
    "build_explicit",
    "build_product",
    "coord_noise",
    "coord_noise_chain",
    "decompose",
    "embed_symmetrized",
    "gamma_certificate",
    "globalness",
    "kkl_witness",
    "laplacian",
    "level_profile",
    "link",
    "marginal",
    "noise_operator",
    "notable_coordinates",
    "opnorm_q_lower",
    "perturb",
    "projection_E",
    "restrict_function",
    "sandwich_check",
    "stationary_walk",
    "swap_walk",
    "sym_noise_norm",
    "symmetrize",
    "tensor_power",
    "tensor_power_function",
    "total_influence",
    "truncate",
]
