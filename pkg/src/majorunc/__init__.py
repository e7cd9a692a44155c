"""Majorization-based uncertainty relations for mixed quantum states."""

from .bounds import (
    MajorantVector,
    SubCoefficients,
    capital_s,
    comparison_bounds,
    conditional_bound,
    joint_distribution,
    lambda_matrix,
    lemma_rhs,
    mu_vector,
    proposition_rhs,
    pure_majorant,
    renyi_bound,
    shannon_bound,
    sub_coefficients,
    tsallis_bound,
    w_lambda,
    w_vector,
)
from .majorize import (
    JointDistribution,
    majorizes,
    mutual_information,
    renyi,
    shannon,
    tilde_entropy,
    tsallis,
)
from .states import DensityMatrix, Spectrum, measurement_probs

__version__ = "0.1.0"
