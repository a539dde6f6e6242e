"""Relativistic spin and Dirac spin in a covariant Stern-Gerlach experiment."""

from .classical_spin import (
    classical_sg_lab,
    classical_sg_rest,
    lab_sx_expectation,
    planar_eigenstates,
    relativistic_spin_vector,
    theta_angle,
    xi_consistency_angle,
)
from .dirac_core import (
    boost_spinor,
    covariant_expectation,
    dirac_spin_vector,
    gamma_matrices,
    rest_spinor,
    spinor_boost,
)
from .experiment import ExperimentConfig, paradox_check, run_experiment
from .fields import FieldConfig, rest_frame_fields
from .operators import OperatorTriple, spin_algebra_residual
from .tensor_core import lorentz_factor, pure_boost, transform_rank2

__version__ = "0.1.0"

__all__ = [
    "ExperimentConfig",
    "FieldConfig",
    "OperatorTriple",
    "boost_spinor",
    "classical_sg_lab",
    "classical_sg_rest",
    "covariant_expectation",
    "dirac_spin_vector",
    "gamma_matrices",
    "lab_sx_expectation",
    "lorentz_factor",
    "paradox_check",
    "planar_eigenstates",
    "pure_boost",
    "relativistic_spin_vector",
    "rest_frame_fields",
    "rest_spinor",
    "run_experiment",
    "spin_algebra_residual",
    "spinor_boost",
    "theta_angle",
    "transform_rank2",
    "xi_consistency_angle",
]
