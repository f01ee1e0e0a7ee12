"""Alternating strategies for low-rank (and Hankel) matrix reconstruction.

Three estimators recover an ``n1 x n2`` rank-``r`` matrix from linear
measurements ``y = A vec(X) + e``:

* :func:`als_solve`: alternating least squares, optionally with
  lift-and-project onto a linear structure;
* :func:`ale_solve`: alternating linear estimator for linearly structured
  matrices;
* :func:`adls_solve`: alternating direction least squares, ADMM-embedded
  factor updates.
"""

from .adls import (
    AdmmState,
    adls_solve,
    admm_update_L,
    admm_update_R,
    admm_update_S,
    admm_update_Z,
    augmented_lagrangian,
    augmented_lagrangian_left,
)
from .ale import ale_solve, initial_param_fit
from .als import als_solve, als_update_L, als_update_R, refit_factor
from .core import Estimate, Factorization, SolverOptions, svd_init
from .errors import CovarianceError, InputError, RankError, SizeError
from .linalg import left_factor_matrix, mat, pinv_solve, right_factor_matrix, truncated_svd, vec
from .problems import ExponentialModel, add_noise, gen_hankel_lowrank, gen_lowrank, prony_fit, srer_db
from .sensing import MeasurementModel, NoiseSpec, apply_operator, make_gaussian_operator, prewhiten
from .structures import (
    LinearStructure,
    hankel_structure,
    structure_apply,
    structure_fit,
    structure_project,
    toeplitz_structure,
    unstructured,
)

__version__ = "0.1.0"
