"""Types shared by the three solvers and the spectral initialization."""

import logging
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import RankError
from .linalg import truncated_svd

log = logging.getLogger(__name__)

TraceSink = Optional[Callable[[dict], None]]


@dataclass(frozen=True)
class SolverOptions:
    """Stopping rules and ADMM parameters.

    ``lam`` is the augmented-Lagrangian penalty, ``lam_prime`` the dual step
    and ``mu`` the weight of the structure-fit term.  ``inner_max`` ADMM
    sweeps are run per factor and outer iteration, stopped early by the
    primal/dual residual bounds.  ``ale_l_update`` picks between the two left
    factor updates of the alternating linear estimator: ``"lsfit"`` or
    ``"columns"``.
    """

    epsilon: float = 1e-8
    k_max: int = 500
    lam: float = 0.5
    lam_prime: float = 0.5
    mu: float = 1.0
    inner_tol_primal: float = 1e-8
    inner_tol_dual: float = 1e-8
    inner_max: int = 1
    ale_l_update: str = "lsfit"

    def __post_init__(self):
        if min(self.epsilon, self.inner_tol_primal, self.inner_tol_dual) <= 0:
            raise ValueError("tolerances must be positive")
        if self.k_max < 1 or self.inner_max < 1:
            raise ValueError("iteration caps must be at least 1")
        if self.lam <= 0 or self.lam_prime <= 0:
            raise ValueError("lam and lam_prime must be positive")
        if self.mu < 0:
            raise ValueError("mu must be nonnegative")
        if self.ale_l_update not in ("lsfit", "columns"):
            raise ValueError(f"unknown ale_l_update {self.ale_l_update!r}")

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass
class Factorization:
    L: np.ndarray
    R: np.ndarray
    degenerate: bool = False

    @property
    def r(self):
        return self.L.shape[1]

    def product(self):
        return self.L @ self.R


@dataclass
class Estimate:
    X_hat: np.ndarray
    factorization: Factorization
    iterations: int
    final_residual: float
    converged: bool


def check_rank(r, n1, n2):
    if not 1 <= r <= min(n1, n2):
        raise RankError(f"rank {r} outside [1, {min(n1, n2)}]")


def balanced_factors(B, r):
    """Split the rank-``r`` truncation of ``B`` as ``U sqrt(s)`` and ``sqrt(s) V^T``."""
    U, s, V = truncated_svd(B, r)
    root = np.sqrt(s)
    degenerate = bool(s[0] == 0.0)
    return Factorization(U * root, root[:, None] * V.T, degenerate)


def svd_init(model, r):
    """Spectral start from the back-projected data ``mat(Abar^T ybar)``."""
    check_rank(r, model.n1, model.n2)
    fac = balanced_factors(model.backprojection(), r)
    if fac.degenerate:
        log.warning("svd_init: back-projection is zero, returning zero factors")
    return fac
