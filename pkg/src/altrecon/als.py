"""Alternating least squares with optional lift-and-project."""

import logging

import numpy as np

from .core import Estimate, Factorization, SolverOptions, check_rank, svd_init
from .linalg import left_factor_matrix, mat, pinv, pinv_solve, right_factor_matrix

log = logging.getLogger(__name__)

__all__ = ["als_update_R", "als_update_L", "refit_factor", "refit_left", "als_solve"]


def als_update_R(model, L):
    """Exact LS update of the right factor given ``L``."""
    M = right_factor_matrix(model.Abar, L, model.n2)
    return mat(pinv_solve(M, model.ybar), L.shape[1], model.n2)


def als_update_L(model, R):
    """Exact LS update of the left factor given ``R``."""
    N = left_factor_matrix(model.Abar, R, model.n1)
    return mat(pinv_solve(N, model.ybar), model.n1, R.shape[0])


def refit_factor(L, X_hat):
    """``argmin_R ||L R - X_hat||_F``, i.e. ``pinv(L) @ X_hat``."""
    return pinv(L) @ X_hat


def refit_left(R, X_hat):
    """``argmin_L ||L R - X_hat||_F``, i.e. ``X_hat @ pinv(R)``."""
    return X_hat @ pinv(R)


def _cost(model, L, R):
    return model.residual(L @ R) ** 2


def als_solve(model, r, structure=None, opts=None, trace=None):
    """Cyclic exact minimization of ``||ybar - Abar vec(L R)||^2``.

    With ``structure`` given, each half-step is followed by projecting ``L R``
    onto the family and refitting the factor just updated.  Iteration stops
    once the relative decrease of the cost falls below ``opts.epsilon``.
    ``trace`` receives one dict per half-step.
    """
    opts = opts or SolverOptions()
    check_rank(r, model.n1, model.n2)
    fac = svd_init(model, r)
    L, R = fac.L, fac.R
    project = None if structure is None or structure.kind == "unstructured" else structure.project

    J = _cost(model, L, R)
    # relative residual at round-off level: further decreases are noise
    floor = 1e-24 * float(model.ybar @ model.ybar)
    converged = False
    k = 0
    for k in range(1, opts.k_max + 1):
        J_prev = J
        R = als_update_R(model, L)
        if project is not None:
            R = refit_factor(L, project(L @ R))
        if trace is not None:
            trace({"iteration": k, "half": "R", "cost": _cost(model, L, R)})
        L = als_update_L(model, R)
        if project is not None:
            L = refit_left(R, project(L @ R))
        J = _cost(model, L, R)
        if trace is not None:
            trace({"iteration": k, "half": "L", "cost": J})
        if J <= floor or abs(J_prev - J) / max(J_prev, 1e-30) < opts.epsilon:
            converged = True
            break
    else:
        log.debug("als_solve: reached k_max=%d", opts.k_max)

    X = L @ R
    return Estimate(X, Factorization(L, R), k, model.residual(X), converged)
