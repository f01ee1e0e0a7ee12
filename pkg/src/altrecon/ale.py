"""Alternating linear estimator.

An initial least-squares fit of the structure parameters to the data, then
alternating factor fits of the structured matrix followed by projection back
onto the structure.  The data enter only through the initial fit.
"""

import logging

import numpy as np

from .core import Estimate, Factorization, SolverOptions, balanced_factors, check_rank
from .linalg import pinv, pinv_solve, truncated_svd

log = logging.getLogger(__name__)

__all__ = ["initial_param_fit", "ale_step", "ale_solve"]


def initial_param_fit(model, s):
    """``argmin_h ||ybar - Abar M_s h||`` (minimum norm when underdetermined)."""
    if s.shape != (model.n1, model.n2):
        raise ValueError(f"structure {s.shape} does not match model {(model.n1, model.n2)}")
    if s.kind == "unstructured":
        return pinv_solve(model.Abar, model.ybar)
    return pinv_solve(model.Abar @ s.matrix(), model.ybar)


def _left_update(Sh, R, r, variant):
    if variant == "columns":
        return Sh[:, :r].copy()
    return Sh @ pinv(R)


def _guard_rank(L, Sh):
    """Complete a rank-deficient left factor with the truncated SVD of ``Sh``."""
    U, s, _ = np.linalg.svd(L, full_matrices=False)
    tol = max(L.shape) * 1e-12 * max(s[0], np.finfo(float).tiny)
    q = int(np.sum(s > tol))
    if q == L.shape[1]:
        return L
    log.info("ale: left factor has rank %d < %d, completing from truncated SVD", q, L.shape[1])
    Q = U[:, :q]
    Us, sv, _ = truncated_svd(Sh, L.shape[1])
    C = Us * sv
    return L + C - Q @ (Q.T @ C)


def ale_step(s, h, R, r, variant="lsfit"):
    """One pass of the alternation from parameters ``h`` and previous right factor ``R``.

    Returns ``(L, R, h_next, gap)`` where ``gap = ||S(h_next) - L R||_inf``.
    """
    Sh = s.apply(h)
    L = _guard_rank(_left_update(Sh, R, r, variant), Sh)
    R = pinv(L) @ Sh
    LR = L @ R
    h_next = s.fit(LR)
    gap = float(np.max(np.abs(s.apply(h_next) - LR)))
    return L, R, h_next, gap


def ale_solve(model, r, s, opts=None, trace=None):
    """Run the alternating linear estimator and return ``X = L R``."""
    opts = opts or SolverOptions()
    check_rank(r, model.n1, model.n2)
    h = initial_param_fit(model, s)
    R = balanced_factors(s.apply(h), r).R
    L = None
    converged = False
    k = 0
    for k in range(1, opts.k_max + 1):
        L, R, h, gap = ale_step(s, h, R, r, opts.ale_l_update)
        if trace is not None:
            trace({"iteration": k, "gap": gap, "residual": model.residual(L @ R)})
        if gap <= opts.epsilon:
            converged = True
            break
    X = L @ R
    return Estimate(X, Factorization(L, R), k, model.residual(X), converged)
