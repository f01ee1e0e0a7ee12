"""Alternating direction least squares.

Each factor is updated by one (or a few) ADMM sweeps on a split problem.  For
the right factor the split is

    minimize  ||ybar - P vec(R)||^2 + mu ||S Z - X_hat||_F^2   s.t.  R = Z

with ``P = Abar (I kron S)`` and scaled dual ``U``; the left factor mirrors
it with ``L = S`` and dual ``T``.  All four primal updates are closed-form
solves of small SPD systems.  After both factors, the structured target
``X_hat`` is refreshed by projecting ``S Z`` onto the structure.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .ale import ale_step, initial_param_fit
from .core import (
    Estimate,
    Factorization,
    SolverOptions,
    balanced_factors,
    check_rank,
    svd_init,
)
from .linalg import left_factor_matrix, mat, right_factor_matrix, vec

log = logging.getLogger(__name__)

__all__ = [
    "AdmmState",
    "augmented_lagrangian",
    "augmented_lagrangian_left",
    "admm_update_R",
    "admm_update_Z",
    "admm_update_L",
    "admm_update_S",
    "svd_init",
    "adls_init",
    "adls_solve",
]


@dataclass
class AdmmState:
    R: np.ndarray
    Z: np.ndarray
    U: np.ndarray
    L: np.ndarray
    S: np.ndarray
    T: np.ndarray
    X_hat: np.ndarray
    iteration: int = 0


def augmented_lagrangian(model, S, X_hat, R, Z, U, lam, mu):
    """Right-factor objective ``f(R) + g(Z) + lam ||R - Z + U||^2``."""
    P = right_factor_matrix(model.Abar, S, model.n2)
    f = np.sum((model.ybar - P @ vec(R)) ** 2)
    g = mu * np.sum((S @ Z - X_hat) ** 2)
    return float(f + g + lam * np.sum((R - Z + U) ** 2))


def augmented_lagrangian_left(model, Z, X_hat, L, S, T, lam, mu):
    """Left-factor objective ``f(L) + mu ||S Z - X_hat||^2 + lam ||L - S + T||^2``."""
    Q = left_factor_matrix(model.Abar, Z, model.n1)
    f = np.sum((model.ybar - Q @ vec(L)) ** 2)
    g = mu * np.sum((S @ Z - X_hat) ** 2)
    return float(f + g + lam * np.sum((L - S + T) ** 2))


def _shifted_solve(G, b, lam):
    G = G + lam * np.eye(G.shape[0])
    return sla.cho_solve(sla.cho_factor(G, check_finite=False), b, check_finite=False)


def admm_update_R(model, S, Z, U, lam):
    P = right_factor_matrix(model.Abar, S, model.n2)
    rhs = P.T @ model.ybar + lam * vec(Z - U)
    return mat(_shifted_solve(P.T @ P, rhs, lam), *Z.shape)


def admm_update_Z(S, X_hat, R, U, lam, mu):
    return _shifted_solve(mu * S.T @ S, mu * S.T @ X_hat + lam * (R + U), lam)


def admm_update_L(model, Z, S, T, lam):
    Q = left_factor_matrix(model.Abar, Z, model.n1)
    rhs = Q.T @ model.ybar + lam * vec(S - T)
    return mat(_shifted_solve(Q.T @ Q, rhs, lam), *S.shape)


def admm_update_S(X_hat, Z, L, T, lam, mu):
    # S (mu Z Z^T + lam I) = B  <=>  (mu Z Z^T + lam I) S^T = B^T
    B = mu * X_hat @ Z.T + lam * (L + T)
    return _shifted_solve(mu * Z @ Z.T, B.T, lam).T


def adls_init(model, r, s):
    """Starting state.

    Structured families take one pass of the alternating linear estimator from
    the initial parameter fit; the unstructured family starts from
    :func:`svd_init`.
    """
    check_rank(r, model.n1, model.n2)
    if s.kind == "unstructured":
        fac = svd_init(model, r)
        L, R = fac.L, fac.R
        X_hat = L @ R
    else:
        h0 = initial_param_fit(model, s)
        R_start = balanced_factors(s.apply(h0), r).R
        L, R, h1, _ = ale_step(s, h0, R_start, r)
        X_hat = s.apply(h1)
    return AdmmState(
        R=R, Z=R.copy(), U=np.zeros_like(R),
        L=L, S=L.copy(), T=np.zeros_like(L),
        X_hat=X_hat,
    )


def _right_sweeps(model, st, opts):
    for _ in range(opts.inner_max):
        Z_prev = st.Z
        st.R = admm_update_R(model, st.S, st.Z, st.U, opts.lam)
        st.Z = admm_update_Z(st.S, st.X_hat, st.R, st.U, opts.lam, opts.mu)
        st.U = st.U + opts.lam_prime * (st.R - st.Z)
        if (np.linalg.norm(st.R - st.Z) <= opts.inner_tol_primal
                and np.linalg.norm(opts.lam * (st.Z - Z_prev)) <= opts.inner_tol_dual):
            break


def _left_sweeps(model, st, opts):
    for _ in range(opts.inner_max):
        S_prev = st.S
        st.L = admm_update_L(model, st.Z, st.S, st.T, opts.lam)
        st.S = admm_update_S(st.X_hat, st.Z, st.L, st.T, opts.lam, opts.mu)
        st.T = st.T + opts.lam_prime * (st.L - st.S)
        if (np.linalg.norm(st.L - st.S) <= opts.inner_tol_primal
                and np.linalg.norm(opts.lam * (st.S - S_prev)) <= opts.inner_tol_dual):
            break


def adls_step(model, s, st, opts):
    """One outer iteration in place; returns the structure gap ``||S(h) - S Z||_inf``."""
    _right_sweeps(model, st, opts)
    _left_sweeps(model, st, opts)
    SZ = st.S @ st.Z
    st.X_hat = s.project(SZ)
    st.iteration += 1
    return float(np.max(np.abs(st.X_hat - SZ)))


def adls_solve(model, r, s, opts=None, trace=None):
    """Alternating direction least squares; returns ``X = S Z``.

    Stops when the structure gap is at most ``opts.epsilon`` (structured
    families only, where the gap can vanish at a non-trivial iterate), when the
    product ``S Z`` moved by at most ``opts.epsilon`` relative to its max-norm
    in the last iteration, or after ``opts.k_max`` iterations.
    """
    opts = opts or SolverOptions()
    st = adls_init(model, r, s)
    structured = s.kind != "unstructured"
    X_prev = st.S @ st.Z
    converged = False
    for _ in range(opts.k_max):
        gap = adls_step(model, s, st, opts)
        X = st.S @ st.Z
        step = float(np.max(np.abs(X - X_prev)))
        scale = max(float(np.max(np.abs(X))), np.finfo(float).tiny)
        X_prev = X
        if trace is not None:
            trace({
                "iteration": st.iteration,
                "residual": model.residual(X),
                "primal_R": float(np.linalg.norm(st.R - st.Z)),
                "primal_L": float(np.linalg.norm(st.L - st.S)),
                "gap": gap,
                "step": step,
            })
        if step <= opts.epsilon * scale or (structured and gap <= opts.epsilon):
            converged = True
            break
    X = st.S @ st.Z
    return Estimate(X, Factorization(st.S, st.Z), st.iteration, model.residual(X), converged)
