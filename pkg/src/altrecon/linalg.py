"""Dense linear-algebra kernel shared by all solvers.

The vectorization convention is column-major everywhere: ``vec(X)`` stacks
the columns of ``X``.  With that convention

    vec(L @ R) = kron(I_{n2}, L) @ vec(R) = kron(R.T, I_{n1}) @ vec(L)

and the two ``*_factor_matrix`` helpers return ``Abar`` times those Kronecker
products without ever forming the Kronecker product itself.
"""

import numpy as np

from .errors import RankError, SizeError

__all__ = [
    "as_matrix",
    "vec",
    "mat",
    "pinv_solve",
    "pinv",
    "truncated_svd",
    "right_factor_matrix",
    "left_factor_matrix",
]


def as_matrix(X, name="X"):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise SizeError(f"{name} must be 2-D, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite entries")
    return X


def vec(X):
    """Stack the columns of ``X`` into a 1-D array."""
    return np.asarray(X, dtype=float).reshape(-1, order="F")


def mat(v, n1, n2):
    """Inverse of :func:`vec`: reshape a length ``n1*n2`` vector column-major."""
    v = np.asarray(v, dtype=float).ravel()
    if v.size != n1 * n2:
        raise SizeError(f"cannot reshape length {v.size} into {n1}x{n2}")
    return v.reshape((n1, n2), order="F")


def _cutoff(A):
    return max(A.shape) * 1e-12


def pinv_solve(A, b):
    """Minimum-norm least-squares solution ``A^+ b``.

    Singular values below ``max(rows, cols) * sigma_max * 1e-12`` are treated
    as zero.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise SizeError(f"A has shape {A.shape}, b has shape {b.shape}")
    x, *_ = np.linalg.lstsq(A, b, rcond=_cutoff(A))
    return x


def pinv(A):
    A = np.asarray(A, dtype=float)
    return np.linalg.pinv(A, rcond=_cutoff(A))


def truncated_svd(X, r):
    """Leading ``r`` singular triplets of ``X``.

    Returns ``(U, sigma, V)`` with ``U`` of shape (rows, r), ``V`` of shape
    (cols, r) and ``sigma`` nonincreasing, so that ``U * sigma @ V.T`` is the
    best rank-``r`` approximation of ``X``.
    """
    X = np.asarray(X, dtype=float)
    if not 1 <= r <= min(X.shape):
        raise RankError(f"rank {r} outside [1, {min(X.shape)}] for shape {X.shape}")
    U, s, Vt = np.linalg.svd(X, full_matrices=False)
    return U[:, :r], s[:r], Vt[:r].T


def _as_tensor(Abar, n1, n2):
    # column j*n1 + i of Abar multiplies X[i, j]; slab [a, j, i]
    return Abar.reshape(Abar.shape[0], n2, n1)


def right_factor_matrix(Abar, L, n2=None):
    """Matrix ``M`` with ``M @ vec(R) == Abar @ vec(L @ R)`` for every ``R``.

    ``n2`` defaults to ``Abar.shape[1] // L.shape[0]``.
    """
    Abar = np.asarray(Abar, dtype=float)
    L = np.asarray(L, dtype=float)
    n1, r = L.shape
    if n2 is None:
        n2 = Abar.shape[1] // n1 if n1 else 0
    if Abar.ndim != 2 or Abar.shape[1] != n1 * n2 or n1 * n2 == 0:
        raise SizeError(f"Abar with shape {Abar.shape} does not act on {n1}x{n2} matrices")
    # M[a, j*r + k] = sum_i Abar[a, j*n1 + i] L[i, k]
    return (_as_tensor(Abar, n1, n2) @ L).reshape(Abar.shape[0], n2 * r)


def left_factor_matrix(Abar, R, n1=None):
    """Matrix ``N`` with ``N @ vec(L) == Abar @ vec(L @ R)`` for every ``L``."""
    Abar = np.asarray(Abar, dtype=float)
    R = np.asarray(R, dtype=float)
    r, n2 = R.shape
    if n1 is None:
        n1 = Abar.shape[1] // n2 if n2 else 0
    if Abar.ndim != 2 or Abar.shape[1] != n1 * n2 or n1 * n2 == 0:
        raise SizeError(f"Abar with shape {Abar.shape} does not act on {n1}x{n2} matrices")
    # N[a, k*n1 + i] = sum_j R[k, j] Abar[a, j*n1 + i]
    return (R @ _as_tensor(Abar, n1, n2)).reshape(Abar.shape[0], r * n1)
