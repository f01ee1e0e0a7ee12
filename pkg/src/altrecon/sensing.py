"""Linear measurement model ``y = A vec(X) + e`` and noise prewhitening."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CovarianceError, SizeError
from .linalg import mat, vec

__all__ = [
    "MeasurementModel",
    "NoiseSpec",
    "make_gaussian_operator",
    "apply_operator",
    "prewhiten",
]


@dataclass(frozen=True, eq=False)
class MeasurementModel:
    """Prewhitened sensing matrix and measurements for an ``n1 x n2`` target."""

    Abar: np.ndarray
    ybar: np.ndarray
    n1: int
    n2: int

    def __post_init__(self):
        Abar = np.asarray(self.Abar, dtype=float)
        ybar = np.asarray(self.ybar, dtype=float).ravel()
        if Abar.ndim != 2 or Abar.shape[1] != self.n1 * self.n2:
            raise SizeError(f"Abar shape {Abar.shape} incompatible with {self.n1}x{self.n2}")
        if Abar.shape[0] != ybar.size or ybar.size < 1:
            raise SizeError(f"Abar has {Abar.shape[0]} rows but ybar has length {ybar.size}")
        object.__setattr__(self, "Abar", Abar)
        object.__setattr__(self, "ybar", ybar)

    @property
    def m(self):
        return self.ybar.size

    def residual(self, X):
        """``||ybar - Abar vec(X)||_2``."""
        return float(np.linalg.norm(self.ybar - self.Abar @ vec(X)))

    def backprojection(self):
        """``mat(Abar^T ybar)``, the adjoint applied to the data."""
        return mat(self.Abar.T @ self.ybar, self.n1, self.n2)


@dataclass(frozen=True)
class NoiseSpec:
    """Noise covariance, either a full SPD matrix or isotropic ``sigma**2 * I``."""

    covariance: Optional[np.ndarray] = None
    sigma: float = 1.0

    @classmethod
    def isotropic(cls, sigma):
        if sigma < 0:
            raise CovarianceError(f"sigma must be nonnegative, got {sigma}")
        return cls(None, float(sigma))


def make_gaussian_operator(m, n1, n2, seed):
    """``m x n1*n2`` matrix with i.i.d. ``N(0, 1/m)`` entries."""
    if m < 1:
        raise SizeError(f"need at least one measurement, got m={m}")
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, n1 * n2)) / np.sqrt(m)


def apply_operator(A, X):
    A = np.asarray(A, dtype=float)
    X = np.asarray(X, dtype=float)
    if A.ndim != 2 or A.shape[1] != X.size:
        raise SizeError(f"operator with shape {A.shape} cannot act on {X.shape} matrix")
    return A @ vec(X)


def _inv_sqrt(C):
    C = np.asarray(C, dtype=float)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise CovarianceError(f"covariance must be square, got {C.shape}")
    if not np.allclose(C, C.T, rtol=0, atol=1e-12 * max(1.0, np.abs(C).max())):
        raise CovarianceError("covariance is not symmetric")
    w, Q = np.linalg.eigh(C)
    if w.min() <= 0:
        raise CovarianceError(f"covariance is not positive definite (min eigenvalue {w.min():.3g})")
    return (Q / np.sqrt(w)) @ Q.T


def prewhiten(A, y, noise, n1, n2):
    """Whiten ``(A, y)`` by ``C^{-1/2}`` so weighted LS becomes plain LS.

    ``C^{-1/2}`` is the inverse of the symmetric square root, computed from an
    eigendecomposition.  Isotropic noise divides by ``sigma``.
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if A.shape[0] != y.size:
        raise SizeError(f"A has {A.shape[0]} rows, y has length {y.size}")
    if noise.covariance is None:
        if noise.sigma <= 0:
            raise CovarianceError("isotropic sigma must be positive to prewhiten")
        return MeasurementModel(A / noise.sigma, y / noise.sigma, n1, n2)
    if noise.covariance.shape != (y.size, y.size):
        raise CovarianceError(f"covariance shape {noise.covariance.shape} does not match m={y.size}")
    W = _inv_sqrt(noise.covariance)
    return MeasurementModel(W @ A, W @ y, n1, n2)
