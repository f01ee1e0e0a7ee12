import numpy as np

from altrecon.linalg import vec
from altrecon.sensing import MeasurementModel


def identity_model(X):
    n1, n2 = X.shape
    return MeasurementModel(np.eye(n1 * n2), vec(X), n1, n2)


def random_model(rng, n1, n2, m, X=None, noise=0.0):
    A = rng.standard_normal((m, n1 * n2)) / np.sqrt(m)
    if X is None:
        X = rng.standard_normal((n1, 2)) @ rng.standard_normal((2, n2))
    y = A @ vec(X) + noise * rng.standard_normal(m)
    return MeasurementModel(A, y, n1, n2), X


def num_grad(fun, x, h=1e-6):
    """Central finite-difference gradient of ``fun`` at array ``x``."""
    g = np.zeros_like(x)
    for idx in np.ndindex(x.shape):
        e = np.zeros_like(x)
        e[idx] = h
        g[idx] = (fun(x + e) - fun(x - e)) / (2 * h)
    return g
