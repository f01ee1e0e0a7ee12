"""Random test problems and reconstruction metrics."""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import InputError, RankError
from .structures import hankel_structure

log = logging.getLogger(__name__)

__all__ = [
    "ExponentialModel",
    "prony_fit",
    "gen_hankel_lowrank",
    "gen_lowrank",
    "add_noise",
    "srer_db",
    "SRER_CAP_DB",
]

SRER_CAP_DB = 300.0
_MAX_RETRIES = 20


@dataclass
class ExponentialModel:
    """``x_t = sum_i amplitudes[i] * poles[i] ** t``."""

    poles: np.ndarray
    amplitudes: np.ndarray
    ill_conditioned: bool = False

    @property
    def order(self):
        return self.poles.size

    def synthesize(self, n):
        t = np.arange(n)
        return (self.amplitudes[None, :] * self.poles[None, :] ** t[:, None]).sum(axis=1)


def _vandermonde(poles, n):
    return poles[None, :] ** np.arange(n)[:, None]


def _fit_amplitudes(x, poles):
    V = _vandermonde(poles, x.size)
    c, *_ = np.linalg.lstsq(V, x.astype(complex), rcond=None)
    return c


def prony_fit(x, r, sep_tol=1e-6):
    """Classic Prony fit of ``r`` damped exponentials to ``x``.

    The linear-prediction coefficients come from least squares on shifted
    copies of ``x``, the poles are the roots of the prediction polynomial and
    the amplitudes a least-squares Vandermonde fit.  ``ill_conditioned`` is
    set when two poles are closer than ``sep_tol`` (relative to the largest
    modulus).
    """
    x = np.asarray(x, dtype=float).ravel()
    if r < 1 or x.size < 2 * r + 1:
        raise InputError(f"Prony fit of order {r} needs at least {2 * r + 1} samples, got {x.size}")
    n = x.size
    # x[t] + a_1 x[t-1] + ... + a_r x[t-r] = 0 for t = r..n-1
    H = np.column_stack([x[r - k: n - k] for k in range(1, r + 1)])
    a, *_ = np.linalg.lstsq(H, -x[r:], rcond=None)
    poles = np.roots(np.concatenate([[1.0], a]))
    if poles.size < r:
        # leading coefficients vanished: remaining poles at the origin
        poles = np.concatenate([poles, np.zeros(r - poles.size)])
    ill = False
    if r > 1:
        d = np.abs(poles[:, None] - poles[None, :])
        np.fill_diagonal(d, np.inf)
        ill = bool(d.min() <= sep_tol * max(np.abs(poles).max(), 1.0))
    return ExponentialModel(poles, _fit_amplitudes(x, poles), ill)


def _stabilize(poles):
    mod = np.abs(poles)
    out = poles.astype(complex).copy()
    big = mod > 1
    out[big] = poles[big] / mod[big] ** 2
    return out


def gen_hankel_lowrank(n1, n2, r, seed):
    """Random rank-``r`` Hankel matrix and its parameter vector ``h``.

    A Gaussian sequence of length ``n1 + n2 - 1`` is Prony-fitted with order
    ``r``; poles outside the unit circle are reflected to modulus ``1/|z|``,
    amplitudes are refitted and ``h`` is resynthesized from the model.
    """
    if not 1 <= r <= min(n1, n2):
        raise RankError(f"rank {r} outside [1, {min(n1, n2)}]")
    s = hankel_structure(n1, n2)
    rng = np.random.default_rng(seed)
    for attempt in range(_MAX_RETRIES):
        x = rng.standard_normal(s.p)
        model = prony_fit(x, r)
        if model.ill_conditioned:
            continue
        poles = _stabilize(model.poles)
        if np.min(np.abs(poles)) < 1e-3:
            continue
        amps = _fit_amplitudes(x, poles)
        if np.min(np.abs(amps)) < 1e-6 * np.max(np.abs(amps)):
            continue
        h = ExponentialModel(poles, amps).synthesize(s.p)
        if np.max(np.abs(h.imag)) > 1e-8 * max(np.max(np.abs(h.real)), 1.0):
            continue
        X = s.apply(h.real)
        sv = np.linalg.svd(X, compute_uv=False)
        if sv[r - 1] <= 1e-8 * sv[0]:
            continue
        return X, h.real
    raise InputError(f"could not draw a well-conditioned rank-{r} Hankel matrix in {_MAX_RETRIES} tries")


def gen_lowrank(n1, n2, r, seed):
    """``G1 @ G2`` with standard Gaussian factors of inner size ``r``."""
    if not 1 <= r <= min(n1, n2):
        raise RankError(f"rank {r} outside [1, {min(n1, n2)}]")
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n1, r)) @ rng.standard_normal((r, n2))


def add_noise(y, X, smnr_db, seed):
    """Add white Gaussian noise at the given signal-to-measurement-noise ratio.

    ``sigma**2 = ||X||_F**2 / (m * 10**(smnr_db / 10))``, normalized against
    this realization of ``X``.  ``smnr_db = inf`` returns ``y`` unchanged.
    Returns ``(y_noisy, sigma)``.
    """
    y = np.asarray(y, dtype=float).ravel()
    if np.isposinf(smnr_db):
        return y.copy(), 0.0
    if not np.isfinite(smnr_db):
        raise InputError(f"smnr_db must be finite or +inf, got {smnr_db}")
    m = y.size
    sigma = float(np.sqrt(np.sum(np.asarray(X) ** 2) / (m * 10 ** (smnr_db / 10))))
    rng = np.random.default_rng(seed)
    return y + sigma * rng.standard_normal(m), sigma


def srer_db(X, X_hat):
    """``10 log10(||X||^2 / ||X - X_hat||^2)``, capped at 300 dB."""
    X = np.asarray(X, dtype=float)
    X_hat = np.asarray(X_hat, dtype=float)
    if X.shape != X_hat.shape:
        raise InputError(f"shape mismatch {X.shape} vs {X_hat.shape}")
    signal = float(np.sum(X ** 2))
    if signal == 0:
        raise InputError("reference matrix is zero")
    err = float(np.sum((X - X_hat) ** 2))
    if err == 0:
        return SRER_CAP_DB
    return float(min(10 * np.log10(signal / err), SRER_CAP_DB))
