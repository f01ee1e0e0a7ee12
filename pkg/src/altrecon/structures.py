"""Linear matrix families parametrized by a coefficient vector ``h``.

Every supported family maps each matrix entry to exactly one coefficient, so
the synthesis map is a 0/1 index map and its least-squares inverse reduces to
averaging the entries that share a coefficient (anti-diagonals for Hankel,
diagonals for Toeplitz, a single entry for the unstructured family).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import SizeError

__all__ = [
    "LinearStructure",
    "hankel_structure",
    "toeplitz_structure",
    "unstructured",
    "make_structure",
    "structure_apply",
    "structure_fit",
    "structure_project",
]

KINDS = ("hankel", "toeplitz", "unstructured")


@dataclass(frozen=True, eq=False)
class LinearStructure:
    n1: int
    n2: int
    kind: str
    index: np.ndarray = field(init=False, repr=False)
    counts: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise SizeError(f"dimensions must be positive, got {self.n1}x{self.n2}")
        i, j = np.indices((self.n1, self.n2))
        if self.kind == "hankel":
            index = i + j
        elif self.kind == "toeplitz":
            index = i - j + self.n2 - 1
        elif self.kind == "unstructured":
            index = i + j * self.n1
        else:
            raise ValueError(f"unknown structure kind {self.kind!r}; expected one of {KINDS}")
        index.setflags(write=False)
        counts = np.bincount(index.ravel(), minlength=index.max() + 1).astype(float)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "counts", counts)

    @property
    def p(self):
        return self.counts.size

    @property
    def shape(self):
        return (self.n1, self.n2)

    def apply(self, h):
        return structure_apply(self, h)

    def fit(self, X):
        return structure_fit(self, X)

    def project(self, X):
        return structure_project(self, X)

    def matrix(self):
        """Dense ``(n1*n2, p)`` matrix ``M`` with ``vec(S(h)) == M @ h``."""
        M = np.zeros((self.n1 * self.n2, self.p))
        M[np.arange(self.n1 * self.n2), self.index.ravel(order="F")] = 1.0
        return M


def hankel_structure(n1, n2):
    """Hankel family: entry ``(i, j)`` equals ``h[i + j]``."""
    return LinearStructure(n1, n2, "hankel")


def toeplitz_structure(n1, n2):
    """Toeplitz family: entry ``(i, j)`` equals ``h[i - j + n2 - 1]``."""
    return LinearStructure(n1, n2, "toeplitz")


def unstructured(n1, n2):
    return LinearStructure(n1, n2, "unstructured")


def make_structure(kind, n1, n2):
    return LinearStructure(n1, n2, kind)


def structure_apply(s, h):
    h = np.asarray(h, dtype=float).ravel()
    if h.size != s.p:
        raise SizeError(f"{s.kind} {s.n1}x{s.n2} expects {s.p} parameters, got {h.size}")
    return h[s.index]


def structure_fit(s, X):
    """Least-squares parameters ``argmin_h ||X - S(h)||_F``."""
    X = np.asarray(X, dtype=float)
    if X.shape != s.shape:
        raise SizeError(f"expected a {s.n1}x{s.n2} matrix, got {X.shape}")
    return np.bincount(s.index.ravel(), weights=X.ravel(), minlength=s.p) / s.counts


def structure_project(s, X):
    """Orthogonal projection of ``X`` onto the family."""
    return structure_apply(s, structure_fit(s, X))
