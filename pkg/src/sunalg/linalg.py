"""Small dense complex-matrix kernel.

Matrices are plain ``numpy`` complex arrays marked read-only.  The helpers
here add the shape checks and the tolerance convention used everywhere else.
"""

import numpy as np

DEFAULT_TOL = 1e-10


class ShapeError(ValueError):
    pass


def cmatrix(entries) -> np.ndarray:
    """Build an immutable complex matrix, rejecting NaN/Inf and non-2D input."""
    m = np.array(entries, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise ShapeError(f"expected a non-empty 2D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    m.setflags(write=False)
    return m


def identity(n: int) -> np.ndarray:
    return cmatrix(np.eye(n))


def _square(a, name="matrix"):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return cmatrix(a @ b)


def commutator(a, b):
    _square(a)
    if a.shape != b.shape:
        raise ShapeError(f"commutator of {a.shape} and {b.shape}")
    return cmatrix(a @ b - b @ a)


def anticommutator(a, b):
    _square(a)
    if a.shape != b.shape:
        raise ShapeError(f"anticommutator of {a.shape} and {b.shape}")
    return cmatrix(a @ b + b @ a)


def trace(a) -> complex:
    _square(a)
    return complex(np.trace(a))


def dagger(a):
    return cmatrix(np.conj(a).T)


def max_abs(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def residual(a, b) -> float:
    """Max-abs difference scaled by ``1 + max|operand|``."""
    if np.shape(a) != np.shape(b):
        raise ShapeError(f"cannot compare {np.shape(a)} with {np.shape(b)}")
    scale = 1.0 + max(max_abs(a), max_abs(b))
    return max_abs(np.asarray(a) - np.asarray(b)) / scale


def close(a, b, tol: float = DEFAULT_TOL) -> bool:
    return residual(a, b) <= tol


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    _square(a)
    return close(a, np.conj(a).T, tol)
