"""Small dense complex linear algebra.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``.
The helpers here validate shape and finiteness, and implement the handful
of kernels the rest of the package needs: Kronecker products, determinants,
and the two-component wedge product ``a ^ b = a (x) b - b (x) a``.
"""

from __future__ import annotations

import numpy as np

MAX_DIM = 64
MAX_DET_DIM = 16
DEFAULT_TOL = 1e-10


class DimensionError(ValueError):
    """Raised when operand shapes do not conform."""


def as_scalar(z) -> complex:
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"non-finite scalar {z!r}")
    return z


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite complex 2-D array with both dims <= 64."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM or a.shape[1] > MAX_DIM:
        raise DimensionError(f"matrix {a.shape} exceeds {MAX_DIM}x{MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def as_vector(v) -> np.ndarray:
    """Coerce ``v`` to a finite complex 1-D array of length <= 64."""
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1 or a.shape[0] < 1:
        raise DimensionError(f"expected a non-empty vector, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise DimensionError(f"vector of length {a.shape[0]} exceeds {MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector has non-finite entries")
    return a


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def kron(a, b) -> np.ndarray:
    """Kronecker product; accepts matrices or vectors (both of the same kind)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim == 1 and b.ndim == 1:
        a, b = as_vector(a), as_vector(b)
        if a.size * b.size > MAX_DIM:
            raise DimensionError(f"kron result length {a.size * b.size} exceeds {MAX_DIM}")
        return (a[:, None] * b[None, :]).reshape(-1)
    a, b = as_matrix(a), as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise DimensionError(f"kron result {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM}")
    # out[i*p + k, j*q + l] = a[i, j] * b[k, l]
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(rows, cols)


def kron_all(factors) -> np.ndarray:
    factors = list(factors)
    if not factors:
        raise DimensionError("kron_all needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def det(m) -> complex:
    """Determinant by cofactors for 1x1/2x2, else LU with partial pivoting.

    A vanishing pivot is not an error: the determinant is simply zero.
    """
    a = as_matrix(m)
    n, k = a.shape
    if n != k:
        raise DimensionError(f"determinant of non-square {a.shape} matrix")
    if n > MAX_DET_DIM:
        raise DimensionError(f"determinant limited to dim <= {MAX_DET_DIM}")
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    lu = a.copy()
    sign = 1.0
    for col in range(n):
        p = col + int(np.argmax(np.abs(lu[col:, col])))
        if lu[p, col] == 0:
            return 0j
        if p != col:
            lu[[col, p]] = lu[[p, col]]
            sign = -sign
        lu[col + 1:, col:] -= np.outer(lu[col + 1:, col] / lu[col, col], lu[col, col:])
    return complex(sign * np.prod(np.diag(lu)))


def det2(a, b) -> complex:
    """``det[a, b] = a1*b2 - b1*a2`` for two 2-vectors."""
    return complex(a[0] * b[1] - b[0] * a[1])


def wedge(a, b) -> np.ndarray:
    """``a (x) b - b (x) a`` in C^4; equals ``det[a, b] * (0, 1, -1, 0)``."""
    a, b = as_vector(a), as_vector(b)
    if a.shape != (2,) or b.shape != (2,):
        raise DimensionError(f"wedge needs two 2-vectors, got {a.shape} and {b.shape}")
    return kron(a, b) - kron(b, a)


def commutator(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise DimensionError(f"commutator needs equal square shapes, got {x.shape}, {y.shape}")
    return x @ y - y @ x


def max_norm(x) -> float:
    return float(np.max(np.abs(np.asarray(x)))) if np.size(x) else 0.0


def allclose(x, y, tol: float = DEFAULT_TOL) -> bool:
    """Max-norm absolute comparison."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != y.shape:
        return False
    return max_norm(x - y) <= tol


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    a = as_matrix(m)
    return a.shape[0] == a.shape[1] and max_norm(a - a.conj().T) <= tol
