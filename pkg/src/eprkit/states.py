"""Named spin states, spin observables and the brute-force expectation oracle.

Basis ordering is lexicographic tensor order with ``e1 = (1, 0)`` as spin
up, so for two spins the basis is ``e1e1, e1e2, e2e1, e2e2`` and for four
spins index ``k`` has binary digits ``b1 b2 b3 b4`` (``0`` = up).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .linalg import DEFAULT_TOL, DimensionError, as_matrix, as_vector, is_hermitian, kron

NORM_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
I2 = np.eye(2, dtype=np.complex128)

# unnormalized singlet embedded in C^4
PSI_TILDE = np.array([0, 1, -1, 0], dtype=np.complex128)


@dataclass(frozen=True)
class Direction:
    """A direction on the unit sphere: polar angle ``theta`` from +z, azimuth ``phi``.

    In-plane measurement settings use ``Direction.planar(angle)``, i.e.
    ``phi = 0`` and ``theta`` equal to the in-plane angle.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("direction angles must be finite")

    @classmethod
    def planar(cls, angle: float) -> "Direction":
        return cls(float(angle), 0.0)

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    def dot(self, other: "Direction") -> float:
        return float(self.vector @ other.vector)


def check_state(psi, tol: float = NORM_TOL) -> np.ndarray:
    """Validate a normalized state on 1-4 spins and return it as an array."""
    v = as_vector(psi)
    n = v.shape[0]
    if n < 2 or n > 16 or n & (n - 1):
        raise DimensionError(f"state dimension {n} is not a power of two in [2, 16]")
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"state is not normalized (norm {np.linalg.norm(v)!r})")
    return v


def singlet() -> np.ndarray:
    """(e1 (x) e2 - e2 (x) e1) / sqrt(2) = (0, 1, -1, 0) / sqrt(2)."""
    return PSI_TILDE / math.sqrt(2)


def ghz4() -> np.ndarray:
    """(|0011> - |1100>) / sqrt(2) on four spins."""
    v = np.zeros(16, dtype=np.complex128)
    v[0b0011] = 1 / math.sqrt(2)
    v[0b1100] = -1 / math.sqrt(2)
    return v


def spin_obs(n: Direction) -> np.ndarray:
    """The spin component ``sigma . n`` as a 2x2 Hermitian matrix."""
    c, s = math.cos(n.theta), math.sin(n.theta)
    e = complex(math.cos(n.phi), math.sin(n.phi))
    return np.array([[c, s * e.conjugate()], [s * e, -c]], dtype=np.complex128)


def spin_ket(n: Direction, sign: int) -> np.ndarray:
    """Eigenvector of ``spin_obs(n)`` with eigenvalue ``sign``.

    ``|n,+> = (cos t/2, e^{i phi} sin t/2)`` and
    ``|n,-> = (-e^{-i phi} sin t/2, cos t/2)``; for ``phi = 0`` these reduce
    to the real in-plane kets.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    c, s = math.cos(n.theta / 2), math.sin(n.theta / 2)
    e = complex(math.cos(n.phi), math.sin(n.phi))
    if sign == 1:
        return np.array([c, e * s], dtype=np.complex128)
    return np.array([-e.conjugate() * s, c], dtype=np.complex128)


def expectation(psi, observables, tol: float = DEFAULT_TOL) -> float:
    """<psi| O1 (x) ... (x) Ok |psi> by explicit Kronecker product.

    This is the reference path every closed-form correlation is checked
    against, so it deliberately does nothing clever.
    """
    psi = check_state(psi)
    ops = [as_matrix(o) for o in observables]
    if not ops:
        raise ValueError("at least one observable is required")
    for o in ops:
        if not is_hermitian(o, tol):
            raise ValueError("observable is not Hermitian")
    big = reduce(kron, ops)
    if big.shape[0] != psi.shape[0]:
        raise DimensionError(
            f"observables act on dimension {big.shape[0]}, state has {psi.shape[0]}"
        )
    value = complex(np.vdot(psi, big @ psi))
    if abs(value.imag) > tol:
        raise ValueError(f"expectation has imaginary residue {value.imag!r}")
    return value.real
