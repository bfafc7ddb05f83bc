"""Polar parameterization of GL(2,C) in a non-orthogonal frame.

``R(theta, phi) = [[r1 cos(theta), r2 sin(phi)], [-r1 sin(theta), r2 cos(phi)]]``
with ``r2 = 1 / r1``, so that ``det R = cos(theta - phi)`` for every ``r1``.
Angles are never reduced modulo 2 pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError, as_vector, commutator, det, kron, wedge
from .states import SIGMA_Z

__all__ = [
    "PolarRotation",
    "WedgeAction",
    "rot",
    "wedge_action",
    "commutator",
    "correlated_expectation",
]


@dataclass(frozen=True)
class PolarRotation:
    theta: float
    phi: float
    r1: float = 1.0

    @property
    def r2(self) -> float:
        return 1.0 / self.r1

    @property
    def matrix(self) -> np.ndarray:
        r1, r2 = self.r1, self.r2
        return np.array(
            [
                [r1 * math.cos(self.theta), r2 * math.sin(self.phi)],
                [-r1 * math.sin(self.theta), r2 * math.cos(self.phi)],
            ],
            dtype=np.complex128,
        )

    @property
    def det(self) -> float:
        return det(self.matrix).real

    @property
    def lam(self) -> float:
        """The relative angle ``theta - phi``."""
        return self.theta - self.phi


@dataclass(frozen=True)
class WedgeAction:
    image: np.ndarray
    factor: float


def rot(theta: float, phi: float, r1: float = 1.0) -> PolarRotation:
    if not (math.isfinite(r1) and r1 > 0):
        raise ValueError(f"r1 must be finite and positive, got {r1!r}")
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("angles must be finite")
    return PolarRotation(float(theta), float(phi), float(r1))


def wedge_action(r: PolarRotation, a, b) -> WedgeAction:
    """Apply ``R (x) R`` to ``a ^ b``; the result is ``cos(theta - phi) * (a ^ b)``."""
    a, b = as_vector(a), as_vector(b)
    if a.shape != (2,) or b.shape != (2,):
        raise DimensionError("wedge_action needs two 2-vectors")
    m = r.matrix
    image = kron(m, m) @ wedge(a, b)
    return WedgeAction(image=image, factor=math.cos(r.theta - r.phi))


def rotated_spin_pair(r: PolarRotation) -> np.ndarray:
    """``R sigma3 (x) R sigma3``."""
    rs = r.matrix @ SIGMA_Z
    return kron(rs, rs)


def correlated_expectation(theta: float, phi: float) -> float:
    """Singlet correlation for in-plane settings ``theta`` and ``phi``: ``-cos(theta - phi)``."""
    return -math.cos(theta - phi)
