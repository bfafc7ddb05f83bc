"""Rotated reference frames for spin: triads, half-angle decompositions, real spinor frames.

Everything here is planar and real.  The laboratory basis is
``i = (1,0,0)``, ``j = (0,1,0)``, ``k = (0,0,1)``; a frame rotated by
``theta`` in the j-k plane with species constant ``c`` is

    e_i = i,  e_r = j cos(c theta) + k sin(c theta),  e_theta = k cos(c theta) - j sin(c theta).

``c = 1`` describes photons and ``c = 1/2`` electrons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .states import SIGMA_Z

PHOTON = 1.0
ELECTRON = 0.5
SPECIES = {"photon": PHOTON, "electron": ELECTRON}

I, J, K = np.eye(3)


@dataclass(frozen=True)
class Triad:
    e_i: np.ndarray
    e_r: np.ndarray
    e_theta: np.ndarray

    def as_matrix(self) -> np.ndarray:
        """Rows are ``e_i, e_r, e_theta``."""
        return np.vstack([self.e_i, self.e_r, self.e_theta])

    def is_orthonormal(self, tol: float = 1e-10) -> bool:
        m = self.as_matrix()
        return bool(np.max(np.abs(m @ m.T - np.eye(3))) <= tol)

    def is_right_handed(self, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(np.cross(self.e_i, self.e_r) - self.e_theta)) <= tol)

    def to_json(self) -> dict:
        return {
            "e_i": self.e_i.tolist(),
            "e_r": self.e_r.tolist(),
            "e_theta": self.e_theta.tolist(),
        }


def triad(theta: float, c: float) -> Triad:
    if not (math.isfinite(c) and c > 0):
        raise ValueError(f"species constant must be positive, got {c!r}")
    a = c * theta
    ca, sa = math.cos(a), math.sin(a)
    return Triad(I.copy(), J * ca + K * sa, K * ca - J * sa)


@dataclass(frozen=True)
class FrameDecomposition:
    """Coordinates of ``e_{theta+phi}`` in the rotated frame ``(e_r(theta), e_theta)``."""

    amp_r: float
    amp_theta: float

    @property
    def probabilities(self) -> tuple[float, float]:
        return self.amp_r**2, self.amp_theta**2

    def to_json(self) -> dict:
        p_r, p_t = self.probabilities
        return {"amp_r": self.amp_r, "amp_theta": self.amp_theta, "p_r": p_r, "p_theta": p_t}


def frame_decompose(theta: float, phi: float) -> FrameDecomposition:
    """``e_{theta+phi} = cos(phi/2) e_theta - sin(phi/2) e_r(theta)`` for the electron frame.

    The result does not depend on ``theta``: only the relative rotation
    ``phi`` matters.
    """
    return FrameDecomposition(amp_r=-math.sin(phi / 2), amp_theta=math.cos(phi / 2))


def rotation2(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotated_operator(theta: float) -> np.ndarray:
    """``R(theta) sigma3 R(-theta) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]``."""
    return rotation2(theta) @ SIGMA_Z.real @ rotation2(-theta)


_R = math.sqrt(0.5)
# (cos, sin) of k * pi/4
_EIGHTHS = [(1.0, 0.0), (_R, _R), (0.0, 1.0), (-_R, _R), (-1.0, 0.0), (-_R, -_R), (0.0, -1.0), (_R, -_R)]


def half_angle(theta: float) -> tuple[float, float]:
    """``(cos(theta/2), sin(theta/2))``, exact when ``theta`` is a multiple of pi/2."""
    q = theta / (math.pi / 2)
    if q == round(q) and abs(q) < 2**52:
        return _EIGHTHS[int(round(q)) % 8]
    return math.cos(theta / 2), math.sin(theta / 2)


class SpinorFrame(NamedTuple):
    ket_plus: np.ndarray
    ket_minus: np.ndarray


def spinor_frames(theta: float) -> SpinorFrame:
    """Real kets ``|n(theta), +>`` and ``|n(theta), ->`` with ``|n(0),+> = (1, 0)``.

    ``|n,+> = (cos t/2, sin t/2)`` and ``|n,-> = (sin t/2, -cos t/2)``, so that
    ``(1, 0) = cos(t/2)|n,+> + sin(t/2)|n,->`` for every ``t``.
    """
    c, s = half_angle(theta)
    return SpinorFrame(np.array([c, s]), np.array([s, -c]))


@dataclass(frozen=True)
class IdentificationReport:
    overlap_plus: float
    overlap_minus: float
    n2_minus_vs_n3_plus: float
    n2_self_overlap: float
    n2_plus: list[float]
    n2_minus: list[float]
    n3_plus: list[float]
    n3_minus: list[float]
    tol: float

    @property
    def passed(self) -> bool:
        return (
            abs(self.overlap_plus) <= self.tol
            and abs(self.overlap_minus) <= self.tol
            and self.n2_minus_vs_n3_plus <= self.tol
            and abs(self.n2_self_overlap) <= self.tol
        )

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "overlap_plus": self.overlap_plus,
            "overlap_minus": self.overlap_minus,
            "n2_minus_vs_n3_plus": self.n2_minus_vs_n3_plus,
            "n2_self_overlap": self.n2_self_overlap,
            "kets": {
                "n2_plus": self.n2_plus,
                "n2_minus": self.n2_minus,
                "n3_plus": self.n3_plus,
                "n3_minus": self.n3_minus,
            },
        }


def overlap(u, v) -> float:
    """Real inner product with each product rounded separately (no fused multiply-add)."""
    return math.fsum(float(a) * float(b) for a, b in zip(u, v))


def frame_identification_check(tol: float = 0.0) -> IdentificationReport:
    """Frames at +pi/2 and -pi/2: ``<n2,+-|n3,+-> = 0`` yet ``|n2,-> = |n3,+>``."""
    n2 = spinor_frames(math.pi / 2)
    n3 = spinor_frames(-math.pi / 2)
    return IdentificationReport(
        overlap_plus=overlap(n2.ket_plus, n3.ket_plus),
        overlap_minus=overlap(n2.ket_minus, n3.ket_minus),
        n2_minus_vs_n3_plus=float(np.max(np.abs(n2.ket_minus - n3.ket_plus))),
        n2_self_overlap=overlap(n2.ket_plus, n2.ket_minus),
        n2_plus=n2.ket_plus.tolist(),
        n2_minus=n2.ket_minus.tolist(),
        n3_plus=n3.ket_plus.tolist(),
        n3_minus=n3.ket_minus.tolist(),
        tol=tol,
    )
