"""Exact desk-scale algebra for spin entanglement: Bell, Wigner and GHZ
checks against a statevector oracle, the singlet stabilizer semigroup, and
SU(2) reference frames."""

from .frames import frame_decompose, frame_identification_check, rotated_operator, spinor_frames, triad
from .inequalities import (
    InequalityReport,
    LhvModel,
    OutcomeDistribution,
    bell_check,
    bell_E,
    ghz_contradiction,
    ghz_E,
    lhv_correlation,
    violation_scan,
    wigner_check,
    wigner_classical_sides,
    wigner_p,
)
from .linalg import det, kron, wedge
from .rotations import commutator, correlated_expectation, rot, wedge_action
from .stabilizer import (
    SM4Params,
    is_member,
    kron_self_factor,
    sample_member,
    sm4,
    stabilizer_family,
)
from .states import Direction, expectation, ghz4, singlet, spin_ket, spin_obs

__version__ = "0.1.0"
