"""Acceptance checks, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

from __future__ import annotations

import io
import math
import time

import numpy as np
import pytest

from conftest import random_complex, random_direction
from eprkit.cli import main
from eprkit.frames import frame_decompose, frame_identification_check, triad
from eprkit.inequalities import (
    LhvModel,
    OutcomeDistribution,
    bell_E,
    bell_check_planar,
    chain_is_contradictory,
    ghz_contradiction,
    ghz_E,
    lhv_correlation,
    wigner_check,
    wigner_classical_sides,
)
from eprkit.linalg import commutator, kron, max_norm, wedge
from eprkit.rotations import rot, rotated_spin_pair, wedge_action
from eprkit.stabilizer import SM4Params, is_member, kron_self_factor, kron_square, singlet_family, sm4
from eprkit.states import PSI_TILDE, SIGMA_Z, Direction, expectation, ghz4, singlet, spin_obs


def report(label: str, ok: bool, detail: str) -> None:
    print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    assert ok, f"{label}: {detail}"


def test_c01_bell_violation_instance():
    r = bell_check_planar(0.0, math.pi / 3, 2 * math.pi / 3)
    ok = abs(r.lhs - 1.0) <= 1e-12 and abs(r.rhs - 0.5) <= 1e-12 and r.violated
    report("C1 bell instance", ok, f"lhs={r.lhs!r} rhs={r.rhs!r} violated={r.violated}")


def test_c02_wigner_violation_instance():
    r = wigner_check(math.pi / 3, math.pi / 3, 2 * math.pi / 3)
    ok = abs(r.lhs - 0.375) <= 1e-12 and abs(r.rhs - 0.25) <= 1e-12 and r.violated
    report("C2 wigner instance", ok, f"lhs={r.lhs!r} rhs={r.rhs!r} violated={r.violated}")


def test_c03_classical_bound():
    rng = np.random.default_rng(3)
    bad = 0
    worst = -math.inf
    for _ in range(100_000):
        r = wigner_classical_sides(OutcomeDistribution.random(rng))
        worst = max(worst, r.lhs - r.rhs)
        bad += r.lhs > r.rhs
    report("C3 classical bound", bad == 0, f"violations={bad} of 100000, max lhs-rhs={worst:.3e}")


def test_c04_bell_oracle_equivalence():
    rng = np.random.default_rng(4)
    psi = singlet()
    worst = 0.0
    for _ in range(1000):
        n1, n2 = random_direction(rng), random_direction(rng)
        worst = max(worst, abs(bell_E(n1, n2) - expectation(psi, [spin_obs(n1), spin_obs(n2)])))
    report("C4 bell_E vs oracle", worst < 1e-10, f"max |diff|={worst:.3e}")


def test_c05_stabilizer_membership_and_closure():
    rng = np.random.default_rng(5)
    fam = singlet_family()
    members = [sm4(SM4Params.random(rng)) for _ in range(10_000)]
    worst = max(float(np.linalg.norm(a @ PSI_TILDE - PSI_TILDE)) for a in members)
    closed = 0
    for _ in range(1000):
        i, j = rng.integers(len(members), size=2)
        closed += is_member(fam, members[i] @ members[j], tol=1e-9)
    ok = worst < 1e-12 and closed == 1000
    report("C5 SM(4) membership/closure", ok, f"max ||A v - v||={worst:.3e}, closed products={closed}/1000")


def test_c06_reducibility():
    rng = np.random.default_rng(6)
    worst = 0.0
    missed = 0
    for _ in range(1000):
        g = random_complex(rng, 2, 2)
        a = kron_square(g)
        h = kron_self_factor(a)
        if h is None:
            missed += 1
            continue
        worst = max(worst, max_norm(kron_square(h) - a) / max(1.0, max_norm(a)))
    irreducible = np.array([[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 2]], dtype=complex)
    empty = kron_self_factor(irreducible) is None
    ok = missed == 0 and worst < 1e-8 and empty
    report("C6 reducibility", ok, f"missed={missed}, max residual={worst:.3e}, a44=2 irreducible={empty}")


def test_c07_rotation_identities():
    rng = np.random.default_rng(7)
    det_err = wedge_err = comm_err = 0.0
    sz2 = kron(SIGMA_Z, SIGMA_Z)
    for _ in range(10_000):
        theta, phi = rng.uniform(-math.pi, math.pi, 2)
        r1 = rng.uniform(0.1, 3.0)
        r = rot(theta, phi, r1)
        det_err = max(det_err, abs(r.det - math.cos(theta - phi)))
        a, b = rng.standard_normal(2), rng.standard_normal(2)
        w = wedge_action(r, a, b)
        wedge_err = max(wedge_err, float(np.linalg.norm(w.image - w.factor * wedge(a, b))))
        rr = kron(r.matrix, r.matrix)
        comm_err = max(comm_err, float(np.linalg.norm(commutator(sz2, rr) @ wedge(a, b))))
    assert rotated_spin_pair(rot(0.3, 0.1)).shape == (4, 4)
    ok = det_err < 1e-12 and wedge_err < 1e-10 and comm_err < 1e-10
    report("C7 rotation identities", ok, f"det={det_err:.3e} wedge={wedge_err:.3e} commutator={comm_err:.3e}")


def test_c08_ghz_formula_vs_oracle():
    rng = np.random.default_rng(8)
    psi = ghz4()
    worst = 0.0
    for _ in range(1000):
        ds = [random_direction(rng) for _ in range(4)]
        worst = max(worst, abs(ghz_E(*ds) - expectation(psi, [spin_obs(d) for d in ds])))
    # phase sum is phi1 + phi2 - phi3 - phi4
    h = math.pi / 2
    e0 = ghz_E(*(Direction(h, p) for p in (0.3, -0.1, 0.5, -0.3)))
    epi = ghz_E(*(Direction(h, p) for p in (math.pi / 2, math.pi / 4, -math.pi / 8, -math.pi / 8)))
    ok = worst < 1e-10 and abs(e0 + 1) < 1e-12 and abs(epi - 1) < 1e-12
    report("C8 GHZ formula", ok, f"max |diff|={worst:.3e} (no sign flip), E(sum 0)={e0!r}, E(sum pi)={epi!r}")


@pytest.mark.parametrize("m", [4, 6, 8, 12, 16])
def test_c09_ghz_infeasibility(m):
    t0 = time.perf_counter()
    r = ghz_contradiction(m)
    elapsed = time.perf_counter() - t0
    certified = (not r.feasible) and chain_is_contradictory(r.conflict_chain, m)
    ok = certified and elapsed < 1.0
    detail = f"m={m} feasible={r.feasible} certificate={certified} len={len(r.conflict_chain)} time={elapsed:.3f}s"
    if r.feasible:
        detail += f" witness={r.witness}"
    report(f"C9 GHZ infeasibility m={m}", ok, detail)


def test_c10_lhv_gap():
    n1, n2 = Direction.planar(0.0), Direction.planar(math.pi / 4)
    est = lhv_correlation(LhvModel.sign(), n1, n2, 100_000, seed=10)
    target = -(1 - 2 * (math.pi / 4) / math.pi)
    quantum = -math.cos(math.pi / 4)
    within = abs(est.estimate - target) <= 3 * est.std_error
    gap = abs(est.estimate - quantum)
    ok = within and gap > 10 * est.std_error
    report(
        "C10 LHV gap",
        ok,
        f"estimate={est.estimate:.5f}+-{est.std_error:.5f} target={target} quantum={quantum:.5f} "
        f"gap={gap:.4f} ({gap / est.std_error:.1f} SE)",
    )


def test_c11_frames():
    ident = frame_identification_check(tol=0.0)
    e_theta = triad(math.pi, 0.5).e_theta
    theta_ok = float(np.max(np.abs(e_theta - np.array([0.0, -1.0, 0.0])))) <= 1e-12
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(10_000):
        theta, phi = rng.uniform(-10, 10, 2)
        p_r, p_t = frame_decompose(theta, phi).probabilities
        worst = max(worst, abs(p_r + p_t - 1))
    ok = ident.passed and theta_ok and worst < 1e-12
    report("C11 frames", ok, f"identification exact={ident.passed} e_theta(pi,1/2)={e_theta.tolist()} max |sum-1|={worst:.1e}")


DETERMINISM_COMMANDS = [
    ["bell", "0", "pi/3", "2pi/3"],
    ["wigner", "pi/3", "pi/3", "2pi/3", "--format", "csv"],
    ["ghz", "--contradiction", "--grid", "8"],
    ["frames", "--theta", "pi/3", "--phi", "pi/5"],
    ["semigroup", "--sample", "--seed", "42"],
    ["lhv", "--samples", "20000", "--seed", "42"],
    ["scan", "wigner", "--grid", "8", "--format", "csv"],
]


def test_c12_cli_determinism():
    mismatched = []
    for argv in DETERMINISM_COMMANDS:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            assert main(argv, buf) == 0
            outs.append(buf.getvalue())
        if outs[0] != outs[1]:
            mismatched.append(" ".join(argv))
    report("C12 CLI determinism", not mismatched, f"{len(DETERMINISM_COMMANDS)} commands, mismatched={mismatched}")
