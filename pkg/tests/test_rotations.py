import math

import numpy as np
import pytest

from conftest import random_complex
from eprkit.linalg import DimensionError, commutator, kron, wedge
from eprkit.rotations import correlated_expectation, rot, rotated_spin_pair, wedge_action
from eprkit.states import SIGMA_Z, Direction, expectation, singlet, spin_obs
from oracles import cofactor_det


def test_rot_identity():
    assert np.allclose(rot(0, 0, 1).matrix, np.eye(2))


def test_rot_matrix_shape():
    r = rot(0.3, 1.1, 2.0)
    assert np.allclose(
        r.matrix,
        [[2 * math.cos(0.3), 0.5 * math.sin(1.1)], [-2 * math.sin(0.3), 0.5 * math.cos(1.1)]],
    )


@pytest.mark.parametrize("r1", [0.1, 1.0, 7.5])
def test_rot_aligned_has_unit_det(r1):
    assert rot(0.9, 0.9, r1).det == pytest.approx(1, abs=1e-12)


def test_rot_singular_member():
    r = rot(0, math.pi / 2, 1)
    assert abs(cofactor_det(r.matrix)) < 1e-15
    assert abs(r.det) < 1e-15


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_rot_rejects_bad_r1(bad):
    with pytest.raises(ValueError):
        rot(0, 0, bad)


def test_det_is_cos_difference(rng):
    th, ph = rng.uniform(-10, 10, (2, 10_000))
    r1 = np.exp(rng.uniform(-3, 3, 10_000))
    worst = max(abs(rot(a, b, c).det - math.cos(a - b)) for a, b, c in zip(th, ph, r1))
    assert worst < 1e-12


def test_wedge_action_aligned(rng):
    a, b = random_complex(rng, 2), random_complex(rng, 2)
    res = wedge_action(rot(0.4, 0.4), a, b)
    assert res.factor == 1
    assert np.max(np.abs(res.image - wedge(a, b))) < 1e-12


def test_wedge_action_quarter_turn_vanishes(rng):
    a, b = random_complex(rng, 2), random_complex(rng, 2)
    res = wedge_action(rot(1.0, 1.0 - math.pi / 2), a, b)
    assert abs(res.factor) < 1e-15
    assert np.max(np.abs(res.image)) < 1e-12


def test_wedge_action_random(rng):
    for _ in range(500):
        r = rot(*rng.uniform(-7, 7, 2), math.exp(rng.uniform(-2, 2)))
        a, b = random_complex(rng, 2), random_complex(rng, 2)
        res = wedge_action(r, a, b)
        assert np.max(np.abs(res.image - res.factor * wedge(a, b))) < 1e-10


def test_wedge_action_factor_shift_invariant(rng):
    for _ in range(100):
        th, ph, d = rng.uniform(-3, 3, 3)
        assert wedge_action(rot(th + d, ph + d), [1, 0], [0, 1]).factor == pytest.approx(
            wedge_action(rot(th, ph), [1, 0], [0, 1]).factor, abs=1e-12
        )


def test_wedge_action_dims():
    with pytest.raises(DimensionError):
        wedge_action(rot(0, 0), [1, 0, 0], [0, 1])


def test_commutator_trivial():
    assert np.array_equal(commutator(SIGMA_Z, np.eye(2)), np.zeros((2, 2)))


def test_commutator_nonzero_but_annihilates_wedge(rng):
    for _ in range(200):
        r = rot(*rng.uniform(-3, 3, 2), math.exp(rng.uniform(-1, 1)))
        rr = kron(r.matrix, r.matrix)
        c = commutator(kron(SIGMA_Z, SIGMA_Z), rr)
        w = wedge(random_complex(rng, 2), random_complex(rng, 2))
        assert np.max(np.abs(c @ w)) < 1e-10


def test_commutator_sigma3_rot_nonzero():
    c = commutator(SIGMA_Z, rot(math.pi / 4, math.pi / 4, 1).matrix)
    assert np.allclose(c, [[0, math.sqrt(2)], [math.sqrt(2), 0]])
    assert np.max(np.abs(commutator(kron(SIGMA_Z, SIGMA_Z), kron(*(rot(0.3, 0.2).matrix,) * 2)))) > 0.1


def test_commutator_dims():
    with pytest.raises(DimensionError):
        commutator(np.eye(2), np.eye(4))


def test_rotated_spin_pair_on_wedge(rng):
    for _ in range(200):
        th, ph = rng.uniform(-5, 5, 2)
        r = rot(th, ph, math.exp(rng.uniform(-1, 1)))
        w = wedge(random_complex(rng, 2), random_complex(rng, 2))
        assert np.max(np.abs(rotated_spin_pair(r) @ w + math.cos(th - ph) * w)) < 1e-10


@pytest.mark.parametrize(
    "diff, expected", [(0.0, -1.0), (math.pi / 3, -0.5), (2 * math.pi / 3, 0.5)]
)
def test_correlated_expectation_values(diff, expected):
    assert correlated_expectation(0.2 + diff, 0.2) == pytest.approx(expected, abs=1e-12)


def test_correlated_expectation_matches_oracle(rng):
    for _ in range(500):
        th, ph = rng.uniform(-7, 7, 2)
        e = expectation(singlet(), [spin_obs(Direction.planar(th)), spin_obs(Direction.planar(ph))])
        assert abs(correlated_expectation(th, ph) - e) < 1e-10
