"""Quantum predictions and classical bounds for Bell, Wigner and GHZ setups.

Every check is phrased as ``lhs <= rhs``; a report is *violated* when
``lhs - rhs`` exceeds :data:`VIOLATION_TOL`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .gf2 import ParitySystem, check_certificate, members
from .states import Direction

VIOLATION_TOL = 1e-9

# outcome triples (s1, s2, s3) in the order they are usually listed
ATOMS = ("+++", "++-", "+-+", "-++", "+--", "-+-", "--+", "---")


@dataclass(frozen=True)
class InequalityReport:
    lhs: float
    rhs: float
    inputs: dict = field(default_factory=dict, compare=False)

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    @property
    def violated(self) -> bool:
        return self.margin > VIOLATION_TOL

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "violated": self.violated,
            "inputs": dict(self.inputs),
        }


# -- Bell -------------------------------------------------------------------


def bell_E(n1: Direction, n2: Direction) -> float:
    """Singlet correlation ``-n1 . n2``."""
    return -n1.dot(n2)


def bell_check(n1: Direction, n2: Direction, n3: Direction) -> InequalityReport:
    """``|E(n1,n2) - E(n1,n3)| <= 1 + E(n2,n3)``."""
    lhs = abs(bell_E(n1, n2) - bell_E(n1, n3))
    rhs = 1 + bell_E(n2, n3)
    inputs = {
        "directions": [[d.theta, d.phi] for d in (n1, n2, n3)],
    }
    return InequalityReport(lhs, rhs, inputs)


def bell_check_planar(a1: float, a2: float, a3: float) -> InequalityReport:
    r = bell_check(Direction.planar(a1), Direction.planar(a2), Direction.planar(a3))
    return InequalityReport(r.lhs, r.rhs, {"angles": [a1, a2, a3]})


# -- Wigner -----------------------------------------------------------------


def wigner_p(theta: float, phi: float) -> float:
    """``P(++ | theta, phi) = P(-- | theta, phi) = sin^2((theta - phi)/2) / 2``."""
    return 0.5 * math.sin((theta - phi) / 2) ** 2


def wigner_check(t_ij: float, t_jk: float, t_ki: float) -> InequalityReport:
    """``sin^2(t_ki/2)/2 <= sin^2(t_jk/2)/2 + sin^2(t_ij/2)/2``."""
    lhs = wigner_p(t_ki, 0.0)
    rhs = wigner_p(t_jk, 0.0) + wigner_p(t_ij, 0.0)
    return InequalityReport(lhs, rhs, {"t_ij": t_ij, "t_jk": t_jk, "t_ki": t_ki})


@dataclass(frozen=True)
class OutcomeDistribution:
    """A probability on the eight predetermined outcome triples, indexed as :data:`ATOMS`."""

    p: tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        if len(p) != 8:
            raise ValueError(f"need 8 probabilities, got {len(p)}")
        if any(not math.isfinite(x) or x < 0 for x in p):
            raise ValueError("probabilities must be finite and nonnegative")
        if abs(math.fsum(p) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {math.fsum(p)!r}, not 1")
        object.__setattr__(self, "p", p)

    def prob(self, *atoms: str) -> float:
        return math.fsum(self.p[ATOMS.index(a)] for a in set(atoms))

    @classmethod
    def point_mass(cls, atom: str) -> "OutcomeDistribution":
        return cls(tuple(1.0 if a == atom else 0.0 for a in ATOMS))

    @classmethod
    def uniform(cls) -> "OutcomeDistribution":
        return cls((0.125,) * 8)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "OutcomeDistribution":
        p = rng.dirichlet(np.ones(8))
        p[-1] = 1.0 - math.fsum(p[:-1])
        return cls(tuple(np.clip(p, 0.0, None)))


def wigner_classical_sides(d: OutcomeDistribution) -> InequalityReport:
    """``P{++-, +--} <= P{++-, +--, -+-, +-+}``: holds for every distribution."""
    lhs = d.prob("++-", "+--")
    rhs = d.prob("++-", "+--", "-+-", "+-+")
    return InequalityReport(lhs, rhs, {"p": list(d.p)})


# -- local hidden variables ---------------------------------------------------


@dataclass(frozen=True)
class LhvModel:
    """Deterministic local response ``A(n, lam)`` in {+1, -1}.

    ``kind="sign"``: ``lam`` is a unit 3-vector drawn uniformly from the
    sphere and ``A(n, lam) = sign(n . lam)`` (with ``sign(0) = +1``).

    ``kind="table"``: ``lam`` is a cell index drawn uniformly from
    ``range(table.shape[1])`` and ``A(directions[r], lam) = table[r, lam]``.
    """

    kind: Literal["sign", "table"] = "sign"
    directions: tuple[Direction, ...] = ()
    table: np.ndarray | None = field(default=None, compare=False)

    @classmethod
    def sign(cls) -> "LhvModel":
        return cls("sign")

    @classmethod
    def from_table(cls, directions, table) -> "LhvModel":
        t = np.asarray(table, dtype=np.int8)
        directions = tuple(directions)
        if t.ndim != 2 or t.shape[0] != len(directions) or t.shape[1] < 1:
            raise ValueError("table must have one row per direction and at least one column")
        if not np.all(np.abs(t) == 1):
            raise ValueError("table entries must be +1 or -1")
        return cls("table", directions, t)

    def sample_lambda(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "sign":
            v = rng.standard_normal((size, 3))
            return v / np.linalg.norm(v, axis=1, keepdims=True)
        return rng.integers(0, self.table.shape[1], size=size)

    def response(self, n: Direction, lam: np.ndarray) -> np.ndarray:
        if self.kind == "sign":
            return np.where(np.asarray(lam) @ n.vector >= 0, 1, -1).astype(np.int8)
        row = self._row(n)
        return self.table[row, np.asarray(lam)]

    def _row(self, n: Direction) -> int:
        for r, d in enumerate(self.directions):
            if np.allclose(d.vector, n.vector, atol=1e-12, rtol=0):
                return r
        raise KeyError(f"direction {n} is not in the response table")


@dataclass(frozen=True)
class LhvEstimate:
    estimate: float
    std_error: float
    samples: int


def lhv_correlation(
    m: LhvModel, n1: Direction, n2: Direction, samples: int, seed: int
) -> LhvEstimate:
    """Monte Carlo estimate of ``-E_lam[A(n1, lam) A(n2, lam)]``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    lam = m.sample_lambda(rng, samples)
    prod = -(m.response(n1, lam).astype(np.int64) * m.response(n2, lam))
    est = float(prod.mean())
    se = float(prod.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return LhvEstimate(est, se, samples)


def sign_model_correlation(separation: float) -> float:
    """Closed form for the sign model at angular separation in ``[0, pi]``: ``-(1 - 2 s / pi)``."""
    s = abs(math.remainder(separation, 2 * math.pi))
    return -(1 - 2 * s / math.pi)


# -- GHZ ----------------------------------------------------------------------


def ghz_E(d1: Direction, d2: Direction, d3: Direction, d4: Direction) -> float:
    c = math.cos(d1.theta) * math.cos(d2.theta) * math.cos(d3.theta) * math.cos(d4.theta)
    s = math.sin(d1.theta) * math.sin(d2.theta) * math.sin(d3.theta) * math.sin(d4.theta)
    return c - s * math.cos(d1.phi + d2.phi - d3.phi - d4.phi)


@dataclass(frozen=True)
class GhzConstraint:
    """``A(k1) B(k2) C(k3) D(k4) = product`` with angles ``2 pi k / m``."""

    ks: tuple[int, int, int, int]
    product: int

    def to_json(self, m: int) -> dict:
        return {
            "indices": list(self.ks),
            "angles": [2 * math.pi * k / m for k in self.ks],
            "product": self.product,
        }


@dataclass
class GhzResult:
    grid_m: int
    feasible: bool
    conflict_chain: list[GhzConstraint] = field(default_factory=list)
    witness: dict[str, list[int]] | None = None
    equations: int = 0
    rank: int = 0

    def to_json(self) -> dict:
        out = {
            "grid_m": self.grid_m,
            "feasible": self.feasible,
            "equations": self.equations,
            "rank": self.rank,
        }
        if self.feasible:
            out["witness"] = self.witness
        else:
            out["conflict_chain"] = [c.to_json(self.grid_m) for c in self.conflict_chain]
        return out


def _ghz_constraints(m: int, families) -> list[GhzConstraint]:
    h = m // 2
    want = {}
    if "zero" in families:
        want[0] = -1
    if "pi" in families:
        want[h] = 1
    out = []
    for ks in itertools.product(range(m), repeat=4):
        r = (ks[0] + ks[1] - ks[2] - ks[3]) % m
        if r in want:
            out.append(GhzConstraint(ks, want[r]))
    # small sub-grids first so that contradictions surface from few equations
    out.sort(key=lambda c: (max(c.ks), c.ks))
    return out


def _mask(ks, m: int) -> int:
    return sum(1 << (slot * m + k) for slot, k in enumerate(ks))


def ghz_contradiction(grid_m: int, families=("zero", "pi")) -> GhzResult:
    """Search for +-1 functions A, B, C, D on ``{2 pi k / m}`` obeying the GHZ product rules.

    Products equal -1 when ``phi1 + phi2 - phi3 - phi4 = 0 (mod 2 pi)`` and
    +1 when it equals ``pi``.  With ``+1 -> 0`` and ``-1 -> 1`` each rule is
    a parity equation; elimination over GF(2) either yields a witness or a
    set of rules whose parities sum to ``0 = 1``.
    """
    if grid_m < 4 or grid_m % 2:
        raise ValueError(f"grid_m must be even and >= 4, got {grid_m}")
    m = grid_m
    constraints = _ghz_constraints(m, families)
    system = ParitySystem(4 * m)
    for c in constraints:
        cert = system.add(_mask(c.ks, m), 1 if c.product == -1 else 0)
        if cert is not None:
            ids = members(system.shrink(cert))
            if not check_certificate(system.equations, ids):
                raise RuntimeError("elimination produced an invalid certificate")
            return GhzResult(
                m,
                False,
                conflict_chain=[constraints[i] for i in ids],
                equations=len(constraints),
                rank=system.rank,
            )
    x = system.solve()
    witness = {
        name: [1 - 2 * x[slot * m + k] for k in range(m)]
        for slot, name in enumerate("ABCD")
    }
    return GhzResult(m, True, witness=witness, equations=len(constraints), rank=system.rank)


def chain_is_contradictory(chain, m: int) -> bool:
    """Independent check: every function value appears an even number of times and the products multiply to -1."""
    counts: dict[tuple[int, int], int] = {}
    sign = 1
    for c in chain:
        for slot, k in enumerate(c.ks):
            counts[(slot, k % m)] = counts.get((slot, k % m), 0) + 1
        sign *= c.product
    return sign == -1 and all(v % 2 == 0 for v in counts.values())


# -- scans --------------------------------------------------------------------


@dataclass
class ScanResult:
    experiment: str
    grid_n: int
    columns: tuple[str, ...]
    reports: list[InequalityReport]

    @property
    def best(self) -> InequalityReport:
        return max(self.reports, key=lambda r: r.margin)


def _wigner_from_orientations(ti: float, tj: float, tk: float) -> InequalityReport:
    r = wigner_check(tj - ti, tk - tj, ti - tk)
    return InequalityReport(r.lhs, r.rhs, {"angles": [ti, tj, tk]})


_SCANS: dict[str, Callable[[float, float, float], InequalityReport]] = {
    "bell": bell_check_planar,
    "wigner": _wigner_from_orientations,
}


def violation_scan(experiment: str, grid_n: int) -> ScanResult:
    """Evaluate a check on every triple of in-plane angles ``2 pi k / grid_n``.

    For ``wigner`` the three angles are the orientations ``theta_i, theta_j,
    theta_k`` and the pairwise differences feed :func:`wigner_check`.
    """
    if experiment not in _SCANS:
        raise ValueError(f"unknown experiment {experiment!r}")
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    fn = _SCANS[experiment]
    angles = [2 * math.pi * k / grid_n for k in range(grid_n)]
    reports = [fn(*t) for t in itertools.product(angles, repeat=3)]
    cols = ("angle1", "angle2", "angle3")
    return ScanResult(experiment, grid_n, cols, reports)
