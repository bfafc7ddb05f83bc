"""Stabilizer semigroups ``{A : A v = v}`` of a fixed vector.

For the embedded singlet ``(0, 1, -1, 0)`` this is the 12-complex-parameter
family ``SM(4, C)``; for the four-spin GHZ coordinate vector it is the
analogous ``SM(16, C)``.  Constraints are stored row by row: in row ``i``
one entry multiplying a nonzero component of ``v`` is *bound*, written as
an affine combination of the other entries of that row, and everything
else is free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DimensionError, as_matrix, as_vector, det, kron, max_norm
from .states import PSI_TILDE

SUPPORT_TOL = 1e-14


@dataclass(frozen=True)
class AffineConstraint:
    """``a[row, col] = sum(c * a[row, j] for j, c in terms) + constant``."""

    row: int
    col: int
    terms: tuple[tuple[int, complex], ...]
    constant: complex

    def value(self, a: np.ndarray) -> complex:
        return sum(c * a[self.row, j] for j, c in self.terms) + self.constant

    def residual(self, a: np.ndarray) -> float:
        return abs(a[self.row, self.col] - self.value(a))


@dataclass(frozen=True)
class StabilizerFamily:
    fixed_vector: np.ndarray
    constraints: tuple[AffineConstraint, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.fixed_vector.shape[0]

    @property
    def bound_indices(self) -> list[tuple[int, int]]:
        return [(c.row, c.col) for c in self.constraints]

    @property
    def free_indices(self) -> list[tuple[int, int]]:
        bound = set(self.bound_indices)
        n = self.dim
        return [(i, j) for i in range(n) for j in range(n) if (i, j) not in bound]

    def fill(self, free_values) -> np.ndarray:
        """Materialize the member whose free entries are ``free_values`` (row-major order)."""
        free = self.free_indices
        vals = np.asarray(free_values, dtype=np.complex128).reshape(-1)
        if vals.shape[0] != len(free):
            raise DimensionError(f"expected {len(free)} free values, got {vals.shape[0]}")
        a = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for (i, j), x in zip(free, vals):
            a[i, j] = x
        for c in self.constraints:
            a[c.row, c.col] = c.value(a)
        return a

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "fixed_vector": [[z.real, z.imag] for z in self.fixed_vector.tolist()],
            "free_count": len(self.free_indices),
            "constraints": [
                {
                    "entry": [c.row, c.col],
                    "terms": [[j, [complex(w).real, complex(w).imag]] for j, w in c.terms],
                    "constant": [complex(c.constant).real, complex(c.constant).imag],
                }
                for c in self.constraints
            ],
        }

    def describe(self, one_based: bool = False) -> list[str]:
        """Human-readable constraint list, e.g. ``a[1,2] = a[1,1] - 1``."""
        off = 1 if one_based else 0
        out = []
        for c in self.constraints:
            rhs = []
            for j, w in c.terms:
                name = f"a[{c.row + off},{j + off}]"
                rhs.append(name if w == 1 else f"-{name}" if w == -1 else f"({_fmt(w)})*{name}")
            if c.constant != 0 or not rhs:
                rhs.append(_fmt(c.constant))
            text = " + ".join(rhs).replace("+ -", "- ")
            out.append(f"a[{c.row + off},{c.col + off}] = {text}")
        return out


def _fmt(z) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}j"


@dataclass(frozen=True)
class SM4Params:
    """The twelve free entries of an ``SM(4, C)`` member (1-based names)."""

    a11: complex = 1
    a12: complex = 0
    a14: complex = 0
    a21: complex = 0
    a22: complex = 1
    a24: complex = 0
    a31: complex = 0
    a33: complex = 1
    a34: complex = 0
    a41: complex = 0
    a42: complex = 0
    a44: complex = 1

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0) -> "SM4Params":
        z = scale * (rng.standard_normal(12) + 1j * rng.standard_normal(12))
        return cls(*(complex(x) for x in z))


def sm4(p: SM4Params) -> np.ndarray:
    return np.array(
        [
            [p.a11, p.a12, p.a12, p.a14],
            [p.a21, p.a22, p.a22 - 1, p.a24],
            [p.a31, p.a33 - 1, p.a33, p.a34],
            [p.a41, p.a42, p.a42, p.a44],
        ],
        dtype=np.complex128,
    )


def stabilizer_family(v) -> StabilizerFamily:
    """Affine description of ``{A : A v = v}``.

    Row ``i`` reads ``sum_j a[i,j] v[j] = v[i]``.  The bound entry is taken
    in the last column where ``v`` is nonzero, except in the diagonal
    position, where an off-diagonal support column is preferred; for the
    singlet this reproduces ``a13 = a12``, ``a23 = a22 - 1``,
    ``a32 = a33 - 1``, ``a43 = a42``.
    """
    v = as_vector(v)
    support = [j for j in range(v.shape[0]) if abs(v[j]) > SUPPORT_TOL]
    if not support:
        raise ValueError("the zero vector is fixed by every matrix")
    constraints = []
    for i in range(v.shape[0]):
        others = [j for j in support if j != i]
        p = others[-1] if others else i
        terms = tuple((j, complex(-v[j] / v[p])) for j in support if j != p)
        constraints.append(AffineConstraint(i, p, terms, complex(v[i] / v[p])))
    return StabilizerFamily(fixed_vector=v, constraints=tuple(constraints))


def family_from_json(doc: dict) -> StabilizerFamily:
    """Rebuild a family from :meth:`StabilizerFamily.to_json` output."""
    v = np.array([complex(re, im) for re, im in doc["fixed_vector"]])
    cons = tuple(
        AffineConstraint(
            int(c["entry"][0]),
            int(c["entry"][1]),
            tuple((int(j), complex(*w)) for j, w in c["terms"]),
            complex(*c["constant"]),
        )
        for c in doc["constraints"]
    )
    return StabilizerFamily(fixed_vector=v, constraints=cons)


def singlet_family() -> StabilizerFamily:
    return stabilizer_family(PSI_TILDE)


def sample_member(f: StabilizerFamily, seed: int, scale: float = 1.0) -> np.ndarray:
    """A member with free entries uniform on the complex disk of radius ``scale``."""
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale!r}")
    rng = np.random.default_rng(seed)
    k = len(f.free_indices)
    r = scale * np.sqrt(rng.random(k))
    t = 2 * np.pi * rng.random(k)
    return f.fill(r * np.exp(1j * t))


def is_member(f: StabilizerFamily, a, tol: float = 1e-10) -> bool:
    a = as_matrix(a)
    if a.shape != (f.dim, f.dim):
        raise DimensionError(f"expected {f.dim}x{f.dim} matrix, got {a.shape}")
    if max_norm(a @ f.fixed_vector - f.fixed_vector) > tol:
        return False
    return all(c.residual(a) <= tol for c in f.constraints)


def kron_square(g) -> np.ndarray:
    """``g (x) g / det(g)``: the reducible members of ``SM(4, C)``."""
    g = as_matrix(g)
    if g.shape != (2, 2):
        raise DimensionError("kron_square needs a 2x2 matrix")
    d = det(g)
    if d == 0:
        raise ValueError("g is singular")
    return kron(g, g) / d


def rearrange(a) -> np.ndarray:
    """Van Loan rearrangement: ``rearrange(B (x) C) = vec(B) vec(C)^T`` for 2x2 factors."""
    a = as_matrix(a)
    if a.shape != (4, 4):
        raise DimensionError("rearrange needs a 4x4 matrix")
    # a[2*i1 + i2, 2*j1 + j2] = B[i1, j1] * C[i2, j2]
    return a.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)


def gauge_fix(g: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Scale ``g`` so that its first non-negligible entry (row-major) equals 1."""
    flat = g.reshape(-1)
    big = np.abs(flat) > tol * max(1.0, float(np.max(np.abs(flat))))
    return g / flat[int(np.argmax(big))]


def kron_self_factor(a, tol: float = 1e-8):
    """Return ``g`` with ``a == g (x) g / det(g)``, or ``None`` if no such ``g`` exists.

    The rearranged matrix must be rank one (second singular value below
    ``tol`` relative to the first), and the leading singular pair gives the
    Kronecker factors; the candidate is accepted only when rebuilding
    ``g (x) g / det(g)`` reproduces ``a`` to ``tol`` in relative max-norm.
    ``g`` is only defined up to a nonzero scalar; the returned
    representative has its first nonzero entry equal to 1.
    """
    a = as_matrix(a)
    if a.shape != (4, 4):
        raise DimensionError("kron_self_factor needs a 4x4 matrix")
    scale = max_norm(a)
    if scale == 0:
        return None
    u, s, vh = np.linalg.svd(rearrange(a))
    if s[1] > tol * s[0]:
        return None
    # vh[0] is proportional to vec(C), the right Kronecker factor
    g = gauge_fix(vh[0].reshape(2, 2))
    d = det(g)
    if abs(d) <= tol * max_norm(g) ** 2:
        return None
    if max_norm(kron(g, g) / d - a) > tol * max(1.0, scale):
        return None
    return g
