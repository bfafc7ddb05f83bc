"""Incremental Gaussian elimination over GF(2) with certificate tracking.

Equations are ``<mask, x> = rhs (mod 2)`` with ``mask`` an ``int`` bitset
over the variables.  Every stored row remembers which input equations were
XOR-ed together to produce it (``combo``, another ``int`` bitset over
equation ids), so an inconsistency ``0 = 1`` comes with the exact subset of
input equations whose sum is contradictory.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class _Row:
    mask: int
    rhs: int
    combo: int


@dataclass
class ParitySystem:
    nvars: int
    equations: list[tuple[int, int]] = field(default_factory=list)
    _rows: dict[int, _Row] = field(default_factory=dict)
    cycles: list[int] = field(default_factory=list)

    def add(self, mask: int, rhs: int) -> int | None:
        """Add an equation; return a certificate (equation-id bitset) if it makes the system inconsistent."""
        if mask >> self.nvars:
            raise ValueError("mask refers to variables out of range")
        eid = len(self.equations)
        self.equations.append((mask, rhs & 1))
        row = _Row(mask, rhs & 1, 1 << eid)
        while row.mask:
            p = row.mask.bit_length() - 1
            pivot = self._rows.get(p)
            if pivot is None:
                self._rows[p] = row
                return None
            row.mask ^= pivot.mask
            row.rhs ^= pivot.rhs
            row.combo ^= pivot.combo
        if row.rhs:
            return row.combo
        self.cycles.append(row.combo)
        return None

    @property
    def rank(self) -> int:
        return len(self._rows)

    def solve(self) -> list[int]:
        """A solution with free variables set to 0; only valid for a consistent system."""
        x = [0] * self.nvars
        for p in sorted(self._rows):
            r = self._rows[p]
            rest = r.mask & ~(1 << p)
            acc = r.rhs
            while rest:
                b = rest & -rest
                acc ^= x[b.bit_length() - 1]
                rest ^= b
            x[p] = acc
        return x

    def shrink(self, certificate: int) -> int:
        """Greedily lower the weight of a certificate by XOR-ing recorded cycles.

        A cycle is a set of equations summing to ``0 = 0``, so the result
        stays a valid certificate.
        """
        best = certificate
        improved = True
        while improved:
            improved = False
            for z in self.cycles:
                cand = best ^ z
                if cand.bit_count() < best.bit_count():
                    best = cand
                    improved = True
        return best


def members(bits: int) -> list[int]:
    out = []
    while bits:
        b = bits & -bits
        out.append(b.bit_length() - 1)
        bits ^= b
    return out


def check_certificate(equations, ids) -> bool:
    """True iff the listed equations sum to ``0 = 1``."""
    mask, rhs = 0, 0
    for i in ids:
        m, r = equations[i]
        mask ^= m
        rhs ^= r
    return mask == 0 and rhs == 1
