"""GF(2) linear algebra on Python ints used as bit vectors.

Vectors are inserted into an XOR basis keyed by their highest set bit, so
inputs whose leading bits are already distinct cost one dictionary lookup each.
"""

from __future__ import annotations

from typing import Iterable


class XorBasis:
    """Incrementally built row-echelon basis over GF(2).

    ``track=True`` records, for every basis vector, which inserted vectors it
    is the sum of (as a bitmask over insertion order).  That is what turns an
    insertion that reduces to zero into an explicit linear dependency.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[int, int] = {}
        self.track = track
        self._combo: dict[int, int] = {}
        self._count = 0

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> tuple[int, int]:
        """Reduce ``v`` against the basis; returns ``(residue, combo)``."""
        combo = 0
        pivots = self.pivots
        while v:
            top = v.bit_length() - 1
            row = pivots.get(top)
            if row is None:
                break
            v ^= row
            if self.track:
                combo ^= self._combo[top]
        return v, combo

    def insert(self, v: int) -> int | None:
        """Add ``v``.  Returns None if it was independent, else the dependency
        mask (over insertion indices, including this one) summing to zero."""
        index = self._count
        self._count += 1
        residue, combo = self.reduce(v)
        combo ^= 1 << index
        if residue:
            top = residue.bit_length() - 1
            self.pivots[top] = residue
            if self.track:
                self._combo[top] = combo
            return None
        return combo if self.track else 0

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def express(self, v: int) -> int | None:
        """Insertion-index mask whose vectors sum to ``v``, or None if outside the span."""
        if not self.track:
            raise ValueError("basis was built without tracking")
        residue, combo = self.reduce(v)
        return None if residue else combo


def rank(rows: Iterable[int]) -> int:
    basis = XorBasis()
    for r in rows:
        basis.insert(r)
    return len(basis)


def in_span(v: int, rows: Iterable[int]) -> bool:
    basis = XorBasis()
    for r in rows:
        basis.insert(r)
    return basis.contains(v)


def parity(v: int) -> int:
    return v.bit_count() & 1


def mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def bits(v: int) -> list[int]:
    """Indices of set bits, ascending."""
    s = bin(v)[:1:-1]
    out = []
    i = s.find("1")
    while i >= 0:
        out.append(i)
        i = s.find("1", i + 1)
    return out


def compress(v: int, positions: list[int]) -> int:
    """Gather bits of ``v`` at ``positions`` into a dense int (bit k <- positions[k])."""
    out = 0
    for k, p in enumerate(positions):
        if (v >> p) & 1:
            out |= 1 << k
    return out


def dual_vectors(rows: list[int]) -> list[int]:
    """For independent ``rows`` return ``d_k`` with ``parity(rows[j] & d_k) == (j == k)``.

    Back-substitutes through the echelon basis in increasing pivot order; each
    basis vector's remaining bits lie below its pivot and are already fixed.
    """
    basis = XorBasis(track=True)
    for r in rows:
        if basis.insert(r) is not None:
            raise ValueError("rows are linearly dependent")
    order = sorted(basis.pivots)
    out = []
    for k in range(len(rows)):
        d = 0
        for top in order:
            vec = basis.pivots[top]
            want = (basis._combo[top] >> k) & 1
            if parity(vec & d) != want:
                d |= 1 << top
        out.append(d)
    return out
