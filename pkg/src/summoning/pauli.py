"""Pauli operators as symplectic bit vectors.

An operator is ``i**phase`` times a tensor product of I, X, Y, Z, with qubit
``k`` described by bit ``k`` of ``x`` and ``z`` (X: x=1, Z: z=1, Y: both).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

_CHARS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % 4)
        if (self.x | self.z) >> self.n:
            raise ValueError(f"support exceeds {self.n} qubits")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n)

    @classmethod
    def from_string(cls, s: str) -> "PauliOperator":
        """Parse ``"-XIZY"``; leftmost character is qubit 0."""
        phase = 0
        for prefix, ph in (("+i", 1), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)):
            if s.startswith(prefix):
                phase, s = ph, s[len(prefix):]
                break
        x = z = 0
        for k, ch in enumerate(s):
            if ch in "XY":
                x |= 1 << k
            if ch in "ZY":
                z |= 1 << k
            if ch not in "IXYZ_":
                raise ValueError(f"bad Pauli character {ch!r}")
        return cls(len(s), x, z, phase)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> "PauliOperator":
        bit = 1 << qubit
        return cls(n, bit if kind in "XY" else 0, bit if kind in "ZY" else 0)

    @classmethod
    def from_sparse(cls, n: int, terms: Iterable[tuple[int, str]], phase: int = 0) -> "PauliOperator":
        """Build from ``(qubit, 'X'|'Y'|'Z')`` pairs, which must hit distinct qubits."""
        x = z = 0
        for q, kind in terms:
            bit = 1 << q
            if (x | z) & bit:
                raise ValueError(f"qubit {q} listed twice")
            if kind in "XY":
                x |= bit
            if kind in "ZY":
                z |= bit
        return cls(n, x, z, phase)

    # -- algebra --------------------------------------------------------------

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        # i^|x&z| X^x Z^z form; reorder Z1 X2 -> X2 Z1 costs (-1)^{z1.x2}
        x, z = self.x ^ other.x, self.z ^ other.z
        ph = (self.phase + other.phase
              + (self.x & self.z).bit_count() + (other.x & other.z).bit_count()
              + 2 * (self.z & other.x).bit_count()
              - (x & z).bit_count())
        return PauliOperator(self.n, x, z, ph)

    def commutes(self, other: "PauliOperator") -> bool:
        return symplectic(self.x, self.z, other.x, other.z) == 0

    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_hermitian():
            raise ValueError("non-Hermitian operator has no real sign")
        return 1 if self.phase == 0 else -1

    def unsigned(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, 0)

    def negated(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    def symplectic_int(self) -> int:
        """``x << n | z`` as one 2n-bit vector."""
        return (self.x << self.n) | self.z

    def embed(self, n: int, layout: list[int]) -> "PauliOperator":
        """Place qubit ``k`` of this operator on qubit ``layout[k]`` of an n-qubit register."""
        x = z = 0
        for k, q in enumerate(layout):
            if (self.x >> k) & 1:
                x |= 1 << q
            if (self.z >> k) & 1:
                z |= 1 << q
        return PauliOperator(n, x, z, self.phase)

    def __getitem__(self, k: int) -> str:
        return _CHARS[((self.x >> k) & 1, (self.z >> k) & 1)]

    def label(self) -> str:
        """Unsigned Pauli string, qubit 0 first."""
        return "".join(_CHARS[((self.x >> k) & 1, (self.z >> k) & 1)] for k in range(self.n))

    def __str__(self) -> str:
        return _SIGNS[self.phase] + self.label()


def symplectic(x1: int, z1: int, x2: int, z2: int) -> int:
    """Symplectic inner product; 1 means the operators anticommute."""
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1
