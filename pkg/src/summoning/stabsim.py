"""Exact stabilizer-state simulation (Aaronson-Gottesman tableau).

Rows are stored as Python ints (one bit per qubit) with a phase exponent
mod 4.  Rows ``0..n-1`` are destabilizers, ``n..2n-1`` stabilizers.  Only
stabilizer phases are physically meaningful.
"""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .codes import NotCorrectable, StabilizerCode, cleaned_logical, erasure_correctable
from .pauli import PauliOperator


class SimulationError(RuntimeError):
    pass


class NotFresh(SimulationError):
    """A qubit expected in |0> is already in use."""


class SizeMismatch(SimulationError):
    pass


class TeleportError(SimulationError):
    """The two Bell halves do not hold a Bell pair."""


class InputState(enum.Enum):
    X_PLUS = "X+"
    X_MINUS = "X-"
    Y_PLUS = "Y+"
    Y_MINUS = "Y-"
    Z_PLUS = "Z+"
    Z_MINUS = "Z-"

    @property
    def axis(self) -> str:
        return self.value[0]

    @property
    def sign(self) -> int:
        return 1 if self.value[1] == "+" else -1

    @classmethod
    def parse(cls, label: "str | InputState") -> "InputState":
        if isinstance(label, InputState):
            return label
        try:
            return cls(label.strip().upper().replace("\u2212", "-"))
        except ValueError:
            raise ValueError(f"unknown input state {label!r}; use one of "
                             f"{', '.join(s.value for s in cls)}") from None


ALL_STATES = tuple(InputState)


def _rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _mul(x1: int, z1: int, p1: int, x2: int, z2: int, p2: int) -> tuple[int, int, int]:
    x, z = x1 ^ x2, z1 ^ z2
    ph = (p1 + p2 + (x1 & z1).bit_count() + (x2 & z2).bit_count()
          + 2 * (z1 & x2).bit_count() - (x & z).bit_count()) % 4
    return x, z, ph


def _anti(x1: int, z1: int, x2: int, z2: int) -> int:
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1


class Tableau:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"need at least one qubit, got {n}")
        self.n = n
        self.xs = [1 << i for i in range(n)] + [0] * n
        self.zs = [0] * n + [1 << i for i in range(n)]
        self.rs = [0] * (2 * n)

    def copy(self) -> "Tableau":
        t = Tableau.__new__(Tableau)
        t.n, t.xs, t.zs, t.rs = self.n, list(self.xs), list(self.zs), list(self.rs)
        return t

    def _q(self, *qs: int) -> None:
        for q in qs:
            if not 0 <= q < self.n:
                raise ValueError(f"qubit {q} out of range for {self.n} qubits")
        if len(set(qs)) != len(qs):
            raise ValueError(f"targets must be distinct, got {qs}")

    # -- gates ----------------------------------------------------------------

    def h(self, q: int) -> "Tableau":
        self._q(q)
        bit = 1 << q
        xs, zs, rs = self.xs, self.zs, self.rs
        for i in range(2 * self.n):
            xb, zb = xs[i] & bit, zs[i] & bit
            if xb and zb:
                rs[i] ^= 2
            if bool(xb) != bool(zb):
                xs[i] ^= bit
                zs[i] ^= bit
        return self

    def s(self, q: int) -> "Tableau":
        self._q(q)
        bit = 1 << q
        xs, zs, rs = self.xs, self.zs, self.rs
        for i in range(2 * self.n):
            if xs[i] & bit:
                if zs[i] & bit:
                    rs[i] ^= 2
                zs[i] ^= bit
        return self

    def cnot(self, c: int, t: int) -> "Tableau":
        self._q(c, t)
        cb, tb = 1 << c, 1 << t
        xs, zs, rs = self.xs, self.zs, self.rs
        for i in range(2 * self.n):
            xc, zt = bool(xs[i] & cb), bool(zs[i] & tb)
            if xc and zt and (bool(xs[i] & tb) == bool(zs[i] & cb)):
                rs[i] ^= 2
            if xc:
                xs[i] ^= tb
            if zt:
                zs[i] ^= cb
        return self

    def cz(self, a: int, b: int) -> "Tableau":
        return self.h(b).cnot(a, b).h(b)

    def x(self, q: int) -> "Tableau":
        return self.apply_pauli(PauliOperator.single(self.n, q, "X"))

    def y(self, q: int) -> "Tableau":
        return self.apply_pauli(PauliOperator.single(self.n, q, "Y"))

    def z(self, q: int) -> "Tableau":
        return self.apply_pauli(PauliOperator.single(self.n, q, "Z"))

    def apply_pauli(self, p: PauliOperator) -> "Tableau":
        """Conjugate by ``p``: flips the sign of every row it anticommutes with."""
        self._n_match(p)
        for i in range(2 * self.n):
            if _anti(self.xs[i], self.zs[i], p.x, p.z):
                self.rs[i] ^= 2
        return self

    def _n_match(self, p: PauliOperator) -> None:
        if p.n != self.n:
            raise ValueError(f"operator on {p.n} qubits applied to {self.n}-qubit tableau")

    # -- measurement ----------------------------------------------------------

    def _stab_product(self, p: PauliOperator) -> tuple[int, int, int]:
        n = self.n
        acc = (0, 0, 0)
        for i in range(n):
            if _anti(self.xs[i], self.zs[i], p.x, p.z):
                acc = _mul(*acc, self.xs[n + i], self.zs[n + i], self.rs[n + i])
        return acc

    def expectation(self, p: PauliOperator) -> int:
        """+1 or -1 if ``p`` (with its sign) has a definite value, else 0.  Does not disturb."""
        self._n_match(p)
        if not p.is_hermitian():
            raise ValueError("only Hermitian Paulis are observables")
        n = self.n
        for i in range(n, 2 * n):
            if _anti(self.xs[i], self.zs[i], p.x, p.z):
                return 0
        x, z, ph = self._stab_product(p)
        assert (x, z) == (p.x, p.z)
        return 1 if ph == p.phase else -1

    def measure(self, p: PauliOperator, rng=None) -> tuple[int, bool]:
        """Projectively measure ``p``.  Returns ``(outcome, deterministic)``."""
        self._n_match(p)
        if not p.is_hermitian():
            raise ValueError("only Hermitian Paulis are observables")
        n = self.n
        xs, zs, rs = self.xs, self.zs, self.rs
        pivot = next((i for i in range(n, 2 * n) if _anti(xs[i], zs[i], p.x, p.z)), None)
        if pivot is None:
            return self.expectation(p), True
        for i in range(2 * n):
            if i != pivot and _anti(xs[i], zs[i], p.x, p.z):
                xs[i], zs[i], rs[i] = _mul(xs[i], zs[i], rs[i], xs[pivot], zs[pivot], rs[pivot])
        d = pivot - n
        xs[d], zs[d], rs[d] = xs[pivot], zs[pivot], rs[pivot]
        outcome = 1 if _rng(rng).integers(2) == 0 else -1
        xs[pivot], zs[pivot] = p.x, p.z
        rs[pivot] = p.phase if outcome == 1 else p.phase ^ 2
        return outcome, False

    # -- inspection -----------------------------------------------------------

    def stabilizers(self) -> list[PauliOperator]:
        n = self.n
        return [PauliOperator(n, self.xs[i], self.zs[i], self.rs[i]) for i in range(n, 2 * n)]

    def destabilizers(self) -> list[PauliOperator]:
        n = self.n
        return [PauliOperator(n, self.xs[i], self.zs[i], self.rs[i]) for i in range(n)]

    def check(self) -> None:
        """Raise if the rows are not a symplectic basis with Hermitian stabilizers."""
        n = self.n
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                want = 1 if j - i == n and i < n else 0
                if _anti(self.xs[i], self.zs[i], self.xs[j], self.zs[j]) != want:
                    raise SimulationError(f"rows {i} and {j} break the symplectic structure")
        for i in range(n, 2 * n):
            if self.rs[i] % 2:
                raise SimulationError(f"stabilizer row {i - n} is not Hermitian")

    def __str__(self) -> str:
        return "\n".join(str(s) for s in self.stabilizers())


# -- module-level operations ----------------------------------------------------

_PREP = {
    InputState.Z_PLUS: (), InputState.Z_MINUS: ("x",),
    InputState.X_PLUS: ("h",), InputState.X_MINUS: ("x", "h"),
    InputState.Y_PLUS: ("h", "s"), InputState.Y_MINUS: ("x", "h", "s"),
}


def new_tableau(n: int, init: "Sequence[str | InputState] | str | InputState | None" = None) -> Tableau:
    """Product state; ``init`` gives one Pauli eigenstate per qubit (default all Z+)."""
    t = Tableau(n)
    if init is None:
        return t
    if isinstance(init, (str, InputState)):
        init = [init] * n
    if len(init) != n:
        raise ValueError(f"{len(init)} initial states for {n} qubits")
    for q, label in enumerate(init):
        prepare(t, q, label)
    return t


def prepare(t: Tableau, q: int, label: "str | InputState") -> Tableau:
    """Rotate a fresh qubit ``q`` from |0> into the eigenstate ``label``."""
    for gate in _PREP[InputState.parse(label)]:
        getattr(t, gate)(q)
    return t


GATES = {"H": 1, "S": 1, "X": 1, "Y": 1, "Z": 1, "CNOT": 2, "CZ": 2}


def apply_gate(t: Tableau, gate: str, *targets: int) -> Tableau:
    gate = gate.upper()
    if gate not in GATES:
        raise ValueError(f"unsupported gate {gate!r}")
    if len(targets) != GATES[gate]:
        raise ValueError(f"{gate} takes {GATES[gate]} target(s), got {len(targets)}")
    return getattr(t, gate.lower())(*targets)


def measure_pauli(t: Tableau, p: PauliOperator, rng=None) -> tuple[int, bool]:
    return t.measure(p, rng)


def single(t: Tableau, q: int, kind: str) -> PauliOperator:
    return PauliOperator.single(t.n, q, kind)


def payload_observable(t: Tableau, q: int, state: "str | InputState") -> PauliOperator:
    """The signed single-qubit Pauli whose +1 eigenstate is ``state``."""
    state = InputState.parse(state)
    p = single(t, q, state.axis)
    return p if state.sign == 1 else p.negated()


def is_fresh(t: Tableau, q: int) -> bool:
    return t.expectation(single(t, q, "Z")) == 1


def _require_fresh(t: Tableau, qubits: Iterable[int]) -> None:
    stale = [q for q in qubits if not is_fresh(t, q)]
    if stale:
        raise NotFresh(f"qubits {stale} are not in |0>")


def bell_pair(t: Tableau, q1: int, q2: int) -> Tableau:
    """Turn two fresh qubits into the Bell state stabilized by +XX and +ZZ."""
    _require_fresh(t, (q1, q2))
    return t.h(q1).cnot(q1, q2)


def holds_bell_pair(t: Tableau, a: int, b: int) -> bool:
    xx = PauliOperator.from_sparse(t.n, [(a, "X"), (b, "X")])
    zz = PauliOperator.from_sparse(t.n, [(a, "Z"), (b, "Z")])
    return t.expectation(xx) == 1 and t.expectation(zz) == 1


def teleport(t: Tableau, source: int, half_a: int, half_b: int, rng=None) -> tuple[int, int]:
    """Bell-measure ``(source, half_a)``.

    Returns ``(x_bit, z_bit)``; applying ``X^x_bit Z^z_bit`` to ``half_b``
    (see :func:`correct`) leaves it in the source's former state.
    """
    if not holds_bell_pair(t, half_a, half_b):
        raise TeleportError(f"qubits {half_a} and {half_b} do not share a Bell pair")
    rng = _rng(rng)
    t.cnot(source, half_a).h(source)
    m_source, _ = t.measure(single(t, source, "Z"), rng)
    m_half, _ = t.measure(single(t, half_a, "Z"), rng)
    return int(m_half == -1), int(m_source == -1)


def correct(t: Tableau, q: int, bits: tuple[int, int]) -> Tableau:
    x_bit, z_bit = bits
    if x_bit:
        t.x(q)
    if z_bit:
        t.z(q)
    return t


def _signed_dual(gens: list[PauliOperator]) -> list[PauliOperator]:
    """Paulis ``D_k`` anticommuting with ``gens[k]`` and commuting with every other generator."""
    n = gens[0].n
    rows = [(g.z << n) | g.x for g in gens]
    duals = gf2.dual_vectors(rows)
    full = (1 << n) - 1
    return [PauliOperator(n, d >> n, d & full) for d in duals]


def prepare_stabilizer_state(t: Tableau, gens: list[PauliOperator], rng=None) -> Tableau:
    """Project onto the +1 eigenspace of independent commuting ``gens`` by measuring
    each and undoing -1 outcomes with its dual Pauli."""
    rng = _rng(rng)
    fixes = _signed_dual(gens)
    for g, fix in zip(gens, fixes):
        outcome, _ = t.measure(g, rng)
        if outcome == -1:
            t.apply_pauli(fix)
    return t


def encode_logical(t: Tableau, code: StabilizerCode, payload: int,
                   block: Sequence[int], ancilla: int, rng=None) -> Tableau:
    """Teleport the payload qubit into ``block`` at the logical level.

    The block and ``ancilla`` are first projected onto the state stabilized by
    the code stabilizers, ``X_anc Lx`` and ``Z_anc Lz`` (a logical Bell pair).
    A Bell measurement of (payload, ancilla) followed by the logical Pauli
    correction leaves the payload encoded.
    """
    block = list(block)
    if len(block) != code.num_qubits:
        raise SizeMismatch(f"block of {len(block)} qubits for a {code.num_qubits}-qubit code")
    if payload in block or ancilla in block or payload == ancilla:
        raise ValueError("payload, ancilla and block must be disjoint")
    _require_fresh(t, block + [ancilla])
    rng = _rng(rng)
    n = t.n
    lx = code.logical_x.embed(n, block)
    lz = code.logical_z.embed(n, block)
    gens = [g.embed(n, block) for g in code.generators]
    gens += [single(t, ancilla, "X") * lx, single(t, ancilla, "Z") * lz]
    prepare_stabilizer_state(t, gens, rng)

    xx = PauliOperator.from_sparse(n, [(payload, "X"), (ancilla, "X")])
    zz = PauliOperator.from_sparse(n, [(payload, "Z"), (ancilla, "Z")])
    mx, _ = t.measure(xx, rng)
    mz, _ = t.measure(zz, rng)
    if mz == -1:
        t.apply_pauli(lx)
    if mx == -1:
        t.apply_pauli(lz)
    return t


def decode_erasure(t: Tableau, code: StabilizerCode, kept: Iterable[int],
                   block: Sequence[int], output: int, rng=None) -> Tableau:
    """Move the logical qubit into the fresh ``output`` qubit using only ``kept`` code positions.

    Logical X and Z are first cleaned off the erased positions (multiplying by
    stabilizers).  A one-bit teleportation then transfers the state: measure
    ``Z_out Lz'`` with ``out`` in |+>, fix with X, measure ``Lx'``, fix with Z.
    """
    block = list(block)
    kept = set(kept)
    if len(block) != code.num_qubits:
        raise SizeMismatch(f"block of {len(block)} qubits for a {code.num_qubits}-qubit code")
    erased = set(range(code.num_qubits)) - kept
    if not erasure_correctable(code, erased):
        raise NotCorrectable(f"positions {sorted(kept)} do not determine the logical qubit")
    if output in block:
        raise ValueError("output qubit must lie outside the code block")
    _require_fresh(t, [output])
    rng = _rng(rng)
    n = t.n
    lx = cleaned_logical(code, code.logical_x, erased).embed(n, block)
    lz = cleaned_logical(code, code.logical_z, erased).embed(n, block)
    t.h(output)
    m1, _ = t.measure(single(t, output, "Z") * lz, rng)
    if m1 == -1:
        t.x(output)
    m2, _ = t.measure(lx, rng)
    if m2 == -1:
        t.z(output)
    return t


def logical_expectation(t: Tableau, code: StabilizerCode, block: Sequence[int], kind: str) -> int:
    return t.expectation(code.logical(kind).embed(t.n, list(block)))
