"""The doubled-graph CWS code and exact erasure-correctability checks.

Qubits live on the edges of G', the graph obtained from the undirected causal
graph by placing a new vertex on every edge.  The qubit ``(v, {v, w})`` is the
half of share ``{v, w}`` attached to diamond ``v``.  Generators are
``S_e = X_e * prod_{f ~ e} Z_f`` over edges ``f`` of G' sharing a vertex with
``e``; the code space is spanned by the all-(+1) and all-(-1) eigenstates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import gf2
from .feasibility import CausalGraph
from .pauli import PauliOperator, symplectic


class CodeError(ValueError):
    pass


class DependentGenerators(CodeError):
    """The stabilizer rank is not N - 1, so the code is not one logical qubit."""


class NotCorrectable(CodeError):
    """A logical operator is supported on the erased qubits."""


@dataclass(frozen=True)
class DoubledGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    qubits: tuple[tuple[int, tuple[int, int]], ...]
    neighbors: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def index(self, v: int, edge: tuple[int, int]) -> int:
        return self.qubits.index((v, tuple(sorted(edge))))

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(gf2.mask(row) for row in self.neighbors)

    def share_of(self, q: int) -> tuple[int, int]:
        return self.qubits[q][1]

    def share_qubits(self, edge: tuple[int, int]) -> tuple[int, int]:
        k = self.edges.index(tuple(sorted(edge)))
        return 2 * k, 2 * k + 1

    @classmethod
    def complete(cls, n: int) -> "DoubledGraph":
        return double_graph(CausalGraph.complete(n))


def double_graph(g: CausalGraph | tuple[int, Iterable[tuple[int, int]]]) -> DoubledGraph:
    """Subdivide every edge of the undirected support of ``g``.

    Accepts a :class:`CausalGraph` or a plain ``(n, undirected_edges)`` pair.
    Qubits are indexed by edge (sorted) then endpoint: share ``k = {a, b}``
    with ``a < b`` owns qubits ``2k`` (at ``a``) and ``2k + 1`` (at ``b``).
    """
    if isinstance(g, CausalGraph):
        n, edges = g.n, g.undirected_edges()
    else:
        n, raw = g
        edges = sorted({tuple(sorted(e)) for e in raw})
        if any(a == b or not (0 <= a < n and 0 <= b < n) for a, b in edges):
            raise CodeError("edges must join two distinct vertices in range")
    if not edges:
        raise CodeError("the graph has no edges")
    qubits = []
    at_vertex: list[list[int]] = [[] for _ in range(n)]
    for k, (a, b) in enumerate(edges):
        qubits += [(a, (a, b)), (b, (a, b))]
        at_vertex[a].append(2 * k)
        at_vertex[b].append(2 * k + 1)
    neighbors = []
    for q, (v, _) in enumerate(qubits):
        partner = q ^ 1
        nbrs = sorted([f for f in at_vertex[v] if f != q] + [partner])
        neighbors.append(tuple(nbrs))
    return DoubledGraph(n, tuple(edges), tuple(qubits), tuple(neighbors))


def cws_generators(gp: DoubledGraph) -> list[PauliOperator]:
    N = gp.num_qubits
    return [PauliOperator(N, 1 << e, gf2.mask(gp.neighbors[e])) for e in range(N)]


@dataclass(frozen=True)
class StabilizerCode:
    num_qubits: int
    generators: tuple[PauliOperator, ...]
    logical_x: PauliOperator
    logical_z: PauliOperator
    # neighbour lists of the underlying graph state, when the code has one
    graph: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return 2 ** (self.num_qubits - len(self.generators))

    @property
    def logical_y(self) -> PauliOperator:
        # Y = i X Z
        return PauliOperator(self.num_qubits, 0, 0, 1) * self.logical_x * self.logical_z

    def logical(self, kind: str) -> PauliOperator:
        return {"X": self.logical_x, "Y": self.logical_y, "Z": self.logical_z}[kind]

    def pauli_strings(self) -> list[str]:
        return [str(g) for g in self.generators]


def _graph_form(S: Sequence[PauliOperator]) -> tuple[tuple[int, ...], ...] | None:
    """Neighbour lists if ``S[e] = X_e Z_{N(e)}`` for a symmetric, loop-free N."""
    nbrs = []
    for e, s in enumerate(S):
        if s.x != 1 << e or (s.z >> e) & 1 or s.phase:
            return None
        nbrs.append(tuple(gf2.bits(s.z)))
    sets = [set(row) for row in nbrs]
    for e, row in enumerate(nbrs):
        for f in row:
            if e not in sets[f]:
                return None
    return tuple(nbrs)


def code_from_generators(S: Sequence[PauliOperator]) -> StabilizerCode:
    """Stabilizer presentation of the two-codeword CWS code generated by ``S``.

    The stabilizer is the group of even products of the ``S_e``, generated by
    ``S_0 * S_e``.  ``S_0`` is logical X and the all-Z operator is logical Z:
    it anticommutes with every ``S_e`` and so commutes with each even product.
    """
    S = list(S)
    if len(S) < 2:
        raise CodeError("need at least two graph-state generators")
    N = S[0].n
    graph = _graph_form(S)
    if graph is None:
        for a, b in combinations(S, 2):
            if not a.commutes(b):
                raise CodeError(f"generators {a} and {b} anticommute")
    gens = tuple(S[0] * s for s in S[1:])
    if gf2.rank(g.symplectic_int() for g in gens) != N - 1:
        raise DependentGenerators("stabilizer rank is not N - 1")
    lx = S[0]
    lz = PauliOperator(N, 0, (1 << N) - 1)
    if lx.commutes(lz):
        raise DependentGenerators("logical X and Z commute")
    for g in gens:
        if not (g.commutes(lx) and g.commutes(lz)):
            raise CodeError(f"logical operator fails to commute with {g}")
    return StabilizerCode(N, gens, lx, lz, graph)


def build_code(gp: DoubledGraph) -> StabilizerCode:
    return code_from_generators(cws_generators(gp))


def kept_qubits(gp: DoubledGraph, u: int) -> frozenset[int]:
    """Qubits of every share incident to diamond ``u``; what reaches ``z_u`` on a call at ``y_u``."""
    if not 0 <= u < gp.n:
        raise CodeError(f"unknown vertex {u}")
    return frozenset(q for q, (_, edge) in enumerate(gp.qubits) if u in edge)


def erased_for(gp: DoubledGraph, u: int) -> frozenset[int]:
    return frozenset(range(gp.num_qubits)) - kept_qubits(gp, u)


# -- erasure correctability ---------------------------------------------------

def erasure_correctable(code: StabilizerCode, erased: Iterable[int]) -> bool:
    """True iff no nontrivial logical operator is supported on ``erased``."""
    erased = sorted(set(erased))
    if code.graph is not None:
        return _correctable_graph(code.graph, erased)
    return erasure_correctable_symplectic(code, erased)


def erasure_correctable_symplectic(code: StabilizerCode, erased: Iterable[int]) -> bool:
    """Dimension count valid for any stabilizer code.

    Paulis on A commuting with the stabilizer form the symplectic complement
    of ``S|_A`` (dimension ``2|A| - rank S|_A``).  Stabilizers supported on A
    form the kernel of restriction to the complement B (dimension
    ``r - rank S|_B``).  The second is contained in the first; A is
    correctable exactly when they coincide.
    """
    erased = sorted(set(erased))
    N = code.num_qubits
    kept = sorted(set(range(N)) - set(erased))
    r = gf2.rank(g.symplectic_int() for g in code.generators)
    rank_a = gf2.rank(_restrict(g, erased) for g in code.generators)
    rank_b = gf2.rank(_restrict(g, kept) for g in code.generators)
    return 2 * len(erased) - rank_a == r - rank_b


def _restrict(p: PauliOperator, positions: list[int]) -> int:
    m = len(positions)
    return (gf2.compress(p.x, positions) << m) | gf2.compress(p.z, positions)


def _correctable_graph(nbrs: Sequence[Sequence[int]], erased: list[int]) -> bool:
    """Same question for a graph-state CWS code with the repetition code.

    A Pauli ``X^a Z^b`` on A induces the Z-pattern ``b + Gamma a``.  It is a
    nontrivial logical iff that pattern is all-ones, or it is zero and ``|a|``
    is odd.  With ``M = Gamma[B, A]`` this means: all-ones on B lies in the
    column space of M, or some kernel vector of M has odd weight.
    """
    N = len(nbrs)
    A = erased
    if not A:
        return True
    B = sorted(set(range(N)) - set(A))
    if not B:
        return False
    pos_a = {q: k for k, q in enumerate(A)}
    pos_b = {q: k for k, q in enumerate(B)}
    if len(B) <= len(A):
        rows = [sum(1 << pos_a[f] for f in nbrs[b] if f in pos_a) for b in B]
        base = gf2.rank(rows)
        ones_col = 1 << len(A)
        ones_in_colspace = gf2.rank(r | ones_col for r in rows) == base
        basis = gf2.XorBasis()
        for r in rows:
            basis.insert(r)
        odd_kernel = not basis.contains((1 << len(A)) - 1)
    else:
        cols = [sum(1 << pos_b[f] for f in nbrs[a] if f in pos_b) for a in A]
        basis = gf2.XorBasis(track=True)
        odd_kernel = False
        for c in cols:
            dep = basis.insert(c)
            if dep is not None and gf2.parity(dep):
                odd_kernel = True
        ones_in_colspace = basis.contains((1 << len(B)) - 1)
    return not (ones_in_colspace or odd_kernel)


def cleaned_logical(code: StabilizerCode, logical: PauliOperator,
                    erased: Iterable[int]) -> PauliOperator:
    """A Pauli off ``erased`` acting on the code space exactly like ``logical``.

    Multiplies by the stabilizer element that cancels ``logical`` on the
    erased qubits.  Generators are +1 eigenoperators with their stored phase,
    so the product keeps the sign.
    """
    erased = sorted(set(erased))
    basis = gf2.XorBasis(track=True)
    for g in code.generators:
        basis.insert(_restrict(g, erased))
    combo = basis.express(_restrict(logical, erased))
    if combo is None:
        raise NotCorrectable("logical operator cannot be moved off the erased qubits")
    out = logical
    for i in gf2.bits(combo):
        out = out * code.generators[i]
    assert not out.support & gf2.mask(erased)
    return out


# -- the combinatorial conditions ---------------------------------------------

def check_cws_conditions(gp: DoubledGraph, u: int) -> bool:
    """Counting form of the CWS error-correction conditions for vertex ``u``.

    Every correctable location is a qubit ``(v, {v, w})`` with ``u`` not in
    ``{v, w}``.  An X error there flips exactly one qubit whose share contains
    ``u`` (namely ``(v, {v, u})``) provided that count is exactly one for every
    such location: then ``err(P)`` never reaches all-Z, and a trivial
    ``err(P)`` forces an even number of X errors, which commutes with all-Z.
    """
    kept = gf2.mask(kept_qubits(gp, u))
    masks = gp.neighbor_masks
    for q, (_, edge) in enumerate(gp.qubits):
        if u in edge:
            continue
        if (masks[q] & kept).bit_count() != 1:
            return False
    return True


def err_map(gp: DoubledGraph, p: PauliOperator) -> PauliOperator:
    """Z-pattern induced by ``p``: each X at e becomes Z on e's neighbours; phases dropped."""
    N = gp.num_qubits
    if p.n != N:
        raise CodeError("operator acts on the wrong number of qubits")
    z = p.z
    for e in gf2.bits(p.x):
        z ^= gp.neighbor_masks[e]
    return PauliOperator(N, 0, z)


def correctability_table(gp: DoubledGraph, code: StabilizerCode,
                         complementary: bool = True) -> list[dict]:
    """Per-vertex verdicts from both verifiers, plus the no-cloning check."""
    rows = []
    for u in range(gp.n):
        kept = kept_qubits(gp, u)
        row = {
            "vertex": u,
            "kept_qubits": len(kept),
            "correctable": erasure_correctable(code, erased_for(gp, u)),
            "cws_conditions": check_cws_conditions(gp, u),
        }
        if complementary:
            row["complement_correctable"] = erasure_correctable(code, kept)
        rows.append(row)
    return rows


def symplectic_check_commuting(gens: Sequence[PauliOperator]) -> bool:
    return all(symplectic(a.x, a.z, b.x, b.z) == 0 for a, b in combinations(gens, 2))
