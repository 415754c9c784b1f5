import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    brute_erasure_correctable,
    code_dimension_dense,
    graph_generators_by_hand,
)
from summoning import gf2
from summoning.codes import (
    CodeError,
    DependentGenerators,
    DoubledGraph,
    NotCorrectable,
    StabilizerCode,
    build_code,
    check_cws_conditions,
    cleaned_logical,
    code_from_generators,
    correctability_table,
    cws_generators,
    double_graph,
    erased_for,
    erasure_correctable,
    erasure_correctable_symplectic,
    err_map,
    kept_qubits,
)
from summoning.feasibility import CausalGraph, build_graph
from summoning.pauli import PauliOperator


def complete(n):
    gp = DoubledGraph.complete(n)
    return gp, build_code(gp)


def generic(code: StabilizerCode) -> StabilizerCode:
    """Same code with the graph shortcut stripped, forcing the generic verifier."""
    return StabilizerCode(code.num_qubits, code.generators, code.logical_x, code.logical_z)


# -- doubled graph ------------------------------------------------------------

def test_two_vertices():
    gp = DoubledGraph.complete(2)
    assert gp.edges == ((0, 1),)
    assert gp.qubits == ((0, (0, 1)), (1, (0, 1)))
    assert gp.num_qubits == 2


@pytest.mark.parametrize("n", range(2, 9))
def test_qubit_count(n):
    gp = DoubledGraph.complete(n)
    assert gp.num_qubits == n * (n - 1) == 2 * len(gp.edges)
    for v, (a, b) in gp.qubits:
        assert v in (a, b)


def test_doubling_a_causal_graph_uses_its_support(fixtures):
    gp = double_graph(build_graph(fixtures["fig5a"]))
    assert gp.num_qubits == 12


def test_empty_graph_rejected():
    with pytest.raises(CodeError):
        double_graph(CausalGraph.from_edges(3, []))


# -- generators ---------------------------------------------------------------

def test_two_vertex_generators():
    assert [g.label() for g in cws_generators(DoubledGraph.complete(2))] == ["XZ", "ZX"]


@pytest.mark.parametrize("n", range(2, 7))
def test_generators_match_definition(n):
    gp = DoubledGraph.complete(n)
    N, hand, _ = graph_generators_by_hand(n)
    assert N == gp.num_qubits
    assert [(g.x, g.z) for g in cws_generators(gp)] == hand


@pytest.mark.parametrize("n", range(2, 9))
def test_generator_shape(n):
    gens = cws_generators(DoubledGraph.complete(n))
    for e, g in enumerate(gens):
        assert g.x == 1 << e
        # the partner qubit plus the n - 2 other qubits at the same vertex
        assert g.weight == n
    assert all(a.commutes(b) for a, b in combinations(gens, 2))


# -- the code -----------------------------------------------------------------

def test_two_vertex_code():
    code = build_code(DoubledGraph.complete(2))
    assert [str(g) for g in code.generators] == ["+YY"]
    assert str(code.logical_x) == "+XZ"
    assert str(code.logical_z) == "+ZZ"
    assert not code.logical_x.commutes(code.logical_z)


@pytest.mark.parametrize("n", range(2, 9))
def test_dimension_two(n):
    _, code = complete(n)
    assert code.num_qubits == n * (n - 1)
    assert len(code.generators) == code.num_qubits - 1
    assert gf2.rank(g.symplectic_int() for g in code.generators) == code.num_qubits - 1
    assert code.dimension == 2
    for g in code.generators:
        assert g.commutes(code.logical_x) and g.commutes(code.logical_z)
        assert g.is_hermitian()


@pytest.mark.parametrize("n", [2, 3])
def test_dimension_by_projector_trace(n):
    _, code = complete(n)
    assert code_dimension_dense([str(g) for g in code.generators]) == 2


def test_logical_y():
    _, code = complete(3)
    y = code.logical_y
    assert y.is_hermitian()
    assert not y.commutes(code.logical_x) and not y.commutes(code.logical_z)


def test_dependent_generators_rejected():
    gens = [PauliOperator.from_string(s) for s in ["XZ", "ZX", "YY"]]
    with pytest.raises(CodeError):
        code_from_generators(gens)
    same = [PauliOperator.from_string(s) for s in ["XII", "XII", "IXI"]]
    with pytest.raises(DependentGenerators):
        code_from_generators(same)


# -- kept sets ----------------------------------------------------------------

def test_kept_sets():
    assert kept_qubits(DoubledGraph.complete(2), 0) == {0, 1}
    assert len(kept_qubits(DoubledGraph.complete(3), 0)) == 4
    assert len(kept_qubits(DoubledGraph.complete(4), 0)) == 6
    with pytest.raises(CodeError):
        kept_qubits(DoubledGraph.complete(3), 3)


# -- correctability -----------------------------------------------------------

def test_nothing_erased():
    _, code = complete(3)
    assert erasure_correctable(code, [])
    assert erasure_correctable_symplectic(code, [])


def test_everything_erased():
    _, code = complete(3)
    assert not erasure_correctable(code, range(6))
    assert not erasure_correctable_symplectic(code, range(6))


@pytest.mark.parametrize("n", range(2, 9))
def test_vertex_patterns(n):
    gp, code = complete(n)
    for u in range(n):
        assert erasure_correctable(code, erased_for(gp, u))
        assert not erasure_correctable(code, kept_qubits(gp, u))
        assert check_cws_conditions(gp, u)
        if n <= 6:
            assert erasure_correctable_symplectic(code, erased_for(gp, u))
            assert not erasure_correctable_symplectic(code, kept_qubits(gp, u))


@pytest.mark.parametrize("n", [2, 3])
def test_brute_force_oracle(n):
    gp, code = complete(n)
    gens = [(g.x, g.z) for g in code.generators]
    N = code.num_qubits
    for k in range(min(4, N) + 1):
        for erased in combinations(range(N), k):
            expected = brute_erasure_correctable(N, gens, erased)
            assert erasure_correctable(code, erased) == expected, erased
            assert erasure_correctable_symplectic(code, erased) == expected, erased


@given(st.integers(2, 5), st.randoms())
def test_graph_and_generic_verifiers_agree(n, rnd):
    gp, code = complete(n)
    plain = generic(code)
    N = code.num_qubits
    erased = [q for q in range(N) if rnd.random() < 0.5]
    assert erasure_correctable(code, erased) == erasure_correctable(plain, erased)


@given(st.integers(3, 5), st.randoms())
def test_vertex_relabeling_symmetry(n, rnd):
    gp, code = complete(n)
    perm = list(range(n))
    rnd.shuffle(perm)

    def image(q):
        v, (a, b) = gp.qubits[q]
        return gp.index(perm[v], (perm[a], perm[b]))

    erased = [q for q in range(code.num_qubits) if rnd.random() < 0.4]
    assert erasure_correctable(code, erased) == erasure_correctable(code, map(image, erased))


def test_missing_edge_breaks_counting_check():
    edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]  # K4 without {0, 3}
    gp = double_graph((4, edges))
    code = build_code(gp)
    assert not check_cws_conditions(gp, 0)
    assert not erasure_correctable(code, erased_for(gp, 0))
    assert check_cws_conditions(gp, 1)


def test_cleaned_logicals_avoid_erasure():
    gp, code = complete(4)
    for u in range(4):
        erased = erased_for(gp, u)
        for logical in (code.logical_x, code.logical_z):
            clean = cleaned_logical(code, logical, erased)
            assert not clean.support & gf2.mask(erased)
            assert clean.commutes(code.logical_x) == logical.commutes(code.logical_x)
        with pytest.raises(NotCorrectable):
            cleaned_logical(code, code.logical_x, kept_qubits(gp, u))


# -- err map ------------------------------------------------------------------

def test_err_map():
    gp = DoubledGraph.complete(3)
    N = gp.num_qubits
    x0 = PauliOperator.single(N, 0, "X")
    assert err_map(gp, x0) == PauliOperator(N, 0, gf2.mask(gp.neighbors[0]))
    z3 = PauliOperator.single(N, 3, "Z")
    assert err_map(gp, z3) == z3
    assert err_map(gp, x0 * x0) == PauliOperator.identity(N)


def test_table_rows(fixtures):
    gp, code = complete(4)
    rows = correctability_table(gp, code)
    assert [r["vertex"] for r in rows] == [0, 1, 2, 3]
    assert all(r["correctable"] and r["cws_conditions"] and not r["complement_correctable"]
               for r in rows)


def test_incomplete_graph_still_builds():
    gp = double_graph((3, [(0, 1), (1, 2)]))
    code = build_code(gp)
    assert code.dimension == 2
    rows = correctability_table(gp, code)
    assert len(rows) == 3


def test_random_erasures_against_oracle_small_incomplete():
    rnd = random.Random(7)
    gp = double_graph((4, [(0, 1), (1, 2), (2, 3)]))
    code = build_code(gp)
    gens = [(g.x, g.z) for g in code.generators]
    for _ in range(40):
        erased = [q for q in range(code.num_qubits) if rnd.random() < 0.5]
        assert erasure_correctable(code, erased) == brute_erasure_correctable(
            code.num_qubits, gens, erased)
