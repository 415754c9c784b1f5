import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import H, S, cnot, cz, dense, single_gate, zero_state
from summoning import stabsim
from summoning.codes import DoubledGraph, build_code, erased_for, kept_qubits
from summoning.pauli import PauliOperator
from summoning.stabsim import (
    ALL_STATES,
    InputState,
    NotFresh,
    SizeMismatch,
    TeleportError,
    new_tableau,
)
from summoning.codes import NotCorrectable

PS = PauliOperator.from_string


def stab_strings(t):
    return [str(p) for p in t.stabilizers()]


# -- preparation --------------------------------------------------------------

def test_single_z_plus():
    assert stab_strings(new_tableau(1, ["Z+"])) == ["+Z"]


def test_product_state():
    assert stab_strings(new_tableau(2, ["X+", "Z-"])) == ["+XI", "-IZ"]


def test_y_minus():
    assert stab_strings(new_tableau(1, ["Y-"])) == ["-Y"]


def test_unicode_minus_accepted():
    assert InputState.parse("X−") is InputState.X_MINUS
    with pytest.raises(ValueError):
        InputState.parse("W+")


@pytest.mark.parametrize("state", ALL_STATES)
def test_prepared_states_match_dense(state):
    t = new_tableau(1, [state])
    psi = zero_state(1)
    for gate in stabsim._PREP[state]:
        psi = {"h": H, "s": S, "x": dense("X")}[gate] @ psi
    obs = stabsim.payload_observable(t, 0, state)
    assert t.expectation(obs) == 1
    assert np.allclose(dense(str(obs)) @ psi, psi)


# -- gates --------------------------------------------------------------------

def test_hadamard():
    t = new_tableau(1)
    stabsim.apply_gate(t, "H", 0)
    assert stab_strings(t) == ["+X"]


def test_cnot_spreads_x():
    t = new_tableau(2, ["X+", "Z+"])
    stabsim.apply_gate(t, "CNOT", 0, 1)
    assert t.expectation(PS("XX")) == 1 and t.expectation(PS("ZZ")) == 1


@given(st.lists(st.tuples(st.sampled_from(["H", "S", "CNOT", "CZ", "X", "Y", "Z"]),
                          st.integers(0, 2), st.integers(0, 2)), max_size=12))
def test_cz_twice_is_identity(ops):
    t = new_tableau(3)
    for g, a, b in ops:
        if stabsim.GATES[g] == 2 and a == b:
            continue
        stabsim.apply_gate(t, g, *([a, b][:stabsim.GATES[g]]))
    before = (list(t.xs), list(t.zs), list(t.rs))
    t.cz(0, 2).cz(0, 2)
    assert (t.xs, t.zs, t.rs) == before


def test_bad_targets():
    t = new_tableau(2)
    with pytest.raises(ValueError):
        stabsim.apply_gate(t, "CNOT", 1, 1)
    with pytest.raises(ValueError):
        stabsim.apply_gate(t, "H", 2)
    with pytest.raises(ValueError):
        stabsim.apply_gate(t, "T", 0)


GATE_MATS = {
    "H": lambda n, a, b: single_gate(n, a, H),
    "S": lambda n, a, b: single_gate(n, a, S),
    "X": lambda n, a, b: single_gate(n, a, dense("X")),
    "Y": lambda n, a, b: single_gate(n, a, dense("Y")),
    "Z": lambda n, a, b: single_gate(n, a, dense("Z")),
    "CNOT": lambda n, a, b: cnot(n, a, b),
    "CZ": lambda n, a, b: cz(n, a, b),
}


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.sampled_from(sorted(GATE_MATS)), st.integers(0, n - 1),
                       st.integers(0, n - 1)), max_size=15))))
def test_circuits_match_state_vector(data):
    n, ops = data
    t = new_tableau(n)
    psi = zero_state(n)
    for g, a, b in ops:
        if stabsim.GATES[g] == 2 and a == b:
            continue
        stabsim.apply_gate(t, g, *([a, b][:stabsim.GATES[g]]))
        psi = GATE_MATS[g](n, a, b) @ psi
    t.check()
    for p in t.stabilizers():
        assert np.allclose(dense(str(p)) @ psi, psi)


# -- measurement --------------------------------------------------------------

def test_deterministic_measurement():
    t = new_tableau(1)
    assert stabsim.measure_pauli(t, PS("Z"), 0) == (1, True)


def test_random_measurement_collapses():
    outcomes = set()
    for seed in range(20):
        t = new_tableau(1)
        out, det = stabsim.measure_pauli(t, PS("X"), seed)
        assert not det
        assert stab_strings(t) == ["+X" if out == 1 else "-X"]
        outcomes.add(out)
    assert outcomes == {1, -1}


def test_bell_zz_deterministic():
    t = stabsim.bell_pair(new_tableau(2), 0, 1)
    assert stabsim.measure_pauli(t, PS("ZZ"), 0) == (1, True)
    assert stabsim.measure_pauli(t, PS("XX"), 0) == (1, True)


def test_bell_halves_agree():
    for seed in range(10):
        t = stabsim.bell_pair(new_tableau(2), 0, 1)
        rng = np.random.default_rng(seed)
        a, _ = t.measure(PS("ZI"), rng)
        b, det = t.measure(PS("IZ"), rng)
        assert a == b and det


def test_bell_pair_needs_fresh_qubits():
    t = new_tableau(2, ["X+", "Z+"])
    with pytest.raises(NotFresh):
        stabsim.bell_pair(t, 0, 1)


def test_expectation_does_not_disturb():
    t = new_tableau(2, ["X+", "Z+"])
    before = (list(t.xs), list(t.zs), list(t.rs))
    assert t.expectation(PS("ZI")) == 0
    assert (t.xs, t.zs, t.rs) == before


def test_same_seed_same_run():
    def run(seed):
        t = new_tableau(4)
        rng = np.random.default_rng(seed)
        outs = []
        for q in range(4):
            t.h(q)
        t.cnot(0, 1).cnot(2, 3)
        for label in ["ZIII", "IXXI", "ZZZZ", "IIYY"]:
            outs.append(t.measure(PS(label), rng)[0])
        return outs, (t.xs, t.zs, t.rs)

    assert run(5) == run(5)


# -- teleportation ------------------------------------------------------------

@pytest.mark.parametrize("state", ALL_STATES)
@pytest.mark.parametrize("seed", range(8))
def test_teleport_every_state(state, seed):
    t = new_tableau(3, [state, "Z+", "Z+"])
    stabsim.bell_pair(t, 1, 2)
    bits = stabsim.teleport(t, 0, 1, 2, seed)
    stabsim.correct(t, 2, bits)
    t.check()
    assert t.expectation(stabsim.payload_observable(t, 2, state)) == 1


def test_teleport_all_four_branches_occur():
    seen = set()
    for seed in range(40):
        t = new_tableau(3, ["Y+", "Z+", "Z+"])
        stabsim.bell_pair(t, 1, 2)
        seen.add(stabsim.teleport(t, 0, 1, 2, seed))
    assert seen == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_teleport_without_bell_pair():
    with pytest.raises(TeleportError):
        stabsim.teleport(new_tableau(3), 0, 1, 2, 0)


# -- encode / decode ----------------------------------------------------------

def _encoded(n, state, seed):
    code = build_code(DoubledGraph.complete(n))
    N = code.num_qubits
    t = new_tableau(N + 3)
    stabsim.prepare(t, 0, state)
    block = list(range(2, N + 2))
    rng = np.random.default_rng(seed)
    stabsim.encode_logical(t, code, 0, block, 1, rng)
    return t, code, block, rng


@pytest.mark.parametrize("state", ALL_STATES)
@pytest.mark.parametrize("n", [2, 3])
def test_encode_sets_logical_expectations(n, state):
    t, code, block, _ = _encoded(n, state, 1)
    t.check()
    expected = {k: (state.sign if state.axis == k else 0) for k in "XYZ"}
    for kind in "XYZ":
        assert stabsim.logical_expectation(t, code, block, kind) == expected[kind]
    for g in code.generators:
        assert t.expectation(g.embed(t.n, block)) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_decode_inverts_encode(n):
    gp = DoubledGraph.complete(n)
    for state in ALL_STATES:
        for u in range(n):
            t, code, block, rng = _encoded(n, state, 10 * n + u)
            out = t.n - 1
            stabsim.decode_erasure(t, code, kept_qubits(gp, u), block, out, rng)
            assert t.expectation(stabsim.payload_observable(t, out, state)) == 1


def test_decode_touches_only_kept_qubits():
    gp = DoubledGraph.complete(3)
    t, code, block, rng = _encoded(3, InputState.Y_PLUS, 4)
    erased = [block[q] for q in erased_for(gp, 0)]
    # scramble the erased positions; decoding must not care
    for q in erased:
        t.h(q)
        t.s(q)
    out = t.n - 1
    stabsim.decode_erasure(t, code, kept_qubits(gp, 0), block, out, rng)
    assert t.expectation(stabsim.payload_observable(t, out, "Y+")) == 1


def test_decode_complement_is_refused():
    gp = DoubledGraph.complete(3)
    t, code, block, rng = _encoded(3, InputState.Z_PLUS, 0)
    with pytest.raises(NotCorrectable):
        stabsim.decode_erasure(t, code, erased_for(gp, 0), block, t.n - 1, rng)


def test_encode_preconditions():
    code = build_code(DoubledGraph.complete(2))
    t = new_tableau(5)
    with pytest.raises(SizeMismatch):
        stabsim.encode_logical(t, code, 0, [2, 3, 4], 1)
    t.h(3)
    with pytest.raises(NotFresh):
        stabsim.encode_logical(t, code, 0, [2, 3], 1)


def test_two_qubit_code_full_recovery():
    t, code, block, rng = _encoded(2, InputState.Y_PLUS, 3)
    stabsim.decode_erasure(t, code, {0, 1}, block, t.n - 1, rng)
    assert t.expectation(stabsim.payload_observable(t, t.n - 1, "Y+")) == 1
