"""The graph code behind the general protocol.

Each edge {a, b} of the causal graph becomes two qubits, one at a and one at
b.  The code holds one logical qubit, and the qubits at any single vertex
recover it while every other set of the same shape does not.
"""

from summoning.codes import (
    DoubledGraph,
    build_code,
    correctability_table,
    cws_generators,
    erasure_correctable,
    erased_for,
    kept_qubits,
)

# Two diamonds: the graph state on two qubits and the resulting code.
gp = DoubledGraph.complete(2)
print("graph state:", [g.label() for g in cws_generators(gp)])
code = build_code(gp)
print("code:", code.pauli_strings(), " logical X:", code.logical_x, " logical Z:", code.logical_z)

# Three diamonds, six qubits.
gp = DoubledGraph.complete(3)
code = build_code(gp)
print("\nqubits per vertex:", {u: sorted(kept_qubits(gp, u)) for u in range(3)})
for row in correctability_table(gp, code):
    print(row)

# Erasing what vertex 0 keeps destroys the logical information.
print("\nerase the complement of vertex 0:", erasure_correctable(code, erased_for(gp, 0)))
print("erase vertex 0's own qubits:   ", erasure_correctable(code, kept_qubits(gp, 0)))

# The count grows as n(n-1).
for n in range(2, 9):
    print(n, DoubledGraph.complete(n).num_qubits)
