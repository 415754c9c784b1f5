"""Deciding which summoning tasks can be completed.

Every coordinate is an exact rational, so the light-cone tests never round.
"""

from summoning import build_graph, decide
from summoning.geometry import interval_class
from summoning.taskfile import fixture_names, load_fixture

# The shipped tasks: one is infeasible, the rest can be completed.
for name in fixture_names():
    task = load_fixture(name)
    print(f"{name:9s} n={task.n}  {decide(task)}")

# Two calls at spacelike-separated points whose diamonds share no causal
# relation: the witness names the offending pair.
task = load_fixture("fig1")
y0, y1 = task.calls
print("\ny_0 precedes y_1:", task.precedes(y0, y1), " y_1 precedes y_0:", task.precedes(y1, y0))
print("witness:", decide(task).violation)

# The causal graph of the four-diamond task has an edge i -> j whenever
# y_i precedes z_j.  Feasibility needs every pair joined one way or the other.
graph = build_graph(load_fixture("fig5a"))
print("\nedges:", sorted(graph.edges()))
print("complete:", graph.is_complete())

# The lightlike boundary counts as causal: y_0 -> z_1 in the chain task is
# exactly on the light cone.
task = load_fixture("fig2")
y0, z1 = task.calls[0], task.reveals[1]
print("\ny_0 to z_1 separation:", interval_class(y0, z1, task.metric))
