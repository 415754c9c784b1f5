"""Running protocols in the stabilizer simulator.

Each run issues at most one call, teleports and routes shares along the plan,
and checks that the revealed qubit is exactly the payload.
"""

from summoning.protocol import plan_chain, plan_cws, plan_n2, simulate, sweep
from summoning.taskfile import load_fixture

# Two diamonds whose calls lie outside the start's future: a Bell pair is
# shared in advance and the teleportation bits are broadcast from s.
task = load_fixture("fig4")
plan = plan_n2(task)
print(plan.summary())
report = simulate(plan, task, call_choice=1, payload="Y-", seed=3)
print("revealed at", report.revealed_at, "verified:", report.payload_verified)
print(report.log_lines())

# One spatial dimension: carry the payload itself through both diamonds.
task = load_fixture("fig2")
plan = plan_chain(task)
print(plan.summary(), plan.meta["waypoints"])

# The general protocol on four diamonds, every call choice and payload.
task = load_fixture("fig5a")
plan = plan_cws(task)
print("\n" + plan.summary())
reports = sweep(plan, task, seeds=range(3))
print(sum(r.ok for r in reports), "of", len(reports), "runs succeeded")
print("causality violations:", sum(len(r.audit_violations) for r in reports))
