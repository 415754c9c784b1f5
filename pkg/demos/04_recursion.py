"""Threshold sharing, recursively.

A share for k diamonds is split by a ((k-1, k)) threshold scheme until only
pairs remain.  Leaves grow as n!/2 while the graph code needs n(n-1) qubits.
"""

from math import factorial

from summoning.feasibility import SummoningTask
from summoning.geometry import MetricConfig, SpacetimePoint
from summoning.protocol import plan_recursive

P = SpacetimePoint.of


def stacked(n):
    pairs = [(P(0, j, 0), P(10, j, 0)) for j in range(n)]
    return SummoningTask(MetricConfig(2), P(-10, 0, 0), pairs)


print(" n  leaves  n!/2  code qubits")
for n in range(2, 8):
    plan = plan_recursive(stacked(n))
    print(f"{n:2d}  {plan.leaf_count:6d}  {factorial(n) // 2:4d}  {n * (n - 1):11d}")

plan = plan_recursive(stacked(4))
print("\nshares reaching z_0 at each split:")
for check in plan.checks:
    if check.call == 0:
        print(f"  {check.share_id:8s} {check.reached} of {check.size}")
