"""The nine acceptance criteria, each at its stated tolerance and time budget.

Run alone with ``pytest tests/test_acceptance.py -v``; a one-line PASS/FAIL
summary per criterion is printed at the end of the session.
"""

import random
import time
from contextlib import contextmanager
from itertools import combinations
from math import factorial

import pytest

from oracles import brute_erasure_correctable, decide_oracle, random_task
from summoning import gf2
from summoning.cli import main
from summoning.codes import (
    DoubledGraph,
    build_code,
    check_cws_conditions,
    erased_for,
    erasure_correctable,
    erasure_correctable_symplectic,
    kept_qubits,
)
from summoning.feasibility import Cond1, Cond2, MetricConfig, SummoningTask, decide
from summoning.geometry import SpacetimePoint
from summoning.protocol import (
    STRATEGIES,
    PlanError,
    compile_plan,
    plan_cws,
    plan_n2,
    plan_recursive,
    sweep,
)
from summoning.stabsim import ALL_STATES

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(num: int, title: str):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        RESULTS[num] = f"[FAIL] {num}. {title} ({time.perf_counter() - started:.2f} s)"
        raise
    RESULTS[num] = f"[PASS] {num}. {title} ({time.perf_counter() - started:.2f} s)"


def timed(fn, *args):
    started = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - started


def test_1_decider_on_fixtures(fixtures):
    with criterion(1, "decider verdicts on the six fixtures, < 1 ms each"):
        expected = {"fig1": False, "fig2": True, "fig3": True, "fig4": True, "fig5a": True,
                    "triangle": True}
        assert sorted(fixtures) == sorted(expected)
        for name, feasible in expected.items():
            decide(fixtures[name])  # warm caches before timing
            verdict, seconds = timed(decide, fixtures[name])
            assert verdict.feasible == feasible, name
            assert seconds < 1e-3, f"{name}: {seconds * 1e3:.3f} ms"
        assert decide(fixtures["fig1"]).violation == Cond2(0, 1)


def test_2_code_construction():
    with criterion(2, "n(n-1) qubits and code dimension 2 for n = 2..8, < 1 s"):
        started = time.perf_counter()
        for n in range(2, 9):
            code = build_code(DoubledGraph.complete(n))
            assert code.num_qubits == n * (n - 1)
            rank = gf2.rank(g.symplectic_int() for g in code.generators)
            assert code.num_qubits - rank == 1  # one logical qubit: dimension 2
            assert code.dimension == 2
        assert time.perf_counter() - started < 1


def test_3_erasure_correctability():
    with criterion(3, "kept sets recoverable, complements not, verifiers agree, n = 2..8"):
        for n in range(2, 9):
            gp = DoubledGraph.complete(n)
            code = build_code(gp)
            for u in range(n):
                erased, kept = erased_for(gp, u), kept_qubits(gp, u)
                assert erasure_correctable(code, erased)
                assert not erasure_correctable(code, kept)
                assert erasure_correctable_symplectic(code, erased)
                assert not erasure_correctable_symplectic(code, kept)
                assert check_cws_conditions(gp, u)


def test_4_brute_force_equivalence():
    with criterion(4, "verifier equals Pauli enumeration, n = 2, 3, |E| <= 4, < 10 s"):
        started = time.perf_counter()
        checked = 0
        for n in (2, 3):
            code = build_code(DoubledGraph.complete(n))
            gens = [(g.x, g.z) for g in code.generators]
            N = code.num_qubits
            for k in range(min(4, N) + 1):
                for erased in combinations(range(N), k):
                    assert erasure_correctable(code, erased) == \
                        brute_erasure_correctable(N, gens, erased), erased
                    checked += 1
        assert checked == 4 + 57
        assert time.perf_counter() - started < 10


def test_5_end_to_end(fixtures):
    with criterion(5, "every feasible fixture x call choice x payload x 10 seeds, < 30 s"):
        started = time.perf_counter()
        runs = 0
        for name in ("fig2", "fig3", "fig4", "fig5a", "triangle"):
            task = fixtures[name]
            for r in sweep(plan_cws(task), task, seeds=range(10)):
                runs += 1
                assert r.ok, (name, r.call_choice, r.payload, r.seed)
                assert not r.audit_violations
                if r.call_choice is not None:
                    assert r.revealed_at == task.reveals[r.call_choice]
        assert runs == 10 * len(ALL_STATES) * (3 + 4 + 3 + 5 + 4)
        assert time.perf_counter() - started < 30


def test_6_two_diamond_teleportation(fixtures):
    with criterion(6, "n = 2 protocol on the teleportation fixture, calls spacelike to s"):
        task = fixtures["fig4"]
        assert all(not task.precedes(task.start, y) for y in task.calls)
        plan = plan_n2(task)
        assert plan.bell_pairs
        for r in sweep(plan, task, seeds=range(10)):
            assert r.ok
            kinds = [e.kind for e in r.message_log]
            assert "preshared" in kinds and "classical" in kinds


def test_7_recursive_construction():
    with criterion(7, "n!/2 leaf shares and n-1 of n shares per level, n = 2..7"):
        for n in range(2, 8):
            pairs = [(SpacetimePoint.of(0, j, 0), SpacetimePoint.of(10, j, 0)) for j in range(n)]
            task = SummoningTask(MetricConfig(2), SpacetimePoint.of(-10, 0, 0), pairs)
            plan = plan_recursive(task)
            assert plan.leaf_count == factorial(n) // 2
            assert all(c.reached == c.size - 1 for c in plan.checks)
            assert len({c.call for c in plan.checks}) == (n if n > 2 else 0)


def test_8_randomized_soundness():
    with criterion(8, ">= 1000 random tasks match the oracle; infeasible ones never compile"):
        rnd = random.Random(20240601)
        total = infeasible = 0
        for dim in (1, 2):
            for _ in range(600):
                task = random_task(rnd, dim, rnd.randint(1, 4))
                verdict = decide(task)
                feasible, witness = decide_oracle(task)
                assert verdict.feasible == feasible
                if witness:
                    expect = Cond1(witness[1]) if witness[0] == "cond1" else Cond2(*witness[1:])
                    assert verdict.violation == expect
                if not feasible:
                    infeasible += 1
                    for strategy in STRATEGIES:
                        with pytest.raises(PlanError):
                            compile_plan(task, strategy)
                total += 1
        assert total >= 1000 and 0 < infeasible < total


def test_9_performance_gate(capsys):
    with criterion(9, "code -n 100 (9900 qubits) with all 100 checks, < 30 s"):
        code, seconds = timed(main, ["code", "-n", "100"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("9900 qubits, code dimension 2, 100/100 kept-sets correctable")
        assert seconds < 30


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
