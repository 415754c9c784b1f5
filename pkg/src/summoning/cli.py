"""Command-line front end.

Exit codes:
  0  success (feasible task, plan written, every simulation run passed)
  1  unreadable or invalid input, bad usage
  2  the task is infeasible
  3  the chosen strategy or output does not apply to this task
  4  a simulation run failed or broke causality
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import codes
from .diagram import UnsupportedDimension, task_dot, task_svg
from .feasibility import Cond1, InvalidTask, SummoningTask, build_graph, decide
from .geometry import from_lightcone
from .protocol import (
    STRATEGIES,
    Infeasible,
    PlanError,
    StrategyInapplicable,
    call_choices,
    compile_plan,
    find_chain,
    simulate,
)
from .stabsim import ALL_STATES, InputState
from .taskfile import TaskFileError, load_task

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_INAPPLICABLE, EXIT_FAILED = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, code: int, message: str, where: str = ""):
        self.code, self.message, self.where = code, message, where
        super().__init__(message)


def _emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load(path: str) -> SummoningTask:
    try:
        task = load_task(path)
        build_graph(task)
    except TaskFileError as exc:
        raise _Fail(EXIT_INPUT, exc.message, exc.where) from None
    except InvalidTask as exc:
        raise _Fail(EXIT_INPUT, str(exc), path) from None
    return task


def _witness(verdict) -> dict | None:
    v = verdict.violation
    if v is None:
        return None
    if isinstance(v, Cond1):
        return {"condition": 1, "index": v.index, "message": str(v)}
    return {"condition": 2, "pair": [v.i, v.j], "message": str(v)}


# -- check --------------------------------------------------------------------

def cmd_check(args) -> int:
    task = _load(args.task)
    graph = build_graph(task)
    verdict = decide(task, graph)
    if args.json:
        _emit_json({"task": task.name, "n": task.n, "feasible": verdict.feasible,
                    "witness": _witness(verdict), "edges": [list(e) for e in graph.edges()]})
    else:
        print(f"{task.name}: {verdict}")
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


# -- plan ---------------------------------------------------------------------

def _compile(task: SummoningTask, strategy: str):
    try:
        return compile_plan(task, strategy)
    except Infeasible as exc:
        raise _Fail(EXIT_INFEASIBLE, str(exc)) from None
    except StrategyInapplicable as exc:
        raise _Fail(EXIT_INAPPLICABLE, f"strategy {strategy} does not apply: {exc}") from None


def cmd_plan(args) -> int:
    task = _load(args.task)
    plan = _compile(task, args.strategy)
    data = plan.to_dict()
    if args.output:
        Path(args.output).write_text(json.dumps(data, indent=2) + "\n")
    if args.json:
        _emit_json(data)
    else:
        print(plan.summary())
    return EXIT_OK


# -- simulate -----------------------------------------------------------------

def _parse_call(raw: str, n: int) -> int | None:
    if raw.lower() == "none":
        return None
    try:
        j = int(raw)
    except ValueError:
        raise _Fail(EXIT_INPUT, f"--call expects an index or 'none', got {raw!r}") from None
    if not 0 <= j < n:
        raise _Fail(EXIT_INPUT, f"--call {j} is out of range for {n} diamonds")
    return j


def cmd_simulate(args) -> int:
    task = _load(args.task)
    if args.strategy == "recursive":
        raise _Fail(EXIT_INAPPLICABLE, "the recursive construction is combinatorial and "
                                       "is not simulated; use cws, chain or n2")
    plan = _compile(task, args.strategy)
    seeds = range(args.seed, args.seed + args.seeds)
    if args.all:
        runs = [(c, p) for c in call_choices(task) for p in ALL_STATES]
    else:
        try:
            state = InputState.parse(args.state)
        except ValueError as exc:
            raise _Fail(EXIT_INPUT, str(exc)) from None
        runs = [(_parse_call(args.call, task.n), state)]
    reports = [simulate(plan, task, c, p, s) for c, p in runs for s in seeds]
    failed = [r for r in reports if not r.ok]
    if args.log:
        Path(args.log).write_text("".join(r.log_lines() for r in reports))
    if args.json:
        _emit_json({"task": task.name, "strategy": args.strategy,
                    "runs": [r.to_dict() for r in reports],
                    "passed": len(reports) - len(failed), "failed": len(failed)})
    else:
        for r in reports if not args.all else failed:
            call = "none" if r.call_choice is None else r.call_choice
            where = "nowhere" if r.revealed_at is None else str(r.revealed_at)
            status = "ok" if r.ok else "FAILED"
            print(f"call {call}, payload {r.payload}, seed {r.seed}: revealed {where}, {status}")
            for v in r.audit_violations:
                print(f"  audit: {v}")
        print(f"{len(reports) - len(failed)}/{len(reports)} runs passed")
    return EXIT_OK if not failed else EXIT_FAILED


# -- code ---------------------------------------------------------------------

def cmd_code(args) -> int:
    if (args.task is None) == (args.n is None):
        raise _Fail(EXIT_INPUT, "give either a task file or -n N")
    started = time.perf_counter()
    if args.n is not None:
        if args.n < 2:
            raise _Fail(EXIT_INPUT, "-n must be at least 2")
        gp = codes.DoubledGraph.complete(args.n)
    else:
        task = _load(args.task)
        try:
            gp = codes.double_graph(build_graph(task))
        except codes.CodeError as exc:
            raise _Fail(EXIT_INAPPLICABLE, str(exc)) from None
    code = codes.build_code(gp)
    table = codes.correctability_table(gp, code)
    elapsed = time.perf_counter() - started
    graph_gens = []
    if args.generators or gp.n <= 4:
        graph_gens = [g.label() for g in codes.cws_generators(gp)]
    if args.generators:
        Path(args.generators).write_text("\n".join(graph_gens) + "\n")
    report = {
        "n": gp.n,
        "edges": [list(e) for e in gp.edges],
        "num_qubits": code.num_qubits,
        "dimension": code.dimension,
        "logical_x": str(code.logical_x),
        "logical_z": str(code.logical_z),
        "table": table,
        "seconds": round(elapsed, 3),
    }
    if gp.n <= 4:
        report["graph_generators"] = graph_gens
        report["stabilizers"] = code.pauli_strings()
    if args.output:
        Path(args.output).write_text(json.dumps(report, indent=2) + "\n")
    if args.json:
        _emit_json(report)
    else:
        print(f"{code.num_qubits} qubits, code dimension {code.dimension}, "
              f"{sum(r['correctable'] for r in table)}/{gp.n} kept-sets correctable "
              f"({elapsed:.2f} s)")
        if gp.n <= 4:
            print("graph-state generators: " + " ".join(graph_gens))
            print("stabilizers: " + " ".join(code.pauli_strings()))
            print(f"logical X: {code.logical_x}  logical Z: {code.logical_z}")
        for r in table:
            print(f"  vertex {r['vertex']}: {r['kept_qubits']} kept, "
                  f"correctable={r['correctable']}, counting check={r['cws_conditions']}, "
                  f"complement correctable={r['complement_correctable']}")
    ok = all(r["correctable"] and r["cws_conditions"] for r in table)
    return EXIT_OK if ok or args.task is not None else EXIT_FAILED


# -- diagram ------------------------------------------------------------------

def _chain_points(task: SummoningTask):
    if task.metric.dim != 1:
        return None
    try:
        found = find_chain(task)
    except PlanError:
        return None
    if found is None:
        return None
    return [from_lightcone(u, v, task.metric) for u, v in found[1]]


def cmd_diagram(args) -> int:
    task = _load(args.task)
    as_dot = args.graph is not None or (args.output or "").endswith(".dot")
    try:
        if as_dot:
            text = task_dot(task, args.graph or "causal")
        else:
            text = task_svg(task, _chain_points(task))
    except UnsupportedDimension as exc:
        raise _Fail(EXIT_INAPPLICABLE, str(exc)) from None
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="summoning", description="Decide, plan and simulate quantum summoning tasks.",
                epilog="exit codes: 0 ok, 1 bad input, 2 infeasible, 3 not applicable, "
                       "4 simulation failed")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="decide feasibility")
    c.add_argument("task")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("plan", help="compile a protocol plan")
    c.add_argument("task")
    c.add_argument("--strategy", choices=STRATEGIES, default="cws")
    c.add_argument("-o", "--output")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_plan)

    c = sub.add_parser("simulate", help="run a plan in the stabilizer simulator")
    c.add_argument("task")
    c.add_argument("--strategy", choices=STRATEGIES, default="cws")
    c.add_argument("--call", default="none", help="call index or 'none'")
    c.add_argument("--state", default="Z+", help="payload: X+, X-, Y+, Y-, Z+ or Z-")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    c.add_argument("--all", action="store_true", help="every call choice and payload")
    c.add_argument("--log", help="write the message log as JSON lines")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_simulate)

    c = sub.add_parser("code", help="build the graph code and its correctability table")
    c.add_argument("task", nargs="?")
    c.add_argument("-n", type=int, help="use the complete graph on N diamonds")
    c.add_argument("-o", "--output", help="write a JSON report")
    c.add_argument("--generators",
                   help="write the graph-state generators, one Pauli string per line")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_code)

    c = sub.add_parser("diagram", help="draw the task (SVG) or export its graph (DOT)")
    c.add_argument("task")
    c.add_argument("-o", "--output", help="output file; a .dot suffix selects DOT")
    c.add_argument("--graph", nargs="?", const="causal", choices=("causal", "doubled"),
                   help="export the causal graph or its doubled graph as DOT")
    c.set_defaults(func=cmd_diagram)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        if getattr(args, "json", False):
            _emit_json({"error": {"where": exc.where, "message": exc.message, "exit": exc.code}})
        where = f"{exc.where}: " if exc.where else ""
        print(f"summoning: {where}{exc.message}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
