"""Discrete-event execution of protocol plans on a stabilizer tableau.

Local operations are instantaneous and channels are noiseless.  A send is
delivered to the destination's inbox immediately, so any directive at that
point which runs later in the schedule sees it; the audit then checks that
every logged transmission respects the causal order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .. import stabsim
from ..codes import StabilizerCode, build_code, double_graph
from ..feasibility import SummoningTask
from ..geometry import SpacetimePoint
from ..stabsim import InputState
from ..taskfile import point_to_json
from .plan import (
    Correct,
    Decode,
    Encode,
    ProtocolPlan,
    Reveal,
    SendClassical,
    SendQubit,
    Teleport,
    call_key,
)


class SimulationFault(RuntimeError):
    """The plan asked for something it had not arranged; a plan bug."""


class UnsatisfiedGuard(SimulationFault):
    pass


class TokenNotPresent(SimulationFault):
    pass


@dataclass(frozen=True)
class LogEntry:
    src: SpacetimePoint
    dst: SpacetimePoint
    kind: str  # "quantum", "classical" or "preshared"
    label: str

    def to_dict(self) -> dict:
        return {"src": point_to_json(self.src), "dst": point_to_json(self.dst),
                "kind": self.kind, "label": self.label}


@dataclass(frozen=True)
class RevealEvent:
    at: SpacetimePoint
    token: str
    verified: bool


@dataclass(frozen=True)
class AuditViolation:
    entry: LogEntry

    def __str__(self) -> str:
        e = self.entry
        return f"{e.kind} send {e.label!r} from {e.src} to {e.dst} is not causal"


@dataclass
class SimReport:
    call_choice: int | None
    payload: str
    seed: int
    success: bool
    revealed_at: SpacetimePoint | None
    payload_verified: bool
    message_log: list[LogEntry]
    audit_violations: list[AuditViolation] = field(default_factory=list)
    reveals: list[RevealEvent] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.success and not self.audit_violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "call": self.call_choice,
            "payload": self.payload,
            "seed": self.seed,
            "success": self.success,
            "revealed_at": None if self.revealed_at is None else point_to_json(self.revealed_at),
            "payload_verified": self.payload_verified,
            "messages": len(self.message_log),
            "audit_violations": [str(v) for v in self.audit_violations],
        }

    def log_lines(self) -> str:
        return "".join(json.dumps(e.to_dict()) + "\n" for e in self.message_log)


@lru_cache(maxsize=32)
def _code_for(n: int, edges: tuple[tuple[int, int], ...]) -> StabilizerCode:
    return build_code(double_graph((n, edges)))


class _Run:
    def __init__(self, plan: ProtocolPlan, task: SummoningTask, rng: np.random.Generator):
        self.plan = plan
        self.task = task
        self.rng = rng
        self.names = list(plan.tokens)
        self.qubit = {name: q for q, name in enumerate(self.names)}
        self.where = dict(plan.tokens)
        self.consumed: set[str] = set()
        self.inbox: dict[SpacetimePoint, dict[str, Any]] = {}
        self.log: list[LogEntry] = []
        self.reveals: list[RevealEvent] = []
        self.tab = stabsim.new_tableau(len(self.names))

    def received(self, p: SpacetimePoint) -> dict[str, Any]:
        return self.inbox.setdefault(p, {})

    def token(self, name: str, at: SpacetimePoint) -> int:
        if name not in self.qubit:
            raise TokenNotPresent(f"unknown token {name!r}")
        if name in self.consumed:
            raise TokenNotPresent(f"token {name!r} was already measured")
        if self.where[name] != at:
            raise TokenNotPresent(f"token {name!r} is at {self.where[name]}, not {at}")
        return self.qubit[name]

    def classical(self, key: str, at: SpacetimePoint) -> Any:
        box = self.received(at)
        if key not in box:
            raise UnsatisfiedGuard(f"classical data {key!r} has not reached {at}")
        return box[key]

    def check_guard(self, guard, at: SpacetimePoint) -> None:
        for j, _ in guard.conditions:
            if not (0 <= j < self.task.n):
                raise UnsatisfiedGuard(f"guard refers to unknown call {j}")
            if not self.task.precedes(self.task.calls[j], at):
                raise UnsatisfiedGuard(f"a call at y_{j} cannot be known at {at}")

    def run_action(self, a, at: SpacetimePoint, payload: InputState) -> None:
        t = self.tab
        if isinstance(a, Encode):
            block = [self.token(b, at) for b in a.block]
            stabsim.encode_logical(t, self._code(), self.token(a.payload, at), block,
                                   self.token(a.ancilla, at), self.rng)
            self.consumed |= {a.payload, a.ancilla}
        elif isinstance(a, Teleport):
            if a.half_b not in self.qubit:
                raise TokenNotPresent(f"unknown token {a.half_b!r}")
            bits = stabsim.teleport(t, self.token(a.source, at), self.token(a.half_a, at),
                                    self.qubit[a.half_b], self.rng)
            self.consumed |= {a.source, a.half_a}
            self.received(at)[a.key] = bits
        elif isinstance(a, SendQubit):
            self.token(a.token, at)
            self.where[a.token] = a.to
            self.log.append(LogEntry(at, a.to, "quantum", a.token))
        elif isinstance(a, SendClassical):
            self.received(a.to)[a.key] = self.classical(a.key, at)
            self.log.append(LogEntry(at, a.to, "classical", a.key))
        elif isinstance(a, Correct):
            stabsim.correct(t, self.token(a.token, at), self.classical(a.key, at))
        elif isinstance(a, Decode):
            block = [self.qubit[b] for b in a.block]
            for k in a.kept:
                self.token(a.block[k], at)
            stabsim.decode_erasure(t, self._code(), a.kept, block, self.token(a.output, at),
                                   self.rng)
        elif isinstance(a, Reveal):
            q = self.token(a.token, at)
            obs = stabsim.payload_observable(t, q, payload)
            self.reveals.append(RevealEvent(at, a.token, t.expectation(obs) == 1))
        else:
            raise SimulationFault(f"unknown action {a!r}")

    def _code(self) -> StabilizerCode:
        if self.plan.code_graph is None:
            raise SimulationFault("plan encodes without declaring a code graph")
        n, edges = self.plan.code_graph
        return _code_for(n, tuple(map(tuple, edges)))


def simulate(plan: ProtocolPlan, task: SummoningTask, call_choice: int | None,
             payload: "str | InputState" = "Z+", seed: int = 0,
             check_tableau: bool = False) -> SimReport:
    """Run ``plan`` with the call (if any) issued at ``y_{call_choice}``.

    Success means: with no call, nothing is revealed; with a call at ``j``,
    exactly one reveal happens, at ``z_j``, and the revealed qubit is
    deterministically in the payload state.
    """
    payload = InputState.parse(payload)
    if call_choice is not None and not 0 <= call_choice < task.n:
        raise ValueError(f"call index {call_choice} out of range for {task.n} diamonds")
    run = _Run(plan, task, np.random.default_rng(seed))
    stabsim.prepare(run.tab, run.qubit[plan.payload_token], payload)
    for pair in plan.bell_pairs:
        stabsim.bell_pair(run.tab, run.qubit[pair.half_a], run.qubit[pair.half_b])
        run.log.append(LogEntry(plan.tokens[pair.half_a], plan.tokens[pair.half_b],
                                "preshared", f"{pair.half_a}~{pair.half_b}"))
    if call_choice is not None:
        run.received(task.calls[call_choice])[call_key(call_choice)] = True

    for d in plan.schedule():
        run.check_guard(d.guard, d.at)
        if not d.guard.holds(set(run.received(d.at))):
            continue
        for a in d.actions:
            run.run_action(a, d.at, payload)
        if check_tableau:
            run.tab.check()

    reveals = run.reveals
    if call_choice is None:
        success, revealed_at, verified = not reveals, None, False
    else:
        target = task.reveals[call_choice]
        revealed_at = reveals[0].at if reveals else None
        verified = len(reveals) == 1 and reveals[0].verified
        success = verified and revealed_at == target
    report = SimReport(call_choice, payload.value, seed, success, revealed_at, verified,
                       run.log, reveals=reveals)
    report.audit_violations = audit(report, task)
    return report


def audit(report: SimReport, task: SummoningTask) -> list[AuditViolation]:
    """Every logged transmission except pre-shared entanglement must be causal."""
    return [AuditViolation(e) for e in report.message_log
            if e.kind != "preshared" and not task.precedes(e.src, e.dst)]


def cloning_violations(report: SimReport, task: SummoningTask) -> list[tuple[RevealEvent, RevealEvent]]:
    """Pairs of verified reveals at spacelike-separated points."""
    hits = [r for r in report.reveals if r.verified]
    out = []
    for k, a in enumerate(hits):
        for b in hits[k + 1:]:
            if not (task.precedes(a.at, b.at) or task.precedes(b.at, a.at)):
                out.append((a, b))
    return out


def call_choices(task: SummoningTask) -> list[int | None]:
    return [None, *range(task.n)]


def sweep(plan: ProtocolPlan, task: SummoningTask, seeds=(0,),
          payloads=stabsim.ALL_STATES) -> list[SimReport]:
    """Every call choice (no call first) times every payload times every seed."""
    return [simulate(plan, task, c, p, s)
            for c in call_choices(task) for p in payloads for s in seeds]
