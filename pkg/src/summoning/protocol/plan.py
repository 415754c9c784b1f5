"""Protocol plans: tokens, pre-shared entanglement and guarded directives.

A plan is a static program.  Each directive sits at a spacetime point, fires
when its guard holds over the call notices received there, and runs a list
of local actions (instantaneous) or sends (to a later point).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Union

from ..geometry import SpacetimePoint
from ..taskfile import point_from_json, point_to_json

PLAN_VERSION = 1


class PlanError(Exception):
    """A plan could not be compiled."""


class Infeasible(PlanError):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(str(verdict))


class StrategyInapplicable(PlanError):
    pass


class NoChain(StrategyInapplicable):
    pass


def call_key(j: int) -> str:
    return f"call:{j}"


@dataclass(frozen=True)
class Guard:
    """Conjunction of ``(call index, expected presence)`` tests."""

    conditions: tuple[tuple[int, bool], ...] = ()

    @classmethod
    def always(cls) -> "Guard":
        return cls()

    @classmethod
    def on_call(cls, j: int) -> "Guard":
        return cls(((j, True),))

    @classmethod
    def no_call(cls, j: int) -> "Guard":
        return cls(((j, False),))

    @classmethod
    def no_calls(cls, js) -> "Guard":
        return cls(tuple((j, False) for j in js))

    def holds(self, received: set[str]) -> bool:
        return all((call_key(j) in received) == present for j, present in self.conditions)

    def __str__(self) -> str:
        if not self.conditions:
            return "always"
        return " and ".join(f"call {j}" if p else f"no call {j}" for j, p in self.conditions)


# -- actions ------------------------------------------------------------------

@dataclass(frozen=True)
class Encode:
    payload: str
    ancilla: str
    block: tuple[str, ...]


@dataclass(frozen=True)
class Teleport:
    source: str
    half_a: str
    half_b: str
    key: str


@dataclass(frozen=True)
class SendQubit:
    token: str
    to: SpacetimePoint


@dataclass(frozen=True)
class SendClassical:
    key: str
    to: SpacetimePoint


@dataclass(frozen=True)
class Correct:
    token: str
    key: str


@dataclass(frozen=True)
class Decode:
    block: tuple[str, ...]
    kept: tuple[int, ...]
    output: str


@dataclass(frozen=True)
class Reveal:
    token: str


Action = Union[Encode, Teleport, SendQubit, SendClassical, Correct, Decode, Reveal]
_ACTIONS = {cls.__name__.lower(): cls for cls in
            (Encode, Teleport, SendQubit, SendClassical, Correct, Decode, Reveal)}
_ACTIONS["send_qubit"] = _ACTIONS.pop("sendqubit")
_ACTIONS["send_classical"] = _ACTIONS.pop("sendclassical")
_OP_NAME = {cls: name for name, cls in _ACTIONS.items()}


@dataclass(frozen=True)
class Directive:
    at: SpacetimePoint
    guard: Guard
    actions: tuple[Action, ...]
    label: str = ""

    def sends(self) -> list[Action]:
        return [a for a in self.actions if isinstance(a, (SendQubit, SendClassical))]


@dataclass(frozen=True)
class BellPair:
    half_a: str
    half_b: str


@dataclass
class ProtocolPlan:
    strategy: str
    tokens: dict[str, SpacetimePoint]
    bell_pairs: list[BellPair]
    directives: list[Directive]
    code_graph: tuple[int, tuple[tuple[int, int], ...]] | None = None
    payload_token: str = "payload"
    meta: dict[str, Any] = field(default_factory=dict)

    def schedule(self) -> list[Directive]:
        """Execution order: by time, then by position in the plan."""
        order = sorted(range(len(self.directives)), key=lambda k: (self.directives[k].at.t, k))
        return [self.directives[k] for k in order]

    @property
    def num_qubits(self) -> int:
        return len(self.tokens)

    def summary(self) -> str:
        parts = [f"strategy {self.strategy}", f"{len(self.tokens)} qubit tokens",
                 f"{len(self.bell_pairs)} pre-shared Bell pairs",
                 f"{len(self.directives)} directives"]
        if "code_qubits" in self.meta:
            parts.insert(1, f"{self.meta['code_qubits']} code qubits")
        if "chain_order" in self.meta:
            parts.append("chain " + " -> ".join(f"D_{j}" for j in self.meta["chain_order"]))
        return ", ".join(parts)

    def to_dict(self) -> dict:
        out = {
            "version": PLAN_VERSION,
            "strategy": self.strategy,
            "payload_token": self.payload_token,
            "tokens": {name: point_to_json(p) for name, p in self.tokens.items()},
            "bell_pairs": [[b.half_a, b.half_b] for b in self.bell_pairs],
            "code_graph": None if self.code_graph is None else {
                "n": self.code_graph[0], "edges": [list(e) for e in self.code_graph[1]]},
            "directives": [_directive_to_dict(d) for d in self.directives],
            "meta": self.meta,
        }
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ProtocolPlan":
        if data.get("version") != PLAN_VERSION:
            raise ValueError(f"unsupported plan version {data.get('version')!r}")
        graph = data.get("code_graph")
        return cls(
            strategy=data["strategy"],
            tokens={k: point_from_json(v, f"tokens.{k}") for k, v in data["tokens"].items()},
            bell_pairs=[BellPair(a, b) for a, b in data["bell_pairs"]],
            directives=[_directive_from_dict(d, k) for k, d in enumerate(data["directives"])],
            code_graph=None if graph is None else (
                graph["n"], tuple(tuple(e) for e in graph["edges"])),
            payload_token=data.get("payload_token", "payload"),
            meta=dict(data.get("meta", {})),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ProtocolPlan":
        return cls.from_dict(json.loads(text))


def _action_to_dict(a: Action) -> dict:
    out: dict[str, Any] = {"op": _OP_NAME[type(a)]}
    for name, value in vars(a).items():
        if isinstance(value, SpacetimePoint):
            value = point_to_json(value)
        elif isinstance(value, tuple):
            value = list(value)
        out[name] = value
    return out


def _action_from_dict(raw: dict, where: str) -> Action:
    raw = dict(raw)
    cls = _ACTIONS.get(raw.pop("op", None))
    if cls is None:
        raise ValueError(f"{where}: unknown action")
    if "to" in raw:
        raw["to"] = point_from_json(raw["to"], f"{where}.to")
    for key in ("block", "kept"):
        if key in raw:
            raw[key] = tuple(raw[key])
    return cls(**raw)


def _directive_to_dict(d: Directive) -> dict:
    return {
        "at": point_to_json(d.at),
        "guard": [[j, p] for j, p in d.guard.conditions],
        "actions": [_action_to_dict(a) for a in d.actions],
        "label": d.label,
    }


def _directive_from_dict(raw: dict, k: int) -> Directive:
    where = f"directives[{k}]"
    return Directive(
        at=point_from_json(raw["at"], f"{where}.at"),
        guard=Guard(tuple((int(j), bool(p)) for j, p in raw.get("guard", []))),
        actions=tuple(_action_from_dict(a, f"{where}.actions[{i}]")
                      for i, a in enumerate(raw["actions"])),
        label=raw.get("label", ""),
    )
