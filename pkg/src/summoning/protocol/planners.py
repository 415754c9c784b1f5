"""Compilers from summoning tasks to protocol plans."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..codes import DoubledGraph, double_graph, kept_qubits
from ..feasibility import CausalGraph, SummoningTask, build_graph, decide
from ..geometry import GeometryError, SpacetimePoint, from_lightcone, lightcone_coordinates
from .plan import (
    BellPair,
    Correct,
    Decode,
    Directive,
    Encode,
    Guard,
    Infeasible,
    NoChain,
    PlanError,
    ProtocolPlan,
    Reveal,
    SendClassical,
    SendQubit,
    StrategyInapplicable,
    Teleport,
    call_key,
)


def _require_feasible(task: SummoningTask) -> CausalGraph:
    graph = build_graph(task)
    verdict = decide(task, graph)
    if not verdict.feasible:
        raise Infeasible(verdict)
    return graph


def _dedupe(points) -> list[SpacetimePoint]:
    return list(dict.fromkeys(points))


def plan_n2(task: SummoningTask) -> ProtocolPlan:
    """Teleport the payload over a Bell pair shared between ``s`` and ``y_i``.

    The Bell half at ``y_i`` goes to ``z_i`` on a call there and to ``z_j``
    otherwise; the teleportation bits are broadcast from ``s`` to both reveal
    points, which is what lets the calls sit outside the future of ``s``.
    """
    if task.n != 2:
        raise StrategyInapplicable(f"the two-diamond protocol needs n = 2, got {task.n}")
    graph = _require_feasible(task)
    i, j = graph.orient(0, 1)
    s, (yi, zi), (yj, zj) = task.start, task.pairs[i], task.pairs[j]
    directives = [
        Directive(s, Guard.always(), (
            Teleport("payload", "bell_a", "bell_b", "tp"),
            *(SendClassical("tp", z) for z in _dedupe([task.reveals[0], task.reveals[1]])),
        ), "teleport at s"),
        Directive(yi, Guard.on_call(i), (
            SendClassical(call_key(i), zi), SendQubit("bell_b", zi)), f"call at y_{i}"),
        Directive(yi, Guard.no_call(i), (SendQubit("bell_b", zj),), f"no call at y_{i}"),
        Directive(yj, Guard.on_call(j), (SendClassical(call_key(j), zj),), f"call at y_{j}"),
    ]
    for k in range(2):
        directives.append(Directive(task.reveals[k], Guard.on_call(k), (
            Correct("bell_b", "tp"), Reveal("bell_b")), f"reveal at z_{k}"))
    return ProtocolPlan(
        strategy="n2",
        tokens={"payload": s, "bell_a": s, "bell_b": yi},
        bell_pairs=[BellPair("bell_a", "bell_b")],
        directives=directives,
        meta={"orientation": [i, j]},
    )


def share_orientations(gp: DoubledGraph, graph: CausalGraph) -> list[tuple[int, int]]:
    """Direction used to route each share, ``(i, j)`` meaning ``y_i`` decides."""
    return [graph.orient(a, b) for a, b in gp.edges]


def _plan_single(task: SummoningTask) -> ProtocolPlan:
    """One diamond needs no code: carry the payload to ``z_0`` and reveal if called."""
    z = task.reveals[0]
    return ProtocolPlan(
        strategy="cws",
        tokens={"payload": task.start},
        bell_pairs=[],
        directives=[
            Directive(task.start, Guard.always(), (SendQubit("payload", z),), "send to z_0"),
            Directive(task.calls[0], Guard.on_call(0), (SendClassical(call_key(0), z),),
                      "call at y_0"),
            Directive(z, Guard.on_call(0), (Reveal("payload"),), "reveal at z_0"),
        ],
        meta={"code_qubits": 0},
    )


def plan_cws(task: SummoningTask, graph: CausalGraph | None = None,
             gp: DoubledGraph | None = None) -> ProtocolPlan:
    """Encode into the graph code at ``s`` and route every share like the n = 2 protocol.

    Share ``{i, j}`` oriented ``i -> j`` has its Bell halves waiting at
    ``y_i``; a call there sends the share to ``z_i``, otherwise to ``z_j``.
    Either way ``z_k`` collects exactly the shares incident to ``k``.
    """
    if graph is None:
        graph = _require_feasible(task)
    elif not (verdict := decide(task, graph)).feasible:
        raise Infeasible(verdict)
    if task.n == 1:
        return _plan_single(task)
    gp = gp or double_graph(graph)
    if gp.n != task.n or gp.edges != tuple(graph.undirected_edges()):
        raise StrategyInapplicable("code graph does not match the task's causal graph")
    N = gp.num_qubits
    s = task.start
    code_tokens = [f"c{q}" for q in range(N)]
    b_tokens = [f"b{q}" for q in range(N)]
    reveals = _dedupe(task.reveals)
    orient = share_orientations(gp, graph)

    tokens = {"payload": s, "anc": s}
    tokens.update({c: s for c in code_tokens})
    tokens.update({f"a{q}": s for q in range(N)})
    for k, (i, _) in enumerate(orient):
        tokens[b_tokens[2 * k]] = task.calls[i]
        tokens[b_tokens[2 * k + 1]] = task.calls[i]
    tokens.update({f"out{k}": task.reveals[k] for k in range(task.n)})

    at_s = [Encode("payload", "anc", tuple(code_tokens))]
    at_s += [Teleport(code_tokens[q], f"a{q}", b_tokens[q], f"tp{q}") for q in range(N)]
    at_s += [SendClassical(f"tp{q}", z) for q in range(N) for z in reveals]
    directives = [Directive(s, Guard.always(), tuple(at_s), "encode and teleport at s")]

    for i in range(task.n):
        on_call = [SendClassical(call_key(i), task.reveals[i])]
        otherwise = []
        for k, (a, b) in enumerate(orient):
            if a != i:
                continue
            for q in (2 * k, 2 * k + 1):
                on_call.append(SendQubit(b_tokens[q], task.reveals[i]))
                otherwise.append(SendQubit(b_tokens[q], task.reveals[b]))
        y = task.calls[i]
        directives.append(Directive(y, Guard.on_call(i), tuple(on_call), f"call at y_{i}"))
        if otherwise:
            directives.append(Directive(y, Guard.no_call(i), tuple(otherwise), f"no call at y_{i}"))

    for k in range(task.n):
        kept = sorted(kept_qubits(gp, k))
        actions = [Correct(b_tokens[q], f"tp{q}") for q in kept]
        actions += [Decode(tuple(b_tokens), tuple(kept), f"out{k}"), Reveal(f"out{k}")]
        directives.append(Directive(task.reveals[k], Guard.on_call(k), tuple(actions),
                                    f"decode at z_{k}"))

    return ProtocolPlan(
        strategy="cws",
        tokens=tokens,
        bell_pairs=[BellPair(f"a{q}", b_tokens[q]) for q in range(N)],
        directives=directives,
        code_graph=(gp.n, gp.edges),
        meta={"code_qubits": N, "orientations": [list(o) for o in orient]},
    )


# -- 1+1D chain ---------------------------------------------------------------

def _uv(task: SummoningTask, p: SpacetimePoint) -> tuple[Fraction, Fraction]:
    return lightcone_coordinates(p, task.metric)


def find_chain(task: SummoningTask) -> tuple[list[int], list[tuple[Fraction, Fraction]]] | None:
    """Diamond order and waypoints (in light-cone coordinates) of a causal chain from ``s``.

    In 1+1D the causal order is the product order on ``(u, v)`` and each
    diamond is a box, so for a fixed order the earliest waypoint in each box
    is the componentwise max of the previous waypoint and the box's bottom
    corner.  Orders are searched depth first; consecutive diamonds must be
    joined by a causal-graph edge, which prunes most of the tree.
    """
    if task.metric.dim != 1:
        raise StrategyInapplicable("chains are only constructed in one spatial dimension")
    try:
        start = _uv(task, task.start)
        boxes = [(_uv(task, y), _uv(task, z)) for y, z in task.pairs]
    except GeometryError as exc:
        raise StrategyInapplicable(str(exc)) from None
    graph = build_graph(task)
    n = task.n
    order: list[int] = []
    points: list[tuple[Fraction, Fraction]] = []
    used = [False] * n

    def extend(cur) -> bool:
        if len(order) == n:
            return True
        for d in range(n):
            if used[d] or (order and not graph.edge(order[-1], d)):
                continue
            (lu, lv), (hu, hv) = boxes[d]
            p = (max(cur[0], lu), max(cur[1], lv))
            if p[0] > hu or p[1] > hv:
                continue
            used[d] = True
            order.append(d)
            points.append(p)
            if extend(p):
                return True
            used[d] = False
            order.pop()
            points.pop()
        return False

    return (order, points) if extend(start) else None


def plan_chain(task: SummoningTask) -> ProtocolPlan:
    """Carry the payload itself through every diamond along a causal chain.

    At waypoint ``p_k`` in ``D_{pi_k}`` the token turns off to ``z_{pi_k}``
    if that diamond was called and otherwise continues to ``p_{k+1}``.
    """
    found = find_chain(task)
    if found is None:
        raise NoChain("no ordering of the diamonds admits a causal chain from s")
    order, uv = found
    waypoints = [from_lightcone(u, v, task.metric) for u, v in uv]
    n = task.n
    directives = [Directive(task.start, Guard.always(),
                            (SendQubit("payload", waypoints[0]),), "start of chain")]
    for k, d in enumerate(order):
        sends = [SendClassical(call_key(d), task.reveals[d])]
        sends += [SendClassical(call_key(d), p) for p in _dedupe(waypoints[k:])]
        directives.append(Directive(task.calls[d], Guard.on_call(d), tuple(sends),
                                    f"call at y_{d}"))
    for k, d in enumerate(order):
        p = waypoints[k]
        directives.append(Directive(p, Guard.on_call(d),
                                    (SendQubit("payload", task.reveals[d]),), f"divert to z_{d}"))
        if k + 1 < n:
            directives.append(Directive(p, Guard.no_calls(order[:k + 1]),
                                        (SendQubit("payload", waypoints[k + 1]),),
                                        f"continue to p_{k + 1}"))
    for d in range(n):
        directives.append(Directive(task.reveals[d], Guard.on_call(d), (Reveal("payload"),),
                                    f"reveal at z_{d}"))
    return ProtocolPlan(
        strategy="chain",
        tokens={"payload": task.start},
        bell_pairs=[],
        directives=directives,
        meta={"chain_order": order, "waypoints": [[str(p.t), *map(str, p.x)] for p in waypoints]},
    )


# -- recursive threshold construction -----------------------------------------

@dataclass(frozen=True)
class ShareNode:
    """One share of the recursion: a set of diamonds and the shares it splits into.

    A node on ``k > 2`` diamonds is split by a ((k-1, k)) threshold scheme,
    one share per ``(k-1)``-subset.  Two-diamond leaves are routed by the
    teleportation primitive along ``orientation``.
    """

    share_id: str
    diamonds: tuple[int, ...]
    children: tuple["ShareNode", ...] = ()
    orientation: tuple[int, int] | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self):
        if self.is_leaf:
            yield self
        for c in self.children:
            yield from c.leaves()

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def to_dict(self) -> dict:
        out: dict = {"id": self.share_id, "diamonds": list(self.diamonds)}
        if self.orientation is not None:
            out["orientation"] = list(self.orientation)
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out


def leaf_destination(leaf: ShareNode, call: int | None) -> int:
    """Reveal point a leaf share ends up at under the two-diamond primitive."""
    i, j = leaf.orientation
    return i if call == i else j


def reaches(node: ShareNode, call: int) -> bool:
    """Whether the whole share of ``node`` arrives at ``z_call``."""
    if node.is_leaf:
        return leaf_destination(node, call) == call
    return call in node.diamonds


def recoverable(node: ShareNode, call: int) -> bool:
    """Threshold recovery: a k-diamond node needs k-1 of its children."""
    if node.is_leaf:
        return reaches(node, call)
    k = len(node.diamonds)
    return sum(recoverable(c, call) for c in node.children) >= k - 1


@dataclass(frozen=True)
class LevelCheck:
    call: int
    share_id: str
    size: int
    reached: int


@dataclass(frozen=True)
class RecursivePlan:
    root: ShareNode
    leaf_count: int
    delivery: dict[int, tuple[str, ...]]
    checks: tuple[LevelCheck, ...]

    @property
    def n(self) -> int:
        return len(self.root.diamonds)

    def summary(self) -> str:
        return (f"strategy recursive, {self.n} diamonds, {self.leaf_count} leaf shares "
                f"(n!/2 = {factorial(self.n) // 2})")

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "strategy": "recursive",
            "n": self.n,
            "leaf_count": self.leaf_count,
            "tree": self.root.to_dict(),
            "delivery": {str(j): list(ids) for j, ids in self.delivery.items()},
        }


def share_tree(diamonds: tuple[int, ...], graph: CausalGraph, share_id: str = "r") -> ShareNode:
    if len(diamonds) == 1:
        raise StrategyInapplicable("the recursion needs at least two diamonds")
    if len(diamonds) == 2:
        return ShareNode(share_id, diamonds, orientation=graph.orient(*diamonds))
    children = tuple(
        share_tree(tuple(d for d in diamonds if d != drop), graph, f"{share_id}.{drop}")
        for drop in diamonds
    )
    return ShareNode(share_id, diamonds, children)


def plan_recursive(task: SummoningTask) -> RecursivePlan:
    """Build the share tree and check, for every call and every split the
    called diamond belongs to, that exactly ``k - 1`` of the ``k`` shares reach it."""
    graph = _require_feasible(task)
    root = share_tree(tuple(range(task.n)), graph)
    checks = []
    delivery = {}
    for j in range(task.n):
        delivered = []
        for node in root.nodes():
            if j not in node.diamonds:
                continue
            if node.is_leaf:
                if reaches(node, j):
                    delivered.append(node.share_id)
                continue
            reached = sum(reaches(c, j) for c in node.children)
            checks.append(LevelCheck(j, node.share_id, len(node.diamonds), reached))
            if reached != len(node.diamonds) - 1:
                raise PlanError(f"split {node.share_id} delivers {reached} shares to z_{j}")
        if not recoverable(root, j):
            raise PlanError(f"the payload is not recoverable at z_{j}")
        delivery[j] = tuple(delivered)
    leaf_count = sum(1 for _ in root.leaves())
    return RecursivePlan(root, leaf_count, delivery, tuple(checks))


STRATEGIES = ("cws", "recursive", "chain", "n2")


def compile_plan(task: SummoningTask, strategy: str = "cws"):
    if strategy == "cws":
        return plan_cws(task)
    if strategy == "n2":
        return plan_n2(task)
    if strategy == "chain":
        return plan_chain(task)
    if strategy == "recursive":
        return plan_recursive(task)
    raise ValueError(f"unknown strategy {strategy!r}")
