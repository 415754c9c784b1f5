"""Summoning tasks, their causal graph, and the feasibility decision."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence, Union

from .geometry import (
    CausalDiamond,
    MetricConfig,
    SpacetimePoint,
    causally_precedes,
    diamond_precedes,
)


@dataclass(frozen=True)
class SummoningTask:
    metric: MetricConfig
    start: SpacetimePoint
    pairs: tuple[tuple[SpacetimePoint, SpacetimePoint], ...]
    name: str = ""
    description: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((y, z) for y, z in self.pairs))

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def calls(self) -> tuple[SpacetimePoint, ...]:
        return tuple(y for y, _ in self.pairs)

    @property
    def reveals(self) -> tuple[SpacetimePoint, ...]:
        return tuple(z for _, z in self.pairs)

    def diamond(self, j: int) -> CausalDiamond:
        y, z = self.pairs[j]
        return CausalDiamond(y, z)

    def precedes(self, a: SpacetimePoint, b: SpacetimePoint) -> bool:
        return causally_precedes(a, b, self.metric)

    def relabeled(self, order: Sequence[int]) -> "SummoningTask":
        """Task whose pair ``k`` is this task's pair ``order[k]``."""
        return SummoningTask(self.metric, self.start,
                             tuple(self.pairs[i] for i in order), self.name, self.description)


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class EmptyTask:
    def __str__(self) -> str:
        return "task has no call/reveal pairs"


@dataclass(frozen=True)
class DimensionMismatch:
    where: str
    dim: int
    expected: int

    def __str__(self) -> str:
        return f"{self.where} has {self.dim} spatial coordinates, metric has {self.expected}"


@dataclass(frozen=True)
class RevealPrecedesCall:
    """Reveal point ``j`` is not in the causal future of call point ``j``."""

    index: int

    def __str__(self) -> str:
        return f"reveal point z_{self.index} is not in the future light cone of y_{self.index}"


TaskViolation = Union[EmptyTask, DimensionMismatch, RevealPrecedesCall]


class InvalidTask(ValueError):
    def __init__(self, violations: list[TaskViolation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def validate_task(task: SummoningTask) -> list[TaskViolation]:
    """Every standing assumption the task breaks, in index order."""
    out: list[TaskViolation] = []
    if task.n == 0:
        out.append(EmptyTask())
    dim = task.metric.dim
    labelled = [("s", task.start)]
    for j, (y, z) in enumerate(task.pairs):
        labelled += [(f"y_{j}", y), (f"z_{j}", z)]
    bad_dims = False
    for label, p in labelled:
        if p.dim != dim:
            out.append(DimensionMismatch(label, p.dim, dim))
            bad_dims = True
    if bad_dims:
        return out
    for j, (y, z) in enumerate(task.pairs):
        if not task.precedes(y, z):
            out.append(RevealPrecedesCall(j))
    return out


def require_valid(task: SummoningTask) -> None:
    problems = validate_task(task)
    if problems:
        raise InvalidTask(problems)


# -- causal graph -------------------------------------------------------------

@dataclass(frozen=True)
class CausalGraph:
    """Directed graph on the diamonds; ``adj[i][j]`` iff ``D_i -> D_j`` (i != j)."""

    n: int
    adj: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "CausalGraph":
        rows = [[False] * n for _ in range(n)]
        for i, j in edges:
            if i == j:
                raise ValueError("self-loops are not stored")
            rows[i][j] = True
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def complete(cls, n: int) -> "CausalGraph":
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(n) if i != j])

    def edge(self, i: int, j: int) -> bool:
        return self.adj[i][j]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(self.n):
            for j in range(self.n):
                if self.adj[i][j]:
                    yield i, j

    def undirected_edges(self) -> list[tuple[int, int]]:
        """Sorted unordered support, each pair once as ``(i, j)`` with ``i < j``."""
        return [(i, j) for i, j in combinations(range(self.n), 2)
                if self.adj[i][j] or self.adj[j][i]]

    def is_complete(self) -> bool:
        return len(self.undirected_edges()) == self.n * (self.n - 1) // 2

    def orient(self, i: int, j: int) -> tuple[int, int]:
        """Pick a direction for the pair ``{i, j}``; lower index first on ties."""
        a, b = min(i, j), max(i, j)
        if self.adj[a][b]:
            return a, b
        if self.adj[b][a]:
            return b, a
        raise ValueError(f"diamonds {a} and {b} are not causally related")


def build_graph(task: SummoningTask) -> CausalGraph:
    require_valid(task)
    m = task.metric
    diamonds = [task.diamond(j) for j in range(task.n)]
    rows = tuple(
        tuple(i != j and diamond_precedes(diamonds[i], diamonds[j], m) for j in range(task.n))
        for i in range(task.n)
    )
    return CausalGraph(task.n, rows)


# -- verdict ------------------------------------------------------------------

@dataclass(frozen=True)
class Cond1:
    """Reveal point ``index`` lies outside the future light cone of the start."""

    index: int

    def __str__(self) -> str:
        return f"condition 1 fails: z_{self.index} is not in the future light cone of s"


@dataclass(frozen=True)
class Cond2:
    """Diamonds ``i`` and ``j`` are not causally related in either direction."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"condition 2 fails: diamonds D_{self.i} and D_{self.j} are spacelike separated"


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    violation: Cond1 | Cond2 | None = None

    def __post_init__(self) -> None:
        if self.feasible != (self.violation is None):
            raise ValueError("a verdict is feasible exactly when it carries no violation")

    def __str__(self) -> str:
        return "Feasible" if self.feasible else f"Infeasible: {self.violation}"


def decide(task: SummoningTask, graph: CausalGraph | None = None) -> Verdict:
    """Summoning succeeds iff every reveal point is in the future of the start
    and every pair of diamonds is causally related one way or the other.
    The first failure in index order is returned as the witness."""
    graph = graph or build_graph(task)
    for j, z in enumerate(task.reveals):
        if not task.precedes(task.start, z):
            return Verdict(False, Cond1(j))
    for i, j in combinations(range(task.n), 2):
        if not (graph.edge(i, j) or graph.edge(j, i)):
            return Verdict(False, Cond2(i, j))
    return Verdict(True)
