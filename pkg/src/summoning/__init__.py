"""Quantum summoning in Minkowski space: feasibility, graph codes, and protocol simulation."""

from .codes import (
    DoubledGraph,
    StabilizerCode,
    build_code,
    check_cws_conditions,
    correctability_table,
    double_graph,
    erasure_correctable,
    kept_qubits,
)
from .feasibility import (
    CausalGraph,
    Cond1,
    Cond2,
    SummoningTask,
    Verdict,
    build_graph,
    decide,
)
from .geometry import (
    CausalDiamond,
    MetricConfig,
    SpacetimePoint,
    causally_precedes,
    diamond_precedes,
    interval_class,
)
from .pauli import PauliOperator
from .stabsim import InputState, Tableau, new_tableau
from .taskfile import load_fixture, load_task

__version__ = "0.1.0"

__all__ = [
    "CausalDiamond", "CausalGraph", "Cond1", "Cond2", "DoubledGraph", "InputState",
    "MetricConfig", "PauliOperator", "SpacetimePoint", "StabilizerCode", "SummoningTask",
    "Tableau", "Verdict", "build_code", "build_graph", "causally_precedes",
    "check_cws_conditions", "correctability_table", "decide", "diamond_precedes",
    "double_graph", "erasure_correctable", "interval_class", "kept_qubits", "load_fixture",
    "load_task", "new_tableau",
]
