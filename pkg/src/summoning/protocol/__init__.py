"""Protocol compilation and simulation."""

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
)
from .planners import (
    STRATEGIES,
    RecursivePlan,
    ShareNode,
    compile_plan,
    find_chain,
    plan_chain,
    plan_cws,
    plan_n2,
    plan_recursive,
)
from .sim import (
    AuditViolation,
    LogEntry,
    SimReport,
    TokenNotPresent,
    UnsatisfiedGuard,
    audit,
    call_choices,
    cloning_violations,
    simulate,
    sweep,
)

__all__ = [
    "AuditViolation", "BellPair", "Correct", "Decode", "Directive", "Encode", "Guard",
    "Infeasible", "LogEntry", "NoChain", "PlanError", "ProtocolPlan", "RecursivePlan",
    "Reveal", "STRATEGIES", "SendClassical", "SendQubit", "ShareNode", "SimReport",
    "StrategyInapplicable", "Teleport", "TokenNotPresent", "UnsatisfiedGuard", "audit",
    "call_choices", "cloning_violations", "compile_plan", "find_chain", "plan_chain",
    "plan_cws", "plan_n2", "plan_recursive", "simulate", "sweep",
]
