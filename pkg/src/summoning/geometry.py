"""Exact causal structure of d+1 dimensional Minkowski space.

Spatial coordinates are stored as rational multiples of a fixed per-axis
square root, ``x_k = q_k * sqrt(r_k)``.  Squared distances are then rational,
so every causal predicate below is decided exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

Rational = Union[Fraction, int, str]


class GeometryError(ValueError):
    """Points and metric disagree on dimension."""


def as_fraction(value: Rational) -> Fraction:
    """Convert ints, decimal strings or ``"p/q"`` strings to a Fraction.

    Binary floats are refused; ``Fraction(0.1)`` is not one tenth.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float coordinate {value!r}; pass a string")
    return Fraction(value)


@dataclass(frozen=True)
class MetricConfig:
    dim: int = 1
    c: Fraction = Fraction(1)
    axis_radicands: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", as_fraction(self.c))
        radicands = tuple(self.axis_radicands) or (1,) * self.dim
        object.__setattr__(self, "axis_radicands", tuple(int(r) for r in radicands))
        if self.dim < 1:
            raise GeometryError(f"spatial dimension must be >= 1, got {self.dim}")
        if self.c <= 0:
            raise GeometryError(f"signal speed must be positive, got {self.c}")
        if len(self.axis_radicands) != self.dim:
            raise GeometryError(
                f"{len(self.axis_radicands)} radicands for {self.dim} spatial axes"
            )
        if any(r < 0 for r in self.axis_radicands):
            raise GeometryError("axis radicands must be nonnegative")


@dataclass(frozen=True, order=True)
class SpacetimePoint:
    """An event ``(t, x_1 .. x_d)``; ``x`` holds the rational coefficients."""

    t: Fraction
    x: tuple[Fraction, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", as_fraction(self.t))
        object.__setattr__(self, "x", tuple(as_fraction(v) for v in self.x))

    @classmethod
    def of(cls, t: Rational, *x: Rational) -> "SpacetimePoint":
        return cls(as_fraction(t), tuple(as_fraction(v) for v in x))

    @property
    def dim(self) -> int:
        return len(self.x)

    def shifted(self, dt: Rational = 0, dx: Sequence[Rational] | None = None) -> "SpacetimePoint":
        dx = dx or (0,) * self.dim
        return SpacetimePoint(self.t + as_fraction(dt),
                              tuple(a + as_fraction(b) for a, b in zip(self.x, dx)))

    def __str__(self) -> str:
        coords = ", ".join(str(v) for v in self.x)
        return f"(t={self.t}, x=({coords}))"


class IntervalClass(enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


def _check(a: SpacetimePoint, b: SpacetimePoint, m: MetricConfig) -> None:
    if a.dim != m.dim or b.dim != m.dim:
        raise GeometryError(
            f"points of dimension {a.dim} and {b.dim} under a {m.dim}-dimensional metric"
        )


def interval(a: SpacetimePoint, b: SpacetimePoint, m: MetricConfig) -> Fraction:
    """Return ``c^2 dt^2 - |dx|^2`` (positive means timelike)."""
    _check(a, b, m)
    dt = b.t - a.t
    space = sum(((xb - xa) ** 2 * r for xa, xb, r in zip(a.x, b.x, m.axis_radicands)),
                Fraction(0))
    return m.c * m.c * dt * dt - space


def causally_precedes(a: SpacetimePoint, b: SpacetimePoint, m: MetricConfig) -> bool:
    """True iff a signal leaving ``a`` can reach ``b`` (light cone included)."""
    _check(a, b, m)
    dt = b.t - a.t
    if dt < 0:
        return False
    # cross-multiplied integer comparison of c^2 dt^2 >= sum r dx^2
    dxs = [xb - xa for xa, xb in zip(a.x, b.x)]
    d = math.lcm(m.c.denominator, dt.denominator, *(v.denominator for v in dxs))
    lhs = (m.c.numerator * (d // m.c.denominator) * dt.numerator * (d // dt.denominator)) ** 2
    rhs = sum(r * (v.numerator * (d // v.denominator)) ** 2 for r, v in zip(m.axis_radicands, dxs))
    return lhs >= rhs * d * d


def interval_class(a: SpacetimePoint, b: SpacetimePoint,
                   m: MetricConfig) -> tuple[IntervalClass, int]:
    """Classify the separation of ``a`` and ``b`` and report the sign of ``t_b - t_a``."""
    s = interval(a, b, m)
    dt = b.t - a.t
    sign = (dt > 0) - (dt < 0)
    if s > 0:
        return IntervalClass.TIMELIKE, sign
    if s == 0:
        return IntervalClass.LIGHTLIKE, sign
    return IntervalClass.SPACELIKE, sign


@dataclass(frozen=True)
class CausalDiamond:
    bottom: SpacetimePoint
    top: SpacetimePoint

    def is_valid(self, m: MetricConfig) -> bool:
        return causally_precedes(self.bottom, self.top, m)


def diamond_precedes(di: CausalDiamond, dj: CausalDiamond, m: MetricConfig) -> bool:
    """Is there a causal curve from some point of ``di`` to some point of ``dj``?

    Reduces to ``di.bottom <= dj.top``.  If ``p`` in ``di`` precedes ``q`` in
    ``dj`` then ``bottom_i <= p <= q <= top_j`` by transitivity; conversely the
    two corners themselves are members of their diamonds.
    """
    return causally_precedes(di.bottom, dj.top, m)


def lightcone_coordinates(p: SpacetimePoint, m: MetricConfig) -> tuple[Fraction, Fraction]:
    """``(u, v) = (ct - x, ct + x)`` for 1+1D points; causal order is the product order."""
    if m.dim != 1 or p.dim != 1:
        raise GeometryError("light-cone coordinates need one spatial dimension")
    x = exact_axis_value(p.x[0], m.axis_radicands[0])
    return m.c * p.t - x, m.c * p.t + x


def from_lightcone(u: Fraction, v: Fraction, m: MetricConfig) -> SpacetimePoint:
    root = _isqrt_exact(m.axis_radicands[0])
    return SpacetimePoint((u + v) / (2 * m.c), ((v - u) / 2 / root,))


def exact_axis_value(coef: Fraction, radicand: int) -> Fraction:
    return coef * _isqrt_exact(radicand)


def _isqrt_exact(r: int) -> int:
    root = math.isqrt(r)
    if root * root != r or r == 0:
        raise GeometryError(f"axis radicand {r} is not a nonzero perfect square")
    return root
