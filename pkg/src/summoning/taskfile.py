"""JSON task files.

Coordinates are JSON integers or strings (``"2.5"``, ``"-3/2"``), converted
exactly.  JSON floats are rejected.  A point is written ``[t, x_1, ..., x_d]``
where ``x_k`` is the coefficient of ``sqrt(axis_radicands[k])``.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .feasibility import SummoningTask
from .geometry import GeometryError, MetricConfig, SpacetimePoint

VERSION = 1
TOP_FIELDS = {"version", "name", "description", "dim", "c", "axis_radicands", "start", "pairs"}
REQUIRED = {"version", "dim", "start", "pairs"}


class TaskFileError(ValueError):
    def __init__(self, where: str, message: str):
        self.where = where
        self.message = message
        super().__init__(f"{where}: {message}" if where else message)


def format_rational(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        kind = "float" if isinstance(value, float) else type(value).__name__
        raise TaskFileError(where, f"expected an integer or a decimal/rational string, got {kind} "
                                   f"{value!r}")
    try:
        return Fraction(value.strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError):
        raise TaskFileError(where, f"cannot read {value!r} as an exact rational") from None


def point_to_json(p: SpacetimePoint) -> list[str]:
    return [format_rational(p.t)] + [format_rational(v) for v in p.x]


def point_from_json(raw: Any, where: str, dim: int | None = None) -> SpacetimePoint:
    if not isinstance(raw, list) or len(raw) < 2:
        raise TaskFileError(where, "a point is a list [t, x_1, ..., x_d] with d >= 1")
    if dim is not None and len(raw) != dim + 1:
        raise TaskFileError(where, f"expected {dim + 1} coordinates (t plus {dim} spatial), "
                                   f"got {len(raw)}")
    coords = [parse_rational(v, f"{where}[{k}]") for k, v in enumerate(raw)]
    return SpacetimePoint(coords[0], tuple(coords[1:]))


def task_from_dict(data: Any) -> SummoningTask:
    if not isinstance(data, dict):
        raise TaskFileError("", "task file must hold a JSON object")
    unknown = sorted(set(data) - TOP_FIELDS)
    if unknown:
        raise TaskFileError(unknown[0], "unknown field")
    missing = sorted(REQUIRED - set(data))
    if missing:
        raise TaskFileError(missing[0], "required field is missing")
    if data["version"] != VERSION:
        raise TaskFileError("version", f"unsupported version {data['version']!r} "
                                       f"(this reader handles {VERSION})")
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise TaskFileError("dim", f"spatial dimension must be a positive integer, got {dim!r}")
    c = parse_rational(data.get("c", "1"), "c")
    radicands = data.get("axis_radicands", [1] * dim)
    if (not isinstance(radicands, list)
            or any(isinstance(r, bool) or not isinstance(r, int) or r < 0 for r in radicands)):
        raise TaskFileError("axis_radicands", "expected a list of nonnegative integers")
    try:
        metric = MetricConfig(dim, c, tuple(radicands))
    except GeometryError as exc:
        raise TaskFileError("dim", str(exc)) from None
    start = point_from_json(data["start"], "start", dim)
    pairs_raw = data["pairs"]
    if not isinstance(pairs_raw, list) or not pairs_raw:
        raise TaskFileError("pairs", "expected a non-empty list of {call, reveal} objects")
    pairs = []
    for j, pair in enumerate(pairs_raw):
        where = f"pairs[{j}]"
        if not isinstance(pair, dict):
            raise TaskFileError(where, "expected an object with 'call' and 'reveal'")
        extra = sorted(set(pair) - {"call", "reveal"})
        if extra:
            raise TaskFileError(f"{where}.{extra[0]}", "unknown field")
        for key in ("call", "reveal"):
            if key not in pair:
                raise TaskFileError(f"{where}.{key}", "required field is missing")
        pairs.append((point_from_json(pair["call"], f"{where}.call", dim),
                      point_from_json(pair["reveal"], f"{where}.reveal", dim)))
    for key in ("name", "description"):
        if not isinstance(data.get(key, ""), str):
            raise TaskFileError(key, "expected a string")
    return SummoningTask(metric, start, tuple(pairs), data.get("name", ""),
                         data.get("description", ""))


def task_to_dict(task: SummoningTask) -> dict:
    m = task.metric
    out: dict[str, Any] = {"version": VERSION}
    if task.name:
        out["name"] = task.name
    if task.description:
        out["description"] = task.description
    out.update({
        "dim": m.dim,
        "c": format_rational(m.c),
        "axis_radicands": list(m.axis_radicands),
        "start": point_to_json(task.start),
        "pairs": [{"call": point_to_json(y), "reveal": point_to_json(z)} for y, z in task.pairs],
    })
    return out


def loads(text: str) -> SummoningTask:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TaskFileError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    return task_from_dict(data)


def load_task(path: str | Path) -> SummoningTask:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise TaskFileError(str(path), exc.strerror or str(exc)) from None
    try:
        task = loads(text)
    except TaskFileError as exc:
        where = f"{path}: {exc.where}" if exc.where else str(path)
        raise TaskFileError(where, exc.message) from None
    if not task.name:
        task = dataclasses.replace(task, name=path.stem)
    return task


def dumps(task: SummoningTask) -> str:
    return json.dumps(task_to_dict(task), indent=2) + "\n"


def fixture_dir() -> Path:
    return Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return fixture_dir() / f"{name}.json"


def load_fixture(name: str) -> SummoningTask:
    return load_task(fixture_path(name))


def fixture_names() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.json"))


def load_schema(name: str) -> dict:
    """JSON Schema for a file or ``--json`` output: task, check, plan, simulate, code, error."""
    return json.loads((Path(__file__).parent / "schemas" / f"{name}.schema.json").read_text())
