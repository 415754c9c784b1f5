"""Spacetime diagrams (SVG) and graph exports (DOT).

Coordinates are converted to floats here only for drawing; nothing computed
from them feeds back into a decision.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .codes import DoubledGraph, double_graph
from .feasibility import CausalGraph, SummoningTask, build_graph
from .geometry import SpacetimePoint


class UnsupportedDimension(ValueError):
    pass


def _coords(task: SummoningTask, p: SpacetimePoint) -> tuple[float, list[float]]:
    m = task.metric
    return float(p.t), [float(x) * math.sqrt(r) for x, r in zip(p.x, m.axis_radicands)]


class _Canvas:
    def __init__(self, width: int = 640, height: int = 480, margin: int = 40):
        self.width, self.height, self.margin = width, height, margin
        self.items: list[str] = []

    def fit(self, pts: list[tuple[float, float]]) -> None:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self.x0, self.y0 = min(xs), min(ys)
        span_x = max(max(xs) - self.x0, 1e-9)
        span_y = max(max(ys) - self.y0, 1e-9)
        self.scale = min((self.width - 2 * self.margin) / span_x,
                         (self.height - 2 * self.margin) / span_y)

    def map(self, p: tuple[float, float]) -> tuple[float, float]:
        return (self.margin + (p[0] - self.x0) * self.scale,
                self.height - self.margin - (p[1] - self.y0) * self.scale)

    def line(self, a, b, style: str = "stroke:#000", arrow: bool = False) -> None:
        (x1, y1), (x2, y2) = self.map(a), self.map(b)
        marker = ' marker-end="url(#arrow)"' if arrow else ""
        self.items.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                          f'style="{style}"{marker}/>')

    def polygon(self, pts, style: str) -> None:
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(self.map, pts))
        self.items.append(f'<polygon points="{path}" style="{style}"/>')

    def dot(self, p, label: str, color: str = "#000") -> None:
        x, y = self.map(p)
        self.items.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
        self.items.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="12" '
                          f'font-family="sans-serif">{escape(label)}</text>')

    def render(self, title: str) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
                f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
                f'<title>{escape(title)}</title>\n'
                '<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" '
                'markerWidth="6" markerHeight="6" orient="auto">'
                '<path d="M0,0 L10,5 L0,10 z"/></marker></defs>\n')
        return head + "\n".join(self.items) + "\n</svg>\n"


DIAMOND_STYLE = "fill:#9ecae1;fill-opacity:0.35;stroke:#3182bd"
CONE_STYLE = "stroke:#999;stroke-dasharray:4 3"
CHAIN_STYLE = "stroke:#d62728;stroke-width:2"


def _svg_1d(task: SummoningTask, chain: list[SpacetimePoint] | None) -> str:
    c = float(task.metric.c)

    def xy(p):
        t, (x,) = _coords(task, p)
        return (x, t)

    s = xy(task.start)
    diamonds = []
    for y, z in task.pairs:
        (xy_, ty), (xz, tz) = xy(y), xy(z)
        u_y, v_y, u_z, v_z = c * ty - xy_, c * ty + xy_, c * tz - xz, c * tz + xz
        left = ((v_y - u_z) / 2, (u_z + v_y) / (2 * c))
        right = ((v_z - u_y) / 2, (u_y + v_z) / (2 * c))
        diamonds.append([(xy_, ty), right, (xz, tz), left])
    pts = [s] + [p for d in diamonds for p in d]
    top = max(p[1] for p in pts)
    reach = (top - s[1]) * c
    cone = [(s[0] - reach, top), (s[0] + reach, top)]
    canvas = _Canvas()
    canvas.fit(pts + cone)
    for end in cone:
        canvas.line(s, end, CONE_STYLE)
    for j, d in enumerate(diamonds):
        canvas.polygon(d, DIAMOND_STYLE)
        canvas.dot(d[0], f"y{j}")
        canvas.dot(d[2], f"z{j}")
    canvas.dot(s, "s", "#d62728")
    if chain:
        path = [s] + [xy(p) for p in chain]
        for a, b in zip(path, path[1:]):
            canvas.line(a, b, CHAIN_STYLE, arrow=True)
    return canvas.render(task.name or "summoning task")


def _svg_2d(task: SummoningTask) -> str:
    # oblique projection: x to the right, y receding up-right, t straight up
    def proj(p):
        t, (x, y) = _coords(task, p)
        return (x + 0.5 * y, t + 0.35 * y)

    s = proj(task.start)
    pts = [s] + [proj(p) for pair in task.pairs for p in pair]
    canvas = _Canvas()
    canvas.fit(pts)
    for j, (y, z) in enumerate(task.pairs):
        canvas.line(proj(y), proj(z), "stroke:#3182bd;stroke-width:2")
        canvas.dot(proj(y), f"y{j}")
        canvas.dot(proj(z), f"z{j}")
        canvas.line(s, proj(z), CONE_STYLE)
    canvas.dot(s, "s", "#d62728")
    return canvas.render(task.name or "summoning task")


def task_svg(task: SummoningTask, chain: list[SpacetimePoint] | None = None) -> str:
    """1+1D: light cone of ``s``, diamonds and an optional chain; 2+1D: oblique projection."""
    if task.metric.dim == 1:
        return _svg_1d(task, chain)
    if task.metric.dim == 2:
        return _svg_2d(task)
    raise UnsupportedDimension(f"diagrams support 1 or 2 spatial dimensions, not {task.metric.dim}")


def causal_graph_dot(graph: CausalGraph, name: str = "G") -> str:
    lines = [f'digraph "{name}" {{', "  node [shape=circle];"]
    lines += [f'  D{i} [label="D_{i}"];' for i in range(graph.n)]
    for i, j in graph.undirected_edges():
        if graph.edge(i, j) and graph.edge(j, i):
            lines.append(f"  D{i} -> D{j} [dir=both];")
        elif graph.edge(i, j):
            lines.append(f"  D{i} -> D{j};")
        else:
            lines.append(f"  D{j} -> D{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def doubled_graph_dot(gp: DoubledGraph, name: str = "Gprime") -> str:
    """Each edge of G is subdivided by a share vertex; the two half-edges carry the code qubits."""
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    lines += [f'  D{i} [label="D_{i}"];' for i in range(gp.n)]
    for k, (a, b) in enumerate(gp.edges):
        lines.append(f'  e{a}_{b} [shape=point, label=""];')
        lines.append(f'  D{a} -- e{a}_{b} [label="q{2 * k}"];')
        lines.append(f'  e{a}_{b} -- D{b} [label="q{2 * k + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def task_dot(task: SummoningTask, which: str = "causal") -> str:
    graph = build_graph(task)
    if which == "causal":
        return causal_graph_dot(graph, task.name or "G")
    if which == "doubled":
        return doubled_graph_dot(double_graph(graph), (task.name or "G") + "_doubled")
    raise ValueError(f"unknown graph {which!r}")
