"""Deterministic SVG 1.1 rendering of traces.

Drawing convention mirrors the source figures: given points are black,
everything constructed is red. Each <circle> element corresponds to exactly
one circle step of the trace (point markers are filled paths, not circle
elements, to keep that one-to-one mapping checkable). Output contains no
timestamps and uses fixed number formatting, so identical traces render to
identical bytes.
"""

from __future__ import annotations

from .geom import Point, ResolvedCircle
from .program import CircleStep, PickStep, Seed, Trace

_GIVEN_COLOR = "#000000"
_BUILT_COLOR = "#cc0000"


def _n(x: float) -> str:
    s = f"{x:.10g}"
    return "0" if s == "-0" else s


def _dot(x: float, y: float, r: float, color: str, title: str, label: str | None,
         font: float) -> str:
    # a filled disc as a path, so <circle> stays reserved for compass circles
    d = (f"M {_n(x - r)} {_n(y)} "
         f"a {_n(r)} {_n(r)} 0 1 0 {_n(2 * r)} 0 "
         f"a {_n(r)} {_n(r)} 0 1 0 {_n(-2 * r)} 0 Z")
    out = f'  <path class="dot" d="{d}" fill="{color}"><title>{title}</title></path>\n'
    if label:
        out += (f'  <text x="{_n(x + 1.6 * r)}" y="{_n(y - 1.6 * r)}" '
                f'font-size="{_n(font)}" fill="{color}">{label}</text>\n')
    return out


def render_trace(trace: Trace, names: dict[int, str] | None = None) -> str:
    """Render a trace: every circle step, every picked point, every seed."""
    names = names or {}
    program = trace.program

    xs: list[float] = []
    ys: list[float] = []
    for value in trace.resolved:
        if isinstance(value, Point):
            xs.extend((value.x,))
            ys.extend((value.y,))
        else:
            xs.extend((value.center.x - value.radius, value.center.x + value.radius))
            ys.extend((value.center.y - value.radius, value.center.y + value.radius))
    if not xs:
        xs = ys = [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-6)
    margin = 0.1 * span
    x0 = min(xs) - margin
    width = (max(xs) - min(xs)) + 2 * margin
    height = (max(ys) - min(ys)) + 2 * margin
    stroke = 0.004 * span
    dot_r = 0.009 * span
    font = 0.035 * span

    def fx(x: float) -> float:
        return x

    def fy(y: float) -> float:
        # SVG y grows downward; mirror so the figure reads the usual way up
        return -y

    body: list[str] = []
    for i, step in enumerate(program.steps):
        if isinstance(step, CircleStep):
            circle = trace.resolved[i]
            assert isinstance(circle, ResolvedCircle)
            body.append(
                f'  <circle cx="{_n(fx(circle.center.x))}" cy="{_n(fy(circle.center.y))}" '
                f'r="{_n(circle.radius)}" fill="none" stroke="{_BUILT_COLOR}" '
                f'stroke-width="{_n(stroke)}">'
                f'<title>step {i}: circle(center n{step.center}, through n{step.through})</title>'
                f'</circle>\n')
    for i, step in enumerate(program.steps):
        value = trace.resolved[i]
        if isinstance(step, Seed):
            assert isinstance(value, Point)
            body.append(_dot(fx(value.x), fy(value.y), dot_r, _GIVEN_COLOR,
                             f"step {i}: seed {step.slot}", names.get(i), font))
        elif isinstance(step, PickStep):
            assert isinstance(value, Point)
            title = (f"step {i}: pick({step.which.value} of "
                     f"n{step.c1}, n{step.c2})")
            body.append(_dot(fx(value.x), fy(value.y), dot_r, _BUILT_COLOR,
                             title, names.get(i), font))

    view = f"{_n(x0)} {_n(-(max(ys) + margin))} {_n(width)} {_n(height)}"
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{view}">\n'
        + "".join(body)
        + "</svg>\n")
