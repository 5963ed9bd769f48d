"""Ring operations on constructible points, built by rewiring witnesses.

A constructible value is not a coordinate pair: it is a two-seed program
(the witness that the point can be reached from 0 and 1 by compass alone)
together with the node holding the result. Negation, addition,
multiplication and conjugation operate on the witnesses. Multiplying by a
means replaying b's witness with (0, a) as its starting points; addition
replays a's witness on (1, 2) to get a+1 and then b's on (a, a+1). The
orientation-based pick selectors make those replays land on exactly the
similarity images the argument needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constructions import extend_program
from .errors import MalformedProgram
from .geom import DEFAULT_TOL, Point, Tolerance
from .program import Builder, Program, Selector, empty_program, execute, rebase

CANONICAL_SEEDS = (Point(0.0, 0.0), Point(1.0, 0.0))


@dataclass(frozen=True, slots=True)
class ConstructibleValue:
    """A constructible point carried with its two-seed witness program.

    ``value`` caches the execution of the witness on the canonical seeds
    0 and 1. ``collapsed`` marks a product that was short-circuited because
    its left factor resolved to zero (the replay basis would have collapsed).
    """

    program: Program
    value: Point
    collapsed: bool = False

    @property
    def primary_output(self) -> int:
        return self.program.outputs[0]


def _make(program: Program, tol: Tolerance, collapsed: bool = False) -> ConstructibleValue:
    if program.seed_count != 2 or len(program.outputs) != 1:
        raise MalformedProgram("a constructible value needs 2 seeds and 1 output")
    trace = execute(program, CANONICAL_SEEDS, tol)
    return ConstructibleValue(program, trace.output_points()[0], collapsed)


def value_from_program(program: Program,
                       tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """Wrap a two-seed witness, executing it on the canonical seeds."""
    return _make(program, tol)


def zero(tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    return _make(empty_program(2, (0,)), tol)


def one(tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    return _make(empty_program(2, (1,)), tol)


def minus_one(tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """-1, by reflecting seed 1 through seed 0."""
    guest = extend_program()
    return _make(rebase(empty_program(2), guest, (1, 0)), tol)


def alpha(tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """(3 + i sqrt(15)) / 4: the upper cut of the circles centered -1 and 1
    with radii 2 and 1."""
    b = Builder(CANONICAL_SEEDS, tol)
    m1 = b.inline(extend_program(), (1, 0))[0]
    big = b.circle(m1, 1)
    small = b.circle(1, 0)
    out = b.pick(big, small, Selector.LEFT)
    return _make(b.finish([out])[0], tol)


def mul(a: ConstructibleValue, b: ConstructibleValue,
        tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """a * b: replay b's witness treating (0, a) as its starting points.

    A left factor at zero collapses the replay basis, so the product
    short-circuits to the zero seed and is flagged.
    """
    if math.hypot(a.value.x, a.value.y) <= tol.eps_degenerate:
        return _make(empty_program(2, (0,)), tol, collapsed=True)
    program = rebase(a.program, b.program, (0, a.primary_output))
    return _make(program, tol)


def neg(a: ConstructibleValue, tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """-a, as the product (-1) * a."""
    return mul(minus_one(tol), a, tol)


def add(a: ConstructibleValue, b: ConstructibleValue,
        tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """a + b by the double replay: build 2, replay a's witness on (1, 2)
    to construct a + 1, then replay b's witness on (a, a + 1)."""
    host = rebase(a.program, extend_program(), (0, 1))  # appends 2 = 2*1 - 0
    two_node = host.outputs[0]
    host = rebase(Program(2, host.steps, (a.primary_output,)), a.program,
                  (1, two_node))
    a_plus_1 = host.outputs[0]
    program = rebase(host, b.program, (a.primary_output, a_plus_1))
    return _make(program, tol)


def conj(a: ConstructibleValue, tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """Complex conjugate: cut the circles centered 0 and 1 through a and
    take the point that is not a. On the real axis the circles are tangent
    at a and the value is its own conjugate; at 0 and 1 the circles would
    degenerate, so those fixed points are returned as-is."""
    eps = tol.eps_degenerate
    v = a.value
    if math.hypot(v.x, v.y) <= eps or math.hypot(v.x - 1.0, v.y) <= eps:
        return _make(a.program, tol)
    b = Builder(CANONICAL_SEEDS, tol)
    a_node = b.inline(a.program, (0, 1))[0]
    c0 = b.circle(0, a_node)
    c1 = b.circle(1, a_node)
    out = b.pick_other(c0, c1, avoid=a_node)
    return _make(b.finish([out])[0], tol)


def demo_half(tol: Tolerance = DEFAULT_TOL) -> ConstructibleValue:
    """1/2, the paper-chase: |alpha|^2 = 3/2 is constructible, so adding -1
    lands on 1/2. Two independent compass routes to the segment midpoint."""
    al = alpha(tol)
    return add(mul(al, conj(al, tol), tol), neg(one(tol), tol), tol)
