"""Compass constructions as replayable programs.

A construction is data: a topologically ordered list of steps over seed
slots, where a step either introduces a seed point, draws a circle through
two earlier points, or picks one of the two intersection points of two
earlier circles. Because constructions are values they can be executed on
any seeds, inlined into other programs with their seeds rewired (the
"repeat the construction on new starting points" move), counted, serialized
and audited.

The left/right pick selector is orientation-based: "left" is the
intersection point p with orientation_sign(center1, center2, p) >= 0.
Orientation is preserved by every orientation-preserving similarity, which
is exactly what makes rewired programs land on the similarity image of
their original outputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import (
    CoincidentCircles,
    DegenerateCircle,
    InvalidNodeId,
    MalformedProgram,
    MalformedTrace,
    NoSuchIntersection,
    NonFiniteInput,
)
from .geom import (
    DEFAULT_TOL,
    Coincident,
    NoIntersection,
    Point,
    ResolvedCircle,
    Tangent,
    Tolerance,
    TwoPoints,
    circle_circle_intersect,
    circle_from,
)


class Selector(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    def other(self) -> "Selector":
        return Selector.RIGHT if self is Selector.LEFT else Selector.LEFT


@dataclass(frozen=True, slots=True)
class Seed:
    slot: int


@dataclass(frozen=True, slots=True)
class CircleStep:
    center: int
    through: int


@dataclass(frozen=True, slots=True)
class PickStep:
    c1: int
    c2: int
    which: Selector


Step = Union[Seed, CircleStep, PickStep]

POINT = "point"
CIRCLE = "circle"


@dataclass(frozen=True, slots=True)
class Program:
    """An executable compass construction over ``seed_count`` seed slots."""

    seed_count: int
    steps: tuple[Step, ...]
    outputs: tuple[int, ...]

    def node_kinds(self) -> tuple[str, ...]:
        return tuple(POINT if isinstance(s, (Seed, PickStep)) else CIRCLE
                     for s in self.steps)

    def circle_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, CircleStep))

    def pick_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, PickStep))

    def validate(self) -> None:
        """Check the structural invariants; raise MalformedProgram on failure."""
        if self.seed_count < 1:
            raise MalformedProgram("a program needs at least one seed")
        if len(self.steps) < self.seed_count:
            raise MalformedProgram("fewer steps than declared seeds")
        kinds = []
        for i, step in enumerate(self.steps):
            if i < self.seed_count:
                if not isinstance(step, Seed) or step.slot != i:
                    raise MalformedProgram(
                        f"step {i}: expected Seed(slot={i}) before all other steps")
                kinds.append(POINT)
            elif isinstance(step, Seed):
                raise MalformedProgram(f"step {i}: seed after non-seed steps")
            elif isinstance(step, CircleStep):
                for ref in (step.center, step.through):
                    if not 0 <= ref < i:
                        raise MalformedProgram(f"step {i}: forward or bad reference {ref}")
                    if kinds[ref] != POINT:
                        raise MalformedProgram(f"step {i}: circle over non-point node {ref}")
                kinds.append(CIRCLE)
            elif isinstance(step, PickStep):
                for ref in (step.c1, step.c2):
                    if not 0 <= ref < i:
                        raise MalformedProgram(f"step {i}: forward or bad reference {ref}")
                    if kinds[ref] != CIRCLE:
                        raise MalformedProgram(f"step {i}: pick over non-circle node {ref}")
                kinds.append(POINT)
            else:
                raise MalformedProgram(f"step {i}: unknown step kind {step!r}")
        for out in self.outputs:
            if not 0 <= out < len(self.steps):
                raise MalformedProgram(f"output {out} out of range")
            if kinds[out] != POINT:
                raise MalformedProgram(f"output {out} is not a point node")


@dataclass(frozen=True, slots=True)
class Trace:
    """A fully resolved execution record of a program on concrete seeds."""

    program: Program
    seed_values: tuple[Point, ...]
    resolved: tuple[Point | ResolvedCircle, ...]
    circle_count: int

    def output_points(self) -> tuple[Point, ...]:
        return tuple(self.resolved[i] for i in self.program.outputs)


@dataclass(frozen=True, slots=True)
class AuditReport:
    seeds: int
    circles: int
    picks: int


def execute(program: Program, seeds: Sequence[Point],
            tol: Tolerance = DEFAULT_TOL) -> Trace:
    """Run a program on concrete seed points, resolving every node in order.

    Execution is a pure function of its arguments; identical inputs give
    bit-identical traces.
    """
    if len(seeds) != program.seed_count:
        raise MalformedProgram(
            f"program wants {program.seed_count} seeds, got {len(seeds)}")
    for p in seeds:
        if not (math.isfinite(p.x) and math.isfinite(p.y)):
            raise NonFiniteInput(f"non-finite seed {p}")

    resolved: list[Point | ResolvedCircle] = []
    circles = 0
    for i, step in enumerate(program.steps):
        if isinstance(step, Seed):
            if i != step.slot or i >= program.seed_count:
                raise MalformedProgram(f"step {i}: misplaced seed")
            resolved.append(seeds[step.slot])
        elif isinstance(step, CircleStep):
            center = resolved[step.center]
            through = resolved[step.through]
            if not (isinstance(center, Point) and isinstance(through, Point)):
                raise MalformedProgram(f"step {i}: circle over non-point nodes")
            resolved.append(circle_from(center, through, tol))
            circles += 1
        elif isinstance(step, PickStep):
            c1 = resolved[step.c1]
            c2 = resolved[step.c2]
            if not (isinstance(c1, ResolvedCircle) and isinstance(c2, ResolvedCircle)):
                raise MalformedProgram(f"step {i}: pick over non-circle nodes")
            resolved.append(_select(circle_circle_intersect(c1, c2, tol), step.which, i))
        else:
            raise MalformedProgram(f"step {i}: unknown step kind {step!r}")
    return Trace(program, tuple(seeds), tuple(resolved), circles)


def _select(outcome, which: Selector, at_step: int) -> Point:
    if isinstance(outcome, TwoPoints):
        return outcome.left if which is Selector.LEFT else outcome.right
    if isinstance(outcome, Tangent):
        return outcome.point  # a tangency satisfies both selectors
    if isinstance(outcome, NoIntersection):
        raise NoSuchIntersection(f"step {at_step}: circles do not meet")
    if isinstance(outcome, Coincident):
        raise CoincidentCircles(f"step {at_step}: pick on coincident circles")
    raise MalformedProgram(f"step {at_step}: unknown outcome {outcome!r}")


def rebase(host: Program, guest: Program, seed_map: Sequence[int]) -> Program:
    """Inline ``guest`` into ``host``, feeding the guest's seeds from the host
    nodes named in ``seed_map``.

    The guest's non-seed steps are appended with references rewired; the
    result's outputs are the guest's outputs, remapped. Executing the result
    replays the guest construction "as if" the mapped host points were its
    starting points.
    """
    if len(seed_map) != guest.seed_count:
        raise InvalidNodeId(
            f"seed_map has {len(seed_map)} entries for {guest.seed_count} seeds")
    host_kinds = host.node_kinds()
    for ref in seed_map:
        if not 0 <= ref < len(host.steps):
            raise InvalidNodeId(f"seed_map entry {ref} outside host program")
        if host_kinds[ref] != POINT:
            raise InvalidNodeId(f"seed_map entry {ref} is not a point node")

    steps = list(host.steps)
    mapping: dict[int, int] = {}
    for i, step in enumerate(guest.steps):
        if isinstance(step, Seed):
            mapping[i] = seed_map[step.slot]
        elif isinstance(step, CircleStep):
            steps.append(CircleStep(mapping[step.center], mapping[step.through]))
            mapping[i] = len(steps) - 1
        elif isinstance(step, PickStep):
            steps.append(PickStep(mapping[step.c1], mapping[step.c2], step.which))
            mapping[i] = len(steps) - 1
        else:
            raise MalformedProgram(f"guest step {i}: unknown step kind {step!r}")
    outputs = tuple(mapping[o] for o in guest.outputs)
    return Program(host.seed_count, tuple(steps), outputs)


def empty_program(seed_count: int, outputs: Sequence[int] = ()) -> Program:
    """A program that draws nothing and outputs (some of) its seeds."""
    steps = tuple(Seed(i) for i in range(seed_count))
    return Program(seed_count, steps, tuple(outputs))


def swap_selectors(program: Program) -> Program:
    """Flip every pick's selector. On a program whose seeds all lie on a
    mirror axis, this produces the mirror-image (complex-conjugate) outputs."""
    steps = tuple(PickStep(s.c1, s.c2, s.which.other()) if isinstance(s, PickStep) else s
                  for s in program.steps)
    return Program(program.seed_count, steps, program.outputs)


def ancestors(program: Program, node: int) -> set[int]:
    """All nodes the given node depends on, itself included."""
    if not 0 <= node < len(program.steps):
        raise InvalidNodeId(f"node {node} outside program")
    need: set[int] = set()
    stack = [node]
    while stack:
        i = stack.pop()
        if i in need:
            continue
        need.add(i)
        step = program.steps[i]
        if isinstance(step, CircleStep):
            stack.extend((step.center, step.through))
        elif isinstance(step, PickStep):
            stack.extend((step.c1, step.c2))
    return need


def slice_to_pair_basis(program: Program, node: int) -> Program:
    """Extract the sub-construction of ``node`` as a two-seed program.

    The slice must depend only on the program's first two seeds; those
    become the new slots 0 and 1. Used to lift a point out of a larger
    construction so it can be rewired onto another basis.
    """
    need = ancestors(program, node)
    used_slots = {program.steps[i].slot for i in need
                  if isinstance(program.steps[i], Seed)}
    if not used_slots <= {0, 1}:
        raise InvalidNodeId(
            f"node {node} depends on seeds {sorted(used_slots)}, not just 0 and 1")
    if program.seed_count < 2:
        raise InvalidNodeId("pair-basis slice needs a program with at least 2 seeds")
    remap = {0: 0, 1: 1}
    steps: list[Step] = [Seed(0), Seed(1)]
    for i in range(program.seed_count, len(program.steps)):
        if i not in need:
            continue
        step = program.steps[i]
        if isinstance(step, CircleStep):
            steps.append(CircleStep(remap[step.center], remap[step.through]))
        else:
            steps.append(PickStep(remap[step.c1], remap[step.c2], step.which))
        remap[i] = len(steps) - 1
    return Program(2, tuple(steps), (remap[node],))


def similarity_transport_check(program: Program, seeds: Sequence[Point],
                               p: Point, q: Point,
                               tol: Tolerance = DEFAULT_TOL) -> bool:
    """Check that the program commutes with the orientation-preserving
    similarity z -> p + (q - p) z.

    Executes once on ``seeds`` and once on the similarity images of the
    seeds, then compares outputs against the similarity images of the
    original outputs, within eps_abs * max(1, |q - p|).
    """
    w = complex(q.x - p.x, q.y - p.y)
    if w == 0:
        raise DegenerateCircle("similarity with q = p is not a similarity")

    def sim(pt: Point) -> Point:
        z = complex(p.x, p.y) + w * complex(pt.x, pt.y)
        return Point(z.real, z.imag)

    base = execute(program, seeds, tol)
    moved = execute(program, [sim(s) for s in seeds], tol)
    limit = tol.eps_abs * max(1.0, abs(w))
    for out, expect_src in zip(moved.output_points(), base.output_points()):
        expect = sim(expect_src)
        if math.hypot(out.x - expect.x, out.y - expect.y) > limit:
            return False
    return True


def purity_audit(trace: Trace) -> AuditReport:
    """Validate that a trace is made of compass steps only and report counts.

    Traces built by ``execute`` pass by construction; the audit exists so
    records deserialized from files can be checked mechanically.
    """
    program = trace.program
    if len(trace.resolved) != len(program.steps):
        raise MalformedTrace("resolved values do not cover the steps")
    seeds = circles = picks = 0
    for i, step in enumerate(program.steps):
        value = trace.resolved[i]
        if isinstance(step, Seed):
            seeds += 1
            if not isinstance(value, Point):
                raise MalformedTrace(f"step {i}: seed resolved to non-point")
        elif isinstance(step, CircleStep):
            circles += 1
            if not isinstance(value, ResolvedCircle):
                raise MalformedTrace(f"step {i}: circle resolved to non-circle")
        elif isinstance(step, PickStep):
            picks += 1
            if not isinstance(value, Point):
                raise MalformedTrace(f"step {i}: pick resolved to non-point")
        else:
            raise MalformedTrace(f"step {i}: non-compass step kind {step!r}")
    if seeds != program.seed_count:
        raise MalformedTrace("seed step count disagrees with seed_count")
    if circles != trace.circle_count:
        raise MalformedTrace("circle_count disagrees with the steps")
    return AuditReport(seeds=seeds, circles=circles, picks=picks)


class Builder:
    """Grows a program and its trace together.

    Construction routines need the resolved coordinates while they build
    (to choose selectors, scaling factors, retry poles), so the builder
    resolves each step as it is appended. The finished object is still a
    pure compass program; the coordinates only informed which program got
    built.

    Drawing the same (center, through) node pair twice reuses the existing
    circle node, which is what keeps e.g. the segment-bisection figure at
    its canonical circle count.
    """

    def __init__(self, seeds: Sequence[Point], tol: Tolerance = DEFAULT_TOL):
        self.tol = tol
        self._steps: list[Step] = []
        self._values: list[Point | ResolvedCircle] = []
        self._circle_cache: dict[tuple[int, int], int] = {}
        self._circle_count = 0
        for i, p in enumerate(seeds):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise NonFiniteInput(f"non-finite seed {p}")
            self._steps.append(Seed(i))
            self._values.append(p)
        self.seed_count = len(self._steps)

    def __len__(self) -> int:
        return len(self._steps)

    def point(self, node: int) -> Point:
        value = self._values[node]
        if not isinstance(value, Point):
            raise MalformedProgram(f"node {node} is not a point")
        return value

    def circle_value(self, node: int) -> ResolvedCircle:
        value = self._values[node]
        if not isinstance(value, ResolvedCircle):
            raise MalformedProgram(f"node {node} is not a circle")
        return value

    def circle(self, center: int, through: int) -> int:
        key = (center, through)
        hit = self._circle_cache.get(key)
        if hit is not None:
            return hit
        value = circle_from(self.point(center), self.point(through), self.tol)
        self._steps.append(CircleStep(center, through))
        self._values.append(value)
        node = len(self._steps) - 1
        self._circle_cache[key] = node
        self._circle_count += 1
        return node

    def outcome_of(self, c1: int, c2: int):
        """Peek at the intersection outcome without appending a pick."""
        return circle_circle_intersect(self.circle_value(c1), self.circle_value(c2),
                                       self.tol)

    def _append_pick(self, c1: int, c2: int, which: Selector, value: Point) -> int:
        self._steps.append(PickStep(c1, c2, which))
        self._values.append(value)
        return len(self._steps) - 1

    def pick(self, c1: int, c2: int, which: Selector) -> int:
        outcome = self.outcome_of(c1, c2)
        value = _select(outcome, which, len(self._steps))
        return self._append_pick(c1, c2, which, value)

    def both(self, c1: int, c2: int) -> tuple[int, int]:
        """Left and right picks; a tangency yields the same point twice."""
        outcome = self.outcome_of(c1, c2)
        left = _select(outcome, Selector.LEFT, len(self._steps))
        right = _select(outcome, Selector.RIGHT, len(self._steps))
        return (self._append_pick(c1, c2, Selector.LEFT, left),
                self._append_pick(c1, c2, Selector.RIGHT, right))

    def pick_other(self, c1: int, c2: int, avoid: int) -> int:
        """The intersection point that is not the point at node ``avoid``.

        On tangency there is only one point and it is returned regardless,
        per the both-selectors rule.
        """
        outcome = self.outcome_of(c1, c2)
        a = self.point(avoid)
        if isinstance(outcome, TwoPoints):
            d_left = math.hypot(outcome.left.x - a.x, outcome.left.y - a.y)
            d_right = math.hypot(outcome.right.x - a.x, outcome.right.y - a.y)
            which = Selector.LEFT if d_left >= d_right else Selector.RIGHT
            value = outcome.left if which is Selector.LEFT else outcome.right
            return self._append_pick(c1, c2, which, value)
        value = _select(outcome, Selector.LEFT, len(self._steps))
        return self._append_pick(c1, c2, Selector.LEFT, value)

    def inline(self, guest: Program, seed_map: Sequence[int]) -> tuple[int, ...]:
        """Append a program's non-seed steps, rewiring its seeds onto existing
        nodes; returns the guest's outputs as nodes of this builder."""
        if len(seed_map) != guest.seed_count:
            raise InvalidNodeId(
                f"seed_map has {len(seed_map)} entries for {guest.seed_count} seeds")
        mapping: dict[int, int] = {}
        for i, step in enumerate(guest.steps):
            if isinstance(step, Seed):
                node = seed_map[step.slot]
                self.point(node)  # kind + range check
                mapping[i] = node
            elif isinstance(step, CircleStep):
                mapping[i] = self.circle(mapping[step.center], mapping[step.through])
            elif isinstance(step, PickStep):
                mapping[i] = self.pick(mapping[step.c1], mapping[step.c2], step.which)
            else:
                raise MalformedProgram(f"guest step {i}: unknown step kind {step!r}")
        return tuple(mapping[o] for o in guest.outputs)

    def mark(self) -> tuple[int, int]:
        """Checkpoint for speculative building (see ``rollback``)."""
        return (len(self._steps), self._circle_count)

    def rollback(self, mark: tuple[int, int]) -> None:
        """Discard steps appended after ``mark``; used by retrying routines."""
        n, circles = mark
        del self._steps[n:]
        del self._values[n:]
        self._circle_count = circles
        self._circle_cache = {k: v for k, v in self._circle_cache.items() if v < n}

    def finish(self, outputs: Sequence[int]) -> tuple[Program, Trace]:
        program = Program(self.seed_count, tuple(self._steps), tuple(outputs))
        trace = Trace(program, tuple(self._values[:self.seed_count]),
                      tuple(self._values), self._circle_count)
        return program, trace
