"""JSON serialization of traces.

The document stores seeds with their coordinates, every circle and pick
step (picks carry their resolved point), and the named outputs. Node ids
are dense and reference strictly earlier ids. Coordinates are written with
17 significant digits so a parse/re-serialize round trip is byte-identical
and loses nothing of the doubles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import MalformedTrace
from .geom import DEFAULT_TOL, Point, ResolvedCircle, Tolerance
from .program import (
    CircleStep,
    PickStep,
    Program,
    Seed,
    Selector,
    Trace,
    purity_audit,
)

VERSION = 1


@dataclass(frozen=True, slots=True)
class SeedRecord:
    id: int
    name: str | None
    x: float
    y: float


@dataclass(frozen=True, slots=True)
class CircleRecord:
    id: int
    center: int
    through: int


@dataclass(frozen=True, slots=True)
class PickRecord:
    id: int
    c1: int
    c2: int
    selector: str
    x: float
    y: float


@dataclass(frozen=True, slots=True)
class OutputRecord:
    name: str
    id: int


@dataclass(frozen=True, slots=True)
class TraceDocument:
    version: int
    seeds: tuple[SeedRecord, ...]
    steps: tuple[CircleRecord | PickRecord, ...]
    outputs: tuple[OutputRecord, ...]


def _f(x: float) -> str:
    return f"{x:.17g}"


def document_from_trace(trace: Trace,
                        seed_names: tuple[str | None, ...] = (),
                        output_names: tuple[str, ...] = ()) -> TraceDocument:
    program = trace.program
    seeds = []
    for i in range(program.seed_count):
        name = seed_names[i] if i < len(seed_names) else None
        value = trace.resolved[i]
        assert isinstance(value, Point)
        seeds.append(SeedRecord(i, name, value.x, value.y))
    steps: list[CircleRecord | PickRecord] = []
    for i in range(program.seed_count, len(program.steps)):
        step = program.steps[i]
        if isinstance(step, CircleStep):
            steps.append(CircleRecord(i, step.center, step.through))
        elif isinstance(step, PickStep):
            value = trace.resolved[i]
            assert isinstance(value, Point)
            steps.append(PickRecord(i, step.c1, step.c2, step.which.value,
                                    value.x, value.y))
        else:
            raise MalformedTrace(f"step {i}: unknown step kind {step!r}")
    if output_names and len(output_names) != len(program.outputs):
        raise MalformedTrace("output names do not match program outputs")
    outputs = tuple(
        OutputRecord(output_names[k] if output_names else f"out{k}", node)
        for k, node in enumerate(program.outputs))
    return TraceDocument(VERSION, tuple(seeds), tuple(steps), outputs)


def dumps(doc: TraceDocument) -> str:
    """Serialize with fixed key order and 17-significant-digit coordinates."""
    parts = [f'{{"version":{doc.version},"seeds":[']
    parts.append(",".join(
        f'{{"id":{s.id}'
        + (f',"name":{json.dumps(s.name)}' if s.name is not None else "")
        + f',"x":{_f(s.x)},"y":{_f(s.y)}}}'
        for s in doc.seeds))
    parts.append('],"steps":[')
    chunks = []
    for s in doc.steps:
        if isinstance(s, CircleRecord):
            chunks.append(f'{{"id":{s.id},"op":"circle","center":{s.center},'
                          f'"through":{s.through}}}')
        else:
            chunks.append(f'{{"id":{s.id},"op":"pick","c1":{s.c1},"c2":{s.c2},'
                          f'"selector":"{s.selector}","x":{_f(s.x)},"y":{_f(s.y)}}}')
    parts.append(",".join(chunks))
    parts.append('],"outputs":[')
    parts.append(",".join(f'{{"name":{json.dumps(o.name)},"id":{o.id}}}'
                          for o in doc.outputs))
    parts.append("]}")
    return "".join(parts) + "\n"


def _as_int(obj, key, where) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise MalformedTrace(f"{where}: {key!r} must be an integer")
    return value


def _as_float(obj, key, where) -> float:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedTrace(f"{where}: {key!r} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise MalformedTrace(f"{where}: {key!r} must be finite")
    return value


def loads(text: str) -> TraceDocument:
    """Parse and validate a document; MalformedTrace on anything off-schema."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedTrace(f"not valid JSON: {err}") from err
    if not isinstance(data, dict):
        raise MalformedTrace("document must be a JSON object")
    version = data.get("version")
    if version != VERSION:
        raise MalformedTrace(f"unsupported version {version!r}")
    raw_seeds = data.get("seeds")
    raw_steps = data.get("steps")
    raw_outputs = data.get("outputs")
    if not (isinstance(raw_seeds, list) and isinstance(raw_steps, list)
            and isinstance(raw_outputs, list)):
        raise MalformedTrace("seeds, steps, and outputs must be arrays")
    if not raw_seeds:
        raise MalformedTrace("a trace needs at least one seed")

    kinds: list[str] = []
    seeds = []
    for i, obj in enumerate(raw_seeds):
        if not isinstance(obj, dict):
            raise MalformedTrace(f"seed {i}: must be an object")
        if _as_int(obj, "id", f"seed {i}") != i:
            raise MalformedTrace(f"seed {i}: ids must be dense and in order")
        name = obj.get("name")
        if name is not None and not isinstance(name, str):
            raise MalformedTrace(f"seed {i}: name must be a string")
        seeds.append(SeedRecord(i, name, _as_float(obj, "x", f"seed {i}"),
                                _as_float(obj, "y", f"seed {i}")))
        kinds.append("point")

    steps: list[CircleRecord | PickRecord] = []
    for k, obj in enumerate(raw_steps):
        where = f"step {k}"
        if not isinstance(obj, dict):
            raise MalformedTrace(f"{where}: must be an object")
        ident = _as_int(obj, "id", where)
        if ident != len(kinds):
            raise MalformedTrace(f"{where}: ids must be dense and in order")
        op = obj.get("op")
        if op == "circle":
            center = _as_int(obj, "center", where)
            through = _as_int(obj, "through", where)
            for ref in (center, through):
                if not 0 <= ref < ident or kinds[ref] != "point":
                    raise MalformedTrace(f"{where}: bad point reference {ref}")
            steps.append(CircleRecord(ident, center, through))
            kinds.append("circle")
        elif op == "pick":
            c1 = _as_int(obj, "c1", where)
            c2 = _as_int(obj, "c2", where)
            for ref in (c1, c2):
                if not 0 <= ref < ident or kinds[ref] != "circle":
                    raise MalformedTrace(f"{where}: bad circle reference {ref}")
            selector = obj.get("selector")
            if selector not in ("left", "right"):
                raise MalformedTrace(f"{where}: bad selector {selector!r}")
            steps.append(PickRecord(ident, c1, c2, selector,
                                    _as_float(obj, "x", where),
                                    _as_float(obj, "y", where)))
            kinds.append("point")
        else:
            raise MalformedTrace(f"{where}: unknown step kind {op!r}")

    outputs = []
    for k, obj in enumerate(raw_outputs):
        if not isinstance(obj, dict) or not isinstance(obj.get("name"), str):
            raise MalformedTrace(f"output {k}: must be an object with a name")
        ident = _as_int(obj, "id", f"output {k}")
        if not 0 <= ident < len(kinds) or kinds[ident] != "point":
            raise MalformedTrace(f"output {k}: id {ident} is not a point node")
        outputs.append(OutputRecord(obj["name"], ident))

    return TraceDocument(VERSION, tuple(seeds), tuple(steps), tuple(outputs))


def trace_from_document(doc: TraceDocument,
                        tol: Tolerance = DEFAULT_TOL) -> Trace:
    """Rebuild an in-memory trace; the result passes the purity audit."""
    steps: list = [Seed(i) for i in range(len(doc.seeds))]
    resolved: list[Point | ResolvedCircle] = [Point(s.x, s.y) for s in doc.seeds]
    circles = 0
    for record in doc.steps:
        if isinstance(record, CircleRecord):
            steps.append(CircleStep(record.center, record.through))
            center = resolved[record.center]
            through = resolved[record.through]
            assert isinstance(center, Point) and isinstance(through, Point)
            radius = math.hypot(through.x - center.x, through.y - center.y)
            if radius <= tol.eps_degenerate:
                raise MalformedTrace(f"step {record.id}: degenerate circle")
            resolved.append(ResolvedCircle(center, radius))
            circles += 1
        else:
            steps.append(PickStep(record.c1, record.c2,
                                  Selector(record.selector)))
            resolved.append(Point(record.x, record.y))
    program = Program(len(doc.seeds), tuple(steps),
                      tuple(o.id for o in doc.outputs))
    program.validate()
    trace = Trace(program, tuple(resolved[:len(doc.seeds)]), tuple(resolved),
                  circles)
    purity_audit(trace)
    return trace
