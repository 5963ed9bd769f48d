import math

import pytest

from compass import field_ops as F
from compass.constructions import midpoint
from compass.fuzz import SplitMix64, _ValuePool
from compass.geom import Point
from compass.oracle import (
    oracle_complex_add,
    oracle_complex_conj,
    oracle_complex_mul,
)
from compass.program import execute, purity_audit

SQRT15_4 = math.sqrt(15.0) / 4.0


def close(p, x, y, tol=1e-9):
    assert p.x == pytest.approx(x, abs=tol), p
    assert p.y == pytest.approx(y, abs=tol), p


def test_seeds_and_minus_one():
    assert F.zero().value == Point(0.0, 0.0)
    assert F.one().value == Point(1.0, 0.0)
    close(F.minus_one().value, -1.0, 0.0)


def test_alpha_value():
    close(F.alpha().value, 0.75, SQRT15_4, tol=1e-12)


def test_neg_examples():
    close(F.neg(F.one()).value, -1.0, 0.0)
    close(F.neg(F.zero()).value, 0.0, 0.0)
    a = F.alpha()
    close(F.neg(a).value, -0.75, -SQRT15_4, tol=1e-7)


def test_add_examples():
    close(F.add(F.one(), F.one()).value, 2.0, 0.0)
    a = F.alpha()
    close(F.add(a, F.zero()).value, a.value.x, a.value.y)
    two = F.add(F.one(), F.one())
    close(F.add(two, F.minus_one()).value, 1.0, 0.0)


def test_mul_examples():
    two = F.add(F.one(), F.one())
    close(F.mul(two, two).value, 4.0, 0.0)
    a = F.alpha()
    close(F.mul(a, F.one()).value, a.value.x, a.value.y)
    close(F.mul(a, F.conj(a)).value, 1.5, 0.0, tol=1e-7)


def test_mul_zero_basis_short_circuits():
    product = F.mul(F.zero(), F.alpha())
    assert product.collapsed
    assert product.value == Point(0.0, 0.0)
    assert product.program.circle_count() == 0  # no collapsed replay executed


def test_conj_examples():
    a = F.alpha()
    close(F.conj(a).value, 0.75, -SQRT15_4, tol=1e-9)
    h = F.demo_half()
    close(F.conj(h).value, 0.5, 0.0, tol=1e-7)  # real axis is fixed, via tangency
    back = F.conj(F.conj(a))
    close(back.value, a.value.x, a.value.y, tol=1e-8)


def test_conj_near_seeds_short_circuits():
    # conjugating 0 or 1 would degenerate the circles; fixed points return as-is
    assert F.conj(F.zero()).value == Point(0.0, 0.0)
    assert F.conj(F.one()).value == Point(1.0, 0.0)


def test_demo_half():
    h = F.demo_half()
    close(h.value, 0.5, 0.0, tol=1e-7)
    # transported to arbitrary seeds it lands on their midpoint
    p, q = Point(1, 1), Point(3, 1)
    trace = execute(h.program, (p, q))
    close(trace.output_points()[0], 2.0, 1.0, tol=1e-7)
    report = purity_audit(trace)
    assert report.circles == trace.circle_count


def test_demo_half_agrees_with_midpoint_route():
    # two independent compass routes to the same point
    h = F.demo_half()
    m = midpoint(Point(0, 0), Point(1, 0))
    assert math.hypot(h.value.x - m.x, h.value.y - m.y) <= 1e-7


def test_witness_required():
    from compass.errors import MalformedProgram
    from compass.program import empty_program
    with pytest.raises(MalformedProgram):
        F.value_from_program(empty_program(3, (0,)))


def _depth_tol(*values):
    steps = sum(len(v.program.steps) for v in values)
    return 1e-9 * (1 + steps)


def test_ring_axioms_numerically():
    from compass.geom import DEFAULT_TOL
    pool = _ValuePool(DEFAULT_TOL)
    rng = SplitMix64(31)
    for _ in range(40):
        a = pool.draw(rng, 3)
        b = pool.draw(rng, 3)
        c = pool.draw(rng, 3)
        comm_add = (F.add(a, b), F.add(b, a))
        tol = _depth_tol(*comm_add)
        assert math.hypot(comm_add[0].value.x - comm_add[1].value.x,
                          comm_add[0].value.y - comm_add[1].value.y) <= tol
        comm_mul = (F.mul(a, b), F.mul(b, a))
        tol = _depth_tol(*comm_mul)
        assert math.hypot(comm_mul[0].value.x - comm_mul[1].value.x,
                          comm_mul[0].value.y - comm_mul[1].value.y) <= tol
        left = F.mul(a, F.add(b, c))
        right = F.add(F.mul(a, b), F.mul(a, c))
        tol = _depth_tol(left, right)
        assert math.hypot(left.value.x - right.value.x,
                          left.value.y - right.value.y) <= tol


def test_random_values_match_complex_oracle():
    from compass.geom import DEFAULT_TOL
    pool = _ValuePool(DEFAULT_TOL)
    rng = SplitMix64(37)
    for _ in range(60):
        a = pool.draw(rng, 2)
        b = pool.draw(rng, 2)
        got = F.mul(a, b).value
        want = oracle_complex_mul(a.value, b.value)
        assert math.hypot(got.x - want.x, got.y - want.y) <= 1e-6
        got = F.add(a, b).value
        want = oracle_complex_add(a.value, b.value)
        assert math.hypot(got.x - want.x, got.y - want.y) <= 1e-6
        got = F.conj(a).value
        want = oracle_complex_conj(a.value)
        assert math.hypot(got.x - want.x, got.y - want.y) <= 1e-6
