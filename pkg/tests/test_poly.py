"""Multilinear and univariate polynomial arithmetic."""

from __future__ import annotations

import random

from boofdeg.poly import (
    MultilinearPoly,
    UnivariatePoly,
    interpolate_univariate,
    lift_symmetric,
    mobius_transform,
)
from boofdeg.rational import Q
from boofdeg.truthtable import (
    TruthTable,
    and_table,
    constant,
    maj_table,
    or_table,
    xor_table,
)


def test_mobius_and2():
    p = mobius_transform(and_table(2))
    assert p.coeffs == {0b11: Q(1)}
    assert p.degree() == 2


def test_mobius_xor2():
    p = mobius_transform(xor_table(2))
    assert p.coeffs == {0b01: Q(1), 0b10: Q(1), 0b11: Q(-2)}


def test_mobius_constants():
    assert mobius_transform(constant(3, 0)).is_zero()
    assert mobius_transform(constant(3, 1)).coeffs == {0: Q(1)}
    assert mobius_transform(constant(3, 1)).degree() == 0
    assert mobius_transform(constant(0, 0)).degree() == 0


def test_mobius_interpolates():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randrange(0, 5)
        f = TruthTable(n, rng.getrandbits(1 << n))
        p = mobius_transform(f)
        for x in range(f.size):
            assert p.evaluate(x) == f.value(x)


def test_multilinear_degree_examples():
    assert mobius_transform(and_table(2)).degree() == 2
    assert mobius_transform(or_table(3)).degree() == 3
    assert mobius_transform(xor_table(4)).degree() == 4
    assert mobius_transform(maj_table(3)).degree() == 3  # -2x1x2x3 term


def test_product_is_pointwise_product():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randrange(1, 4)
        p = MultilinearPoly.build(
            n,
            {
                rng.randrange(1 << n): Q(rng.randrange(-3, 4), rng.randrange(1, 3))
                for _ in range(4)
            },
        )
        q = MultilinearPoly.build(
            n, {rng.randrange(1 << n): Q(rng.randrange(-3, 4)) for _ in range(4)}
        )
        prod = p * q
        assert prod.degree() <= n
        for x in range(1 << n):
            assert prod.evaluate(x) == p.evaluate(x) * q.evaluate(x)


def test_add_sub_scalar_ops():
    p = MultilinearPoly.build(2, {0b01: 1})
    q = MultilinearPoly.build(2, {0b01: -1, 0b10: 2})
    s = p + q
    assert s.coeffs == {0b10: Q(2)}
    assert (2 * p).coeffs == {0b01: Q(2)}
    assert (p - p).is_zero()
    assert (p - p).degree() == 0  # zero polynomial convention


def test_json_roundtrip():
    p = MultilinearPoly.build(3, {0: Q(1, 3), 0b101: Q(-2, 7), 0b111: 2})
    obj = p.to_json()
    assert obj[""] == "1/3"
    assert obj["1,3"] == "-2/7"
    assert obj["1,2,3"] == "2"
    q = MultilinearPoly.from_json(3, obj)
    assert q.coeffs == p.coeffs


def test_univariate_eval_and_shift():
    u = UnivariatePoly.build([1, -2, 1])  # (t-1)^2
    assert u.evaluate(3) == 4
    v = u.shift_argument(1)  # t^2
    assert v.evaluate(5) == 25
    assert u.scale(Q(1, 2)).evaluate(3) == 2
    assert u.add_const(5).evaluate(1) == 5


def test_interpolate_univariate():
    pts = [(0, Q(1)), (1, Q(0)), (2, Q(1))]
    u = interpolate_univariate(pts)
    assert u.degree() == 2
    for t, v in pts:
        assert u.evaluate(t) == v


def test_lift_symmetric_matches_weight():
    rng = random.Random(12)
    for _ in range(30):
        d = rng.randrange(0, 4)
        u = UnivariatePoly.build(
            [Q(rng.randrange(-3, 4), rng.randrange(1, 4)) for _ in range(d + 1)]
        )
        n = rng.randrange(max(1, d), 6)
        p = lift_symmetric(n, u)
        assert p.degree() <= max(0, u.degree())
        for x in range(1 << n):
            assert p.evaluate(x) == u.evaluate(bin(x).count("1"))
