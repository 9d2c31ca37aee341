"""Truth table encoding, substitution, composition, and NPN classes."""

from __future__ import annotations

import random

import pytest

from boofdeg.truthtable import (
    CompositionError,
    NpnTransform,
    Substitution,
    TableError,
    TruthTable,
    and_table,
    complement,
    compose_disjoint,
    constant,
    enumerate_npn_classes,
    from_bits,
    from_hex,
    maj_table,
    nand_table,
    npn_canonical,
    npn_orbit_masks,
    or_table,
    restriction,
    single_var,
    substitute,
    to_hex,
    xor_table,
)


def test_hex_codec_frozen_examples():
    assert to_hex(and_table(2)) == "8"
    assert to_hex(or_table(2)) == "E"
    assert to_hex(xor_table(2)) == "6"
    assert from_hex("8", 2).mask == and_table(2).mask
    assert from_hex("E", 2).mask == or_table(2).mask


def test_hex_codec_bit_convention():
    # bit index i encodes the input with x1 as the least significant bit,
    # so x1 alone at n=2 is bits {1, 3} = 0b1010 = "A"
    assert to_hex(single_var(2, 0)) == "A"
    assert to_hex(single_var(2, 1)) == "C"


def test_hex_codec_lengths_and_errors():
    assert to_hex(constant(0, 1)) == "1"
    assert to_hex(constant(3, 0)) == "00"
    assert len(to_hex(constant(4, 1))) == 4
    with pytest.raises(TableError):
        from_hex("8", 3)  # wrong digit count
    with pytest.raises(TableError):
        from_hex("XZ", 3)
    with pytest.raises(TableError):
        TruthTable(2, 1 << 16)


def test_hex_roundtrip_random():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(0, 7)
        f = TruthTable(n, rng.getrandbits(1 << n))
        assert from_hex(to_hex(f), n).mask == f.mask


def test_from_bits_roundtrip():
    f = from_bits([0, 1, 1, 1])
    assert f.mask == or_table(2).mask
    with pytest.raises(TableError):
        from_bits([0, 1, 1])


def test_complement_involution():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randrange(0, 5)
        f = TruthTable(n, rng.getrandbits(1 << n))
        assert complement(complement(f)).mask == f.mask
        assert complement(f).mask == f.mask ^ ((1 << f.size) - 1)


def test_substitute_fix_to_one():
    # AND(x1, x2) with x2 := 1 is the identity on one variable
    f = and_table(2)
    sub = Substitution.assign(2, {1: 1})
    g = substitute(f, sub)
    assert g.n == 1 and g.mask == single_var(1, 0).mask


def test_substitute_identify_variables():
    # OR(x1, x2) with both mapped to the same fresh variable
    sub = Substitution(2, 1, (("var", 0), ("var", 0)))
    g = substitute(or_table(2), sub)
    assert g.mask == single_var(1, 0).mask


def test_substitute_negation():
    # XOR(x1, x2) with x2 := 1 - y1, x1 := y1 gives constant 1
    sub = Substitution(2, 1, (("var", 0), ("neg", 0)))
    g = substitute(xor_table(2), sub)
    assert g.mask == constant(1, 1).mask


def test_substitute_validation():
    with pytest.raises(TableError):
        Substitution(2, 2, (("var", 0), ("var", 0)))  # y2 unused
    with pytest.raises(TableError):
        Substitution(1, 1, (("one", 0),))
    with pytest.raises(TableError):
        substitute(or_table(2), Substitution.identity(3))


def _oracle_compose(outer, inners, x):
    # independent route: decode blocks and evaluate directly
    z = 0
    off = 0
    for i, g in enumerate(inners):
        block = (x >> off) & ((1 << g.n) - 1)
        z |= g.value(block) << i
        off += g.n
    return outer.value(z)


def test_compose_disjoint_example_and_oracle():
    h = compose_disjoint(or_table(2), [and_table(2), and_table(2)])
    assert h.n == 4
    for x in range(16):
        a = ((x >> 0) & 1) & ((x >> 1) & 1)
        b = ((x >> 2) & 1) & ((x >> 3) & 1)
        assert h.value(x) == (a | b)
    rng = random.Random(11)
    for _ in range(30):
        outer = TruthTable(2, rng.getrandbits(4))
        inners = []
        ok = True
        for _ in range(2):
            g = TruthTable(2, rng.getrandbits(4))
            if any(not g.depends_on(i) for i in range(g.n)):
                ok = False
            inners.append(g)
        if not ok:
            continue
        h = compose_disjoint(outer, inners)
        for x in range(h.size):
            assert h.value(x) == _oracle_compose(outer, inners, x)


def test_compose_disjoint_relevance_precondition():
    with pytest.raises(CompositionError):
        compose_disjoint(or_table(2), [and_table(2), constant(1, 1)])


def test_restriction_helper():
    g = restriction(maj_table(3), {0: 1})
    assert g.mask == or_table(2).mask


def test_npn_and_nand_same_class():
    c1, _ = npn_canonical(and_table(2))
    c2, _ = npn_canonical(nand_table(2))
    assert c1.mask == c2.mask


def test_npn_or_with_negated_input():
    # x1 OR (NOT x2) is NPN-equivalent to OR_2
    f = TruthTable(2, 0)
    for x in range(4):
        v = ((x >> 0) & 1) | (1 - ((x >> 1) & 1))
        if v:
            f = TruthTable(2, f.mask | (1 << x))
    c1, _ = npn_canonical(f)
    c2, _ = npn_canonical(or_table(2))
    assert c1.mask == c2.mask


def test_npn_transform_reproduces_function():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randrange(1, 4)
        f = TruthTable(n, rng.getrandbits(1 << n))
        canon, t = npn_canonical(f)
        assert t.apply(canon).mask == f.mask
        assert canon.mask <= f.mask


def test_npn_transform_inverse_roundtrip():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randrange(1, 5)
        f = TruthTable(n, rng.getrandbits(1 << n))
        perm = list(range(n))
        rng.shuffle(perm)
        t = NpnTransform(tuple(perm), rng.getrandbits(n), rng.random() < 0.5)
        g = t.apply(f)
        assert t.inverse().apply(g).mask == f.mask


def test_npn_class_count_n2_frozen():
    # oracle: partition all 16 tables by orbit membership, computed the
    # slow way, and compare with the enumerator
    reps = list(enumerate_npn_classes(2))
    assert len(reps) == 4
    covered = set()
    for f, size in reps:
        orbit = npn_orbit_masks(f)
        assert len(orbit) == size
        assert min(orbit) == f.mask
        assert npn_canonical(f)[0].mask == f.mask
        covered |= orbit
    assert covered == set(range(16))


def test_npn_class_sizes_sum_n3():
    reps = list(enumerate_npn_classes(3))
    assert sum(size for _, size in reps) == 256
    masks = [f.mask for f, _ in reps]
    assert masks == sorted(masks)
