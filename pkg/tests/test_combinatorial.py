from __future__ import annotations

import itertools
import random

import pytest

from boofdeg.combinatorial import (
    DecisionTree,
    ProfileError,
    block_sensitivity,
    combinatorial_profile,
    decision_tree_depth,
    sensitive_indices,
)
from boofdeg.truthtable import (
    TruthTable,
    and_table,
    constant,
    maj_table,
    or_table,
    xor_table,
)


# -- oracles ------------------------------------------------------------

def _oracle_certificate(f, x):
    """Plain increasing-size subset scan, no pruning."""
    base = f.value(x)
    for size in range(f.n + 1):
        for combo in itertools.combinations(range(f.n), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            free = ~mask & (f.size - 1)
            t = free
            ok = True
            while True:
                if f.value((x & mask) | t) != base:
                    ok = False
                    break
                if t == 0:
                    break
                t = (t - 1) & free
            if ok:
                return size
    raise AssertionError


def _oracle_block_sens(f, x):
    """Max disjoint packing over every sensitive block, minimal or not."""
    base = f.value(x)
    blocks = [b for b in range(1, f.size) if f.value(x ^ b) != base]

    def best(free):
        top = 0
        for b in blocks:
            if not b & ~free:
                top = max(top, 1 + best(free & ~b))
        return top

    return best(f.size - 1)


def _depth_reachable(n):
    """Truth-table sets computable by depth <= d trees, by closure.

    Start from the constants and repeatedly graft one query on top of
    two already-computable tables.  Entirely structural, no minimax.
    """
    full = (1 << (1 << n)) - 1
    selectors = []
    for v in range(n):
        sel = 0
        for x in range(1 << n):
            if x >> v & 1:
                sel |= 1 << x
        selectors.append(sel)
    levels = [{0, full}]
    while len(levels) <= n:
        prev = levels[-1]
        nxt = set(prev)
        for sel in selectors:
            for t0 in prev:
                for t1 in prev:
                    nxt.add((t1 & sel) | (t0 & ~sel))
        levels.append(nxt)
    return levels


def _oracle_depth(levels, mask):
    return next(d for d, s in enumerate(levels) if mask in s)


# -- frozen examples ----------------------------------------------------

def test_or_profile():
    p = combinatorial_profile(or_table(3))
    assert p.s == 3 and p.s0_at[0] == 0
    assert p.bs == 3
    assert p.c0 == 3 and p.c1 == 1
    doc = p.to_json()
    assert doc["C0_at"]["vars"] == [1, 2, 3]


def test_xor_profile():
    p = combinatorial_profile(xor_table(2))
    assert (p.s, p.bs, p.c0, p.c1) == (2, 2, 2, 2)


def test_and_profile():
    p = combinatorial_profile(and_table(2))
    assert (p.s0, p.s1, p.c0, p.c1) == (1, 2, 1, 2)


def test_maj_profile():
    p = combinatorial_profile(maj_table(3))
    assert p.s == p.bs == p.c == 2


def test_constant_profile():
    p = combinatorial_profile(constant(3, 0))
    assert p.s == p.bs == p.c == 0
    assert p.s1_at is None and p.c1_at is None


def test_sensitive_indices_listing():
    assert sensitive_indices(or_table(3), 0) == [0, 1, 2]
    assert sensitive_indices(or_table(3), 0b111) == []
    assert sensitive_indices(or_table(3), 0b001) == [0]


# -- oracle cross-checks ------------------------------------------------

def test_certificates_match_plain_scan():
    rng = random.Random(21)
    for _ in range(40):
        f = TruthTable(4, rng.randrange(1 << 16))
        p = combinatorial_profile(f)
        want0 = max(
            (_oracle_certificate(f, x) for x in f.zeros()), default=0
        )
        want1 = max(
            (_oracle_certificate(f, x) for x in f.ones()), default=0
        )
        assert (p.c0, p.c1) == (want0, want1), f.mask


def test_block_packing_matches_unrestricted_search():
    rng = random.Random(22)
    for _ in range(40):
        f = TruthTable(4, rng.randrange(1 << 16))
        p = combinatorial_profile(f)
        want = max(_oracle_block_sens(f, x) for x in range(f.size))
        assert p.bs == want, f.mask


def test_measure_chain_exhaustive_small():
    for mask in range(256):
        f = TruthTable(3, mask)
        p = combinatorial_profile(f)
        assert p.s <= p.bs <= p.c <= max(1, p.s * p.bs)


def test_measure_chain_random():
    rng = random.Random(23)
    for _ in range(50):
        f = TruthTable(5, rng.randrange(1 << 32))
        p = combinatorial_profile(f)
        assert p.s <= p.bs <= p.c


def _random_monotone(rng, n):
    mask = 0
    for _ in range(rng.randint(1, 4)):
        seed = rng.randrange(1 << n)
        for x in range(1 << n):
            if x & seed == seed:
                mask |= 1 << x
    return TruthTable(n, mask)


def test_monotone_collapse():
    # on monotone functions the three measures coincide
    rng = random.Random(24)
    for _ in range(30):
        f = _random_monotone(rng, 4)
        p = combinatorial_profile(f)
        assert p.s == p.bs == p.c, f.mask


def test_arity_caps():
    with pytest.raises(ProfileError):
        combinatorial_profile(constant(13, 0))
    with pytest.raises(ProfileError):
        block_sensitivity(constant(7, 0))
    assert combinatorial_profile(or_table(7)).bs is None


# -- decision trees -----------------------------------------------------

def test_tree_depth_examples():
    for n in (1, 2, 3, 4, 5):
        d, tree = decision_tree_depth(xor_table(n))
        assert d == n and tree.depth() == n
    assert decision_tree_depth(constant(3, 1))[0] == 0
    assert decision_tree_depth(maj_table(3))[0] == 3
    assert decision_tree_depth(or_table(4))[0] == 4


def test_tree_replays_function():
    rng = random.Random(25)
    for _ in range(30):
        f = TruthTable(4, rng.randrange(1 << 16))
        d, tree = decision_tree_depth(f)
        for x in range(f.size):
            assert tree.evaluate(x) == f.value(x)
        assert tree.depth() == d


def test_tree_depth_matches_closure_oracle():
    levels = _depth_reachable(3)
    for mask in range(256):
        f = TruthTable(3, mask)
        assert decision_tree_depth(f)[0] == _oracle_depth(levels, mask), mask


def test_depth_bounded_by_certificate_product():
    for mask in range(256):
        f = TruthTable(3, mask)
        p = combinatorial_profile(f)
        d, _ = decision_tree_depth(f)
        assert d <= max(1, p.c0 * p.c1) if not f.is_constant() else d == 0


def test_tree_json_shape():
    _, tree = decision_tree_depth(single := TruthTable(2, 0b1010))
    doc = tree.to_json()
    assert doc == {"leaf": 1} or "query" in doc
    assert tree.evaluate(0b01) == single.value(0b01)


def test_tree_cap():
    with pytest.raises(ProfileError):
        decision_tree_depth(constant(6, 0))
