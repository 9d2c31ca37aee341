"""Query-style complexity measures with witnesses that replay.

Sensitivity counts single bits that flip the output, block sensitivity
packs disjoint groups of bits that do, certificate complexity measures
the smallest assignment that pins the output down, and the decision
tree depth is the classic adaptive query count.  Everything is computed
by definition-level search and every reported witness is rechecked
before it leaves this module.
"""

import itertools
from dataclasses import dataclass

from .truthtable import TruthTable

SENS_CAP = 12
BLOCK_CAP = 6
TREE_CAP = 5


class ProfileError(ValueError):
    pass


def sensitive_indices(f: TruthTable, x: int):
    """Variables whose single flip changes f at x, ascending."""
    base = f.value(x)
    return [i for i in range(f.n) if f.value(x ^ (1 << i)) != base]


def _forces(f, x, var_mask, base):
    """Does fixing the var_mask variables to their values at x pin f?"""
    free = ~var_mask & (f.size - 1)
    anchor = x & var_mask
    t = free
    while True:
        if f.value(anchor | t) != base:
            return False
        if t == 0:
            return True
        t = (t - 1) & free


def _min_certificate(f, x):
    """Smallest forcing variable set at x, as a mask.

    Every forcing set must contain every sensitive index (a loose
    sensitive bit would flip the value inside the subcube), so the
    search runs over supersets of the sensitive set in increasing size.
    """
    base = f.value(x)
    sens = 0
    for i in sensitive_indices(f, x):
        sens |= 1 << i
    rest = [i for i in range(f.n) if not sens >> i & 1]
    for extra in range(len(rest) + 1):
        for combo in itertools.combinations(rest, extra):
            m = sens
            for i in combo:
                m |= 1 << i
            if _forces(f, x, m, base):
                return m
    raise AssertionError("fixing every variable always forces the value")


def _minimal_blocks(f, x):
    """Sensitive blocks at x that stay insensitive under any single-bit
    removal.  Restricting to these loses no packing: shrinking a block
    of an optimal disjoint family keeps the family disjoint."""
    base = f.value(x)
    out = []
    for b in range(1, f.size):
        if f.value(x ^ b) == base:
            continue
        keep = True
        bb = b
        while bb:
            low = bb & -bb
            bb ^= low
            if b ^ low and f.value(x ^ (b ^ low)) != base:
                keep = False
                break
        if keep:
            out.append(b)
    return out


def _max_packing(blocks, full):
    """Largest pairwise disjoint subfamily, with the blocks chosen."""
    memo = {}

    def best(free):
        got = memo.get(free)
        if got is None:
            count, pick = 0, ()
            for b in blocks:
                if b & ~free:
                    continue
                c, p = best(free & ~b)
                if c + 1 > count:
                    count, pick = c + 1, (b,) + p
            memo[free] = got = (count, pick)
        return got

    return best(full)


@dataclass(frozen=True)
class CombinatorialProfile:
    """Per-side and overall values of s, bs, and C with their anchors.

    Each witness is (input, payload): the sensitive index tuple for s,
    the disjoint block masks for bs, the forcing variable mask for C.
    A side with no inputs (constant functions) scores 0 with no
    witness.  Block sensitivity is None past its arity cap.
    """

    n: int
    s0: int
    s1: int
    c0: int
    c1: int
    bs0: "int | None"
    bs1: "int | None"
    s0_at: "tuple | None"
    s1_at: "tuple | None"
    c0_at: "tuple | None"
    c1_at: "tuple | None"
    bs0_at: "tuple | None"
    bs1_at: "tuple | None"

    @property
    def s(self):
        return max(self.s0, self.s1)

    @property
    def c(self):
        return max(self.c0, self.c1)

    @property
    def bs(self):
        if self.bs0 is None or self.bs1 is None:
            return None
        return max(self.bs0, self.bs1)

    def to_json(self):
        def vars_of(mask):
            return [i + 1 for i in range(self.n) if mask >> i & 1]

        out = {
            "s0": self.s0, "s1": self.s1, "s": self.s,
            "C0": self.c0, "C1": self.c1, "C": self.c,
            "bs0": self.bs0, "bs1": self.bs1, "bs": self.bs,
        }
        if self.s0_at is not None:
            out["s0_at"] = {"input": self.s0_at[0],
                            "vars": [i + 1 for i in self.s0_at[1]]}
        if self.s1_at is not None:
            out["s1_at"] = {"input": self.s1_at[0],
                            "vars": [i + 1 for i in self.s1_at[1]]}
        if self.c0_at is not None:
            out["C0_at"] = {"input": self.c0_at[0],
                            "vars": vars_of(self.c0_at[1])}
        if self.c1_at is not None:
            out["C1_at"] = {"input": self.c1_at[0],
                            "vars": vars_of(self.c1_at[1])}
        if self.bs0_at is not None:
            out["bs0_at"] = {"input": self.bs0_at[0],
                             "blocks": [vars_of(b) for b in self.bs0_at[1]]}
        if self.bs1_at is not None:
            out["bs1_at"] = {"input": self.bs1_at[0],
                             "blocks": [vars_of(b) for b in self.bs1_at[1]]}
        return out


def _check_profile(f, prof):
    for at, expect in ((prof.s0_at, 0), (prof.s1_at, 1)):
        if at is None:
            continue
        x, idxs = at
        assert f.value(x) == expect
        for i in idxs:
            assert f.value(x ^ (1 << i)) != f.value(x)
    for at in (prof.c0_at, prof.c1_at):
        if at is None:
            continue
        x, mask = at
        assert _forces(f, x, mask, f.value(x))
    for at in (prof.bs0_at, prof.bs1_at):
        if at is None:
            continue
        x, blocks = at
        seen = 0
        for b in blocks:
            assert b and not (b & seen), "blocks overlap"
            seen |= b
            assert f.value(x ^ b) != f.value(x)


def combinatorial_profile(f: TruthTable) -> CombinatorialProfile:
    if f.n > SENS_CAP:
        raise ProfileError("profile capped at %d inputs" % SENS_CAP)
    with_blocks = f.n <= BLOCK_CAP
    best = {
        (0, "s"): (-1, None), (1, "s"): (-1, None),
        (0, "c"): (-1, None), (1, "c"): (-1, None),
        (0, "b"): (-1, None), (1, "b"): (-1, None),
    }
    for x in range(f.size):
        side = f.value(x)
        sens = sensitive_indices(f, x)
        if len(sens) > best[(side, "s")][0]:
            best[(side, "s")] = (len(sens), (x, tuple(sens)))
        cert = _min_certificate(f, x)
        csize = cert.bit_count()
        if csize > best[(side, "c")][0]:
            best[(side, "c")] = (csize, (x, cert))
        if with_blocks:
            count, pick = _max_packing(_minimal_blocks(f, x), f.size - 1)
            if count > best[(side, "b")][0]:
                best[(side, "b")] = (count, (x, pick))

    def unpack(side, tag):
        v, at = best[(side, tag)]
        return (0, None) if v < 0 else (v, at)

    s0, s0_at = unpack(0, "s")
    s1, s1_at = unpack(1, "s")
    c0, c0_at = unpack(0, "c")
    c1, c1_at = unpack(1, "c")
    if with_blocks:
        bs0, bs0_at = unpack(0, "b")
        bs1, bs1_at = unpack(1, "b")
    else:
        bs0 = bs1 = bs0_at = bs1_at = None
    prof = CombinatorialProfile(
        f.n, s0, s1, c0, c1, bs0, bs1,
        s0_at, s1_at, c0_at, c1_at, bs0_at, bs1_at,
    )
    _check_profile(f, prof)
    return prof


def block_sensitivity(f: TruthTable) -> CombinatorialProfile:
    if f.n > BLOCK_CAP:
        raise ProfileError("block packing capped at %d inputs" % BLOCK_CAP)
    return combinatorial_profile(f)


# -- decision trees -----------------------------------------------------

@dataclass(frozen=True)
class DecisionTree:
    """Either a leaf carrying a value or a query on one variable."""

    leaf: "int | None" = None
    var: "int | None" = None
    low: "DecisionTree | None" = None
    high: "DecisionTree | None" = None

    def depth(self) -> int:
        if self.leaf is not None:
            return 0
        return 1 + max(self.low.depth(), self.high.depth())

    def evaluate(self, x: int) -> int:
        node = self
        while node.leaf is None:
            node = node.high if x >> node.var & 1 else node.low
        return node.leaf

    def to_json(self):
        if self.leaf is not None:
            return {"leaf": self.leaf}
        return {
            "query": self.var + 1,
            "if0": self.low.to_json(),
            "if1": self.high.to_json(),
        }


def _split(k, mask, i):
    """Truth tables of the two restrictions of variable i, renumbered."""
    lo = hi = 0
    for y in range(1 << (k - 1)):
        x = ((y >> i) << (i + 1)) | (y & ((1 << i) - 1))
        if mask >> x & 1:
            lo |= 1 << y
        if mask >> (x | (1 << i)) & 1:
            hi |= 1 << y
    return lo, hi


def decision_tree_depth(f: TruthTable):
    """(depth, tree) for an optimal adaptive query strategy.

    Minimax over restrictions: a constant costs nothing, otherwise pick
    the variable whose worse branch is cheapest.  States are memoized on
    the restricted truth table alone, which is sound because the cost of
    a table does not depend on which original variables its columns came
    from.  The emitted tree replays f on every input.
    """
    if f.n > TREE_CAP:
        raise ProfileError("tree search capped at %d inputs" % TREE_CAP)
    memo = {}

    def solve(k, mask):
        if mask == 0 or mask == (1 << (1 << k)) - 1:
            return 0, None
        got = memo.get((k, mask))
        if got is None:
            got = (k + 1, None)
            for i in range(k):
                lo, hi = _split(k, mask, i)
                d = 1 + max(solve(k - 1, lo)[0], solve(k - 1, hi)[0])
                if d < got[0]:
                    got = (d, i)
            memo[(k, mask)] = got
        return got

    def build(k, mask, names):
        if mask == 0:
            return DecisionTree(leaf=0)
        if mask == (1 << (1 << k)) - 1:
            return DecisionTree(leaf=1)
        _, i = solve(k, mask)
        lo, hi = _split(k, mask, i)
        rest = names[:i] + names[i + 1:]
        return DecisionTree(
            var=names[i],
            low=build(k - 1, lo, rest),
            high=build(k - 1, hi, rest),
        )

    depth, _ = solve(f.n, f.mask)
    tree = build(f.n, f.mask, list(range(f.n)))
    assert tree.depth() == depth
    for x in range(f.size):
        assert tree.evaluate(x) == f.value(x)
    return depth, tree
