"""Truth tables of total Boolean functions and the transforms on them.

A function f: {0,1}^n -> {0,1} is stored as a single integer whose bit i
is f at the input encoded by i, with x_1 the least significant bit of i.
So for n=2 the inputs in index order are 00, 10, 01, 11 (as x1 x2).  The
hex codec is the plain hexadecimal rendering of that integer, zero padded
to ceil(2^n / 4) digits: AND_2 is "8", OR_2 is "E", XOR_2 is "6".
"""

from dataclasses import dataclass
from itertools import combinations, permutations

STORAGE_CAP = 24


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class TruthTable:
    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.n <= STORAGE_CAP:
            raise TableError("arity %d outside [0, %d]" % (self.n, STORAGE_CAP))
        if not 0 <= self.mask < (1 << (1 << self.n)):
            raise TableError("table mask out of range for n=%d" % self.n)

    @property
    def size(self) -> int:
        return 1 << self.n

    def value(self, i: int) -> int:
        return (self.mask >> i) & 1

    def bits(self):
        return [(self.mask >> i) & 1 for i in range(self.size)]

    def ones(self):
        """Indices of 1-inputs, ascending."""
        return [i for i in range(self.size) if (self.mask >> i) & 1]

    def zeros(self):
        return [i for i in range(self.size) if not (self.mask >> i) & 1]

    def is_constant(self) -> bool:
        return self.mask == 0 or self.mask == (1 << self.size) - 1

    def depends_on(self, i: int) -> bool:
        """True when flipping x_{i+1} changes the output somewhere."""
        bit = 1 << i
        for x in range(self.size):
            if not x & bit and self.value(x) != self.value(x | bit):
                return True
        return False

    def relevant_vars(self):
        return [i for i in range(self.n) if self.depends_on(i)]

    def __str__(self):
        return "TruthTable(n=%d, hex=%s)" % (self.n, to_hex(self))


def hex_digits(n: int) -> int:
    return max(1, ((1 << n) + 3) // 4)


def from_hex(text: str, n: int) -> TruthTable:
    s = text.strip()
    want = hex_digits(n)
    if len(s) != want:
        raise TableError(
            "hex string %r has %d digits, n=%d needs %d" % (text, len(s), n, want)
        )
    try:
        mask = int(s, 16)
    except ValueError:
        raise TableError("bad hex string %r" % text) from None
    return TruthTable(n, mask)


def to_hex(f: TruthTable) -> str:
    return format(f.mask, "0%dX" % hex_digits(f.n))


def from_bits(bits) -> TruthTable:
    size = len(bits)
    n = size.bit_length() - 1
    if 1 << n != size:
        raise TableError("bit vector length %d is not a power of two" % size)
    mask = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise TableError("non-bit entry %r" % (b,))
        mask |= b << i
    return TruthTable(n, mask)


def from_function(n: int, fn) -> TruthTable:
    """Materialize fn(x) where x is the integer input encoding."""
    mask = 0
    for x in range(1 << n):
        if fn(x):
            mask |= 1 << x
    return TruthTable(n, mask)


def complement(f: TruthTable) -> TruthTable:
    return TruthTable(f.n, f.mask ^ ((1 << f.size) - 1))


# -- named tables used all over the tests and the harness --------------


def constant(n: int, v: int) -> TruthTable:
    return TruthTable(n, ((1 << (1 << n)) - 1) if v else 0)


def and_table(n: int) -> TruthTable:
    return TruthTable(n, 1 << ((1 << n) - 1))


def or_table(n: int) -> TruthTable:
    return TruthTable(n, ((1 << (1 << n)) - 1) ^ 1)


def nor_table(n: int) -> TruthTable:
    return complement(or_table(n))


def nand_table(n: int) -> TruthTable:
    return complement(and_table(n))


def xor_table(n: int) -> TruthTable:
    return from_function(n, lambda x: bin(x).count("1") & 1)


def maj_table(n: int) -> TruthTable:
    """Strict majority: 1 iff more than n/2 input bits are set."""
    return from_function(n, lambda x: 2 * bin(x).count("1") > n)


def single_var(n: int, i: int) -> TruthTable:
    return from_function(n, lambda x: (x >> i) & 1)


def weight_profile_table(profile) -> TruthTable:
    """Symmetric function from its weight profile D(0..n)."""
    n = len(profile) - 1
    return from_function(n, lambda x: profile[bin(x).count("1")])


def symmetric_profile_of(f: TruthTable):
    """Weight profile if f is symmetric, else None."""
    prof = [None] * (f.n + 1)
    for x in range(f.size):
        w = bin(x).count("1")
        v = f.value(x)
        if prof[w] is None:
            prof[w] = v
        elif prof[w] != v:
            return None
    return prof


# -- substitutions ------------------------------------------------------

ZERO_A = "zero"
ONE_A = "one"
VAR_A = "var"
NEG_A = "neg"


@dataclass(frozen=True)
class Substitution:
    """Maps each of n_in old variables to 0, 1, y_j, or 1-y_j.

    actions[i] is a pair (kind, j) with kind one of "zero", "one",
    "var", "neg"; j is the 0-based new-variable index (None for
    constants).  Every new variable index in [0, n_out) must be used by
    at least one action so the output arity is honest.
    """

    n_in: int
    n_out: int
    actions: tuple

    def __post_init__(self):
        if len(self.actions) != self.n_in:
            raise TableError("need one action per input variable")
        used = set()
        for kind, j in self.actions:
            if kind in (ZERO_A, ONE_A):
                if j is not None:
                    raise TableError("constant action carries no variable")
            elif kind in (VAR_A, NEG_A):
                if not isinstance(j, int) or not 0 <= j < self.n_out:
                    raise TableError("bad target variable %r" % (j,))
                used.add(j)
            else:
                raise TableError("unknown action kind %r" % (kind,))
        if used != set(range(self.n_out)):
            raise TableError("every output variable must be referenced")

    @classmethod
    def identity(cls, n: int) -> "Substitution":
        return cls(n, n, tuple((VAR_A, i) for i in range(n)))

    @classmethod
    def assign(cls, n: int, fixed: dict) -> "Substitution":
        """Fix some variables to bits; the rest become fresh variables
        in increasing order."""
        acts = []
        nxt = 0
        for i in range(n):
            if i in fixed:
                acts.append((ONE_A, None) if fixed[i] else (ZERO_A, None))
            else:
                acts.append((VAR_A, nxt))
                nxt += 1
        return cls(n, nxt, tuple(acts))

    def old_input_for(self, y: int) -> int:
        """Encode the old input produced by new input y."""
        x = 0
        for i, (kind, j) in enumerate(self.actions):
            if kind == ONE_A:
                x |= 1 << i
            elif kind == VAR_A:
                if (y >> j) & 1:
                    x |= 1 << i
            elif kind == NEG_A:
                if not (y >> j) & 1:
                    x |= 1 << i
        return x


def substitute(f: TruthTable, sub: Substitution) -> TruthTable:
    if sub.n_in != f.n:
        raise TableError("substitution arity %d != table arity %d" % (sub.n_in, f.n))
    mask = 0
    for y in range(1 << sub.n_out):
        if f.value(sub.old_input_for(y)):
            mask |= 1 << y
    return TruthTable(sub.n_out, mask)


def restriction(f: TruthTable, fixed: dict) -> TruthTable:
    """Shorthand: fix variables per `fixed`, renumber the rest."""
    return substitute(f, Substitution.assign(f.n, fixed))


# -- disjoint composition ----------------------------------------------


class CompositionError(TableError):
    pass


def compose_disjoint(outer: TruthTable, inners) -> TruthTable:
    """h = outer(g_1, ..., g_n) on the disjoint union of the g_i inputs.

    Block i owns the next inners[i].n variables of h, in order.  Every
    inner must depend on each of its declared variables; an irrelevant
    declared variable would make the stated arity of h dishonest, so it
    is rejected.
    """
    if len(inners) != outer.n:
        raise CompositionError(
            "outer arity %d but %d inner functions" % (outer.n, len(inners))
        )
    offsets = []
    total = 0
    for g in inners:
        for i in range(g.n):
            if not g.depends_on(i):
                raise CompositionError(
                    "inner function %s does not depend on its variable %d"
                    % (g, i + 1)
                )
        offsets.append(total)
        total += g.n
    if total > STORAGE_CAP:
        raise CompositionError("composed arity %d exceeds cap %d" % (total, STORAGE_CAP))
    mask = 0
    for x in range(1 << total):
        z = 0
        for idx, g in enumerate(inners):
            block = (x >> offsets[idx]) & ((1 << g.n) - 1)
            if g.value(block):
                z |= 1 << idx
        if outer.value(z):
            mask |= 1 << x
    return TruthTable(total, mask)


# -- NPN canonical form -------------------------------------------------

NPN_CAP = 6


@dataclass(frozen=True)
class NpnTransform:
    """g(y) = output_neg XOR f(x) with x_k = y_{perm[k]} XOR neg bit k."""

    perm: tuple
    input_neg: int
    output_neg: bool

    def apply(self, f: TruthTable) -> TruthTable:
        n = f.n
        mask = 0
        full = (1 << (1 << n)) - 1
        for y in range(1 << n):
            x = 0
            for k in range(n):
                bit = ((y >> self.perm[k]) & 1) ^ ((self.input_neg >> k) & 1)
                x |= bit << k
            if f.value(x):
                mask |= 1 << y
        if self.output_neg:
            mask ^= full
        return TruthTable(n, mask)

    def inverse(self) -> "NpnTransform":
        n = len(self.perm)
        inv = [0] * n
        for k in range(n):
            inv[self.perm[k]] = k
        neg = 0
        for j in range(n):
            if (self.input_neg >> inv[j]) & 1:
                neg |= 1 << j
        return NpnTransform(tuple(inv), neg, self.output_neg)


def _all_transforms(n: int):
    for perm in permutations(range(n)):
        for neg in range(1 << n):
            for out in (False, True):
                yield NpnTransform(perm, neg, out)


def npn_canonical(f: TruthTable):
    """Canonical representative of f's NPN class plus a transform t
    with t.apply(canonical) == f.

    The representative is the class member with the smallest table
    integer under the fixed bit encoding (equivalently the
    lexicographically least bit vector read from the high index down).
    Arity is capped at 6; the transform group already has 92160 elements
    there.
    """
    if f.n > NPN_CAP:
        raise TableError("npn_canonical capped at n <= %d" % NPN_CAP)
    best = None
    best_t = None
    for t in _all_transforms(f.n):
        g = t.apply(f)
        if best is None or g.mask < best.mask:
            best, best_t = g, t
    # best = best_t.apply(f), so f = best_t.inverse().apply(best)
    back = best_t.inverse()
    return best, back


def npn_orbit_masks(f: TruthTable):
    """All table masks NPN-equivalent to f (set of ints)."""
    out = set()
    for t in _all_transforms(f.n):
        out.add(t.apply(f).mask)
    return out


def enumerate_npn_classes(n: int):
    """Yield (canonical TruthTable, class size) for all NPN classes,
    canonical masks ascending.

    Ascending sweep: the first unseen mask is the minimum of its orbit,
    so it is the canonical representative by construction.
    """
    if n > NPN_CAP:
        raise TableError("NPN enumeration capped at n <= %d" % NPN_CAP)
    size = 1 << (1 << n)
    # precompute index maps for every (perm, neg); output negation is xor
    maps = []
    for perm in permutations(range(n)):
        for neg in range(1 << n):
            idx = []
            for y in range(1 << n):
                x = 0
                for k in range(n):
                    bit = ((y >> perm[k]) & 1) ^ ((neg >> k) & 1)
                    x |= bit << k
                idx.append(x)
            maps.append(idx)
    full = size - 1
    seen = bytearray(size)
    for mask in range(size):
        if seen[mask]:
            continue
        f = TruthTable(n, mask)
        orbit = set()
        for idx in maps:
            g = 0
            for y in range(1 << n):
                if (mask >> idx[y]) & 1:
                    g |= 1 << y
            orbit.add(g)
            orbit.add(g ^ full)
        for m in orbit:
            seen[m] = 1
        yield f, len(orbit)
