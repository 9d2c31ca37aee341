"""Structural classification: monotone/unate/symmetric flags, alternation
counts over monotone paths, and maximal/minimal terms.

A monotone path is a chain 0^n = x^0 < x^1 < ... < x^n = 1^n in the
bit-dominance order, each step setting one more bit.  alt(f) is the
maximum number of value changes of f along such a chain; constants get
alt 0.  A function is a zebra when every chain sees the same number of
changes.
"""

from dataclasses import dataclass, field

from .truthtable import TruthTable, symmetric_profile_of


@dataclass
class ClassReport:
    monotone: str  # "increasing" | "decreasing" | "none"
    unate: bool
    unate_orientation: tuple | None  # per-variable sign bits, 1 = negated
    symmetric: bool
    symmetric_profile: tuple | None
    relevant_vars: tuple

    def to_json(self):
        return {
            "monotone": self.monotone,
            "unate": self.unate,
            "unate_orientation": list(self.unate_orientation)
            if self.unate_orientation is not None
            else None,
            "symmetric": self.symmetric,
            "symmetric_profile": list(self.symmetric_profile)
            if self.symmetric_profile is not None
            else None,
            "relevant_vars": [i + 1 for i in self.relevant_vars],
        }


def _var_direction(f: TruthTable, i: int):
    """(nondecreasing?, nonincreasing?) in variable i."""
    up = down = True
    bit = 1 << i
    for x in range(f.size):
        if x & bit:
            continue
        lo, hi = f.value(x), f.value(x | bit)
        if lo > hi:
            up = False
        if lo < hi:
            down = False
        if not up and not down:
            break
    return up, down


def classify(f: TruthTable) -> ClassReport:
    """Monotone / unate / symmetric report.

    Constants count as monotone increasing and get the all-positive
    orientation; an irrelevant variable is treated as positive when
    choosing the unate orientation.
    """
    ups, downs = [], []
    for i in range(f.n):
        u, d = _var_direction(f, i)
        ups.append(u)
        downs.append(d)
    if all(ups):
        mono = "increasing"
    elif all(downs):
        mono = "decreasing"
    else:
        mono = "none"
    unate = all(u or d for u, d in zip(ups, downs))
    orientation = None
    if unate:
        orientation = tuple(0 if ups[i] else 1 for i in range(f.n))
    prof = symmetric_profile_of(f)
    return ClassReport(
        monotone=mono,
        unate=unate,
        unate_orientation=orientation,
        symmetric=prof is not None,
        symmetric_profile=tuple(prof) if prof is not None else None,
        relevant_vars=tuple(f.relevant_vars()),
    )


@dataclass
class AlternationReport:
    """max/min alternation over monotone chains, via the layered DP.

    alt(x, y) over a subinterval is the same DP restricted to the
    interval [x, y] of the dominance order (this is the interval
    interpretation of the two-point alternation count).
    """

    max_alt: int
    min_alt: int
    is_zebra: bool
    max_table: dict = field(repr=False, default=None)
    min_table: dict = field(repr=False, default=None)

    def to_json(self):
        return {
            "max_alt": self.max_alt,
            "min_alt": self.min_alt,
            "is_zebra": self.is_zebra,
        }


def _interval_points(x: int, y: int):
    """Points of [x, y] in dominance order, grouped free-bit count."""
    free = y & ~x
    freebits = [i for i in range(free.bit_length()) if (free >> i) & 1]
    pts = []
    for pick in range(1 << len(freebits)):
        z = x
        for j, b in enumerate(freebits):
            if (pick >> j) & 1:
                z |= 1 << b
        pts.append(z)
    return freebits, pts


def alternation_interval(f: TruthTable, x: int, y: int, keep_tables=False):
    """Alternation DP over the subinterval [x, y]; x must dominate-below y."""
    if x & ~y:
        raise ValueError("interval [%d, %d] is empty" % (x, y))
    freebits, pts = _interval_points(x, y)
    pts.sort(key=lambda z: bin(z).count("1"))
    maxdp = {x: 0}
    mindp = {x: 0}
    for z in pts:
        if z == x:
            continue
        best_hi = None
        best_lo = None
        vz = f.value(z)
        for b in freebits:
            if not (z >> b) & 1:
                continue
            prev = z & ~(1 << b)
            if prev not in maxdp:
                continue
            step = 1 if f.value(prev) != vz else 0
            hi = maxdp[prev] + step
            lo = mindp[prev] + step
            if best_hi is None or hi > best_hi:
                best_hi = hi
            if best_lo is None or lo < best_lo:
                best_lo = lo
        maxdp[z] = best_hi
        mindp[z] = best_lo
    rep = AlternationReport(
        max_alt=maxdp[y],
        min_alt=mindp[y],
        is_zebra=maxdp[y] == mindp[y],
        max_table=maxdp if keep_tables else None,
        min_table=mindp if keep_tables else None,
    )
    return rep


def alternation_profile(f: TruthTable, keep_tables=False) -> AlternationReport:
    return alternation_interval(f, 0, f.size - 1, keep_tables=keep_tables)


def terms(f: TruthTable):
    """(max_terms, min_terms).

    A max term is an input u != 1^n with f(u) != f(1^n) such that every
    strictly dominating input agrees with f(1^n); min terms are the
    dual notion at the bottom.  Both lists are ascending by encoding.
    """
    n, size = f.n, f.size
    top = size - 1
    ftop = f.value(top)
    f0 = f.value(0)
    above_ok = [False] * size
    below_ok = [False] * size
    order = sorted(range(size), key=lambda z: bin(z).count("1"))
    for z in reversed(order):
        ok = True
        for b in range(n):
            if (z >> b) & 1:
                continue
            up = z | (1 << b)
            if f.value(up) != ftop or not above_ok[up]:
                ok = False
                break
        above_ok[z] = ok if z != top else True
    for z in order:
        ok = True
        for b in range(n):
            if not (z >> b) & 1:
                continue
            dn = z & ~(1 << b)
            if f.value(dn) != f0 or not below_ok[dn]:
                ok = False
                break
        below_ok[z] = ok if z != 0 else True
    max_terms = [u for u in range(size) if u != top and f.value(u) != ftop and above_ok[u]]
    min_terms = [d for d in range(size) if d != 0 and f.value(d) != f0 and below_ok[d]]
    return max_terms, min_terms
