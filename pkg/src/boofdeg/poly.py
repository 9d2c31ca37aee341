"""Polynomials used by the degree measures.

MultilinearPoly is a sparse map from monomial bitmasks (subset of
variables) to exact rational coefficients; multiplication takes unions
of masks, which is exactly multilinear reduction over {0,1} inputs.
UnivariatePoly is a dense coefficient list, used for weight-space
(symmetrized) arguments.

Serialization: a multilinear polynomial becomes a JSON object mapping
comma-joined sorted 1-based variable indices to "p/q" strings, with ""
for the constant term.
"""

from dataclasses import dataclass, field

from .rational import Q, parse_rat, rat_str
from .truthtable import TruthTable


@dataclass(frozen=True)
class MultilinearPoly:
    n: int
    coeffs: dict = field(default_factory=dict)  # mask -> Q, zero values absent

    @classmethod
    def build(cls, n: int, items) -> "MultilinearPoly":
        d = {}
        for mask, c in dict(items).items():
            c = Q(c)
            if c:
                if not 0 <= mask < (1 << n):
                    raise ValueError("monomial mask %d out of range" % mask)
                d[mask] = c
        return cls(n, d)

    @classmethod
    def zero(cls, n: int) -> "MultilinearPoly":
        return cls(n, {})

    @classmethod
    def const(cls, n: int, c) -> "MultilinearPoly":
        return cls.build(n, {0: Q(c)})

    @classmethod
    def variable(cls, n: int, i: int) -> "MultilinearPoly":
        return cls.build(n, {1 << i: 1})

    def degree(self) -> int:
        """Max monomial size; the zero polynomial has degree 0 by the
        package convention."""
        if not self.coeffs:
            return 0
        return max(bin(m).count("1") for m in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, x: int):
        """Value at the cube point encoded by x (bit i = x_{i+1})."""
        total = Q(0)
        for mask, c in self.coeffs.items():
            if mask & x == mask:
                total += c
        return total

    def values(self):
        return [self.evaluate(x) for x in range(1 << self.n)]

    def __add__(self, other):
        if isinstance(other, (int, type(Q(0)))):
            other = MultilinearPoly.const(self.n, other)
        d = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = d.get(m, Q(0)) + c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return MultilinearPoly(self.n, d)

    def __neg__(self):
        return MultilinearPoly(self.n, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultilinearPoly) else -Q(other))

    def __mul__(self, other):
        if isinstance(other, MultilinearPoly):
            d = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = m1 | m2
                    v = d.get(m, Q(0)) + c1 * c2
                    if v:
                        d[m] = v
                    else:
                        d.pop(m, None)
            return MultilinearPoly(self.n, d)
        c = Q(other)
        if not c:
            return MultilinearPoly.zero(self.n)
        return MultilinearPoly(self.n, {m: v * c for m, v in self.coeffs.items()})

    __rmul__ = __mul__

    def square(self) -> "MultilinearPoly":
        return self * self

    def to_json(self) -> dict:
        out = {}
        for mask in sorted(self.coeffs, key=lambda m: (bin(m).count("1"), m)):
            key = ",".join(
                str(i + 1) for i in range(self.n) if (mask >> i) & 1
            )
            out[key] = rat_str(self.coeffs[mask])
        return out

    @classmethod
    def from_json(cls, n: int, obj: dict) -> "MultilinearPoly":
        d = {}
        for key, val in obj.items():
            mask = 0
            if key:
                for part in key.split(","):
                    i = int(part)
                    if not 1 <= i <= n:
                        raise ValueError("variable index %d out of range" % i)
                    mask |= 1 << (i - 1)
            d[mask] = parse_rat(val)
        return cls.build(n, d)


def mobius_transform(f: TruthTable) -> MultilinearPoly:
    """Exact multilinear interpolation of f over the rationals.

    Coefficient of monomial S is sum over T subseteq S of
    (-1)^{|S| - |T|} f(T); computed by the in-place subset transform in
    O(2^n n) integer operations.
    """
    n = f.n
    vals = f.bits()
    for i in range(n):
        bit = 1 << i
        for x in range(1 << n):
            if x & bit:
                vals[x] = vals[x] - vals[x ^ bit]
    return MultilinearPoly.build(n, {m: v for m, v in enumerate(vals) if v})


@dataclass(frozen=True)
class UnivariatePoly:
    """Dense exact polynomial in one variable t."""

    coeffs: tuple  # low to high, no trailing zeros

    @classmethod
    def build(cls, coeffs) -> "UnivariatePoly":
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    def degree(self) -> int:
        return max(0, len(self.coeffs) - 1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, t):
        total = Q(0)
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    def shift_argument(self, s: int) -> "UnivariatePoly":
        """p(t + s) expanded exactly via binomials."""
        from math import comb

        out = [Q(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            for j in range(k + 1):
                out[j] += c * comb(k, j) * (Q(s) ** (k - j))
        return UnivariatePoly.build(out)

    def scale(self, a) -> "UnivariatePoly":
        return UnivariatePoly.build([c * Q(a) for c in self.coeffs])

    def add_const(self, a) -> "UnivariatePoly":
        cs = list(self.coeffs) or [Q(0)]
        cs[0] += Q(a)
        return UnivariatePoly.build(cs)

    def to_json(self) -> list:
        return [rat_str(c) for c in self.coeffs]


def interpolate_univariate(points) -> UnivariatePoly:
    """Exact Lagrange interpolation through (t_i, v_i) pairs."""
    pts = list(points)
    k = len(pts)
    coeffs = [Q(0)] * max(1, k)
    for i, (ti, vi) in enumerate(pts):
        # basis polynomial prod_{j != i} (t - tj) / (ti - tj)
        basis = [Q(1)]
        denom = Q(1)
        for j, (tj, _) in enumerate(pts):
            if j == i:
                continue
            new = [Q(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                new[d] -= c * tj
                new[d + 1] += c
            basis = new
            denom *= Q(ti) - Q(tj)
        f = Q(vi) / denom
        for d, c in enumerate(basis):
            coeffs[d] += c * f
    return UnivariatePoly.build(coeffs)


def lift_symmetric(n: int, u: UnivariatePoly) -> MultilinearPoly:
    """Multilinear polynomial p(x) = u(|x|); degree equals deg(u).

    Written in the elementary-subset basis: t^j expanded over weights
    via e_j = sum of all size-j monomials, using u(|x|) =
    sum_j c_j binom(|x|, j) after a change of basis.
    """
    d = u.degree()
    if u.is_zero():
        return MultilinearPoly.zero(n)
    # Newton forward differences give u(t) = sum_j newton[j] binom(t, j)
    vals = [u.evaluate(k) for k in range(d + 1)]
    diffs = list(vals)
    newton = []
    for j in range(d + 1):
        newton.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    # u(t) = sum_j newton[j] * binom(t, j); binom(|x|, j) = e_j(x)
    coeffs = {}
    for j, bj in enumerate(newton):
        if not bj:
            continue
        for mask in _masks_of_size(n, j):
            coeffs[mask] = coeffs.get(mask, Q(0)) + bj
    return MultilinearPoly.build(n, coeffs)


def _masks_of_size(n, j):
    from itertools import combinations

    for sub in combinations(range(n), j):
        m = 0
        for i in sub:
            m |= 1 << i
        yield m
