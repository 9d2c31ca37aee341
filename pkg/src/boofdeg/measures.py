"""Degree measures computed exactly, each backed by a verified witness.

Every routine here answers a question of the form "what is the least
degree of a real polynomial related to f in such-and-such a way".  All
arithmetic is rational, so a reported value is a statement about f, not
a numerical estimate.  Searches that honor a node budget degrade to a
bracket [lower, upper] that stays sound on both ends instead of
failing.
"""

import itertools
import math
import random
from dataclasses import dataclass

from .linalg import rank_nullspace
from .lp import GE, LE, lp_solve, problem
from .poly import MultilinearPoly, UnivariatePoly, mobius_transform
from .rational import Q, rat_str
from .truthtable import TruthTable, complement, symmetric_profile_of

EXACT_DEGREE_CAP = 16
LP_CAP = 8
PATTERN_CAP = 5
SMALL_ONES = 12
DEFAULT_EPS = Q(1, 3)


class MeasureError(ValueError):
    pass


class _OutOfBudget(Exception):
    """Internal: the sign-pattern search ran out of nodes."""


class _Budget:
    """Countdown over exact LP solves; None means unlimited."""

    __slots__ = ("left",)

    def __init__(self, nodes):
        self.left = nodes

    def spend(self):
        if self.left is None:
            return
        if self.left <= 0:
            raise _OutOfBudget
        self.left -= 1


# -- shared machinery ---------------------------------------------------

_MONOMIALS = {}


def _monomial_masks(n, d):
    """All variable subsets of size <= d, ascending by (size, mask)."""
    key = (n, d)
    got = _MONOMIALS.get(key)
    if got is None:
        masks = [0]
        for size in range(1, min(d, n) + 1):
            level = []
            for combo in itertools.combinations(range(n), size):
                m = 0
                for i in combo:
                    m |= 1 << i
                level.append(m)
            level.sort()
            masks.extend(level)
        got = _MONOMIALS[key] = tuple(masks)
    return got


def _cube_values(n, masks, coeffs):
    """Evaluate sum_m c_m prod_{i in m} x_i at every point of the cube.

    Scatter the coefficients into an array indexed by monomial mask and
    run the subset-sum transform; entry x then holds the exact value of
    the polynomial at x.
    """
    vals = [Q(0)] * (1 << n)
    for m, c in zip(masks, coeffs):
        if c:
            vals[m] += c
    for i in range(n):
        bit = 1 << i
        for x in range(1 << n):
            if x & bit:
                vals[x] += vals[x ^ bit]
    return vals


def _point_row(masks, x):
    return [Q(1) if m & x == m else Q(0) for m in masks]


def _poly_from(n, masks, coeffs):
    return MultilinearPoly.build(
        n, {m: c for m, c in zip(masks, coeffs) if c}
    )


def _bits(n, x):
    return "".join("1" if x >> i & 1 else "0" for i in range(n))


def _lazy_feasible(n, masks, lower_at, upper_at, batch=8):
    """Coefficients with lower_at[x] <= p(x) <= upper_at[x] everywhere,
    or None when no polynomial over the given monomials fits.

    Constraints enter the working LP only once the current candidate
    violates them.  A subset of the constraints being infeasible already
    settles the full question, so early exits are sound.
    """
    active = []
    coeffs = [Q(0)] * len(masks)
    while True:
        vals = _cube_values(n, masks, coeffs)
        viol = []
        for x in range(1 << n):
            lo = lower_at.get(x)
            if lo is not None and vals[x] < lo:
                viol.append((lo - vals[x], x))
                continue
            hi = upper_at.get(x)
            if hi is not None and vals[x] > hi:
                viol.append((vals[x] - hi, x))
        if not viol:
            return coeffs
        viol.sort(key=lambda t: (-t[0], t[1]))
        active.extend(x for _, x in viol[:batch])
        prob = problem(len(masks))
        for x in active:
            row = _point_row(masks, x)
            lo = lower_at.get(x)
            hi = upper_at.get(x)
            if lo is not None:
                prob.add(row, GE, lo)
            if hi is not None:
                prob.add(row, LE, hi)
        out = lp_solve(prob)
        if out.status == "infeasible":
            return None
        coeffs = out.witness


def _univariate_feasible(points, d):
    """A univariate polynomial of degree <= d fitting interval
    constraints (t, lo, hi) at integer points, or None."""
    prob = problem(d + 1)
    for t, lo, hi in points:
        row = [Q(t) ** j for j in range(d + 1)]
        if lo is not None:
            prob.add(row, GE, lo)
        if hi is not None:
            prob.add(row, LE, hi)
    out = lp_solve(prob)
    if out.status == "infeasible":
        return None
    return out.witness


# -- witness record -----------------------------------------------------

@dataclass(frozen=True)
class DegreeWitness:
    """Outcome of one degree-measure computation.

    When the search completed, value is the exact answer and equals both
    bracket ends.  A budget-limited search leaves value as None and
    reports lower <= true value <= upper instead.  The witness always
    certifies the upper end: it meets the measure's pointwise
    constraints at degree at most upper, and verify() rechecks that
    claim on the whole cube.
    """

    measure: str
    lower: int
    upper: int
    value: "int | None"
    kind: str  # exact-interpolation | rank-nullspace | lp-feasible | sign-pattern
    witness: object
    basis: str = "multilinear"
    epsilon: object = None
    sign_pattern: "dict | None" = None  # 1-input mask -> +1 or -1
    timed_out: bool = False

    @property
    def exact(self):
        return self.value is not None

    def to_json(self):
        out = {
            "measure": self.measure,
            "lower": self.lower,
            "upper": self.upper,
            "value": self.value,
            "kind": self.kind,
            "basis": self.basis,
            "timed_out": self.timed_out,
        }
        if self.epsilon is not None:
            out["epsilon"] = rat_str(self.epsilon)
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.sign_pattern is not None:
            out["sign_pattern"] = {
                str(x): s for x, s in sorted(self.sign_pattern.items())
            }
        return out

    def verify(self, f: TruthTable):
        """Recheck the witness at every cube point; raise on any gap."""
        n = f.n
        if self.basis == "symmetric-univariate":
            per_weight = [self.witness.evaluate(k) for k in range(n + 1)]
            vals = [per_weight[x.bit_count()] for x in range(1 << n)]
            wdeg = self.witness.degree()
        else:
            if self.witness.n != n:
                raise MeasureError("witness arity does not match the table")
            vals = self.witness.values()
            wdeg = self.witness.degree()
        if wdeg > self.upper:
            raise MeasureError(
                "witness degree %d exceeds the certified %d" % (wdeg, self.upper)
            )
        m = self.measure
        if m == "approx-ndeg":
            ones = set(f.ones())
            extra = set(self.sign_pattern) - ones
            if extra:
                raise MeasureError("sign pattern mentions 0-inputs")
        for x in range(1 << n):
            v = vals[x]
            fx = f.value(x)
            if m == "deg":
                ok = v == fx
            elif m == "ndeg":
                ok = (v == 0) == (fx == 0)
            elif m == "sign-degree":
                ok = v <= -1 if fx else v >= 1
            elif m == "approx-degree":
                ok = abs(v - fx) <= self.epsilon
            elif m == "approx-ndeg":
                if fx:
                    s = self.sign_pattern.get(x)
                    ok = s in (1, -1) and s * v >= 1
                else:
                    ok = abs(v) <= self.epsilon
            else:
                raise MeasureError("unknown measure %r" % m)
            if not ok:
                raise MeasureError(
                    "%s witness fails at input %s" % (m, _bits(n, x))
                )
        if m == "deg" and wdeg != self.value:
            raise MeasureError("interpolant degree disagrees with the value")


# -- cache --------------------------------------------------------------

_CACHE = {}


def clear_measure_cache():
    _CACHE.clear()


def _cached(key):
    return _CACHE.get(key)


def _remember(key, wit):
    if wit.exact:
        _CACHE[key] = wit
    return wit


# -- the measures -------------------------------------------------------

def exact_degree(f: TruthTable) -> DegreeWitness:
    """Degree of the unique multilinear interpolant of f."""
    if f.n > EXACT_DEGREE_CAP:
        raise MeasureError("exact degree capped at %d inputs" % EXACT_DEGREE_CAP)
    key = ("deg", f.n, f.mask)
    got = _cached(key)
    if got is not None:
        return got
    p = mobius_transform(f)
    d = p.degree()
    wit = DegreeWitness("deg", d, d, d, "exact-interpolation", p)
    wit.verify(f)
    return _remember(key, wit)


def ndeg(f: TruthTable) -> DegreeWitness:
    """Least degree of a polynomial that is zero exactly on f's 0-inputs.

    For each candidate degree the polynomials vanishing on the 0-inputs
    form a linear space; f admits a witness at that degree if and only
    if no 1-input is a common zero of the space.  That is a rank
    question per 1-input.  The returned polynomial is a random small
    combination of nullspace basis vectors, redrawn until it avoids
    every 1-input, then verified.
    """
    if f.n > LP_CAP:
        raise MeasureError("ndeg capped at %d inputs" % LP_CAP)
    key = ("ndeg", f.n, f.mask)
    got = _cached(key)
    if got is not None:
        return got
    n = f.n
    ones = list(f.ones())
    zeros = list(f.zeros())
    if not ones:
        wit = DegreeWitness(
            "ndeg", 0, 0, 0, "rank-nullspace", MultilinearPoly.zero(n)
        )
        wit.verify(f)
        return _remember(key, wit)
    rng = random.Random(0x5EED)
    for d in range(n + 1):
        masks = _monomial_masks(n, d)
        if zeros:
            rows = [_point_row(masks, z) for z in zeros]
            _, basis = rank_nullspace(rows)
        else:
            basis = [
                [Q(1) if j == i else Q(0) for j in range(len(masks))]
                for i in range(len(masks))
            ]
        if not basis:
            continue
        tables = [_cube_values(n, masks, b) for b in basis]
        if any(all(t[x] == 0 for t in tables) for x in ones):
            continue
        while True:
            weights = [Q(rng.randint(-99, 99)) for _ in basis]
            combo = [
                sum((w * b[j] for w, b in zip(weights, basis)), Q(0))
                for j in range(len(masks))
            ]
            vals = _cube_values(n, masks, combo)
            if all(vals[x] != 0 for x in ones):
                break
        wit = DegreeWitness(
            "ndeg", d, d, d, "rank-nullspace", _poly_from(n, masks, combo)
        )
        wit.verify(f)
        return _remember(key, wit)
    raise MeasureError("no vanishing witness found up to full degree")


def sign_degree(f: TruthTable) -> DegreeWitness:
    """Least degree of a polynomial negative exactly on the 1-inputs.

    The margin is normalized to 1 on both sides, which loses nothing on
    a finite domain because any separating polynomial can be scaled.
    """
    if f.n > LP_CAP:
        raise MeasureError("sign degree capped at %d inputs" % LP_CAP)
    key = ("sign", f.n, f.mask)
    got = _cached(key)
    if got is not None:
        return got
    n = f.n
    ones = list(f.ones())
    if f.is_constant():
        c = Q(-1) if ones else Q(1)
        wit = DegreeWitness(
            "sign-degree", 0, 0, 0, "lp-feasible", MultilinearPoly.const(n, c)
        )
        wit.verify(f)
        return _remember(key, wit)
    lower_at = {x: Q(1) for x in f.zeros()}
    upper_at = {x: Q(-1) for x in ones}
    for d in range(1, n + 1):
        masks = _monomial_masks(n, d)
        coeffs = _lazy_feasible(n, masks, lower_at, upper_at)
        if coeffs is not None:
            wit = DegreeWitness(
                "sign-degree", d, d, d, "lp-feasible",
                _poly_from(n, masks, coeffs),
            )
            wit.verify(f)
            return _remember(key, wit)
    raise MeasureError("no separating polynomial up to full degree")


def approx_degree(f: TruthTable, eps=None) -> DegreeWitness:
    """Least degree approximating f within eps at every cube point."""
    eps = DEFAULT_EPS if eps is None else Q(eps)
    if not (0 <= eps < Q(1, 2)):
        raise MeasureError("approximation error must lie in [0, 1/2)")
    if f.n > LP_CAP:
        raise MeasureError("approximate degree capped at %d inputs" % LP_CAP)
    key = ("adeg", f.n, f.mask, eps)
    got = _cached(key)
    if got is not None:
        return got
    n = f.n
    profile = symmetric_profile_of(f)
    if profile is not None:
        # Averaging an approximator over each weight level preserves the
        # error bound and can only lower the degree, so for symmetric
        # targets the univariate relaxation is the exact answer.
        pts = [(k, Q(profile[k]) - eps, Q(profile[k]) + eps) for k in range(n + 1)]
        for d in range(n + 1):
            u = _univariate_feasible(pts, d)
            if u is not None:
                wit = DegreeWitness(
                    "approx-degree", d, d, d, "lp-feasible",
                    UnivariatePoly.build(u),
                    basis="symmetric-univariate", epsilon=eps,
                )
                wit.verify(f)
                return _remember(key, wit)
        raise MeasureError("no univariate approximator up to full degree")
    lower_at = {x: Q(f.value(x)) - eps for x in range(1 << n)}
    upper_at = {x: Q(f.value(x)) + eps for x in range(1 << n)}
    for d in range(n + 1):
        masks = _monomial_masks(n, d)
        coeffs = _lazy_feasible(n, masks, lower_at, upper_at)
        if coeffs is not None:
            wit = DegreeWitness(
                "approx-degree", d, d, d, "lp-feasible",
                _poly_from(n, masks, coeffs), epsilon=eps,
            )
            wit.verify(f)
            return _remember(key, wit)
    raise MeasureError("no approximator up to full degree")


# -- sign-pattern search ------------------------------------------------

def _pattern_search(f, eps, d, budget, shared_zeros):
    """A polynomial of degree <= d with |p| <= eps on 0-inputs and
    |p| >= 1 on 1-inputs, or None if degree d provably does not suffice.

    The absolute-value floor on 1-inputs is not convex, so the search
    branches on the sign each 1-input should take.  A partial sign
    assignment is tested by an LP over the assigned inputs plus a
    growing working set of 0-input bounds; infeasibility of that subset
    rules out every completion of the assignment.  Candidate solutions
    are evaluated on the whole cube, and the first fully consistent one
    wins.  The working set persists across calls through shared_zeros
    since the 0-input constraints do not depend on d.

    The first branch fixes its sign to +1: negating a witness flips
    every sign, so half the tree is a mirror image.
    """
    n = f.n
    masks = _monomial_masks(n, d)
    ones = list(f.ones())
    zeros = list(f.zeros())
    row_cache = {}

    def rows_for(x):
        row = row_cache.get(x)
        if row is None:
            row = row_cache[x] = _point_row(masks, x)
        return row

    def consistent(assign):
        if not assign:
            return [Q(0)] * len(masks), [Q(0)] * (1 << n)
        while True:
            budget.spend()
            prob = problem(len(masks))
            for z in shared_zeros:
                row = rows_for(z)
                prob.add(row, LE, eps)
                prob.add(row, GE, -eps)
            for x, s in assign.items():
                row = rows_for(x)
                if s > 0:
                    prob.add(row, GE, 1)
                else:
                    prob.add(row, LE, -1)
            out = lp_solve(prob)
            if out.status == "infeasible":
                return None
            coeffs = out.witness
            vals = _cube_values(n, masks, coeffs)
            bad = []
            for z in zeros:
                gap = abs(vals[z]) - eps
                if gap > 0:
                    bad.append((gap, z))
            if not bad:
                return coeffs, vals
            bad.sort(key=lambda t: (-t[0], t[1]))
            shared_zeros.extend(z for _, z in bad[:8])

    def explore(assign):
        got = consistent(assign)
        if got is None:
            return None
        coeffs, vals = got
        worst = None
        worst_gap = None
        for x in ones:
            if x in assign:
                continue
            v = vals[x]
            if v >= 1 or v <= -1:
                continue
            gap = 1 - abs(v)
            if worst is None or gap > worst_gap:
                worst, worst_gap = x, gap
        if worst is None:
            pattern = {}
            for x in ones:
                s = assign.get(x)
                if s is None:
                    s = 1 if vals[x] >= 1 else -1
                pattern[x] = s
            return coeffs, pattern
        v = vals[worst]
        first = 1 if v >= 0 else -1
        branches = (first,) if not assign else (first, -first)
        for s in branches:
            assign[worst] = s
            found = explore(assign)
            if found is not None:
                return found
            del assign[worst]
        return None

    got = explore({})
    if got is None:
        return None
    coeffs, pattern = got
    return masks, coeffs, pattern


def approx_ndeg(f: TruthTable, eps=None, *, method="auto", budget=None,
                cap=None) -> DegreeWitness:
    """Least degree of p with |p| <= eps on 0-inputs and |p| >= 1 on
    1-inputs, the eps-gapped relaxation of vanishing exactly on zeros.

    method "auto" narrows the search with symmetric shortcuts before
    branching on signs; "bb" forces the branch-and-bound route alone,
    which is useful as an independent cross-check.  budget caps the
    number of exact LP solves; exceeding it returns a sound bracket
    with the best verified witness instead of an exact value.  cap
    overrides the default input-arity limit.
    """
    eps = DEFAULT_EPS if eps is None else Q(eps)
    if not (0 <= eps < 1):
        raise MeasureError("gap parameter must lie in [0, 1)")
    if method not in ("auto", "bb"):
        raise MeasureError("method must be auto or bb")
    n = f.n
    ones = list(f.ones())
    limit = PATTERN_CAP if cap is None else int(cap)
    if n > limit and len(ones) > SMALL_ONES:
        raise MeasureError(
            "sign-pattern search capped at %d inputs for dense 1-sets" % limit
        )
    key = ("andeg", n, f.mask, eps, method)
    got = _cached(key)
    if got is not None:
        return got

    if f.is_constant():
        c = Q(1) if ones else Q(0)
        wit = DegreeWitness(
            "approx-ndeg", 0, 0, 0, "sign-pattern",
            MultilinearPoly.const(n, c), epsilon=eps,
            sign_pattern={x: 1 for x in ones},
        )
        wit.verify(f)
        return _remember(key, wit)

    interp = mobius_transform(f)
    lower, upper = 1, interp.degree()
    best_witness = interp
    best_basis = "multilinear"
    best_pattern = {x: 1 for x in ones}

    if method == "auto":
        profile = symmetric_profile_of(f)
        if profile is not None:
            sb = symmetric_nd_bounds(profile, eps)
            if sb.lower > lower:
                lower = sb.lower
            if sb.upper < upper:
                upper = sb.upper
                best_witness = sb.witness
                best_basis = "symmetric-univariate"
                best_pattern = {
                    x: sb.weight_signs[x.bit_count()] for x in ones
                }
            if sb.exact:
                lower = upper = sb.upper

    timed = False
    tracker = _Budget(budget)
    shared_zeros = []
    d = lower
    while d < upper:
        try:
            found = _pattern_search(f, eps, d, tracker, shared_zeros)
        except _OutOfBudget:
            timed = True
            break
        if found is not None:
            masks, coeffs, pattern = found
            upper = d
            best_witness = _poly_from(n, masks, coeffs)
            best_basis = "multilinear"
            best_pattern = pattern
            break
        lower = d + 1
        d += 1

    wit = DegreeWitness(
        "approx-ndeg", lower, upper, None if timed else upper,
        "sign-pattern", best_witness, basis=best_basis, epsilon=eps,
        sign_pattern=best_pattern, timed_out=timed,
    )
    wit.verify(f)
    return _remember(key, wit)


@dataclass(frozen=True)
class MMeasure:
    """The two one-sided gapped degrees and their maximum."""

    n_f: DegreeWitness
    n_comp: DegreeWitness
    lower: int
    upper: int
    value: "int | None"

    def to_json(self):
        return {
            "n": self.n_f.to_json(),
            "n_complement": self.n_comp.to_json(),
            "lower": self.lower,
            "upper": self.upper,
            "value": self.value,
        }


def m_measure(f: TruthTable, eps=None, *, method="auto", budget=None,
              cap=None) -> MMeasure:
    """Gapped degree of f and of its complement, plus the max of the two.

    A budget, when given, applies to each side separately.
    """
    a = approx_ndeg(f, eps, method=method, budget=budget, cap=cap)
    b = approx_ndeg(complement(f), eps, method=method, budget=budget, cap=cap)
    lower = max(a.lower, b.lower)
    upper = max(a.upper, b.upper)
    return MMeasure(a, b, lower, upper, upper if lower == upper else None)


# -- symmetric shortcuts ------------------------------------------------

@dataclass(frozen=True)
class SymmetricBracket:
    """Bracket on the gapped degree of a symmetric function.

    upper comes from the best univariate polynomial in the Hamming
    weight; witness and weight_signs certify it.  lower is half the
    least degree of a nonnegative univariate separating the squared
    constraints, rounded up: squaring a witness and averaging it over
    each weight level yields exactly such a polynomial at twice the
    degree.  exact marks profiles whose 1-inputs all sit at weight 0 or
    n; those weight levels are single points, so plain averaging
    preserves the unit floor there and the univariate optimum is the
    true value.
    """

    lower: int
    upper: int
    exact: bool
    witness: UnivariatePoly
    weight_signs: dict

    def bracket(self):
        return self.lower, self.upper


def _signed_univariate(k0, k1, eps, d):
    """Search all sign choices on the 1-weights for a feasible
    univariate of degree <= d; first hit wins.  The leading sign is
    pinned to +1 since negation mirrors the rest."""
    for rest in itertools.product((1, -1), repeat=len(k1) - 1):
        signs = (1,) + rest
        pts = [(k, -eps, eps) for k in k0]
        for k, s in zip(k1, signs):
            if s > 0:
                pts.append((k, Q(1), None))
            else:
                pts.append((k, None, Q(-1)))
        coeffs = _univariate_feasible(pts, d)
        if coeffs is not None:
            return UnivariatePoly.build(coeffs), dict(zip(k1, signs))
    return None


def symmetric_nd_bounds(profile, eps=None) -> SymmetricBracket:
    """Sound bracket on the gapped degree of the symmetric function with
    the given weight profile."""
    eps = DEFAULT_EPS if eps is None else Q(eps)
    if not (0 <= eps < 1):
        raise MeasureError("gap parameter must lie in [0, 1)")
    profile = [int(b) for b in profile]
    if any(b not in (0, 1) for b in profile):
        raise MeasureError("profile entries must be 0 or 1")
    if len(profile) < 2:
        raise MeasureError("profile must cover weights 0..n with n >= 1")
    n = len(profile) - 1
    k1 = [k for k in range(n + 1) if profile[k]]
    k0 = [k for k in range(n + 1) if not profile[k]]
    if not k1:
        return SymmetricBracket(0, 0, True, UnivariatePoly.build([]), {})
    if not k0:
        return SymmetricBracket(
            0, 0, True, UnivariatePoly.build([1]), {k: 1 for k in k1}
        )

    upper = None
    for d in range(1, n + 1):
        got = _signed_univariate(k0, k1, eps, d)
        if got is not None:
            upper = d
            u, signs = got
            break
    assert upper is not None, "interpolating the profile always succeeds"

    sq = eps * eps
    dv = None
    for d in range(n + 1):
        pts = [(k, Q(0), sq) for k in k0] + [(k, Q(1), None) for k in k1]
        if _univariate_feasible(pts, d) is not None:
            dv = d
            break
    assert dv is not None
    lower = max((dv + 1) // 2, 1)
    assert lower <= upper, "both ends bound the same quantity"
    exact = all(k in (0, n) for k in k1)
    return SymmetricBracket(lower, upper, exact, u, signs)


# -- reference comparisons ----------------------------------------------

def nor_bound_holds(n: int, d: int) -> bool:
    """Integer form of d >= sqrt(n/8)."""
    return 8 * d * d >= n


def nor_reference_bound(n: int) -> int:
    """Least integer d with 8 d^2 >= n."""
    if n < 1:
        raise MeasureError("n must be at least 1")
    d = math.isqrt(n // 8)
    while not nor_bound_holds(n, d):
        d += 1
    return d
