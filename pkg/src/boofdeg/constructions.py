"""Constructive transformations: separating polynomials from
nondeterministic witness pairs, symmetrization, profile reindexing,
and restrictions that carve OR / AND / symmetric subfunctions out of
structured tables.

Every embedding in this module is returned as an EmbeddingWitness
whose substitution has been replayed pointwise against the declared
target before the function returns.  A verification failure here is
never a data error; it means the construction itself is wrong, so it
raises instead of returning a flagged result.
"""

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .combinatorial import sensitive_indices
from .frontend import (
    GATE_AND,
    GATE_EXACT,
    GATE_OR,
    DnfFormula,
    LeafNode,
    PropertySpec,
    ReadOnceFormula,
    dnf_analyze,
    gate_table,
)
from .poly import MultilinearPoly, UnivariatePoly, interpolate_univariate
from .rational import Q, rat_str
from .structure import classify
from .truthtable import (
    NEG_A,
    ONE_A,
    VAR_A,
    ZERO_A,
    Substitution,
    TruthTable,
    and_table,
    complement,
    or_table,
    substitute,
    symmetric_profile_of,
    to_hex,
    weight_profile_table,
)

SYMMETRIZE_CAP = 12

OR_KIND = "OR"
AND_KIND = "AND"
SYMM_KIND = "symmetric-g"


class ConstructionError(ValueError):
    pass


# -- embedding witnesses ------------------------------------------------


@dataclass(frozen=True)
class EmbeddingWitness:
    """A substitution that carves a declared subfunction out of a
    source table.

    Applying sub to the source must reproduce target exactly, after
    complementing when output_neg is set.  kind names the target
    family: "OR" and "AND" mean the plain disjunction / conjunction on
    m variables; "symmetric-g" is any non-constant symmetric table.
    Input negations are part of sub itself ("neg" actions).  record
    holds replay data: the number of checked points, a digest of the
    point transcript, and construction-specific context.
    """

    source_n: int
    source_hex: str
    sub: Substitution
    kind: str
    m: int
    target: TruthTable
    output_neg: bool = False
    record: dict = field(default_factory=dict)

    def verify(self, source: TruthTable) -> bool:
        if source.n != self.source_n or to_hex(source) != self.source_hex:
            return False
        got = substitute(source, self.sub)
        if self.output_neg:
            got = complement(got)
        if got.n != self.m or got.mask != self.target.mask:
            return False
        if self.kind == OR_KIND:
            return self.target.mask == or_table(self.m).mask
        if self.kind == AND_KIND:
            return self.target.mask == and_table(self.m).mask
        if self.kind == SYMM_KIND:
            return (
                symmetric_profile_of(self.target) is not None
                and not self.target.is_constant()
            )
        return False

    def to_json(self):
        return {
            "source_n": self.source_n,
            "source_hex": self.source_hex,
            "substitution": {
                "n_in": self.sub.n_in,
                "n_out": self.sub.n_out,
                "actions": [[k, j] for k, j in self.sub.actions],
            },
            "kind": self.kind,
            "m": self.m,
            "target_hex": to_hex(self.target),
            "output_neg": self.output_neg,
            "record": dict(self.record),
        }


def _sealed_witness(source, sub, kind, m, target, output_neg=False, extra=None):
    """Replay the substitution pointwise, hash the transcript, and
    return the witness; any mismatch with the target is a hard error."""
    got = substitute(source, sub)
    shown = complement(got) if output_neg else got
    if shown.n != m or shown.mask != target.mask:
        raise ConstructionError(
            "internal: substitution produced %s, expected %s"
            % (to_hex(shown), to_hex(target))
        )
    lines = ["%d:%d" % (y, shown.value(y)) for y in range(shown.size)]
    record = {
        "checked_points": shown.size,
        "transcript_sha256": hashlib.sha256(
            "\n".join(lines).encode()
        ).hexdigest(),
    }
    if extra:
        record.update(extra)
    witness = EmbeddingWitness(
        source_n=source.n,
        source_hex=to_hex(source),
        sub=sub,
        kind=kind,
        m=m,
        target=target,
        output_neg=output_neg,
        record=record,
    )
    if not witness.verify(source):
        raise ConstructionError("internal: witness failed its own replay")
    return witness


def _restriction_witness(f, x, free_coords, kind, flip, extra=None):
    """Fix every variable outside free_coords to x's bit; polarity of
    each free variable is folded in so the target comes out plain.

    flip picks the orientation of the free inputs: True means an input
    set to 1 moves its coordinate away from x's bit (sensitivity-style
    restrictions), False means it keeps the bit (so the all-ones input
    lands exactly on x).
    """
    free = sorted(free_coords)
    if not free:
        raise ConstructionError("internal: empty restriction support")
    slot = {i: r for r, i in enumerate(free)}
    plain = 0 if flip else 1
    actions = []
    for i in range(f.n):
        bit = (x >> i) & 1
        if i in slot:
            actions.append((VAR_A if bit == plain else NEG_A, slot[i]))
        else:
            actions.append((ONE_A, None) if bit else (ZERO_A, None))
    sub = Substitution(f.n, len(free), tuple(actions))
    target = and_table(len(free)) if kind == AND_KIND else or_table(len(free))
    return _sealed_witness(f, sub, kind, len(free), target, extra=extra)


# -- polynomials from nondeterministic witness pairs --------------------


def _check_nd_pair_side(poly, f, eps, label):
    """|poly| >= 1 on 1-inputs and |poly| <= eps on 0-inputs."""
    if poly.n != f.n:
        raise ConstructionError(
            "%s has arity %d, table has %d" % (label, poly.n, f.n)
        )
    for x in range(f.size):
        v = poly.evaluate(x)
        if f.value(x):
            if -1 < v < 1:
                raise ConstructionError(
                    "%s invalid: |value| = %s < 1 at 1-input %d"
                    % (label, rat_str(abs(v)), x)
                )
        elif abs(v) > eps:
            raise ConstructionError(
                "%s invalid: |value| = %s > %s at 0-input %d"
                % (label, rat_str(abs(v)), rat_str(eps), x)
            )


def sign_rep_from_nd(p, q, f, eps) -> MultilinearPoly:
    """Separating polynomial q^2 - p^2 from a dual witness pair.

    p must be a valid eps-approximate nondeterministic polynomial for
    f (magnitude at least 1 on 1-inputs, at most eps on 0-inputs) and
    q one for the complement.  The difference of squares is then at
    most eps^2 - 1 on every 1-input and at least 1 - eps^2 on every
    0-input, so it is negative exactly where f is 1 -- the convention
    sign_degree uses -- with degree at most twice the larger input
    degree.
    """
    eps = Q(eps)
    if not 0 < eps < 1:
        raise ConstructionError("eps must lie strictly between 0 and 1")
    _check_nd_pair_side(p, f, eps, "p")
    _check_nd_pair_side(q, complement(f), eps, "q")
    r = q.square() - p.square()
    gap = 1 - eps * eps
    for x in range(f.size):
        v = r.evaluate(x)
        if f.value(x):
            if v > -gap:
                raise ConstructionError(
                    "internal: separation failed at 1-input %d" % x
                )
        elif v < gap:
            raise ConstructionError(
                "internal: separation failed at 0-input %d" % x
            )
    return r


@dataclass(frozen=True)
class RationalApprox:
    """Pointwise evaluator of a ratio of two multilinear polynomials."""

    numerator: MultilinearPoly
    denominator: MultilinearPoly

    def evaluate(self, x: int):
        den = self.denominator.evaluate(x)
        if den <= 0:
            raise ConstructionError(
                "denominator not positive at input %d" % x
            )
        return self.numerator.evaluate(x) / den

    def degree_bound(self) -> int:
        return max(self.numerator.degree(), self.denominator.degree())


def rational_approx_from_nd(p, q, f, eps) -> RationalApprox:
    """Rational approximation p^2 / (p^2 + q^2) from a dual witness
    pair; the pointwise error against f is at most eps everywhere and
    both numerator and denominator have degree at most twice the
    larger input degree."""
    eps = Q(eps)
    if not 0 < eps < 1:
        raise ConstructionError("eps must lie strictly between 0 and 1")
    _check_nd_pair_side(p, f, eps, "p")
    _check_nd_pair_side(q, complement(f), eps, "q")
    num = p.square()
    approx = RationalApprox(numerator=num, denominator=num + q.square())
    for x in range(f.size):
        err = abs(Q(f.value(x)) - approx.evaluate(x))
        if err > eps:
            raise ConstructionError(
                "internal: error %s > %s at input %d"
                % (rat_str(err), rat_str(eps), x)
            )
    return approx


def symmetrize_square(p: MultilinearPoly) -> UnivariatePoly:
    """Average of p(x)^2 over each Hamming weight, interpolated
    exactly.

    The result agrees with the per-weight averages at every integer
    0..n, is nonnegative there, and has degree at most 2 deg(p).
    """
    n = p.n
    if n > SYMMETRIZE_CAP:
        raise ConstructionError(
            "symmetrization capped at %d variables" % SYMMETRIZE_CAP
        )
    sq = p.square()
    sums = [Q(0)] * (n + 1)
    for x in range(1 << n):
        sums[x.bit_count()] += sq.evaluate(x)
    values = [sums[k] / comb(n, k) for k in range(n + 1)]
    u = interpolate_univariate(list(enumerate(values)))
    if u.degree() > 2 * p.degree():
        raise ConstructionError("internal: interpolant degree too high")
    for k, v in enumerate(values):
        if v < 0 or u.evaluate(k) != v:
            raise ConstructionError("internal: average mismatch at %d" % k)
    return u


# -- weight-profile reindexing ------------------------------------------


def profile_flat_interval(profile, n):
    """Least margins (l0, l1) such that the 0/1 weight profile is
    constant on [l0, n - l1]; errors when no interval through the
    middle exists."""
    D = tuple(profile)
    if len(D) != n + 1 or any(v not in (0, 1) for v in D):
        raise ConstructionError("need a 0/1 profile of length n + 1")
    lo, hi = n // 2, (n + 1) // 2
    if D[lo] != D[hi]:
        raise ConstructionError(
            "no flat middle: profile differs between weights %d and %d"
            % (lo, hi)
        )
    a = lo
    while a > 0 and D[a - 1] == D[lo]:
        a -= 1
    pos = hi
    while pos < n and D[pos + 1] == D[hi]:
        pos += 1
    return a, n - pos


@dataclass(frozen=True)
class Exact0Reduction:
    """Affine reindexing of a flat-middled weight profile onto the
    indicator of weight zero.

    With c the constant middle value, the map t -> (1-2c) D(t+l-1) + c
    sends t = 0 to 1 and every 1 <= t <= t_max to 0; values records
    the transformed profile over that range.
    """

    n: int
    ell: int
    ell1: int
    middle: int
    t_max: int
    values: tuple

    def transform_poly(self, u: UnivariatePoly) -> UnivariatePoly:
        """The same reindexing applied to an interpolating polynomial;
        degree is preserved."""
        c = Q(self.middle)
        return u.shift_argument(self.ell - 1).scale(1 - 2 * c).add_const(c)


def exact0_reduce(profile, ell, n) -> Exact0Reduction:
    """Validate the flat-interval structure and build the reindexing.

    Requires ell to be the least left margin, at least 1, and the flat
    interval long enough to cover the whole shifted range 0..n//5.
    """
    ell0, ell1 = profile_flat_interval(profile, n)
    if ell != ell0:
        raise ConstructionError(
            "ell must be the least left margin %d, got %d" % (ell0, ell)
        )
    if ell0 < 1:
        raise ConstructionError(
            "flat middle reaches weight 0; use exact0_escape instead"
        )
    D = tuple(profile)
    if D[ell0] == D[ell0 - 1]:
        raise ConstructionError("internal: margin not minimal")
    t_max = n // 5
    if ell0 + t_max - 1 > n - ell1:
        raise ConstructionError(
            "flat interval [%d, %d] too short for the range 0..%d"
            % (ell0, n - ell1, t_max)
        )
    c = D[ell0]
    values = tuple(
        (1 - 2 * c) * D[t + ell0 - 1] + c for t in range(t_max + 1)
    )
    if values[0] != 1 or any(v != 0 for v in values[1:]):
        raise ConstructionError("internal: reindexed profile wrong")
    return Exact0Reduction(
        n=n, ell=ell0, ell1=ell1, middle=c, t_max=t_max, values=values
    )


def exact0_escape(profile, n) -> EmbeddingWitness:
    """One-sided restriction for profiles whose flat middle reaches
    weight 0: the sharp jump at the other end yields AND (middle value
    0) or OR with negated inputs (middle value 1) on n - l1 + 1
    variables."""
    ell0, ell1 = profile_flat_interval(profile, n)
    if ell0 != 0:
        raise ConstructionError(
            "left margin is %d, not 0; use exact0_reduce" % ell0
        )
    if ell1 == 0:
        raise ConstructionError("constant profile; nothing to embed")
    D = tuple(profile)
    w = n - ell1 + 1
    c = D[0]
    f = weight_profile_table(D)
    if c == 0:
        actions = [
            (VAR_A, i) if i < w else (ZERO_A, None) for i in range(n)
        ]
        kind, target = AND_KIND, and_table(w)
    else:
        actions = [
            (NEG_A, i) if i < w else (ZERO_A, None) for i in range(n)
        ]
        kind, target = OR_KIND, or_table(w)
    sub = Substitution(n, w, tuple(actions))
    return _sealed_witness(
        f, sub, kind, w, target, extra={"middle_value": c, "ell1": ell1}
    )


# -- sensitivity-based restrictions -------------------------------------


def _max_sensitivity_input(f, side):
    """(x, sensitive-index tuple) maximizing sensitivity over inputs
    with f(x) == side; smallest such x on ties."""
    best = None
    for x in range(f.size):
        if f.value(x) != side:
            continue
        sens = sensitive_indices(f, x)
        if best is None or len(sens) > len(best[1]):
            best = (x, tuple(sens))
    return best


def embed_monotone(f: TruthTable):
    """(OR witness at a max-sensitivity 0-input, AND witness at a
    max-sensitivity 1-input) for a monotone increasing table.

    On a 0-input of a monotone function every sensitive variable sits
    at 0, so freeing exactly those variables leaves a plain
    disjunction; dually for the 1-input side.  Both embeddings are
    exact, with no input negations.
    """
    rep = classify(f)
    if rep.monotone != "increasing":
        raise ConstructionError("table is not monotone increasing")
    if f.is_constant():
        raise ConstructionError("constant table has no sensitive input")
    x0, sens0 = _max_sensitivity_input(f, 0)
    x1, sens1 = _max_sensitivity_input(f, 1)
    zero_witness = _restriction_witness(
        f, x0, sens0, OR_KIND, flip=True,
        extra={"input": x0, "sensitive": list(sens0)},
    )
    one_witness = _restriction_witness(
        f, x1, sens1, AND_KIND, flip=False,
        extra={"input": x1, "sensitive": list(sens1)},
    )
    return zero_witness, one_witness


def _bits_to_mask(coords):
    m = 0
    for i in coords:
        m |= 1 << i
    return m


def embed_minimal_block(f: TruthTable, x: int) -> EmbeddingWitness:
    """AND witness on a minimal sensitive block of the 0-input x.

    Minimal means no proper subset of the block is itself sensitive,
    which is exactly what makes the restriction a plain conjunction of
    the flip directions.  The search shrinks greedily one coordinate
    at a time and then re-scans all proper subsets, restarting from
    any smaller sensitive subset it finds, so the returned block is
    minimal in the strong sense.
    """
    if not 0 <= x < f.size:
        raise ConstructionError("input %d out of range" % x)
    if f.value(x):
        raise ConstructionError("x must be a 0-input")
    ones = f.ones()
    if not ones:
        raise ConstructionError(
            "no sensitive block: the table is constant 0"
        )
    seed = min(ones)
    block = {i for i in range(f.n) if ((x ^ seed) >> i) & 1}
    while True:
        shrunk = True
        while shrunk:
            shrunk = False
            for i in sorted(block):
                trial = block - {i}
                if trial and f.value(x ^ _bits_to_mask(trial)):
                    block = trial
                    shrunk = True
                    break
        smaller = None
        for size in range(1, len(block)):
            for coords in combinations(sorted(block), size):
                if f.value(x ^ _bits_to_mask(coords)):
                    smaller = set(coords)
                    break
            if smaller:
                break
        if smaller is None:
            break
        block = smaller
    return _restriction_witness(
        f, x, block, AND_KIND, flip=True,
        extra={"input": x, "block": sorted(block)},
    )


# -- bounded-read DNF restrictions --------------------------------------


def _greedy_independent(vertices, edges):
    """Independent set by repeated minimum-degree removal; ties go to
    the smallest vertex.  Certifies size >= t / (average degree + 1)."""
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    live = set(vertices)
    chosen = []
    while live:
        v = min(live, key=lambda u: (len(adj[u] & live), u))
        chosen.append(v)
        live -= adj[v] | {v}
    return sorted(chosen)


def readk_embed(dnf: DnfFormula):
    """(OR witness, AND witness) for an irredundant bounded-read DNF.

    Zero side: at a max-sensitivity 0-input, each sensitive flip
    satisfies its own term; an independent set in the term-incidence
    graph of size at least s0 / (2k+1) can be freed jointly, and the
    restriction is a plain disjunction.  One side: at a
    max-sensitivity 1-input the satisfied term contains every
    sensitive variable; each other term that could fire inside the
    sensitive subcube owns at least two opposing literals there, and
    picking one such pair per term as a conflict edge leaves an
    independent set of size at least s1 / (k+1) whose joint freeing
    restricts to a plain conjunction.
    """
    report, f = dnf_analyze(dnf)
    if not report.minimal:
        raise ConstructionError(
            "formula is not irredundant; removable parts: %r"
            % (report.to_json(),)
        )
    if f.is_constant():
        raise ConstructionError("constant function")
    k = report.read_k

    # zero side
    x0, sens0 = _max_sensitivity_input(f, 0)
    t0 = len(sens0)
    term_of = {}
    for i in sens0:
        xi = x0 ^ (1 << i)
        term_of[i] = next(
            t for t in range(dnf.alpha) if dnf.term_satisfied(t, xi)
        )
    edges0 = set()
    for i, j in combinations(sens0, 2):
        vars_i = {v for v, _ in dnf.terms[term_of[i]]}
        vars_j = {v for v, _ in dnf.terms[term_of[j]]}
        if j in vars_i or i in vars_j:
            edges0.add((min(i, j), max(i, j)))
    indep0 = _greedy_independent(sens0, edges0)
    if (2 * k + 1) * len(indep0) < t0:
        raise ConstructionError("internal: zero-side floor violated")
    zero_witness = _restriction_witness(
        f, x0, indep0, OR_KIND, flip=True,
        extra={
            "input": x0,
            "sensitive": list(sens0),
            "independent": indep0,
            "floor": [t0, 2 * k + 1],
        },
    )

    # one side
    x1, sens1 = _max_sensitivity_input(f, 1)
    t1 = len(sens1)
    sens1_set = set(sens1)
    tstar = next(
        t for t in range(dnf.alpha) if dnf.term_satisfied(t, x1)
    )
    tstar_vars = {v for v, _ in dnf.terms[tstar]}
    if not sens1_set <= tstar_vars:
        raise ConstructionError(
            "internal: satisfied term misses a sensitive variable"
        )
    edges1 = set()
    for t, term in enumerate(dnf.terms):
        if t == tstar:
            continue
        false_lits = sorted(
            v for v, neg in term if ((x1 >> v) & 1) == neg
        )
        if not false_lits:
            continue  # satisfied at x1; dies on any sensitive flip
        if any(v not in sens1_set for v in false_lits):
            continue  # can never fire inside the sensitive subcube
        if len(false_lits) < 2:
            raise ConstructionError(
                "internal: singleton opposing set contradicts sensitivity"
            )
        edges1.add((false_lits[0], false_lits[1]))
    indep1 = _greedy_independent(sorted(sens1_set), edges1)
    if (k + 1) * len(indep1) < t1:
        raise ConstructionError("internal: one-side floor violated")
    one_witness = _restriction_witness(
        f, x1, indep1, AND_KIND, flip=False,
        extra={
            "input": x1,
            "sensitive": list(sens1),
            "independent": indep1,
            "floor": [t1, k + 1],
        },
    )
    return zero_witness, one_witness


def disjoint_terms(dnf: DnfFormula):
    """Indices of a greedy pairwise variable-disjoint term selection,
    scanned in formula order; the count times read * width always
    covers the term count."""
    taken = []
    used = set()
    for t, term in enumerate(dnf.terms):
        vs = {v for v, _ in term}
        if not vs & used:
            taken.append(t)
            used |= vs
    for a, b in combinations(taken, 2):
        if {v for v, _ in dnf.terms[a]} & {v for v, _ in dnf.terms[b]}:
            raise ConstructionError("internal: selection not disjoint")
    if len(taken) * dnf.read_k * dnf.beta < dnf.alpha:
        raise ConstructionError("internal: greedy selection bound failed")
    return tuple(taken)


# -- hypergraph properties ----------------------------------------------


def hypergraph_symmetric_embedding(
    spec: PropertySpec, k=None, n=None
) -> EmbeddingWitness:
    """Witness carved out of a non-constant invariant property.

    The property is complemented first if the empty hypergraph
    satisfies it, so a minimum-edge satisfying hypergraph H with m
    edges exists.  When 2km > n the m edge variables of H restrict to
    a plain conjunction (every proper subgraph has fewer edges than
    the minimum, hence fails).  Otherwise H leaves at least one
    isolated vertex pool; freeing one covered vertex v together with
    the isolated vertices and re-identifying each link extension with
    its endpoint gives a non-constant symmetric function.
    """
    k = spec.k if k is None else k
    n = spec.n if n is None else n
    if (k, n) != (spec.k, spec.n):
        raise ConstructionError(
            "arity mismatch: property is on (k=%d, n=%d)" % (spec.k, spec.n)
        )
    if spec.status != "verified":
        raise ConstructionError("property has not been invariance-verified")
    table = spec.table
    complemented = False
    if table.value(0):
        table = complement(table)
        complemented = True
    if table.is_constant():
        raise ConstructionError("constant property has no witness")
    edge_list = list(spec.edge_list)
    nvars = len(edge_list)
    chosen = None
    for m in range(1, nvars + 1):
        for combo in combinations(range(nvars), m):
            if table.value(_bits_to_mask(combo)):
                chosen = combo
                break
        if chosen is not None:
            break
    m = len(chosen)
    h_edges = [edge_list[i] for i in chosen]
    base_extra = {
        "complemented": complemented,
        "min_edges": m,
        "hypergraph": [list(e) for e in h_edges],
    }
    if 2 * k * m > n:
        slot = {i: r for r, i in enumerate(chosen)}
        actions = tuple(
            (VAR_A, slot[i]) if i in slot else (ZERO_A, None)
            for i in range(nvars)
        )
        sub = Substitution(nvars, m, actions)
        return _sealed_witness(
            table, sub, AND_KIND, m, and_table(m), extra=base_extra
        )

    # sparse case: isolated vertices plus one covered vertex
    covered = {v for e in h_edges for v in e}
    isolated = [v for v in range(n) if v not in covered]
    v0 = min(covered)
    link = [tuple(sorted(set(e) - {v0})) for e in h_edges if v0 in e]
    h_prime = [e for e in h_edges if v0 not in e]
    group = sorted([v0] + isolated)
    slot = {u: r for r, u in enumerate(group)}
    edge_index = {e: i for i, e in enumerate(edge_list)}
    actions = [(ZERO_A, None)] * nvars
    for e in h_prime:
        actions[edge_index[e]] = (ONE_A, None)
    for stem in link:
        for u in group:
            e = tuple(sorted(stem + (u,)))
            if len(e) != k or actions[edge_index[e]] != (ZERO_A, None):
                raise ConstructionError(
                    "internal: link extension collides at %r" % (e,)
                )
            actions[edge_index[e]] = (VAR_A, slot[u])
    sub = Substitution(nvars, len(group), tuple(actions))
    induced = substitute(table, sub)
    profile = symmetric_profile_of(induced)
    if profile is None:
        raise ConstructionError("internal: induced function not symmetric")
    if induced.is_constant():
        raise ConstructionError("internal: induced function constant")
    if induced.value(0) != 0 or induced.value(1 << slot[v0]) != 1:
        raise ConstructionError("internal: induced endpoints wrong")
    if spec.predicate is not None:
        # dual route: replay through the original predicate
        for y in range(induced.size):
            present = set(h_prime)
            for u in group:
                if (y >> slot[u]) & 1:
                    for stem in link:
                        present.add(tuple(sorted(stem + (u,))))
            want = int(bool(spec.predicate(n, frozenset(present))))
            if complemented:
                want = 1 - want
            if want != induced.value(y):
                raise ConstructionError(
                    "internal: predicate disagrees at %d" % y
                )
    extra = dict(base_extra)
    extra.update({
        "vertices": group,
        "pivot": v0,
        "profile": list(profile),
    })
    return _sealed_witness(
        table, sub, SYMM_KIND, len(group), induced, extra=extra
    )


# -- read-once formulas -------------------------------------------------


@dataclass(frozen=True)
class BranchingRestriction:
    """The widest gate of a read-once formula, recovered exactly by a
    restriction of the whole formula.

    boundary records the width-versus-depth comparison: strict is
    whether w^depth exceeds the variable count.
    """

    gate_kind: str
    j: int
    w: int
    depth: int
    n: int
    witness: EmbeddingWitness
    boundary: dict


def _force_constant(node, bit, assign):
    """Deterministic subtree assignment making the node evaluate to
    bit."""
    if isinstance(node, LeafNode):
        assign[node.var] = bit ^ int(node.neg)
        return
    w = node.fanin
    if node.kind == GATE_EXACT:
        if bit:
            for pos, child in enumerate(node.children):
                _force_constant(child, int(pos < node.j), assign)
        elif node.j < w:
            for child in node.children:
                _force_constant(child, 1, assign)
        else:
            for child in node.children:
                _force_constant(child, 0, assign)
        return
    if node.kind == GATE_AND or node.kind == GATE_OR:
        for child in node.children:
            _force_constant(child, bit, assign)
        return
    # majority: unanimous children
    for child in node.children:
        _force_constant(child, bit, assign)


def _pass_through(node, keep_pos, assign):
    """Force all children except keep_pos so the gate copies (or, for
    an exact-zero gate, inverts) its kept child; returns 1 when the
    gate inverts."""
    others = [c for pos, c in enumerate(node.children) if pos != keep_pos]
    w = node.fanin
    if node.kind == GATE_AND:
        ones = len(others)
    elif node.kind == GATE_OR:
        ones = 0
    elif node.kind == GATE_EXACT:
        if node.j == 0:
            for child in others:
                _force_constant(child, 0, assign)
            return 1
        ones = node.j - 1
    else:
        ones = w // 2  # majority threshold straddle
    if ones > len(others):
        raise ConstructionError("internal: gate too narrow to thread")
    for pos, child in enumerate(others):
        _force_constant(child, int(pos < ones), assign)
    return 0


def _reduce_to_slot(node, slot, parity, assign, actions):
    """Thread a subtree down to a single literal feeding the slot."""
    if isinstance(node, LeafNode):
        kind = NEG_A if parity ^ int(node.neg) else VAR_A
        actions[node.var] = (kind, slot)
        return
    flip = _pass_through(node, 0, assign)
    _reduce_to_slot(node.children[0], slot, parity ^ flip, assign, actions)


def max_branching_restriction(
    formula: ReadOnceFormula,
) -> BranchingRestriction:
    """Select the maximum fan-in gate (ties: shallowest, then
    leftmost in reading order) and restrict the formula so it computes
    exactly that gate on fresh variables.

    Ancestors of the gate are made transparent by forcing their other
    subtrees to pass-through constants; the gate's own children are
    threaded down to single literals.  Exact-zero gates pass through
    with an inversion, recorded as input polarity below the gate and
    as output negation above it.
    """
    sightings = []

    def scan(node, depth, path):
        if isinstance(node, LeafNode):
            return
        sightings.append((node.fanin, depth, len(sightings), node, path))
        for pos, child in enumerate(node.children):
            scan(child, depth + 1, path + ((node, pos),))

    scan(formula.root, 0, ())
    if not sightings:
        raise ConstructionError("a bare literal has no gate to select")
    fanin, _, _, gate, path = max(
        sightings, key=lambda s: (s[0], -s[1], -s[2])
    )
    assign = {}
    actions = {}
    output_neg = 0
    for ancestor, pos in path:
        output_neg ^= _pass_through(ancestor, pos, assign)
    for slot, child in enumerate(gate.children):
        _reduce_to_slot(child, slot, 0, assign, actions)

    sub_actions = []
    for var in range(formula.n):
        if var in actions:
            sub_actions.append(actions[var])
        elif var in assign:
            sub_actions.append((ONE_A, None) if assign[var] else (ZERO_A, None))
        else:
            # variable index unused by the formula text
            sub_actions.append((ZERO_A, None))
    sub = Substitution(formula.n, fanin, tuple(sub_actions))
    target = gate_table(gate.kind, gate.j, fanin)
    if gate.kind == GATE_AND:
        kind = AND_KIND
    elif gate.kind == GATE_OR:
        kind = OR_KIND
    else:
        kind = SYMM_KIND
    source = formula.table()
    witness = _sealed_witness(
        source, sub, kind, fanin, target,
        output_neg=bool(output_neg),
        extra={"gate": gate.kind, "exact_weight": gate.j},
    )
    strict = fanin ** formula.depth > formula.n
    return BranchingRestriction(
        gate_kind=gate.kind,
        j=gate.j,
        w=fanin,
        depth=formula.depth,
        n=formula.n,
        witness=witness,
        boundary={
            "w": fanin,
            "depth": formula.depth,
            "n": formula.n,
            "strict": strict,
        },
    )
