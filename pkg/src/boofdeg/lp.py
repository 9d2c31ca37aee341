"""Exact linear programming over the rationals.

Two-phase primal simplex with Bland's least-index anti-cycling rule.
Free variables are split into differences of nonnegatives, every row
gets a slack or an artificial variable, and phase 1 drives the
artificials to zero.  All pivots are exact rational operations, so
Infeasible/Unbounded answers are proofs, not tolerance calls.  Returned
witnesses are re-verified against the original constraints before the
outcome is handed back.

Statuses: "infeasible", "feasible" (no objective supplied),
"optimal", "unbounded".
"""

from dataclasses import dataclass

from .rational import Q

LE, GE, EQ = "<=", ">=", "="


@dataclass
class LpProblem:
    """min objective . x subject to the rows; objective None means a pure
    feasibility question.  Variables are free unless the rows bound them."""

    n_vars: int
    constraints: list  # (coeffs list, relation, rhs)
    objective: list | None = None

    def add(self, coeffs, rel, rhs):
        coeffs = [Q(c) for c in coeffs]
        if len(coeffs) != self.n_vars:
            raise ValueError("constraint arity mismatch")
        if rel not in (LE, GE, EQ):
            raise ValueError("bad relation %r" % rel)
        self.constraints.append((coeffs, rel, Q(rhs)))


def problem(n_vars: int) -> LpProblem:
    return LpProblem(n_vars=n_vars, constraints=[])


@dataclass
class LpOutcome:
    status: str
    witness: list | None = None  # length n_vars, exact rationals
    value: object = None  # objective value when optimal


def _check_witness(prob: LpProblem, x) -> bool:
    for coeffs, rel, rhs in prob.constraints:
        lhs = sum((c * v for c, v in zip(coeffs, x) if c), Q(0))
        if rel == LE and not lhs <= rhs:
            return False
        if rel == GE and not lhs >= rhs:
            return False
        if rel == EQ and lhs != rhs:
            return False
    return True


class _Tableau:
    def __init__(self, m):
        self.rows = []
        self.rhs = []
        self.basis = []
        self.m = m

    def pivot(self, r, c):
        rows, rhs = self.rows, self.rhs
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            inv = Q(1) / pv
            rows[r] = prow = [v * inv for v in prow]
            rhs[r] = rhs[r] * inv
        for i in range(self.m):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row_i = rows[i]
                rows[i] = [a - f * b for a, b in zip(row_i, prow)]
                rhs[i] = rhs[i] - f * rhs[r]
        self.basis[r] = c


def _reduced_row(cost, tab):
    """Objective row (reduced costs) and value for the current basis."""
    ncols = len(tab.rows[0]) if tab.rows else 0
    obj = [Q(c) for c in cost]
    val = Q(0)
    for i in range(tab.m):
        cb = cost[tab.basis[i]]
        if cb:
            row = tab.rows[i]
            for j in range(ncols):
                if row[j]:
                    obj[j] -= cb * row[j]
            val -= cb * tab.rhs[i]
    return obj, val


def _simplex(tab, obj, allowed_hi):
    """Minimize with Bland's rule; columns >= allowed_hi never enter.
    Mutates tab and obj in place.  Returns 'optimal' or 'unbounded'."""
    m = tab.m
    while True:
        entering = -1
        for j in range(allowed_hi):
            if obj[j] < 0:
                entering = j
                break
        if entering < 0:
            return "optimal"
        leaving = -1
        best = None
        for i in range(m):
            a = tab.rows[i][entering]
            if a > 0:
                ratio = tab.rhs[i] / a
                if best is None or ratio < best or (
                    ratio == best and tab.basis[i] < tab.basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return "unbounded"
        tab.pivot(leaving, entering)
        f = obj[entering]
        if f:
            prow = tab.rows[leaving]
            for j in range(len(obj)):
                if prow[j]:
                    obj[j] -= f * prow[j]


def lp_solve(prob: LpProblem) -> LpOutcome:
    n = prob.n_vars
    rows = []
    for coeffs, rel, rhs in prob.constraints:
        coeffs = [Q(c) for c in coeffs]
        rhs = Q(rhs)
        if rel == GE:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = LE
        rows.append((coeffs, rel, rhs))

    m = len(rows)
    nsplit = 2 * n
    slack_of = {}
    ncols = nsplit
    for i, (_, rel, _) in enumerate(rows):
        if rel == LE:
            slack_of[i] = ncols
            ncols += 1

    tab = _Tableau(m)
    need_art = []
    for i, (coeffs, rel, rhs) in enumerate(rows):
        row = [Q(0)] * ncols
        for j, c in enumerate(coeffs):
            if c:
                row[2 * j] = c
                row[2 * j + 1] = -c
        if rel == LE:
            row[slack_of[i]] = Q(1)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        tab.rows.append(row)
        tab.rhs.append(rhs)
        sc = slack_of.get(i)
        if sc is not None and row[sc] == 1:
            tab.basis.append(sc)
        else:
            need_art.append(i)
            tab.basis.append(None)

    n_art = len(need_art)
    total = ncols + n_art
    if n_art:
        for i in range(m):
            tab.rows[i].extend([Q(0)] * n_art)
        for a, i in enumerate(need_art):
            tab.rows[i][ncols + a] = Q(1)
            tab.basis[i] = ncols + a

    if n_art:
        cost1 = [Q(0)] * total
        for a in range(n_art):
            cost1[ncols + a] = Q(1)
        obj, _ = _reduced_row(cost1, tab)
        status = _simplex(tab, obj, total)
        assert status == "optimal", "phase 1 cannot be unbounded"
        infeas = sum(
            (tab.rhs[i] for i in range(m) if tab.basis[i] >= ncols), Q(0)
        )
        if infeas > 0:
            return LpOutcome(status="infeasible")
        for i in range(m):
            if tab.basis[i] >= ncols:
                for j in range(ncols):
                    if tab.rows[i][j] != 0:
                        tab.pivot(i, j)
                        break
                # an all-zero row is redundant; its artificial stays at 0

    def extract():
        x = [Q(0)] * n
        vals = {}
        for i in range(m):
            vals[tab.basis[i]] = tab.rhs[i]
        for j in range(n):
            x[j] = vals.get(2 * j, Q(0)) - vals.get(2 * j + 1, Q(0))
        return x

    if prob.objective is None:
        x = extract()
        assert _check_witness(prob, x), "LP witness failed exact re-verification"
        return LpOutcome(status="feasible", witness=x)

    cost2 = [Q(0)] * total
    for j, c in enumerate(prob.objective):
        c = Q(c)
        cost2[2 * j] = c
        cost2[2 * j + 1] = -c
    obj, _ = _reduced_row(cost2, tab)
    status = _simplex(tab, obj, ncols)
    if status == "unbounded":
        return LpOutcome(status="unbounded")
    x = extract()
    assert _check_witness(prob, x), "LP witness failed exact re-verification"
    value = sum((Q(c) * v for c, v in zip(prob.objective, x)), Q(0))
    return LpOutcome(status="optimal", witness=x, value=value)
