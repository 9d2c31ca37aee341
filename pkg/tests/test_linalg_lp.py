"""Exact linear algebra and the rational simplex."""

from __future__ import annotations

import random
from itertools import combinations

from boofdeg.linalg import Matrix, rank_nullspace
from boofdeg.lp import LpOutcome, lp_solve, problem
from boofdeg.rational import Q


def test_rank_identity():
    rank, basis = rank_nullspace([[1, 0], [0, 1]])
    assert rank == 2 and basis == []


def test_rank_zero_matrix():
    rank, basis = rank_nullspace([[0, 0, 0], [0, 0, 0]])
    assert rank == 0 and len(basis) == 3


def test_nullspace_duplicate_rows():
    rank, basis = rank_nullspace([[1, 1], [1, 1]])
    assert rank == 1 and len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and any(x != 0 for x in v)


def test_nullspace_rational_entries():
    rank, basis = rank_nullspace([[Q(1, 2), Q(1, 3), Q(0)], [Q(1), Q(1), Q(0)]])
    assert rank == 2 and len(basis) == 1
    assert basis[0][2] != 0


def _rref_rank(rows):
    """Independent oracle: plain rational row reduction."""
    a = [[Q(v) for v in row] for row in rows]
    m = len(a)
    k = len(a[0]) if a else 0
    r = 0
    for col in range(k):
        piv = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Q(1) / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def test_rank_against_rref_oracle():
    rng = random.Random(17)
    for _ in range(200):
        m = rng.randrange(1, 6)
        k = rng.randrange(1, 6)
        rows = [
            [Q(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(k)]
            for _ in range(m)
        ]
        rank, basis = rank_nullspace(rows)
        assert rank == _rref_rank(rows)
        assert len(basis) == k - rank
        mat = Matrix(rows)
        for v in basis:
            assert all(x == 0 for x in mat.mul_vec(v))


def test_lp_simple_optimal():
    # min x + y  s.t.  x >= 1, y >= 2
    p = problem(2)
    p.add([1, 0], ">=", 1)
    p.add([0, 1], ">=", 2)
    p.objective = [1, 1]
    out = lp_solve(p)
    assert out.status == "optimal" and out.value == 3


def test_lp_feasibility_no_objective():
    p = problem(1)
    p.add([1], ">=", Q(1, 3))
    p.add([1], "<=", Q(1, 2))
    out = lp_solve(p)
    assert out.status == "feasible"
    assert Q(1, 3) <= out.witness[0] <= Q(1, 2)


def test_lp_infeasible():
    p = problem(1)
    p.add([1], ">=", 2)
    p.add([1], "<=", 1)
    assert lp_solve(p).status == "infeasible"


def test_lp_unbounded():
    p = problem(1)
    p.add([1], ">=", 0)
    p.objective = [-1]
    assert lp_solve(p).status == "unbounded"


def test_lp_equality_rows():
    p = problem(2)
    p.add([1, 1], "=", 1)
    p.add([1, -1], "=", Q(1, 3))
    out = lp_solve(p)
    assert out.status == "feasible"
    x, y = out.witness
    assert x + y == 1 and x - y == Q(1, 3)


def test_lp_exact_rational_vertex():
    # min -x - y  s.t. 2x + y <= 3, x + 3y <= 5, x,y >= 0
    p = problem(2)
    p.add([2, 1], "<=", 3)
    p.add([1, 3], "<=", 5)
    p.add([1, 0], ">=", 0)
    p.add([0, 1], ">=", 0)
    p.objective = [-1, -1]
    out = lp_solve(p)
    assert out.status == "optimal"
    assert out.witness == [Q(4, 5), Q(7, 5)]
    assert out.value == Q(-11, 5)


def test_lp_negative_rhs_rows():
    p = problem(2)
    p.add([-1, -1], "<=", -2)  # x + y >= 2
    p.objective = [1, 1]
    out = lp_solve(p)
    assert out.status == "optimal" and out.value == 2


def _random_problem(rng, nv):
    p = problem(nv)
    for j in range(nv):  # box so the region is a polytope
        p.add([1 if t == j else 0 for t in range(nv)], ">=", -10)
        p.add([1 if t == j else 0 for t in range(nv)], "<=", 10)
    for _ in range(rng.randrange(1, 6)):
        coeffs = [Q(rng.randrange(-3, 4)) for _ in range(nv)]
        rel = rng.choice(["<=", ">=", "="])
        p.add(coeffs, rel, Q(rng.randrange(-6, 7), rng.randrange(1, 3)))
    return p


def _vertex_infeasibility_oracle(p):
    """Exhaustive vertex enumeration for boxed problems, <= 3 vars.
    The region is a polytope, so it is nonempty iff some vertex formed
    by nv tight constraints is feasible."""
    nv = p.n_vars
    cons = p.constraints
    for idxs in combinations(range(len(cons)), nv):
        rows = [list(cons[i][0]) + [cons[i][2]] for i in idxs]
        # solve the square system by elimination
        a = [[Q(v) for v in row] for row in rows]
        sol = _solve_square(a, nv)
        if sol is None:
            continue
        ok = True
        for coeffs, rel, rhs in cons:
            lhs = sum((c * v for c, v in zip(coeffs, sol)), Q(0))
            if rel == "<=" and lhs > rhs:
                ok = False
            elif rel == ">=" and lhs < rhs:
                ok = False
            elif rel == "=" and lhs != rhs:
                ok = False
            if not ok:
                break
        if ok:
            return True
    return False


def _solve_square(a, nv):
    m = len(a)
    r = 0
    cols = []
    for col in range(nv):
        piv = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            return None
        a[r], a[piv] = a[piv], a[r]
        inv = Q(1) / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        cols.append(col)
        r += 1
    for i in range(r, m):
        if a[i][nv] != 0:
            return None
    return [a[cols.index(j)][nv] if j in cols else Q(0) for j in range(nv)]


def test_lp_random_witness_verification():
    rng = random.Random(23)
    feasible = infeasible = 0
    for _ in range(1000):
        p = _random_problem(rng, rng.randrange(1, 4))
        out = lp_solve(p)
        if out.status == "feasible":
            feasible += 1
            for coeffs, rel, rhs in p.constraints:
                lhs = sum((c * v for c, v in zip(coeffs, out.witness)), Q(0))
                if rel == "<=":
                    assert lhs <= rhs
                elif rel == ">=":
                    assert lhs >= rhs
                else:
                    assert lhs == rhs
        else:
            assert out.status == "infeasible"
            infeasible += 1
    assert feasible > 100 and infeasible > 100


def test_lp_infeasibility_against_vertex_oracle():
    rng = random.Random(29)
    checked = 0
    for _ in range(250):
        nv = rng.randrange(1, 4)
        p = _random_problem(rng, nv)
        out = lp_solve(p)
        want = _vertex_infeasibility_oracle(p)
        assert (out.status == "feasible") == want
        checked += 1
    assert checked == 250


def test_lp_determinism():
    rng = random.Random(31)
    for _ in range(50):
        p = _random_problem(rng, 2)
        a = lp_solve(p)
        b = lp_solve(p)
        assert a.status == b.status and a.witness == b.witness
