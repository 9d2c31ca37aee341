"""Exact rational matrices: rank and nullspace.

Elimination is fraction-free (Bareiss): rows are first scaled to
integers, then each elimination step uses the exact division
  a[i][j] <- (piv * a[i][j] - a[i][k] * a[k][j]) / prev_piv
so all intermediates stay integers.  The nullspace basis is recovered by
back substitution over the resulting echelon form and every basis vector
is verified against the original matrix.
"""

from .rational import Q


class Matrix:
    """Dense rational matrix, row-major lists."""

    def __init__(self, rows):
        self.rows = [[Q(v) for v in row] for row in rows]
        self.m = len(self.rows)
        self.k = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.k:
                raise ValueError("ragged matrix")

    def mul_vec(self, v):
        return [sum((row[j] * v[j] for j in range(self.k)), Q(0)) for row in self.rows]


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for v in row:
            q = Q(v)
            den = den * q.denominator // _gcd(den, int(q.denominator))
        out.append([int(Q(v) * den) for v in row])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank_nullspace(matrix):
    """(rank, nullspace basis) of an m x k rational matrix.

    The basis is a list of length-k rational vectors (one per free
    column, unit in that column), empty when the matrix has full column
    rank.  Each vector satisfies M v = 0 exactly; this is re-verified
    before returning.
    """
    if not isinstance(matrix, Matrix):
        matrix = Matrix(matrix)
    m, k = matrix.m, matrix.k
    if k == 0:
        return 0, []
    a = _integer_rows(matrix.rows)
    pivots = []  # (row, col)
    prev = 1
    r = 0
    for col in range(k):
        piv_row = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv_row = i
                break
        if piv_row is None:
            continue
        a[r], a[piv_row] = a[piv_row], a[r]
        piv = a[r][col]
        for i in range(r + 1, m):
            air = a[i][col]
            row_i = a[i]
            row_r = a[r]
            for j in range(col, k):
                row_i[j] = (piv * row_i[j] - air * row_r[j]) // prev
        pivots.append((r, col))
        prev = piv
        r += 1
        if r == m:
            break
    rank = len(pivots)
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(k) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Q(0)] * k
        v[fc] = Q(1)
        # back substitute over the echelon rows
        for (ri, ci) in reversed(pivots):
            s = Q(0)
            row = a[ri]
            for j in range(ci + 1, k):
                if row[j] and v[j]:
                    s += Q(row[j]) * v[j]
            v[ci] = -s / Q(row[ci])
        basis.append(v)
    for v in basis:
        out = matrix.mul_vec(v)
        assert all(x == 0 for x in out), "nullspace verification failed"
    return rank, basis
