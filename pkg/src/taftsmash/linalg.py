"""Exact linear algebra over Q(zeta_N) with sparse rows.

Rows are dicts ``column -> value``; columns can be any sortable keys (ints or
monomial tuples).  Pivoting always takes the first nonzero entry in column
order, so every result is deterministic.
"""

from __future__ import annotations


def _axpy(target, row, c):
    """target -= c * row, in place."""
    for col, v in row.items():
        if col in target:
            s = target[col] - c * v
            if s:
                target[col] = s
            else:
                del target[col]
        else:
            target[col] = -(c * v)


class Echelon:
    """Incrementally maintained reduced row echelon form of a span."""

    def __init__(self):
        self.rows = {}  # pivot column -> row with 1 at the pivot

    def _reduce_fully(self, vec):
        # pivots can reappear after subtraction, so loop until none remain
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return vec
            col = min(hits)
            _axpy(vec, self.rows[col], vec[col])

    def add(self, vec):
        """Insert vec; returns True when it enlarged the span."""
        vec = self._reduce_fully({k: v for k, v in vec.items() if v})
        if not vec:
            return False
        piv = min(vec)
        inv = vec[piv].inverse()
        vec = {k: v * inv for k, v in vec.items()}
        for col, row in self.rows.items():
            if piv in row:
                _axpy(row, vec, row[piv])
        self.rows[piv] = vec
        return True

    def contains(self, vec):
        return not self._reduce_fully({k: v for k, v in vec.items() if v})

    def rank(self):
        return len(self.rows)

    def basis(self):
        """Canonical RREF basis sorted by pivot."""
        return [self.rows[p] for p in sorted(self.rows)]


def rref(rows):
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.basis()


def rank(rows):
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank()


def nullspace(rows, columns, one):
    """Basis of {c : sum_col row[col] * c[col] = 0 for every row}.

    ``columns`` lists every unknown and ``one`` is the unit of the field.  Each
    returned vector has a 1 at its own free column and 0 at the other free
    columns, which makes the basis canonical.
    """
    e = Echelon()
    for r in rows:
        e.add(r)
    basis = []
    for free in columns:
        if free in e.rows:
            continue
        vec = {free: one}
        for p, row in e.rows.items():
            if free in row:
                vec[p] = -row[free]
        basis.append(vec)
    return basis


def det(matrix):
    """Determinant of a square matrix over a field by Gaussian elimination."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    if n == 0:
        return 1
    sign = 1
    result = None
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return a[0][0] * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result = p if result is None else result * p
        inv = p.inverse() if hasattr(p, "inverse") else 1 / p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result if sign == 1 else -result


def bareiss_det(matrix, exact_div):
    """Fraction-free determinant over an integral domain.

    ``exact_div(a, b)`` must return a / b, which Bareiss guarantees is exact.
    """
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return a[0][0] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_div(t, prev) if prev is not None else t
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d
