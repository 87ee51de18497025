"""Exact integer matrices with Hermite and Smith normal forms.

Conventions used throughout the package: vectors are rows, lattices are row
spans, and a matrix presents the map x -> x * M.  A relation matrix therefore
has one row per relation, one column per generator.

All arithmetic is arbitrary-precision.  The normal-form routines are pure
Python; the sparse elimination path exists for boundary matrices of chain
complexes, where rows carry only a handful of entries.
"""

from __future__ import annotations

import heapq
from math import gcd


class IntMatrix:
    """Immutable integer matrix.

    >>> IntMatrix([[1, 2], [3, 4]]).shape
    (2, 2)
    >>> IntMatrix.from_triplets(2, 2, [(0, 1, 5)]).to_rows()
    [[0, 5], [0, 0]]
    """

    __slots__ = ("rows", "cols", "_data", "prefer_sparse")

    def __init__(self, data, cols=None, prefer_sparse=False):
        data = [tuple(int(x) for x in row) for row in data]
        self.rows = len(data)
        if data:
            cols = len(data[0])
            if any(len(row) != cols for row in data):
                raise ValueError("ragged rows")
        elif cols is None:
            cols = 0
        self.cols = int(cols)
        self._data = tuple(data)
        self.prefer_sparse = bool(prefer_sparse)

    @classmethod
    def from_triplets(cls, rows, cols, triplets):
        """Build from (row, col, value) entries; later entries accumulate."""
        grid = [[0] * cols for _ in range(rows)]
        for i, j, v in triplets:
            grid[i][j] += int(v)
        return cls(grid, cols=cols, prefer_sparse=True)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j):
        return self._data[i][j]

    def row(self, i):
        return list(self._data[i])

    def to_rows(self):
        return [list(r) for r in self._data]

    def nonzero_count(self):
        return sum(1 for row in self._data for x in row if x)

    def transpose(self):
        return IntMatrix([[self._data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        orows = other._data
        out = []
        for row in self._data:
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    orow = orows[k]
                    for j in range(other.cols):
                        if orow[j]:
                            acc[j] += a * orow[j]
            out.append(acc)
        return IntMatrix(out, cols=other.cols)

    def stack(self, other):
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix(self.to_rows() + other.to_rows(), cols=self.cols)

    def to_json(self):
        if self.prefer_sparse:
            trips = [[i, j, v] for i, row in enumerate(self._data)
                     for j, v in enumerate(row) if v]
            return {"rows": self.rows, "cols": self.cols, "triplets": trips}
        return {"rows": self.rows, "cols": self.cols,
                "entries": self.to_rows()}

    @classmethod
    def from_json(cls, obj):
        if "triplets" in obj:
            return cls.from_triplets(obj["rows"], obj["cols"], obj["triplets"])
        return cls(obj["entries"], cols=obj["cols"])

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        return "IntMatrix(%r)" % (self.to_rows(),)


def _addmul_row(target, source, q):
    # target += q * source, in place
    for j, s in enumerate(source):
        if s:
            target[j] += q * s


def hnf(mat):
    """Row-style Hermite normal form.

    Returns (H, U) with H = U * mat, U unimodular, H in row echelon form with
    positive pivots and the entries above each pivot reduced into [0, pivot).

    >>> H, U = hnf(IntMatrix([[2, 0], [1, 1]]))
    >>> H.to_rows()
    [[1, 1], [0, 2]]
    >>> U.mul(IntMatrix([[2, 0], [1, 1]])) == H
    True
    """
    m, n = mat.shape
    H = mat.to_rows()
    U = IntMatrix.identity(m).to_rows()
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            pivots = [i for i in range(r, m) if H[i][j]]
            if not pivots:
                break
            i0 = min(pivots, key=lambda i: (abs(H[i][j]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            clean = True
            a = H[r][j]
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // a
                    if q:
                        _addmul_row(H[i], H[r], -q)
                        _addmul_row(U[i], U[r], -q)
                    if H[i][j]:
                        clean = False
            if clean:
                break
        if H[r][j]:
            if H[r][j] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            a = H[r][j]
            for i in range(r):
                q = H[i][j] // a
                if q:
                    _addmul_row(H[i], H[r], -q)
                    _addmul_row(U[i], U[r], -q)
            r += 1
    return IntMatrix(H, cols=n), IntMatrix(U, cols=m)


def rank(mat):
    """Rank over the rationals (via the Hermite form)."""
    H, _ = hnf(mat)
    return sum(1 for row in H.to_rows() if any(row))


def left_kernel(mat):
    """Basis of {x : x * mat = 0}, one basis vector per row."""
    H, U = hnf(mat)
    rows = H.to_rows()
    kern = [U.row(i) for i in range(mat.rows) if not any(rows[i])]
    return IntMatrix(kern, cols=mat.rows)


class HnfSolver:
    """Prepared solver for x * mat = target: one Hermite form, many targets."""

    __slots__ = ("rows", "_hrows", "_urows", "_pivots")

    def __init__(self, mat):
        H, U = hnf(mat)
        self.rows = mat.rows
        self._hrows = H.to_rows()
        self._urows = U.to_rows()
        self._pivots = []
        for i, row in enumerate(self._hrows):
            lead = next((j for j, v in enumerate(row) if v), None)
            if lead is not None:
                self._pivots.append((i, lead))

    def solve(self, target):
        """Coefficient row with coeffs * mat = target, or None."""
        y = list(target)
        coeff = [0] * self.rows
        for i, j in self._pivots:
            if y[j] % self._hrows[i][j]:
                return None
            q = y[j] // self._hrows[i][j]
            if q:
                _addmul_row(y, self._hrows[i], -q)
                _addmul_row(coeff, self._urows[i], q)
        if any(y):
            return None
        return coeff


def solve_left(mat, target):
    """Solve x * mat = target over the integers; None if unsolvable.

    `target` is a single row (length mat.cols).
    """
    return HnfSolver(mat).solve(target)


def row_space_basis(mat):
    """Nonzero rows of the Hermite form: a canonical basis of the row span."""
    H, _ = hnf(mat)
    return IntMatrix([r for r in H.to_rows() if any(r)], cols=mat.cols)


def lattice_sum(a, b):
    return row_space_basis(a.stack(b))


def lattice_intersection(a, b):
    """Basis of rowspan(a) /\\ rowspan(b)."""
    if a.rows == 0 or b.rows == 0:
        return IntMatrix([], cols=a.cols)
    neg = IntMatrix([[-x for x in row] for row in b.to_rows()], cols=b.cols)
    kern = left_kernel(a.stack(neg))
    rows = [IntMatrix([k[:a.rows]], cols=a.rows).mul(a).row(0)
            for k in kern.to_rows()]
    return row_space_basis(IntMatrix(rows, cols=a.cols))


def in_row_span(mat, target):
    return solve_left(mat, target) is not None


def _swap_rows(A, U, i, j):
    A[i], A[j] = A[j], A[i]
    if U is not None:
        U[i], U[j] = U[j], U[i]


def _swap_cols(A, V, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]
    if V is not None:
        for row in V:
            row[i], row[j] = row[j], row[i]


def _addmul_col(A, V, dst, src, q):
    for row in A:
        if row[src]:
            row[dst] += q * row[src]
    if V is not None:
        for row in V:
            if row[src]:
                row[dst] += q * row[src]


def snf(mat):
    """Smith normal form with transforms.

    Returns (D, U, V) with D = U * mat * V diagonal, diagonal entries
    nonnegative and each dividing the next, U and V unimodular.  Pivots are
    chosen by minimal absolute value, ties by position, so output is a
    deterministic function of the input.

    >>> D, U, V = snf(IntMatrix([[2, 4], [6, 8]]))
    >>> [D.entry(i, i) for i in range(2)]
    [2, 4]
    >>> U.mul(IntMatrix([[2, 4], [6, 8]])).mul(V) == D
    True
    """
    m, n = mat.shape
    A = mat.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()
    t = 0
    while True:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < abs(best[2])):
                    best = (i, j, v)
            if best is not None and abs(best[2]) == 1:
                break
        if best is None:
            break
        bi, bj, _ = best
        if bi != t:
            _swap_rows(A, U, t, bi)
        if bj != t:
            _swap_cols(A, V, t, bj)
        while True:
            # clear column t with row operations
            while True:
                nz = [i for i in range(t + 1, m) if A[i][t]]
                if not nz:
                    break
                i0 = min(nz, key=lambda i: (abs(A[i][t]), i))
                if abs(A[i0][t]) < abs(A[t][t]):
                    _swap_rows(A, U, t, i0)
                for i in range(t + 1, m):
                    if A[i][t]:
                        q = A[i][t] // A[t][t]
                        if q:
                            _addmul_row(A[i], A[t], -q)
                            _addmul_row(U[i], U[t], -q)
            # clear row t with column operations
            while True:
                nz = [j for j in range(t + 1, n) if A[t][j]]
                if not nz:
                    break
                j0 = min(nz, key=lambda j: (abs(A[t][j]), j))
                if abs(A[t][j0]) < abs(A[t][t]):
                    _swap_cols(A, V, t, j0)
                for j in range(t + 1, n):
                    if A[t][j]:
                        q = A[t][j] // A[t][t]
                        if q:
                            _addmul_col(A, V, j, t, -q)
            if all(A[i][t] == 0 for i in range(t + 1, m)):
                break
        # enforce divisibility of the remaining block by the pivot
        a = A[t][t]
        culprit = None
        for i in range(t + 1, m):
            row = A[i]
            for j in range(t + 1, n):
                if row[j] % a:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            _addmul_row(A[t], A[culprit], 1)
            _addmul_row(U[t], U[culprit], 1)
            continue
        t += 1
        if t == m or t == n:
            break
    for i in range(min(m, n)):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
    return IntMatrix(A, cols=n), IntMatrix(U, cols=m), IntMatrix(V, cols=n)


def divisibility_chain(values):
    """Rewrite a multiset of cyclic orders into an invariant-factor chain.

    Repeated gcd/lcm exchanges; the product is preserved at every step.

    Unit entries are kept: they are genuine invariant factors and their
    count enters the rank.

    >>> divisibility_chain([6, 4])
    [2, 12]
    >>> divisibility_chain([2, 3])
    [1, 6]
    """
    ds = [abs(int(v)) for v in values]
    if any(d == 0 for d in ds):
        # zero entries (free ranks) must be handled by the caller
        raise ValueError("divisibility_chain expects nonzero orders")
    changed = True
    while changed:
        changed = False
        for i in range(len(ds) - 1):
            a, b = ds[i], ds[i + 1]
            if b % a:
                g = gcd(a, b)
                ds[i], ds[i + 1] = g, a // g * b
                changed = True
    return ds


def _sparse_diagonal(mat):
    """Diagonal entries of an equivalent diagonal matrix, no transforms.

    Pivots of absolute value 1 are pulled from a lazily validated heap
    (cheap, and bar boundary rows are full of units); a full Markowitz
    scan only runs when no unit entry is left.  Correct for any input;
    intended for boundary matrices where rows are short.
    """
    rows = {}
    col_index = {}
    for i in range(mat.rows):
        r = {j: v for j, v in enumerate(mat.row(i)) if v}
        if r:
            rows[i] = r
            for j in r:
                col_index.setdefault(j, set()).add(i)
    unit_heap = [i for i, r in rows.items()
                 if any(abs(v) == 1 for v in r.values())]
    heapq.heapify(unit_heap)
    diag = []
    while rows:
        pi = None
        while unit_heap:
            cand = heapq.heappop(unit_heap)
            r = rows.get(cand)
            if r is not None and any(abs(v) == 1 for v in r.values()):
                pi = cand
                break
        if pi is not None:
            r = rows[pi]
            pj = min((j for j, v in r.items() if abs(v) == 1),
                     key=lambda j: (len(col_index[j]), j))
        else:
            best = None
            best_key = None
            for i, r in rows.items():
                rl = len(r) - 1
                for j, v in r.items():
                    key = (rl * (len(col_index[j]) - 1), abs(v), i, j)
                    if best_key is None or key < best_key:
                        best_key = key
                        best = (i, j)
            pi, pj = best
        while True:
            # clear the pivot column with row operations (Euclid in column)
            while True:
                others = [i for i in col_index[pj] if i != pi]
                if not others:
                    break
                pv = rows[pi][pj]
                smaller = next((i for i in others
                                if abs(rows[i][pj]) < abs(pv)), None)
                if smaller is not None:
                    pi = smaller
                    continue
                for i in others:
                    r = rows[i]
                    q = r[pj] // pv
                    if q:
                        for j, v in rows[pi].items():
                            nv = r.get(j, 0) - q * v
                            if nv:
                                if j not in r:
                                    col_index.setdefault(j, set()).add(i)
                                r[j] = nv
                            elif j in r:
                                del r[j]
                                col_index[j].discard(i)
                    if not r:
                        del rows[i]
                    elif any(abs(v) == 1 for v in r.values()):
                        heapq.heappush(unit_heap, i)
            # column pj now holds only the pivot row, so column operations
            # against column pj touch no other row
            pv = rows[pi][pj]
            prow = rows[pi]
            for j in [j for j in prow if j != pj]:
                q = prow[j] // pv
                if q:
                    prow[j] -= q * pv
                if not prow[j]:
                    del prow[j]
                    col_index[j].discard(pi)
            rest = [j for j in prow if j != pj]
            if not rest:
                break
            # a remainder beat the pivot; move the pivot and repeat
            pj = min(rest, key=lambda j: (abs(prow[j]), j))
        diag.append(abs(rows[pi][pj]))
        del rows[pi]
        col_index[pj].discard(pi)
    return diag


_SPARSE_CUTOFF = 4096


def snf_diagonal(mat):
    """Invariant factors of mat (the nonzero diagonal of its Smith form).

    Dense elimination below a size cutoff, sparse elimination above it; both
    finish with gcd/lcm exchanges to restore the divisibility chain.
    """
    if mat.rows == 0 or mat.cols == 0:
        return []
    if mat.rows * mat.cols <= _SPARSE_CUTOFF and not mat.prefer_sparse:
        D, _, _ = snf(mat)
        return [D.entry(i, i) for i in range(min(mat.shape))
                if D.entry(i, i)]
    return divisibility_chain(_sparse_diagonal(mat))


def bareiss_det(mat):
    """Determinant by fraction-free elimination (exact)."""
    m, n = mat.shape
    if m != n:
        raise ValueError("determinant needs a square matrix")
    if m == 0:
        return 1
    A = mat.to_rows()
    sign = 1
    prev = 1
    for k in range(m - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, m) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[m - 1][m - 1]
