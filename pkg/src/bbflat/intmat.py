"""Exact integer matrix algebra: gcd tricks, Hermite and Smith normal forms,
kernels, and linear solving.

Matrices are lists of row lists of Python ints, so every computation is
arbitrary precision.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def content(vec) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for v in vec:
        g, _, _ = xgcd(g, v)
        if g == 1:
            return 1
    return g


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def copy_mat(m) -> list[list[int]]:
    return [list(row) for row in m]


def transpose(m) -> list[list[int]]:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def mat_mul(a, b) -> list[list[int]]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v) -> list[int]:
    """a @ v with v a column vector."""
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v, a) -> list[int]:
    """v @ a with v a row vector."""
    cols = transpose(a)
    return [sum(x * y for x, y in zip(v, col)) for col in cols]


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(list(x) == list(y) for x, y in zip(a, b))


def det(mat) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = copy_mat(mat)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _snf_inplace(A, L, R):
    r = len(A)
    c = len(A[0]) if r else 0

    def row_add(i, j, q):  # row_i += q * row_j
        ai, aj = A[i], A[j]
        for k in range(c):
            ai[k] += q * aj[k]
        li, lj = L[i], L[j]
        for k in range(r):
            li[k] += q * lj[k]

    def col_add(i, j, q):  # col_i += q * col_j
        for row in A:
            row[i] += q * row[j]
        for row in R:
            row[i] += q * row[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        L[i] = [-x for x in L[i]]

    t = 0
    m = min(r, c)
    while t < m:
        # minimal |nonzero| pivot limits coefficient growth
        piv = None
        best = 0
        for i in range(t, r):
            row = A[i]
            for j in range(t, c):
                v = row[j]
                if v and (piv is None or abs(v) < best):
                    piv = (i, j)
                    best = abs(v)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        while True:
            dirty = False
            # clear column t, keeping remainders as new (smaller) pivots
            while True:
                best_i = None
                for i in range(t + 1, r):
                    if A[i][t]:
                        q = A[i][t] // A[t][t]
                        if q:
                            row_add(i, t, -q)
                        if A[i][t] and (best_i is None or abs(A[i][t]) < abs(A[best_i][t])):
                            best_i = i
                if best_i is None:
                    break
                row_swap(t, best_i)
            # clear row t
            while True:
                best_j = None
                for j in range(t + 1, c):
                    if A[t][j]:
                        q = A[t][j] // A[t][t]
                        if q:
                            col_add(j, t, -q)
                        if A[t][j] and (best_j is None or abs(A[t][j]) < abs(A[t][best_j])):
                            best_j = j
                if best_j is None:
                    break
                col_swap(t, best_j)
            if any(A[i][t] for i in range(t + 1, r)):
                continue  # column dirtied by column swaps
            if A[t][t] < 0:
                row_neg(t)
            # divisibility sweep: pivot must divide the rest of the block
            p = A[t][t]
            for i in range(t + 1, r):
                row = A[i]
                for j in range(t + 1, c):
                    if row[j] % p:
                        row_add(t, i, 1)
                        dirty = True
                        break
                if dirty:
                    break
            if not dirty:
                break
        t += 1


def snf(mat) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: returns (L, D, R) with L @ mat @ R == D,
    |det L| = |det R| = 1, D diagonal, nonnegative, each entry dividing the next.
    """
    r = len(mat)
    c = len(mat[0]) if r else 0
    A = copy_mat(mat)
    L = identity(r)
    R = identity(c)
    _snf_inplace(A, L, R)
    return L, A, R


def snf_diagonal(mat) -> list[int]:
    _, d, _ = snf(mat)
    n = min(len(mat), len(mat[0]) if mat else 0)
    return [d[i][i] for i in range(n)]


def hnf_rows(mat) -> list[list[int]]:
    """Canonical row Hermite normal form of the row span (zero rows dropped).

    Pivots positive, entries above a pivot reduced into [0, pivot).  Two
    integer row sets span the same sublattice iff their hnf_rows agree.
    """
    A = [list(r) for r in mat]
    m = len(A)
    n = len(A[0]) if m else 0
    row = 0
    for col in range(n):
        piv = None
        for i in range(row, m):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            continue
        for i in range(piv + 1, m):
            if A[i][col]:
                g, s, u = xgcd(A[piv][col], A[i][col])
                a0 = A[piv][col] // g
                b0 = A[i][col] // g
                rp, ri = A[piv], A[i]
                for k in range(n):
                    x, y = rp[k], ri[k]
                    rp[k] = s * x + u * y
                    ri[k] = a0 * y - b0 * x
        A[row], A[piv] = A[piv], A[row]
        if A[row][col] < 0:
            A[row] = [-v for v in A[row]]
        p = A[row][col]
        for i in range(row):
            q = A[i][col] // p
            if q:
                for k in range(n):
                    A[i][k] -= q * A[row][k]
        row += 1
    return A[:row]


def mat_rank(mat) -> int:
    return len(hnf_rows(mat))


def kernel_basis(mat) -> list[list[int]]:
    """Basis rows of the saturated integer kernel {x : mat @ x = 0}."""
    r = len(mat)
    c = len(mat[0]) if r else 0
    _, d, right = snf(mat)
    cols = []
    for i in range(c):
        di = d[i][i] if i < min(r, c) else 0
        if di == 0:
            cols.append([right[k][i] for k in range(c)])
    return hnf_rows(cols) if cols else []


def solve_int(mat, b) -> list[int] | None:
    """One integer solution x of mat @ x = b, or None if none exists."""
    r = len(mat)
    c = len(mat[0]) if r else 0
    L, d, R = snf(mat)
    lb = mat_vec(L, list(b))
    y = [0] * c
    for i in range(r):
        di = d[i][i] if i < min(r, c) else 0
        if di == 0:
            if lb[i] != 0:
                return None
        else:
            if lb[i] % di:
                return None
            y[i] = lb[i] // di
    return mat_vec(R, y)


def inv_unimodular(mat) -> list[list[int]]:
    """Exact inverse of an integer matrix with det = ±1."""
    n = len(mat)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    out = []
    for row in a:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out


def is_unimodular(mat) -> bool:
    return len(mat) > 0 and len(mat) == len(mat[0]) and abs(det(mat)) == 1


def complete_primitive_row(c) -> list[list[int]]:
    """A unimodular matrix whose first row is the primitive vector c."""
    m = len(c)
    if content(c) != 1:
        raise ValueError("vector is not primitive")
    _, _, R = snf([list(c)])
    U = inv_unimodular(R)
    # first row of R^-1 is ±c; fix the sign
    if U[0] != list(c):
        U[0] = [-v for v in U[0]]
    assert U[0] == list(c)
    return U
