"""Integer and rational linear algebra on small dense matrices.

Matrices are lists of rows.  Nothing here is tuned for size; the lattices
that occur (ideal bases, relation lattices of small abelian groups) have
dimension at most a handful.
"""

from fractions import Fraction
from math import gcd


def xgcd(a, b):
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.

    When a divides b the cofactor y is 0, which keeps pivot rows untouched
    during elimination.
    """
    if a and b % a == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lcm(a, b):
    return abs(a * b) // gcd(a, b) if a and b else 0


def common_denominator(values):
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def hnf_rows(rows, ncols, transform=False):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows of the upper triangular basis (positive pivots,
    entries above each pivot reduced into [0, pivot)).  With
    ``transform=True`` also returns U with U * rows = full reduced matrix,
    so that row i of the result is sum_k U[i][k] * rows[k].
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None

    def combine(i, j, a, b, c, d):
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
        ri, rj = A[i], A[j]
        A[i] = [a * x + b * y for x, y in zip(ri, rj)]
        A[j] = [c * x + d * y for x, y in zip(ri, rj)]
        if U is not None:
            ui, uj = U[i], U[j]
            U[i] = [a * x + b * y for x, y in zip(ui, uj)]
            U[j] = [c * x + d * y for x, y in zip(ui, uj)]

    r = 0
    pivots = []
    for c in range(ncols):
        if r >= m:
            break
        for i in range(r + 1, m):
            if A[i][c]:
                a, b = A[r][c], A[i][c]
                if a == 0:
                    A[r], A[i] = A[i], A[r]
                    if U is not None:
                        U[r], U[i] = U[i], U[r]
                    continue
                g, x, y = xgcd(a, b)
                combine(r, i, x, y, -b // g, a // g)
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-v for v in A[r]]
            if U is not None:
                U[r] = [-v for v in U[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                if U is not None:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    H = A[:r]
    if transform:
        return H, U
    return H


def diagonalize(A):
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns (diag, Q, Qinv) where P*A*Q is diagonal with entries ``diag``
    (nonnegative, length min(rows, cols)) for some unimodular P that is not
    recorded.  Divisibility between the diagonal entries is not enforced.
    """
    A = [list(map(int, r)) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    Qi = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_combine(i, j, a, b, c, d):
        # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j), det = 1
        for row in A:
            x, y = row[i], row[j]
            row[i], row[j] = a * x + b * y, c * x + d * y
        for row in Q:
            x, y = row[i], row[j]
            row[i], row[j] = a * x + b * y, c * x + d * y
        # inverse acts on rows of Qinv
        ri, rj = Qi[i], Qi[j]
        Qi[i] = [d * x - c * y for x, y in zip(ri, rj)]
        Qi[j] = [-b * x + a * y for x, y in zip(ri, rj)]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]
        Qi[i], Qi[j] = Qi[j], Qi[i]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            diag.extend([0] * (min(m, n) - t))
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            col_swap(t, j)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    a, b = A[t][t], A[i][t]
                    g, x, y = xgcd(a, b)
                    rt, ri = A[t], A[i]
                    A[t] = [x * u + y * v for u, v in zip(rt, ri)]
                    A[i] = [(-b // g) * u + (a // g) * v for u, v in zip(rt, ri)]
            for j in range(t + 1, n):
                if A[t][j]:
                    a, b = A[t][t], A[t][j]
                    g, x, y = xgcd(a, b)
                    # new col_t = x col_t + y col_j ; new col_j = -b/g col_t + a/g col_j
                    col_combine(t, j, x, y, -b // g, a // g)
                    dirty = True
            if not dirty and all(A[i][t] == 0 for i in range(t + 1, m)):
                break
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
        diag.append(A[t][t])
    return diag, Q, Qi


def mat_inverse(M):
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def det(M):
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c] != 0:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


def transpose(M):
    return [list(col) for col in zip(*M)]


def mat_mul(A, B):
    Bt = transpose(B)
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def vec_mat(v, M):
    """Row vector times matrix."""
    n = len(M[0]) if M else 0
    out = [0] * n
    for x, row in zip(v, M):
        if x:
            for j in range(n):
                out[j] += x * row[j]
    return out


def echelon_basis(vectors):
    """Reduced row echelon basis (Fractions) of the span of ``vectors``.

    Returns (basis, pivots).
    """
    basis = []
    pivots = []
    for v in vectors:
        w = reduce_against(v, basis, pivots)
        if any(w):
            c = next(i for i, x in enumerate(w) if x != 0)
            inv = 1 / w[c]
            w = [x * inv for x in w]
            for k, b in enumerate(basis):
                if b[c] != 0:
                    f = b[c]
                    basis[k] = [x - f * y for x, y in zip(b, w)]
            basis.append(w)
            pivots.append(c)
    return basis, pivots


def reduce_against(v, basis, pivots):
    w = [Fraction(x) for x in v]
    for b, c in zip(basis, pivots):
        if w[c] != 0:
            f = w[c]
            w = [x - f * y for x, y in zip(w, b)]
    return w


def solve_left(v, basis, pivots):
    """Coefficients expressing v in an echelon basis, or None if v is outside."""
    w = [Fraction(x) for x in v]
    coeffs = []
    for b, c in zip(basis, pivots):
        f = w[c]
        coeffs.append(f)
        if f != 0:
            w = [x - f * y for x, y in zip(w, b)]
    if any(w):
        return None
    return coeffs
