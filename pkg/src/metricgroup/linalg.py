"""Exact integer and rational matrix routines.

Matrices are plain lists (or tuples) of rows holding Python ints or
``fractions.Fraction``; nothing here touches floating point.
"""
from fractions import Fraction
from math import gcd, lcm


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(m):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def matmul(a, b):
    if not a:
        return []
    bt = list(zip(*b))
    if not bt:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)]


def determinant(m):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m):
    """Inverse over the rationals (Gauss-Jordan); raises ZeroDivisionError if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def common_denominator(rows):
    d = 1
    for row in rows:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def _snf(m):
    """Smith normal form with transforms.

    Returns ``(S, U, V, Vinv)`` with ``U @ m @ V == S``; ``S`` is diagonal,
    non-negative, and its nonzero diagonal forms a divisibility chain.
    """
    rows, cols = shape(m)
    a = [list(map(int, row)) for row in m]
    u = identity(rows)
    v = identity(cols)
    vinv = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        if f:
            a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        # col_dst += f * col_src
        if f:
            for row in a:
                row[dst] += f * row[src]
            for row in v:
                row[dst] += f * row[src]
            vinv[src] = [x - f * y for x, y in zip(vinv[src], vinv[dst])]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder into the pivot and repeat
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v, vinv


def smith_normal_form(m):
    """Return ``(S, U, V)`` with ``U @ m @ V == S`` and ``U``, ``V`` unimodular."""
    s, u, v, _ = _snf(m)
    return s, u, v


def diagonal(s):
    r, c = shape(s)
    return [s[i][i] for i in range(min(r, c))]


def row_basis(rows):
    """Z-basis of the lattice spanned by integer or rational row vectors."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    den = common_denominator(rows)
    scaled = [[int(Fraction(x) * den) for x in r] for r in rows]
    s, _, _, vinv = _snf(scaled)
    basis = []
    for i, d in enumerate(diagonal(s)):
        if d:
            basis.append([Fraction(d * x, den) for x in vinv[i]])
    if den == 1:
        basis = [[int(x) for x in r] for r in basis]
    return basis


def cokernel(relations, n):
    """Structure of ``Z^n / rowspan(relations)`` (must be finite).

    Returns ``(factors, proj, lifts)``: ``factors`` is the invariant-factor
    chain (entries > 1); ``proj`` is an n x len(factors) integer matrix with
    ``x -> x @ proj mod factors`` the projection; ``lifts[j]`` is an integer
    vector of ``Z^n`` mapping to the j-th generator.
    """
    rel = [list(r) for r in relations] or [[0] * n]
    s, _, v, vinv = _snf(rel)
    diag = diagonal(s) + [0] * (n - min(shape(rel)))
    if any(d == 0 for d in diag[:n]):
        raise ValueError("cokernel is infinite")
    keep = [j for j in range(n) if diag[j] > 1]
    factors = [diag[j] for j in keep]
    proj = [[v[i][j] % diag[j] for j in keep] for i in range(n)]
    lifts = [list(vinv[j]) for j in keep]
    return factors, proj, lifts


def kernel_mod(a, moduli):
    """Z-basis of ``{x in Z^n : (x @ a)[j] == 0 mod moduli[j]}`` for an n x k matrix."""
    n = len(a)
    k = len(moduli)
    if k == 0:
        return identity(n)
    m = [list(row) for row in a] + [[moduli[j] if i == j else 0 for j in range(k)]
                                     for i in range(k)]
    s, u, _, _ = _snf(m)
    rank = sum(1 for d in diagonal(s) if d)
    return [u[r][:n] for r in range(rank, n + k)]


def solve_mod_prime_power(a, b, p, e):
    """Solve ``a @ x == b (mod p**e)``; returns one solution or None."""
    import numpy as np

    mod = p ** e
    a = np.array(a, dtype=np.int64) % mod
    b = np.array(b, dtype=np.int64) % mod
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    colperm = np.eye(cols, dtype=np.int64)
    pivots = []

    def valuation(x):
        x = int(x)
        if x == 0:
            return e
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    r = 0
    for _ in range(min(rows, cols)):
        block = aug[r:, r:cols]
        if not block.any():
            break
        # pivot of minimal p-adic valuation divides every other entry
        best = None
        for vmin in range(e):
            hits = np.argwhere((block % (p ** (vmin + 1))) != 0)
            if len(hits):
                best = hits[0]
                break
        i, j = int(best[0]) + r, int(best[1]) + r
        aug[[r, i]] = aug[[i, r]]
        aug[:, [r, j]] = aug[:, [j, r]]
        colperm[:, [r, j]] = colperm[:, [j, r]]
        piv = int(aug[r, r])
        val = valuation(piv)
        unit = piv // p ** val
        inv = pow(unit, -1, mod)
        aug[r] = (aug[r] * inv) % mod
        # row reduce below
        factors = aug[r + 1:, r] // p ** val
        aug[r + 1:] = (aug[r + 1:] - np.outer(factors, aug[r])) % mod
        # column reduce right (tracked through colperm)
        cf = aug[r, r + 1:cols] // p ** val
        aug[:, r + 1:cols] = (aug[:, r + 1:cols] - np.outer(aug[:, r], cf)) % mod
        colperm[:, r + 1:cols] = (colperm[:, r + 1:cols] - np.outer(colperm[:, r], cf)) % mod
        pivots.append(val)
        r += 1
    rhs = aug[:, cols]
    if (rhs[r:] % mod).any():
        return None
    y = np.zeros(cols, dtype=np.int64)
    # back substitution: rows are upper triangular with pivot p^val
    for i in range(r - 1, -1, -1):
        val = pivots[i]
        rest = int(rhs[i] - aug[i, i + 1:cols] @ y[i + 1:]) % mod
        if rest % p ** val:
            return None
        y[i] = (rest // p ** val) % p ** (e - val)
    return (colperm @ y) % mod


def solve_mod(a, b, m):
    """Solve ``a @ x == b (mod m)`` over Z/m; returns a solution (numpy) or None."""
    import numpy as np
    from sympy import factorint

    cols = len(a[0]) if len(a) else 0
    if m == 1:
        return np.zeros(cols, dtype=np.int64)
    parts = []
    for p, e in sorted(factorint(m).items()):
        sol = solve_mod_prime_power(a, b, p, e)
        if sol is None:
            return None
        parts.append((p ** e, sol))
    x = np.zeros(cols, dtype=object)
    for q, sol in parts:
        rest = m // q
        x = x + np.array([int(s) for s in sol], dtype=object) * rest * pow(rest, -1, q)
    return np.array([int(v) % m for v in x], dtype=np.int64)


__all__ = [
    "identity", "matmul", "transpose", "determinant", "inverse", "smith_normal_form",
    "row_basis", "cokernel", "kernel_mod", "solve_mod", "gcd",
]
