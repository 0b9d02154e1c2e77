"""Exact integer and rational matrix routines.

Matrices are lists of rows holding Python ints (or ``Fraction`` where noted).
Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def content(v: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    return reduce(gcd, (int(x) for x in v), 0)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def clear_denominators(v: Sequence[Fraction]) -> list[int]:
    """Smallest positive rational multiple of ``v`` with coprime integer entries."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    w = [int(Fraction(x) * den) for x in v]
    c = content(w)
    return [x // c for x in w] if c else w


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """Coefficients ``c`` with ``sum(c_i * values_i) == gcd(values)``.

    Deterministic: entries are folded left to right.
    """
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            coeffs[i] = 1 if v > 0 else -1
            continue
        g2, x, y = xgcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        g = g2
    return g, coeffs


def hnf(A: Sequence[Sequence[int]], with_transform: bool = False):
    """Row Hermite normal form.

    Returns ``(H, rank, U)`` with ``U @ A == H`` and ``U`` unimodular (``U`` is
    ``None`` unless requested). Nonzero rows of ``H`` come first, pivots are
    positive and entries above a pivot lie in ``[0, pivot)``. Pivot choice:
    smallest absolute value, then lowest row index.
    """
    H = [list(map(int, row)) for row in A]
    m = len(H)
    ncols = len(H[0]) if m else 0
    U = identity(m) if with_transform else None
    r = 0
    for j in range(ncols):
        if r == m:
            break
        while True:
            best = None
            for k in range(r, m):
                a = H[k][j]
                if a and (best is None or abs(a) < abs(H[best][j])):
                    best = k
            if best is None:
                break
            if best != r:
                H[r], H[best] = H[best], H[r]
                if U is not None:
                    U[r], U[best] = U[best], U[r]
            piv = H[r][j]
            done = True
            for k in range(r + 1, m):
                a = H[k][j]
                if a:
                    q = a // piv
                    H[k] = [x - q * y for x, y in zip(H[k], H[r])]
                    if U is not None:
                        U[k] = [x - q * y for x, y in zip(U[k], U[r])]
                    if H[k][j]:
                        done = False
            if done:
                break
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
        piv = H[r][j]
        for k in range(r):
            q = H[k][j] // piv
            if q:
                H[k] = [x - q * y for x, y in zip(H[k], H[r])]
                if U is not None:
                    U[k] = [x - q * y for x, y in zip(U[k], U[r])]
        r += 1
    return H, r, U


def row_basis(A: Sequence[Sequence[int]]) -> Matrix:
    """Canonical (HNF) basis of the row lattice of ``A``."""
    H, r, _ = hnf(A)
    return H[:r]


def rank(A: Sequence[Sequence[int]]) -> int:
    return hnf(A)[1] if A else 0


def left_kernel(A: Sequence[Sequence[int]]) -> Matrix:
    """Basis of ``{x in Z^m : x A = 0}``, HNF-normalised (hence saturated)."""
    m = len(A)
    if m == 0:
        return []
    if not A[0]:
        return identity(m)
    _, r, U = hnf(A, with_transform=True)
    return row_basis(U[r:]) if r < m else []


def right_kernel(M: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as rows) of ``{x in Z^ncols : M x = 0}``; saturated."""
    if not M:
        return identity(ncols)
    return left_kernel(transpose(M))


def saturate_rows(B: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``span_Q(B) ∩ Z^ncols`` via a double kernel."""
    if not B or rank(B) == 0:
        return []
    K = right_kernel(B, ncols)
    if not K:
        return identity(ncols)
    return right_kernel(K, ncols)


def solve_left(A: Sequence[Sequence[int]], y: Sequence[int]) -> list[int] | None:
    """Integer ``x`` with ``x A == y``, or ``None`` if no integral solution."""
    m = len(A)
    if m == 0:
        return [] if not any(y) else None
    H, r, U = hnf(A, with_transform=True)
    resid = list(map(int, y))
    z = [0] * r
    for i in range(r):
        row = H[i]
        p = next(j for j, x in enumerate(row) if x)
        if any(resid[:p]):
            return None
        q, rem = divmod(resid[p], row[p])
        if rem:
            return None
        z[i] = q
        if q:
            resid = [a - q * b for a, b in zip(resid, row)]
    if any(resid):
        return None
    return [sum(z[i] * U[i][k] for i in range(r)) for k in range(m)]


def rref(A: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q. Returns ``(R, pivots)``."""
    R = [[Fraction(x) for x in row] for row in A]
    ncols = len(R[0]) if R else (ncols or 0)
    pivots: list[int] = []
    r = 0
    for j in range(ncols):
        k = next((k for k in range(r, len(R)) if R[k][j] != 0), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        p = R[r][j]
        R[r] = [x / p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][j] != 0:
                c = R[i][j]
                R[i] = [a - c * b for a, b in zip(R[i], R[r])]
        pivots.append(j)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def solve_rational_left(A: Sequence[Sequence], y: Sequence) -> list[Fraction] | None:
    """Rational ``x`` with ``x A == y`` for ``A`` with independent rows."""
    m = len(A)
    if m == 0:
        return [] if not any(y) else None
    aug = [list(col) + [yv] for col, yv in zip(transpose(A), y)]
    R, piv = rref(aug)
    if m in piv:
        return None
    x = [Fraction(0)] * m
    for row, p in zip(R, piv):
        x[p] = row[m]
    return x


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def leading_minors(A: Sequence[Sequence[int]]) -> list[int]:
    return [det([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def smith_invariants(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariants ``d_1 | d_2 | ...`` of an integer matrix."""
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0

    def move_to_pivot(t, i, j):
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]

    out = []
    for t in range(min(m, n)):
        entries = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not entries:
            break
        move_to_pivot(t, *min(entries)[1:])
        while True:
            piv = M[t][t]
            for i in range(t + 1, m):
                q = M[i][t] // piv
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
            for j in range(t + 1, n):
                q = M[t][j] // piv
                if q:
                    for row in M:
                        row[j] -= q * row[t]
            rest = [(abs(M[i][t]), i, t) for i in range(t + 1, m) if M[i][t]]
            rest += [(abs(M[t][j]), t, j) for j in range(t + 1, n) if M[t][j]]
            if rest:
                move_to_pivot(t, *min(rest)[1:])
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % piv), None)
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
        out.append(abs(M[t][t]))
    return out


def lll_reduce(B: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """LLL-reduced basis (standard dot product) of independent integer rows.

    Exact rational Gram-Schmidt; meant for conditioning small bases before
    enumeration, not for large dimensions.
    """
    b = [list(map(int, row)) for row in B]
    k = len(b)
    if k <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * k for _ in range(k)]
        norms = []
        for i in range(k):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / norms[j] if norms[j] else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                mu, norms = gram_schmidt()
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, norms = gram_schmidt()
            i = max(i - 1, 1)
    return b
