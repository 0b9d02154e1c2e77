"""Independent reference computations built on sympy only.

Nothing here imports the package. The routes differ on purpose:
Hodge classes come from orthogonality to the twisted period line rather than
NS membership, symmetric tensors are sympy polynomials, and indices are
orders of torsion elements read off a column HNF instead of saturations.
"""
from __future__ import annotations

from functools import reduce
from math import gcd, lcm

import sympy
from sympy import Matrix, Rational, symbols
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix


def _int_rows(rows):
    out = []
    for r in rows:
        den = reduce(lcm, [Rational(x).q for x in r], 1)
        out.append([int(Rational(x) * den) for x in r])
    return out


def _annihilator(rows, ncols):
    """Integral rows spanning the dot-product annihilator of ``rows`` over Q."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    ns = Matrix(rows).nullspace()
    return _int_rows([list(v) for v in ns])


def _det_multiple(P):
    """Multiple of the column-lattice determinant when ``P`` has full row rank, else None."""
    dM = DomainMatrix.from_Matrix(P).convert_to(ZZ)
    _, pivots = dM.convert_to(QQ).rref()
    if len(pivots) < P.rows:
        return None
    return abs(dM.extract(list(range(P.rows)), list(pivots)).det()) or None


def _order_mod_columns(P, target):
    """Smallest ``m > 0`` with ``m * target`` in the integer column span of ``P``.

    Returns 0 when ``target`` is outside the rational column span.
    """
    P = Matrix(P)
    t = Matrix(target)
    if all(x == 0 for x in t):
        return 1
    if P.is_zero_matrix:
        return 0
    H = hermite_normal_form(P, D=_det_multiple(P))
    Hq = DomainMatrix.from_Matrix(H).convert_to(QQ)
    tq = DomainMatrix.from_Matrix(t).convert_to(QQ)
    z = (Hq.transpose() * Hq).lu_solve(Hq.transpose() * tq)
    if Hq * z != tq:
        return 0
    return reduce(lcm, [Rational(x).q for x in z.to_Matrix()], 1)


def _gram(G, u, v):
    return (Matrix([u]) * Matrix(G) * Matrix(v))[0, 0]


def period(h2, ns_rows, b, ell):
    """Order of ``b/ell`` in ``Q^r / (NS_Q + Z^r)``."""
    r = len(h2)
    P = _annihilator(ns_rows, r)
    target = Matrix(P) * Matrix([Rational(x, ell) for x in b])
    return _order_mod_columns(P, list(target))


def _mukai_gram(h2):
    r = len(h2)
    G = [list(row) + [0, 0] for row in h2]
    G.append([0] * r + [0, -1])
    G.append([0] * r + [-1, 0])
    return G


def mukai_hodge_annihilator(h2, ns_rows, b, ell):
    """Rows ``w`` with ``v`` Hodge iff ``w . v = 0``, from ``v ⊥ (0, t, -q(t,B))``, t in T(X)."""
    r = len(h2)
    G = _mukai_gram(h2)
    T = _annihilator([list(Matrix(h2) * Matrix(row)) for row in ns_rows], r) if ns_rows \
        else [[int(i == j) for j in range(r)] for i in range(r)]
    rows = []
    for t in T:
        qtB = _gram(h2, t, b) / ell
        w = list(t) + [0, -qtB]
        rows.append(list(Matrix(G) * Matrix(w)))
    return _int_rows(rows)


def index_of_coordinate(annihilator, ncols, coord):
    """gcd of the ``coord`` entry over ``{v in Z^ncols : annihilator v = 0}``."""
    M = Matrix(annihilator) if annihilator else Matrix.zeros(1, ncols)
    rest = [j for j in range(ncols) if j != coord]
    Mx = M[:, rest]
    Me = M[:, coord]
    return _order_mod_columns(Mx, [-x for x in Me])


def ind_mukai(h2, ns_rows, b, ell):
    r = len(h2)
    return index_of_coordinate(mukai_hodge_annihilator(h2, ns_rows, b, ell), r + 2, r)


def _mukai_hodge_basis(h2, ns_rows, b, ell):
    A = Matrix(mukai_hodge_annihilator(h2, ns_rows, b, ell))
    return [list(v) for v in A.nullspace()]


def sym_hodge_span(h2, ns_rows, b, ell, n):
    """Polynomials ``u * q_T^j`` spanning the Hodge classes of ``S^n`` (as sympy exprs)."""
    r = len(h2)
    D = r + 2
    xs = symbols(f"x0:{D}")
    G = Matrix(_mukai_gram(h2))
    N = _mukai_hodge_basis(h2, ns_rows, b, ell)
    Tb = [list(v) for v in Matrix([list(G * Matrix(v)) for v in N]).nullspace()]
    GT = Matrix([[_gram(G, s, t) for t in Tb] for s in Tb])
    inv = GT.inv()
    lin = [sum(c * x for c, x in zip(v, xs)) for v in N]
    tl = [sum(c * x for c, x in zip(v, xs)) for v in Tb]
    qT = sympy.expand(sum(inv[i, j] * tl[i] * tl[j] for i in range(len(Tb)) for j in range(len(Tb))))
    span = []
    import itertools
    for j in range(n // 2 + 1):
        for combo in itertools.combinations_with_replacement(range(len(lin)), n - 2 * j):
            p = sympy.Integer(1)
            for i in combo:
                p *= lin[i]
            span.append(sympy.expand(p * qT ** j))
    return xs, span


def ind_sym(h2, ns_rows, b, ell, n):
    import itertools
    r = len(h2)
    D = r + 2
    xs, span = sym_hodge_span(h2, ns_rows, b, ell, n)
    monos = list(itertools.combinations_with_replacement(range(D), n))
    mono_index = {m: k for k, m in enumerate(monos)}
    rows = []
    for p in span:
        row = [0] * len(monos)
        for powers, c in sympy.Poly(p, *xs).terms():
            m = tuple(i for i, e in enumerate(powers) for _ in range(e))
            row[mono_index[m]] = c
        rows.append(row)
    ann = _annihilator(rows, len(monos))
    return index_of_coordinate(ann, len(monos), mono_index[tuple([r] * n)])


def smith_invariants(M):
    from sympy.matrices.normalforms import smith_normal_form
    from sympy import ZZ
    S = smith_normal_form(Matrix(M), domain=ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def permanent(A):
    import itertools
    n = len(A)
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= A[i][j]
        total += prod
    return total
