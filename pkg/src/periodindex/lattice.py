"""Integral lattices given by Gram matrices, and their sublattices.

Vectors are plain integer sequences of coordinates in the lattice basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterator, Sequence

from . import linalg

Vector = tuple[int, ...]

DEFAULT_ISOTROPIC_BOUND = 32
DEFAULT_ISOTROPIC_CAP = 1024


class LatticeError(ValueError):
    """Invalid lattice data or a violated precondition."""


class NotContained(LatticeError):
    pass


class NotFiniteIndex(LatticeError):
    pass


class SearchExhausted(LatticeError):
    def __init__(self, message: str, bound: int | None = None):
        super().__init__(message)
        self.bound = bound


def _as_matrix(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class IntLattice:
    """Free Z-module of finite rank with an integral symmetric bilinear form."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = _as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return linalg.det(self.gram)

    @property
    def nondegenerate(self) -> bool:
        return self.det != 0

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, data: dict) -> IntLattice:
        lat = cls(data["gram"])
        if "rank" in data and int(data["rank"]) != lat.rank:
            raise LatticeError("rank field disagrees with the Gram matrix")
        return lat


def _check(L: IntLattice, v: Sequence[int]) -> None:
    if len(v) != L.rank:
        raise LatticeError(f"vector of length {len(v)} in a lattice of rank {L.rank}")


def pair(L: IntLattice, v: Sequence[int], w: Sequence[int]) -> int:
    _check(L, v)
    _check(L, w)
    return sum(x * sum(g * y for g, y in zip(row, w)) for x, row in zip(v, L.gram) if x)


def square(L: IntLattice, v: Sequence[int]) -> int:
    return pair(L, v, v)


def direct_sum(*lattices: IntLattice) -> IntLattice:
    n = sum(L.rank for L in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i, row in enumerate(L.gram):
            gram[off + i][off:off + L.rank] = row
        off += L.rank
    return IntLattice(gram)


def scaled(L: IntLattice, c: int) -> IntLattice:
    return IntLattice([[c * x for x in row] for row in L.gram])


_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]


def standard_lattice(kind: str, n: int | None = None, entries: Sequence[int] = ()) -> IntLattice:
    """Named lattices: ``U``, ``E8neg``, ``K3``, ``K3n`` (needs ``n``), ``diag``.

    ``U`` uses the basis ``e, f`` with ``(e.f) = -1``; ``K3`` is ``U^3 + E8(-1)^2``
    and ``K3n`` appends the rank-one summand ``<-(2n-2)>``.
    """
    if kind == "U":
        return IntLattice([[0, -1], [-1, 0]])
    if kind == "E8neg":
        g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
        for i, j in _E8_EDGES:
            g[i][j] = g[j][i] = 1
        return IntLattice(g)
    if kind == "K3":
        U, E = standard_lattice("U"), standard_lattice("E8neg")
        return direct_sum(U, U, U, E, E)
    if kind == "K3n":
        if n is None or n < 2:
            raise LatticeError("K3n needs n >= 2")
        return direct_sum(standard_lattice("K3"), IntLattice([[-(2 * n - 2)]]))
    if kind == "diag":
        if not entries:
            raise LatticeError("diag needs at least one entry")
        return IntLattice([[e if i == j else 0 for j in range(len(entries))]
                           for i, e in enumerate(entries)])
    raise LatticeError(f"unknown lattice kind {kind!r}")


def discriminant(L: IntLattice) -> int:
    return abs(L.det)


def divisibility(L: IntLattice, v: Sequence[int]) -> int:
    """Positive generator of the ideal ``q(v, L)``."""
    _check(L, v)
    if not any(v):
        raise LatticeError("divisibility of the zero vector")
    d = linalg.content(linalg.matvec(L.gram, v))
    if d == 0:
        raise LatticeError("vector lies in the radical of the form")
    return d


def is_primitive(L: IntLattice, v: Sequence[int]) -> bool:
    _check(L, v)
    if not any(v):
        raise LatticeError("primitivity of the zero vector")
    return linalg.content(v) == 1


@dataclass(frozen=True)
class Sublattice:
    """Sublattice of ``ambient`` spanned by the rows of ``basis``.

    Setting ``saturated=True`` is checked: the Smith invariants of the basis
    matrix must all be one.
    """

    ambient: IntLattice
    basis: tuple[tuple[int, ...], ...]
    saturated: bool = False
    _trusted: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        B = _as_matrix(self.basis)
        object.__setattr__(self, "basis", B)
        if any(len(row) != self.ambient.rank for row in B):
            raise LatticeError("basis rows must have ambient length")
        if self._trusted:
            return
        if B and linalg.rank(B) != len(B):
            raise LatticeError("basis rows are linearly dependent")
        if self.saturated and B and set(linalg.smith_invariants(B)) != {1}:
            raise LatticeError("basis does not span a saturated sublattice")

    @classmethod
    def span(cls, ambient: IntLattice, rows: Sequence[Sequence[int]]) -> Sublattice:
        """Sublattice generated by arbitrary (possibly dependent) rows."""
        rows = [list(r) for r in rows]
        return cls(ambient, tuple(map(tuple, linalg.row_basis(rows))) if rows else ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        GB = [linalg.matvec(self.ambient.gram, row) for row in self.basis]
        return tuple(tuple(sum(a * b for a, b in zip(r, gb)) for gb in GB) for r in self.basis)

    def as_lattice(self) -> IntLattice:
        return IntLattice(self.gram)

    def to_ambient(self, coords: Sequence[int]) -> Vector:
        if len(coords) != self.rank:
            raise LatticeError("coordinate vector has the wrong length")
        out = [0] * self.ambient.rank
        for c, row in zip(coords, self.basis):
            if c:
                out = [o + c * x for o, x in zip(out, row)]
        return tuple(out)

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Integer coordinates of ``v`` in this basis, ``None`` if ``v`` is not a member."""
        x = linalg.solve_left([list(r) for r in self.basis], v)
        return None if x is None else tuple(x)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None


def _saturated(ambient: IntLattice, rows) -> Sublattice:
    return Sublattice(ambient, tuple(map(tuple, rows)), saturated=True, _trusted=True)


def saturation(L: IntLattice, S: Sublattice) -> Sublattice:
    """``span_Q(S) ∩ L``."""
    return _saturated(L, linalg.saturate_rows([list(r) for r in S.basis], L.rank))


def orthogonal_complement(L: IntLattice, S: Sublattice | Sequence[Sequence[int]]) -> Sublattice:
    """Saturated sublattice of vectors orthogonal to all of ``S``."""
    rows = S.basis if isinstance(S, Sublattice) else S
    M = [linalg.matvec(L.gram, r) for r in rows]
    M = [r for r in M if any(r)]
    return _saturated(L, linalg.right_kernel(M, L.rank))


def sublattice_index(A: Sublattice, B: Sublattice) -> int:
    """``|A / B|`` for ``B ⊆ A`` of equal rank."""
    if A.ambient != B.ambient:
        raise LatticeError("sublattices of different ambient lattices")
    Arows = [list(r) for r in A.basis]
    X = []
    rational_ok = True
    for row in B.basis:
        x = linalg.solve_left(Arows, row)
        if x is None:
            if linalg.solve_rational_left(Arows, row) is None:
                rational_ok = False
                break
            raise NotContained("B is not contained in A")
        X.append(x)
    if not rational_ok:
        raise NotContained("B does not lie in the rational span of A")
    if B.rank != A.rank:
        raise NotFiniteIndex(f"rank {B.rank} sublattice in rank {A.rank} lattice")
    if A.rank == 0:
        return 1
    inv = linalg.smith_invariants(X)
    return reduce(lambda a, b: a * b, inv, 1)


def definiteness(L: IntLattice) -> int:
    """+1 / -1 for positive / negative definite lattices, 0 otherwise."""
    minors = linalg.leading_minors(L.gram)
    if all(m > 0 for m in minors):
        return 1
    if all((-1) ** k * m > 0 for k, m in enumerate(minors, start=1)):
        return -1
    return 0


_VALUE_ORDER_CACHE: dict[int, list[int]] = {}


def _values_up_to(s: int) -> list[int]:
    if s not in _VALUE_ORDER_CACHE:
        _VALUE_ORDER_CACHE[s] = [x for a in range(1, s + 1) for x in (a, -a)]
    return _VALUE_ORDER_CACHE[s]


def shell(rank: int, s: int) -> Iterator[Vector]:
    """Vectors of sup-norm exactly ``s`` with first nonzero coordinate positive.

    Order: support size, then support positions (lexicographic), then values
    position by position in the order ``1, -1, 2, -2, ...``.
    """
    values = _values_up_to(s)
    first_values = list(range(1, s + 1))
    for k in range(1, rank + 1):
        for support in itertools.combinations(range(rank), k):
            for head in first_values:
                for tail in itertools.product(values, repeat=k - 1):
                    vals = (head,) + tail
                    if max(abs(x) for x in vals) != s:
                        continue
                    v = [0] * rank
                    for i, x in zip(support, vals):
                        v[i] = x
                    yield tuple(v)


def iter_isotropic(L: IntLattice, sup_norm_bound: int) -> Iterator[Vector]:
    """Primitive isotropic vectors in search order, up to the given sup-norm."""
    G = L.gram
    for s in range(1, sup_norm_bound + 1):
        for v in shell(L.rank, s):
            supp = [i for i, x in enumerate(v) if x]
            q = sum(v[i] * v[j] * G[i][j] for i in supp for j in supp)
            if q == 0 and linalg.content(v) == 1:
                yield v


def find_isotropic(L: IntLattice, sup_norm_bound: int = DEFAULT_ISOTROPIC_BOUND) -> Vector:
    """First primitive ``v != 0`` with ``q(v) = 0`` in the order of :func:`shell`.

    The search visits sup-norm shells in increasing order, so the result has
    minimal sup-norm. Definite lattices are rejected without enumeration.
    """
    if L.rank == 0 or definiteness(L) != 0:
        raise SearchExhausted("definite lattice has no isotropic vectors", sup_norm_bound)
    for v in iter_isotropic(L, sup_norm_bound):
        return v
    raise SearchExhausted(f"no isotropic vector of sup-norm <= {sup_norm_bound}", sup_norm_bound)


def search_isotropic(L: IntLattice, bound: int = DEFAULT_ISOTROPIC_BOUND,
                     cap: int = DEFAULT_ISOTROPIC_CAP) -> Vector:
    """:func:`find_isotropic` with the bound doubled up to ``cap``."""
    while True:
        try:
            return find_isotropic(L, bound)
        except SearchExhausted:
            if bound >= cap:
                raise
            bound = min(2 * bound, cap)


def gcd_all(values) -> int:
    return reduce(gcd, values, 0)
