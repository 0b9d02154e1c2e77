"""Symmetric powers ``S^n L`` with the permanent pairing ``q^(n)``.

A monomial is a sorted tuple of base-basis indices. For monomials
``x_1...x_n`` and ``y_1...y_n`` the pairing is ``perm[q(x_i, y_j)]``, so
``q^(n)(a^(n), b^(n)) = n! q(a,b)^n``.
"""
from __future__ import annotations

import itertools
import os
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial, gcd
from typing import Iterable, Mapping, Sequence

from . import linalg
from .lattice import IntLattice, LatticeError, Sublattice, pair, square
from .mukai import (BrauerConfig, hodge_classes_mukai, mukai, period,
                    transcendental_twist)

Monomial = tuple[int, ...]

DEFAULT_SIZE_CAP = 5000
MAX_DEGREE = 6


class SizeCapExceeded(LatticeError):
    pass


def size_cap() -> int:
    raw = os.environ.get("MLK_SIZE_CAP")
    return int(raw) if raw else DEFAULT_SIZE_CAP


def permanent(A: Sequence[Sequence[int]]) -> int:
    """Permanent of a square matrix (Ryser's formula, Gray-code order)."""
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] + A[0][1] * A[1][0]
    sums = [0] * n
    total = 0
    prev_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        j = (gray ^ prev_gray).bit_length() - 1
        sign = 1 if gray & (1 << j) else -1
        for i in range(n):
            sums[i] += sign * A[i][j]
        prev_gray = gray
        prod = 1
        for s in sums:
            prod *= s
            if not prod:
                break
        total += -prod if bin(gray).count("1") % 2 else prod
    return total if n % 2 == 0 else -total


class SymVector:
    """Sparse vector in ``S^k`` of some base lattice: monomial -> coefficient.

    Coefficients are ints or Fractions; ``integral`` says whether all are ints.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Monomial, int | Fraction] = ()):
        self.degree = degree
        clean = {}
        for mono, c in dict(terms).items():
            if c:
                if len(mono) != degree:
                    raise LatticeError("monomial of the wrong degree")
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                clean[tuple(sorted(mono))] = clean.get(tuple(sorted(mono)), 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> SymVector:
        return cls(1, {(i,): c for i, c in enumerate(v) if c})

    @classmethod
    def one(cls) -> SymVector:
        return cls(0, {(): 1})

    @property
    def integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def __eq__(self, other):
        return isinstance(other, SymVector) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return f"SymVector({self.degree}, {dict(sorted(self.terms.items()))})"

    def _same(self, other: SymVector):
        if self.degree != other.degree:
            raise LatticeError("adding symmetric tensors of different degree")

    def __add__(self, other: SymVector) -> SymVector:
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SymVector(self.degree, out)

    def __neg__(self) -> SymVector:
        return SymVector(self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SymVector) -> SymVector:
        return self + (-other)

    def scale(self, c) -> SymVector:
        return SymVector(self.degree, {m: c * x for m, x in self.terms.items()})

    def __rmul__(self, c) -> SymVector:
        return self.scale(c)

    def __mul__(self, other):
        """Symmetric product (or scalar multiple)."""
        if not isinstance(other, SymVector):
            return self.scale(other)
        out: dict[Monomial, int | Fraction] = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[tuple(sorted(m1 + m2))] += c1 * c2
        return SymVector(self.degree + other.degree, out)

    def power(self, k: int) -> SymVector:
        out = SymVector.one()
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, mono: Sequence[int]):
        return self.terms.get(tuple(sorted(mono)), 0)

    def to_json(self) -> list:
        return [[list(m), str(c)] for m, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, degree: int, data: Iterable) -> SymVector:
        return cls(degree, {tuple(m): Fraction(c) for m, c in data})


@dataclass(frozen=True)
class SymLattice:
    """``S^n`` of ``base`` with memoised permanent pairing on monomials."""

    base: IntLattice
    n: int
    _memo: dict = field(default_factory=dict, repr=False, compare=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False,
                                  hash=False)

    @cached_property
    def monomials(self) -> list[Monomial]:
        return list(itertools.combinations_with_replacement(range(self.base.rank), self.n))

    @cached_property
    def index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    @property
    def dimension(self) -> int:
        return comb(self.base.rank + self.n - 1, self.n)

    def monomial_pair(self, m1: Monomial, m2: Monomial) -> int:
        key = (m1, m2) if m1 <= m2 else (m2, m1)
        val = self._memo.get(key)
        if val is None:
            G = self.base.gram
            val = permanent([[G[x][y] for y in m2] for x in m1])
            with self._lock:
                self._memo[key] = val
        return val

    def pair(self, u: SymVector, v: SymVector):
        if u.degree != self.n or v.degree != self.n:
            raise LatticeError(f"expected degree {self.n}, got {u.degree} and {v.degree}")
        total = 0
        for m1, c1 in u.terms.items():
            for m2, c2 in v.terms.items():
                p = self.monomial_pair(m1, m2)
                if p:
                    total += c1 * c2 * p
        return total

    def gram(self) -> list[list[int]]:
        mons = self.monomials
        return [[self.monomial_pair(a, b) for b in mons] for a in mons]

    def dense(self, v: SymVector) -> list:
        out = [0] * len(self.monomials)
        for m, c in v.terms.items():
            out[self.index[m]] = c
        return out

    def from_dense(self, coords: Sequence) -> SymVector:
        return SymVector(self.n, {m: c for m, c in zip(self.monomials, coords) if c})


@lru_cache(maxsize=64)
def _sym_lattice(L: IntLattice, n: int) -> SymLattice:
    return SymLattice(L, n)


def sym_lattice(L: IntLattice, n: int) -> SymLattice:
    if not 0 <= n <= MAX_DEGREE:
        raise SizeCapExceeded(f"degree {n} outside 0..{MAX_DEGREE}")
    size = comb(L.rank + n - 1, n)
    if size > size_cap():
        raise SizeCapExceeded(f"S^{n} of a rank {L.rank} lattice has {size} monomials "
                              f"(cap {size_cap()})")
    return _sym_lattice(L, n)


def sym_pair(L: IntLattice, u: SymVector, v: SymVector):
    """``q^(k)(u, v)`` for two tensors of the same degree ``k``."""
    return sym_lattice(L, u.degree).pair(u, v)


def sym_power_vec(v: Sequence[int], n: int) -> SymVector:
    return SymVector.from_vector(v).power(n)


def rank_n(config_or_lattice, v: SymVector) -> int:
    """``(-1)^n q^(n)(v, f^(n)) / n!`` on ``S^n`` of a Mukai lattice."""
    M = config_or_lattice if hasattr(config_or_lattice, "f_index") else mukai(config_or_lattice)
    n = v.degree
    val = sym_pair(M.lattice, v, sym_power_vec(M.f, n))
    val = (-1) ** n * val
    if Fraction(val) % factorial(n):
        raise LatticeError("rank of a non-integral tensor is not integral")
    return int(Fraction(val) / factorial(n))


def qT_class(T: IntLattice | Sublattice) -> SymVector:
    """``sum g^{ij} t_i t_j`` for the inverse Gram ``g^{ij}``.

    For a Sublattice the ``t_i`` are its basis vectors in ambient coordinates.
    """
    if isinstance(T, Sublattice):
        G, vecs = T.gram, [SymVector.from_vector(r) for r in T.basis]
    else:
        G = T.gram
        vecs = [SymVector.from_vector([int(i == j) for j in range(T.rank)]) for i in range(T.rank)]
    k = len(G)
    if linalg.det(G) == 0:
        raise LatticeError("q_T needs a nondegenerate lattice")
    inv = _inverse(G)
    out = SymVector(2)
    for i in range(k):
        for j in range(k):
            if inv[i][j]:
                out = out + (vecs[i] * vecs[j]).scale(inv[i][j])
    return out


def _inverse(G) -> list[list[Fraction]]:
    k = len(G)
    aug = [list(row) + [int(i == j) for j in range(k)] for i, row in enumerate(G)]
    R, _ = linalg.rref(aug)
    return [row[k:] for row in R]


def _n_basis_monomials(N_vecs: list[SymVector], degree: int) -> list[SymVector]:
    out = []
    for combo in itertools.combinations_with_replacement(range(len(N_vecs)), degree):
        v = SymVector.one()
        for i in combo:
            v = v * N_vecs[i]
        out.append(v)
    return out


@lru_cache(maxsize=64)
def hodge_span_sym(config: BrauerConfig) -> tuple[SymVector, ...]:
    """Spanning tensors ``u * q_T^j`` with ``u`` a product of ``N(X,B)`` basis vectors."""
    n = config.n
    N_vecs = [SymVector.from_vector(r) for r in hodge_classes_mukai(config).basis]
    qT = qT_class(transcendental_twist(config))
    out = []
    for j in range(n // 2 + 1):
        qTj = qT.power(j)
        for u in _n_basis_monomials(N_vecs, n - 2 * j):
            out.append(u * qTj)
    return tuple(out)


@lru_cache(maxsize=64)
def hodge_classes_sym(config: BrauerConfig) -> Sublattice:
    """Integral Hodge classes of ``S^n H~(X,B)`` in the Mumford-Tate general model."""
    M = mukai(config)
    S = sym_lattice(M.lattice, config.n)
    rows = [linalg.clear_denominators(S.dense(v)) for v in hodge_span_sym(config)]
    basis = linalg.saturate_rows(rows, S.dimension)
    return Sublattice(sym_gram_lattice(M.lattice, config.n), tuple(map(tuple, basis)),
                      saturated=True, _trusted=True)


@lru_cache(maxsize=16)
def sym_gram_lattice(L: IntLattice, n: int) -> IntLattice:
    """``S^n L`` as an IntLattice on the monomial basis."""
    return IntLattice(sym_lattice(L, n).gram())


@dataclass(frozen=True)
class SymIndex:
    ind: int
    per: int
    n: int
    obstruction_modulus: int | None
    coprime: bool | None


def obstruction_modulus(config: BrauerConfig) -> int | None:
    """``2 * n! * q(eta)^m * disc(T(X)) * q(b)``, or None when no eta is available."""
    from .constructions import eta_for_config
    eta = eta_for_config(config)
    if eta is None or config.qb == 0:
        return None
    T = config.transcendental
    disc = abs(linalg.det(T.gram))
    m = config.n // 2
    return abs(2 * factorial(config.n) * eta.q_eta ** m * disc * config.qb)


def ind_sym(config: BrauerConfig) -> int:
    """gcd of ``rank_n`` over the integral Hodge classes of ``S^n H~(X,B)``."""
    M = mukai(config)
    S = sym_lattice(M.lattice, config.n)
    H = hodge_classes_sym(config)
    return linalg.content([rank_n(M, S.from_dense(row)) for row in H.basis])


def ind_sym_report(config: BrauerConfig) -> SymIndex:
    ind = ind_sym(config)
    per = period(config)
    mod = obstruction_modulus(config)
    coprime = None if mod is None else gcd(mod, config.ell) == 1
    return SymIndex(ind, per, config.n, mod, coprime)


def w_class(h2: IntLattice, b: Sequence[int], eta: Sequence[int], n: int) -> SymVector:
    """``sum_k (-1)^k C(n,2k) q(eta)^(m-k) q(b)^k b^(n-2k) eta^(2k)``, ``m = n // 2``."""
    qb, qe = square(h2, b), square(h2, eta)
    if qb <= 0 or qe <= 0:
        raise LatticeError("w needs q(b) > 0 and q(eta) > 0")
    if pair(h2, b, eta):
        raise LatticeError("w needs b orthogonal to eta")
    m = n // 2
    B, E = SymVector.from_vector(b), SymVector.from_vector(eta)
    out = SymVector(n)
    for k in range(m + 1):
        coeff = (-1) ** k * comb(n, 2 * k) * qe ** (m - k) * qb ** k
        out = out + (B.power(n - 2 * k) * E.power(2 * k)).scale(coeff)
    return out


def splitting_pair(L: IntLattice, gamma: Sequence[int], k: int, u: SymVector, v: SymVector):
    """Both sides of ``q^(n)(g^(n), u v) = C(n,k) q^(k)(g^(k), u) q^(n-k)(g^(n-k), v)``."""
    if u.degree != k:
        raise LatticeError("u must have degree k")
    n = k + v.degree
    lhs = sym_pair(L, sym_power_vec(gamma, n), u * v)
    rhs = comb(n, k) * sym_pair(L, sym_power_vec(gamma, k), u) * \
        sym_pair(L, sym_power_vec(gamma, n - k), v)
    return lhs, rhs
