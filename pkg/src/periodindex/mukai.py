"""The B-field twisted Mukai lattice ``H~ = H^2 + U`` in the generic-period model.

A vector ``(r, a, s)`` (``r`` on ``e``, ``s`` on ``f``) is a Hodge class of
the twist by ``B = b/ell`` iff it is orthogonal to ``sigma - q(sigma, B) f``
for a generic ``sigma``, i.e. iff ``a + r*B`` lies in ``NS(X) (x) Q``.
Coordinates are ordered ``h2`` basis, then ``e``, then ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Sequence

from . import linalg
from .lattice import (IntLattice, LatticeError, Sublattice, direct_sum, orthogonal_complement,
                      pair, shell, square, standard_lattice)


class ConfigError(LatticeError):
    """A Brauer configuration violating its invariants."""


class ModelViolation(RuntimeError):
    """A computed quantity contradicts a theorem of the model (a bug, not data)."""


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass(frozen=True)
class BrauerConfig:
    """Lattice data of a hyperkähler variety with B-field ``b/ell``.

    The pair ``(b, ell)`` is normalised on construction: common factors are
    divided out, and if ``b`` is still imprimitive it is shifted by
    ``ell * t`` for a small ``t`` in ``T(X)``, which leaves the Brauer class
    unchanged.
    """

    h2: IntLattice
    ns_basis: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    ell: int
    n: int = 2

    def __post_init__(self):
        h2 = self.h2
        if not isinstance(h2, IntLattice):
            raise ConfigError("h2 must be an IntLattice")
        rows = tuple(tuple(int(x) for x in r) for r in self.ns_basis)
        b = tuple(int(x) for x in self.b)
        ell, n = int(self.ell), int(self.n)
        if not h2.nondegenerate:
            raise ConfigError("h2 must be nondegenerate")
        if ell < 1:
            raise ConfigError("ell must be positive")
        if n < 1:
            raise ConfigError("n must be positive")
        if len(b) != h2.rank or any(len(r) != h2.rank for r in rows):
            raise ConfigError("vector length does not match rank(h2)")
        if rows:
            if linalg.rank(rows) != len(rows):
                raise ConfigError("ns_basis rows are dependent")
            if set(linalg.smith_invariants(rows)) != {1}:
                raise ConfigError("ns_basis does not span a saturated sublattice")
        ns = Sublattice(h2, rows, _trusted=True)
        if rows and linalg.det(ns.gram) == 0:
            raise ConfigError("the form restricted to NS is degenerate")
        if not any(b):
            raise ConfigError("b must be nonzero")
        if any(pair(h2, b, r) for r in rows):
            raise ConfigError("b is not orthogonal to NS")
        T = orthogonal_complement(h2, ns)
        if T.rank < 3:
            raise ConfigError("rank T(X) must be at least 3")

        g = gcd(linalg.content(b), ell)
        b, ell = tuple(x // g for x in b), ell // g
        if linalg.content(b) != 1:
            b = _primitive_shift(b, ell, T)
        object.__setattr__(self, "ns_basis", rows)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "n", n)

    @property
    def ns(self) -> Sublattice:
        return Sublattice(self.h2, self.ns_basis, saturated=True, _trusted=True)

    @cached_property
    def transcendental(self) -> Sublattice:
        """``T(X) = NS(X)^perp`` inside ``h2``."""
        return orthogonal_complement(self.h2, self.ns)

    @property
    def qb(self) -> int:
        return square(self.h2, self.b)

    def with_n(self, n: int) -> BrauerConfig:
        return BrauerConfig(self.h2, self.ns_basis, self.b, self.ell, n)

    def to_json(self) -> dict:
        return {"h2": self.h2.to_json(), "ns_basis": [list(r) for r in self.ns_basis],
                "b": list(self.b), "ell": self.ell, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> BrauerConfig:
        try:
            h2 = IntLattice.from_json(data["h2"])
            return cls(h2, tuple(map(tuple, data.get("ns_basis", []))), tuple(data["b"]),
                       int(data["ell"]), int(data.get("n", 2)))
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed configuration: {exc}") from exc


def _primitive_shift(b: Sequence[int], ell: int, T: Sublattice) -> tuple[int, ...]:
    # b has content coprime to ell here; some b + ell*t is primitive
    for s in range(1, 8):
        for coords in shell(T.rank, s):
            t = T.to_ambient(coords)
            for sign in (1, -1):
                cand = tuple(x + sign * ell * y for x, y in zip(b, t))
                if linalg.content(cand) == 1:
                    return cand
    raise ConfigError("could not make b primitive")


@dataclass(frozen=True)
class MukaiLattice:
    base: IntLattice
    lattice: IntLattice
    e_index: int
    f_index: int

    def rk(self, v: Sequence[int]) -> int:
        f = [0] * self.lattice.rank
        f[self.f_index] = 1
        return -pair(self.lattice, v, f)

    def embed(self, a: Sequence[int], r: int = 0, s: int = 0) -> tuple[int, ...]:
        """The vector ``r*e + a + s*f``."""
        return tuple(a) + (r, s)

    @property
    def e(self) -> tuple[int, ...]:
        return self.embed([0] * self.base.rank, 1, 0)

    @property
    def f(self) -> tuple[int, ...]:
        return self.embed([0] * self.base.rank, 0, 1)


def mukai_lattice(h2: IntLattice) -> MukaiLattice:
    r = h2.rank
    return MukaiLattice(h2, direct_sum(h2, standard_lattice("U")), r, r + 1)


def mukai(config: BrauerConfig) -> MukaiLattice:
    return mukai_lattice(config.h2)


@lru_cache(maxsize=256)
def _ns_annihilator(config: BrauerConfig) -> tuple[tuple[int, ...], ...]:
    """Rows ``K`` with ``K v = 0`` iff ``v`` lies in ``NS (x) Q``; ``K Z^r = Z^(r-k)``."""
    rows = [list(r) for r in config.ns_basis]
    K = linalg.right_kernel(rows, config.h2.rank)
    return tuple(map(tuple, K))


def _in_ns_plus_integral(config: BrauerConfig, m: int) -> bool:
    """Is ``m*b/ell`` in ``NS (x) Q + H^2(Z)``?"""
    K = _ns_annihilator(config)
    target = linalg.matvec(K, config.b)
    if any((m * x) % config.ell for x in target):
        return False
    target = [m * x // config.ell for x in target]
    return linalg.solve_left(linalg.transpose(K), target) is not None


@lru_cache(maxsize=256)
def period(config: BrauerConfig) -> int:
    """Smallest ``m > 0`` with ``m*b/ell`` integral modulo ``NS (x) Q``; a divisor of ``ell``."""
    for m in _divisors(config.ell):
        if _in_ns_plus_integral(config, m):
            return m
    raise ModelViolation("ell*B is not integral modulo NS")


def is_nonspecial(config: BrauerConfig) -> bool:
    return gcd(config.ell, config.qb) == 1


@lru_cache(maxsize=256)
def hodge_classes_mukai(config: BrauerConfig) -> Sublattice:
    """``N(X,B)``: integral kernel of ``(r, a, s) -> ell*K a + r*K b``."""
    K = _ns_annihilator(config)
    Kb = linalg.matvec(K, config.b)
    M = [[config.ell * x for x in row] + [kb, 0] for row, kb in zip(K, Kb)]
    L = mukai(config).lattice
    basis = linalg.right_kernel(M, L.rank)
    return Sublattice(L, tuple(map(tuple, basis)), saturated=True, _trusted=True)


@lru_cache(maxsize=256)
def transcendental_twist(config: BrauerConfig) -> Sublattice:
    """``T(X,B)``, the orthogonal complement of ``N(X,B)``."""
    return orthogonal_complement(mukai(config).lattice, hodge_classes_mukai(config))


def is_hodge_mukai(config: BrauerConfig, v: Sequence[int]) -> bool:
    r = v[-2]
    K = _ns_annihilator(config)
    return all(config.ell * x + r * y == 0 for x, y in
               zip(linalg.matvec(K, v[:-2]), linalg.matvec(K, config.b)))


def ind_mukai(config: BrauerConfig) -> int:
    """gcd of the rank over ``N(X,B)``; equal to the period or a ModelViolation."""
    M = mukai(config)
    N = hodge_classes_mukai(config)
    ind = linalg.content([row[M.e_index] for row in N.basis])
    per = period(config)
    if ind != per:
        raise ModelViolation(f"ind_mukai = {ind} differs from period = {per}")
    return ind


@lru_cache(maxsize=256)
def e_tilde(config: BrauerConfig) -> tuple[int, ...]:
    """Hodge class ``(per, -a, 0)`` with ``a - (per/ell) b`` in ``NS (x) Q``."""
    per = period(config)
    M = mukai(config)
    if per == config.ell:
        a = list(config.b)
    else:
        K = _ns_annihilator(config)
        target = [per * x // config.ell for x in linalg.matvec(K, config.b)]
        a = linalg.solve_left(linalg.transpose(K), target)
        if a is None:
            raise ModelViolation("no integral lift for the period witness")
    v = M.embed([-x for x in a], per, 0)
    if not is_hodge_mukai(config, v):
        raise ModelViolation("period witness is not a Hodge class")
    return v


def period_closed_form(config: BrauerConfig) -> int:
    """``ell / gcd(ell, content(K b))``; an independent route to the period."""
    K = _ns_annihilator(config)
    return config.ell // gcd(config.ell, linalg.content(linalg.matvec(K, config.b)))
