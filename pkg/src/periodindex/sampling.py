"""Seeded generators of random valid inputs."""
from __future__ import annotations

import random
from typing import Sequence

from . import linalg
from .constructions import BPrimeRequest, is_prime
from .lattice import IntLattice, direct_sum, standard_lattice
from .mukai import BrauerConfig, ConfigError

PRIMES_TO_97 = [p for p in range(2, 98) if is_prime(p)]


def random_h2(rng: random.Random, max_rank: int, min_hyperbolic: int = 1) -> IntLattice:
    """A direct sum of hyperbolic planes and small diagonal pieces."""
    pieces = [standard_lattice("U") for _ in range(min_hyperbolic)]
    rank = 2 * min_hyperbolic
    while rank < max_rank:
        roll = rng.random()
        if roll < 0.35 and rank + 2 <= max_rank:
            pieces.append(standard_lattice("U"))
            rank += 2
        elif roll < 0.9:
            d = rng.choice([2, -2, 4, -4, 6, -6, 2, -2, 10, -12])
            pieces.append(standard_lattice("diag", entries=[d]))
            rank += 1
        else:
            break
    rng.shuffle(pieces)
    return direct_sum(*pieces)


def _random_vector(rng: random.Random, rank: int, spread: int = 3) -> list[int]:
    while True:
        v = [rng.randint(-spread, spread) for _ in range(rank)]
        if any(v):
            return v


def random_config(rng: random.Random, max_mukai_rank: int = 12, ell_range=(2, 97),
                  n: int = 2, min_t_rank: int = 3, max_ns: int = 3,
                  min_hyperbolic: int = 1, ell_choices: Sequence[int] | None = None,
                  tries: int = 200) -> BrauerConfig:
    """A valid BrauerConfig; NS is the saturation of a few random vectors."""
    for _ in range(tries):
        h2 = random_h2(rng, max_mukai_rank - 2, min_hyperbolic)
        if h2.rank - min_t_rank < 0:
            continue
        k = rng.randint(0, min(max_ns, h2.rank - min_t_rank))
        rows = [_random_vector(rng, h2.rank) for _ in range(k)]
        ns = linalg.saturate_rows(rows, h2.rank) if rows else []
        if len(ns) != k:
            continue
        if ns and linalg.det([[sum(a * g * c for a, row in zip(x, h2.gram) for g, c in zip(row, y))
                               for y in ns] for x in ns]) == 0:
            continue
        T = linalg.right_kernel([linalg.matvec(h2.gram, r) for r in ns], h2.rank) if ns \
            else linalg.identity(h2.rank)
        if len(T) < min_t_rank:
            continue
        coeffs = _random_vector(rng, len(T))
        b = [sum(c * t[i] for c, t in zip(coeffs, T)) for i in range(h2.rank)]
        g = linalg.content(b)
        b = [x // g for x in b]
        ell = rng.choice(ell_choices) if ell_choices else rng.randint(*ell_range)
        try:
            return BrauerConfig(h2, tuple(map(tuple, ns)), tuple(b), ell, n)
        except ConfigError:
            continue
    raise RuntimeError("could not sample a valid configuration")


def random_bprime_request(rng: random.Random, n: int, p: int, special: bool | None = None,
                          tries: int = 500) -> BPrimeRequest:
    """A b' request on the K3^[n] lattice with ``h`` and ``b`` in two hyperbolic planes."""
    L = standard_lattice("K3n", n)
    for _ in range(tries):
        # h = x e + y f in the first U, with q(h) = -2xy > 0
        x = rng.randint(1, 6)
        y = -rng.randint(1, 6)
        if linalg.content([x, y]) != 1 or (-2 * x * y * (2 * n - 2)) % p == 0:
            continue
        h = [0] * L.rank
        h[0], h[1] = x, y
        b = [0] * L.rank
        b[2], b[3] = rng.randint(-6, 6), rng.randint(-6, 6)
        if rng.random() < 0.5:
            b[6 + rng.randrange(16)] = rng.randint(-3, 3)
        if not any(b) or linalg.content(b) != 1:
            continue
        qb = sum(b[i] * sum(L.gram[i][j] * b[j] for j in range(L.rank)) for i in range(L.rank))
        if special is not None and (qb % p == 0) != special:
            continue
        nu = rng.randint(1, p - 1)
        return BPrimeRequest(L, tuple(h), tuple(b), p, 1 if qb % p == 0 else rng.randint(1, 2), nu)
    raise RuntimeError("could not sample a b' request")
