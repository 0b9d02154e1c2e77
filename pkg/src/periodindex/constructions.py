"""Explicit classes and congruences: eta, conic points, Hensel lifts, b', O'Grady data."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import linalg
from .lattice import (IntLattice, LatticeError, SearchExhausted, Sublattice, DEFAULT_ISOTROPIC_BOUND,
                      DEFAULT_ISOTROPIC_CAP, discriminant, divisibility, is_primitive,
                      iter_isotropic, orthogonal_complement, pair, saturation,
                      search_isotropic, square)
from .mukai import BrauerConfig, ModelViolation


class PreconditionError(LatticeError):
    pass


class NoSolution(LatticeError):
    def __init__(self, message: str, **info):
        super().__init__(message)
        self.info = info


class NoRoot(NoSolution):
    pass


class NoAdjustment(NoSolution):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")


def check_record(condition: str, lhs: int, modulus: int) -> dict:
    """A congruence ``lhs = 0 mod modulus`` with its verdict."""
    return {"condition": condition, "lhs": lhs, "modulus": modulus, "verdict": lhs % modulus == 0}


# -- eta ---------------------------------------------------------------------

@dataclass(frozen=True)
class EtaWitness:
    eta: tuple[int, ...]
    gamma: tuple[int, ...]
    delta: tuple[int, ...]
    d: int
    q_eta: int


def eta_finder(T: IntLattice, b: Sequence[int], bound: int = DEFAULT_ISOTROPIC_BOUND,
               cap: int = DEFAULT_ISOTROPIC_CAP, reduce: bool = True) -> EtaWitness:
    """``eta = 2d delta + (2 - q(delta)) gamma`` in ``T ∩ b^perp``, so ``q(eta) = 8 d^2``.

    ``gamma`` is the first primitive isotropic vector of ``Gamma = T ∩ b^perp``,
    ``d`` its divisibility there and ``delta`` a Bezout witness of ``q(gamma, delta) = d``.
    All vectors are in the coordinates of ``T``. With ``reduce`` the basis of
    ``Gamma`` is LLL-conditioned before the isotropic search.
    """
    if T.rank < 6:
        raise PreconditionError("eta_finder needs rank T >= 6")
    qb = square(T, b)
    if qb == 0:
        raise PreconditionError("eta_finder needs q(b) != 0")
    Gamma = orthogonal_complement(T, [b])
    if reduce:
        Gamma = Sublattice(T, tuple(map(tuple, linalg.lll_reduce(Gamma.basis))), _trusted=True)
    GL = Gamma.as_lattice()
    g = search_isotropic(GL, bound, cap)
    row = linalg.matvec(GL.gram, g)
    d, coeffs = linalg.bezout(row)
    gamma, delta = Gamma.to_ambient(g), Gamma.to_ambient(coeffs)
    q_delta = square(T, delta)
    eta = tuple(2 * d * x + (2 - q_delta) * y for x, y in zip(delta, gamma))
    q_eta = square(T, eta)
    if q_eta != 8 * d * d:
        raise ModelViolation("q(eta) differs from 8 d^2")
    if (8 * qb ** 2 * discriminant(T) ** 2) % q_eta:
        raise ModelViolation("q(eta) does not divide 8 q(b)^2 disc(T)^2")
    if pair(T, eta, b):
        raise ModelViolation("eta is not orthogonal to b")
    return EtaWitness(eta, gamma, delta, d, q_eta)


@lru_cache(maxsize=256)
def eta_for_config(config: BrauerConfig) -> EtaWitness | None:
    """eta for ``T(X)`` of a config, mapped back to ``h2`` coordinates."""
    T = config.transcendental
    if T.rank < 6 or config.qb == 0:
        return None
    T = Sublattice(config.h2, tuple(map(tuple, linalg.lll_reduce(T.basis))), _trusted=True)
    coords = T.coordinates(config.b)
    try:
        w = eta_finder(T.as_lattice(), coords)
    except SearchExhausted:
        return None
    amb = T.to_ambient
    return EtaWitness(amb(w.eta), amb(w.gamma), amb(w.delta), w.d, w.q_eta)


# -- modular arithmetic ------------------------------------------------------

def conic_point(qb: int, qh: int, nu: int, p: int, nonzero_l: bool = False) -> tuple[int, int]:
    """Smallest ``k`` in ``1..p-1`` then smallest ``l`` with ``k^2 qb + l^2 qh = nu qb mod p``."""
    _require_odd_prime(p)
    if (qb * qh) % p == 0:
        raise PreconditionError("p divides q(b) q(h)")
    if nu % p == 0:
        raise PreconditionError("nu must be a unit mod p")
    ls = range(1, p) if nonzero_l else range(p)
    for k in range(1, p):
        for l in ls:
            if (k * k * qb + l * l * qh - nu * qb) % p == 0:
                return k, l
    good = [v for v in range(1, p)
            if any((k * k * qb + l * l * qh - v * qb) % p == 0 for k in range(1, p) for l in ls)]
    raise NoSolution(f"no point with k != 0 for nu = {nu % p}", solvable_nu=good)


def _poly(a2, a1, a0, x):
    return (a2 * x + a1) * x + a0


def hensel_quadratic(a2: int, a1: int, a0: int, p: int, m: int) -> int:
    """Root of ``a2 x^2 + a1 x + a0`` mod ``p^m`` lifted from the smallest simple root mod p."""
    _require_odd_prime(p)
    if m < 1:
        raise PreconditionError("m must be positive")
    if a2 % p == 0:
        raise PreconditionError("p divides the leading coefficient")
    roots = [x for x in range(p) if _poly(a2, a1, a0, x) % p == 0]
    if not roots:
        raise NoRoot("no root mod p")
    if m == 1:
        return roots[0]
    simple = [x for x in roots if (2 * a2 * x + a1) % p]
    if not simple:
        raise NoRoot("only critical roots mod p", roots=roots)
    x = simple[0]
    mod = p
    for _ in range(1, m):
        mod *= p
        x = (x - _poly(a2, a1, a0, x) * pow(2 * a2 * x + a1, -1, mod)) % mod
    return x


# -- hyperbolic planes and b' ------------------------------------------------

def hyperbolic_in_complement(h2: IntLattice, span: Sequence[Sequence[int]],
                             bound: int = 8, cap: int = 64) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Isotropic ``e', f'`` with ``q(e', f') = -1`` orthogonal to ``span``.

    ``e'`` runs through primitive isotropic vectors of the complement with
    divisibility one; ``f'`` is solved from ``q(e', x) = -1`` and corrected by
    a multiple of ``e'`` (after a parity fix inside ``e'^perp`` if needed).
    """
    rows = [list(v) for v in span if any(v)]
    if rows:
        C = orthogonal_complement(h2, saturation(h2, Sublattice.span(h2, rows)))
    else:
        C = Sublattice(h2, tuple(tuple(r) for r in linalg.identity(h2.rank)), _trusted=True)
    LC = C.as_lattice()
    G = LC.gram
    seen = 0
    while True:
        for e in iter_isotropic(LC, bound):
            row = linalg.matvec(G, e)
            g, coeffs = linalg.bezout(row)
            if g != 1:
                continue
            x = [-c for c in coeffs]
            qx = square(LC, x)
            if qx % 2:
                perp = orthogonal_complement(LC, [e])
                odd = next((r for r in perp.basis if square(LC, r) % 2), None)
                if odd is None:
                    continue
                x = [a + b for a, b in zip(x, odd)]
                qx = square(LC, x)
            f = [a + (qx // 2) * b for a, b in zip(x, e)]
            ep, fp = C.to_ambient(e), C.to_ambient(f)
            if square(h2, ep) or square(h2, fp) or pair(h2, ep, fp) != -1:
                raise ModelViolation("hyperbolic pair failed its own check")
            return ep, fp
        seen = bound
        if bound >= cap:
            raise SearchExhausted(f"no hyperbolic plane with sup-norm <= {seen}", seen)
        bound = min(2 * bound, cap)


@dataclass(frozen=True)
class BPrimeRequest:
    """Input of the b' construction; ``epsilon`` and ``m`` follow the forcing rule."""

    h2: IntLattice
    h: tuple[int, ...]
    b: tuple[int, ...]
    p: int
    m: int = 1
    nu: int = 1
    epsilon: int | None = None

    def __post_init__(self):
        h2, h, b, p = self.h2, tuple(self.h), tuple(self.b), int(self.p)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "b", b)
        _require_odd_prime(p)
        if len(h) != h2.rank or len(b) != h2.rank:
            raise PreconditionError("vector length does not match the lattice")
        qh, qb = square(h2, h), square(h2, b)
        if qh <= 0:
            raise PreconditionError("q(h) must be positive")
        if not is_primitive(h2, h):
            raise PreconditionError("h must be primitive")
        if pair(h2, b, h):
            raise PreconditionError("b must be orthogonal to h")
        if not any(b) or linalg.content(b) % p == 0:
            raise PreconditionError("b must not be divisible by p")
        if (qh * discriminant(h2)) % p == 0:
            raise PreconditionError("p divides q(h) disc(h2)")
        if self.nu % p == 0:
            raise PreconditionError("nu must be a unit mod p")
        forced = 2 if qb % p == 0 else 1
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", forced)
        elif self.epsilon != forced:
            raise PreconditionError(f"epsilon must be {forced} here")
        if self.m < 1:
            raise PreconditionError("m must be positive")
        if forced == 2 and self.m != 1:
            raise PreconditionError("m must be 1 when p divides q(b)")


@dataclass(frozen=True)
class BPrimeResult:
    b_prime: tuple[int, ...]
    k: int
    ell: int
    lam: int
    c: tuple[int, ...]
    e_prime: tuple[int, ...]
    f_prime: tuple[int, ...]
    branch: str
    ell_unit: bool
    checks: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"b_prime": list(self.b_prime), "k": self.k, "ell": self.ell, "lambda": self.lam,
                "c": list(self.c), "e_prime": list(self.e_prime), "f_prime": list(self.f_prime),
                "branch": self.branch, "ell_unit": self.ell_unit, "checks": self.checks}


def _largest_lambda(A: int, scale: int) -> int:
    """Largest ``lam`` with ``A - scale * lam > 0`` (``scale > 0``)."""
    return -((-A) // scale) - 1


def b_prime(req: BPrimeRequest) -> BPrimeResult:
    """``b' = eps k b + l h + eps p^m c`` with ``c = e' + lam f'`` in ``<b,h>^perp``."""
    h2, h, b, p, m, eps = req.h2, req.h, req.b, req.p, req.m, req.epsilon
    qh, qb = square(h2, h), square(h2, b)
    if divisibility(h2, b) % p == 0:
        raise ModelViolation("p divides div(b) although p does not divide disc")
    e_p, f_p = hyperbolic_in_complement(h2, [b, h])
    pm = p ** m
    if eps == 1:
        try:
            k, l = conic_point(qb, qh, req.nu, p, nonzero_l=True)
            unit = True
        except NoSolution:
            k, l = conic_point(qb, qh, req.nu, p)
            unit = False
        branch = "nonspecial"
    else:
        k, l, unit = 1, p, False
        branch = "special"
    # q(b') = A - 2 eps^2 p^2m lam, since q(c) = -2 lam and c is orthogonal to b, h
    A = eps * eps * k * k * qb + l * l * qh
    lam = _largest_lambda(A, 2 * eps * eps * pm * pm)
    c = tuple(x + lam * y for x, y in zip(e_p, f_p))
    bp = tuple(eps * k * x + l * y + eps * pm * z for x, y, z in zip(b, h, c))

    div_h = divisibility(h2, h)
    checks = [
        {"condition": "(i) primitive", "lhs": linalg.content(bp), "modulus": 1,
         "verdict": is_primitive(h2, bp)},
        {"condition": "(i) div(b') = gcd(eps, div(h))", "lhs": divisibility(h2, bp),
         "modulus": gcd(eps, div_h), "verdict": divisibility(h2, bp) == gcd(eps, div_h)},
        {"condition": "(ii) q(b') > 0", "lhs": square(h2, bp), "modulus": 0,
         "verdict": square(h2, bp) > 0},
        check_record("(iii) q(b') - nu q(b)", square(h2, bp) - req.nu * qb, p),
        {"condition": "c in <b,h>^perp", "lhs": pair(h2, c, b) or pair(h2, c, h), "modulus": 0,
         "verdict": pair(h2, c, b) == 0 and pair(h2, c, h) == 0},
    ]
    failed = [ch["condition"] for ch in checks if not ch["verdict"]]
    if failed:
        raise ModelViolation(f"b' postconditions failed: {failed}")
    return BPrimeResult(bp, k, l, lam, c, e_p, f_p, branch, unit, checks)


# -- O'Grady -----------------------------------------------------------------

@dataclass(frozen=True)
class OGradyParams:
    p: int
    m: int
    n: int
    e: int
    qh: int | None = None

    @property
    def r0(self) -> int:
        return self.p ** self.m

    g = 1
    l = 1
    i = 1

    @property
    def e_bar(self) -> int:
        return 4 * self.e


@dataclass(frozen=True)
class ConditionReport:
    raw: dict
    reduced: dict
    records: list
    hypotheses: dict

    @property
    def agree(self) -> bool:
        return self.raw == self.reduced

    @property
    def all_hold(self) -> bool:
        return all(self.raw.values())

    def to_json(self) -> dict:
        return {"raw": self.raw, "reduced": self.reduced, "agree": self.agree,
                "records": self.records, "hypotheses": self.hypotheses}


def ogrady_check(params: OGradyParams) -> ConditionReport:
    """The four numerical assumptions of O'Grady's existence result, raw and reduced.

    Keys follow O'Grady's own labels for the conditions.
    """
    p, m, n, e = params.p, params.m, params.n, params.e
    r0, g, l, eb = params.r0, params.g, params.l, params.e_bar
    raw, reduced, records = {}, {}, []

    if r0 % 2:
        raw["1.2.2"] = ((r0 - 1) // 2) % g == 0
    else:
        raw["1.2.2"] = True
    reduced["1.2.2"] = True

    raw["1.2.3"] = (n - 1) % l == 0 and gcd(l, r0) == 1 and gcd(l, (r0 - 1) // g) == 1
    reduced["1.2.3"] = True

    lhs5 = Fraction(eb) + Fraction(2 * (n - 1) * (r0 - 1) ** 2, g * g)
    raw["1.2.5"] = lhs5.denominator == 1 and lhs5.numerator % (8 * l * l) == 0
    rec5 = check_record("1.2.5 reduced", 4 * e + 2 * (n - 1) * (p ** m - 1) ** 2, 8)
    reduced["1.2.5"] = rec5["verdict"]

    rec4_raw = check_record("1.2.4 raw", g * g * eb + 2 * (n - 1) * (r0 - 1) ** 2 + 8, 8 * r0)
    raw["1.2.4"] = rec4_raw["verdict"]
    rec4 = check_record("1.2.4 reduced", 2 * e + (n - 1) + 4, p ** m)
    reduced["1.2.4"] = rec4["verdict"]

    records += [
        {"condition": "1.2.5 raw", "lhs": str(lhs5), "modulus": 8 * l * l, "verdict": raw["1.2.5"]},
        rec5, rec4_raw, rec4,
    ]
    hyp = {"p_odd": p % 2 == 1, "e_even": e % 2 == 0}
    if params.qh is not None:
        hyp["p_coprime_qh_2n-2_n+3"] = (params.qh * (2 * n - 2) * (n + 3)) % p != 0
    return ConditionReport(raw, reduced, records, hyp)


def ogrady_nu(qb: int, n: int, p: int) -> int:
    """The residue ``nu`` with ``2 nu q(b) = -(n+3) mod p``."""
    if (2 * qb * (n + 3)) % p == 0:
        raise PreconditionError("p divides 2 q(b) (n+3)")
    return (-(n + 3) * pow(2 * qb, -1, p)) % p


def ogrady_adjust(h2: IntLattice, h: Sequence[int], bp: Sequence[int], ell: int,
                  p: int, m: int, n: int) -> int:
    """``j`` mod ``p^m`` with ``2 q(b' + j h) + (n+3) = 0 mod p^m``."""
    qh = square(h2, h)
    if (2 * qh) % p == 0 or ell % p == 0:
        raise PreconditionError("needs p not dividing 2 q(h) and ell")
    if pair(h2, bp, h) != ell * qh:
        raise PreconditionError("q(b', h) must equal ell q(h)")
    try:
        j = hensel_quadratic(2 * qh, 4 * ell * qh, 2 * square(h2, bp) + n + 3, p, m)
    except NoRoot as exc:
        raise NoAdjustment(str(exc)) from exc
    shifted = [x + j * y for x, y in zip(bp, h)]
    if (2 * square(h2, shifted) + n + 3) % p ** m:
        raise ModelViolation("adjusted b' misses the congruence")
    return j


def ogrady_invariants(p: int, m: int, n: int) -> tuple[int, int, Fraction]:
    """``(rk E, c1 multiplier, Delta coefficient)`` = ``(r0^n, r0^(n-1), r0^(2n-2)(r0^2-1)/12)``."""
    r0 = p ** m
    return r0 ** n, r0 ** (n - 1), Fraction(r0 ** (2 * n - 2) * (r0 * r0 - 1), 12)


def crucial_divisibility(r: int, mm: int, H2: int) -> bool:
    """``2r | mm^2 H^2``."""
    return (mm * mm * H2) % (2 * r) == 0


def prime_split_bound(factorization: Sequence[tuple[int, int]], n: int,
                      special: bool = False) -> dict:
    """``prod p_i^(m_i n)`` with one annotated factor per prime.

    Non-special factors use the prime-power branch; a special class is covered
    only when every exponent is one.
    """
    primes = [p for p, _ in factorization]
    if len(set(primes)) != len(primes):
        raise PreconditionError("repeated primes in the factorisation")
    if any(not is_prime(p) or m < 1 for p, m in factorization):
        raise PreconditionError("factors must be primes with positive exponents")
    bound, factors = 1, []
    for p, m in sorted(factorization):
        bound *= p ** (m * n)
        if special:
            branch = "special reduced-prime" if m == 1 else "special non-reduced (not covered)"
        else:
            branch = "non-special prime-power"
        factors.append({"p": p, "m": m, "per_i": p ** m, "ind_bound": p ** (m * n), "branch": branch})
    period = 1
    for p, m in factorization:
        period *= p ** m
    return {"period": period, "n": n, "bound": bound, "factors": factors,
            "covered": all("not covered" not in f["branch"] for f in factors),
            "chain": "ind(alpha) | prod ind(alpha_i) | prod per(alpha_i)^n"}
