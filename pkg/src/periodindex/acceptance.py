"""The ten exact acceptance checks, runnable from pytest or the CLI."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Callable

from . import linalg
from .constructions import (BPrimeRequest, NoRoot, NoSolution, OGradyParams, PreconditionError,
                            b_prime, eta_finder, eta_for_config, hensel_quadratic, ogrady_adjust,
                            ogrady_check, ogrady_invariants, ogrady_nu, prime_split_bound)
from .fixtures import load_fixture
from .lattice import (direct_sum, discriminant, divisibility, is_primitive, pair, square,
                      standard_lattice)
from .mukai import BrauerConfig, hodge_classes_mukai, is_nonspecial, mukai, period, transcendental_twist
from .obstructions import DJPInstance, dim4_value, dim6_value, djp_dim4_solve, djp_dim6_solve
from .sampling import PRIMES_TO_97, random_bprime_request, random_config, random_h2
from .sym import (SymVector, ind_sym_report, qT_class, splitting_pair, sym_pair, sym_power_vec,
                  w_class)

SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def _rng(k: int) -> random.Random:
    return random.Random(SEED * 100 + k)


def _vec(rng, rank, spread=3):
    while True:
        v = [rng.randint(-spread, spread) for _ in range(rank)]
        if any(v):
            return v


def criterion_1():
    rng = _rng(1)
    bad = 0
    for _ in range(200):
        c = random_config(rng, max_mukai_rank=12)
        N = hodge_classes_mukai(c)
        ind = linalg.content([row[mukai(c).e_index] for row in N.basis])
        if ind != period(c):
            bad += 1
    return bad == 0, f"200 configs, {bad} mismatches"


def criterion_2():
    rng = _rng(1)
    nonspecial = bad = 0
    for _ in range(200):
        c = random_config(rng, max_mukai_rank=12)
        if is_nonspecial(c):
            nonspecial += 1
            bad += period(c) != c.ell
    special = load_fixture("special").config
    ok_special = period(special) == 1 and special.ell == 3
    return bad == 0 and ok_special, f"{nonspecial} non-special, {bad} with per != ell; special fixture per={period(special)}"


def _prop_configs(rng, count, n, max_mukai):
    out = []
    while len(out) < count:
        c = random_config(rng, max_mukai_rank=max_mukai, n=n, min_t_rank=6, max_ns=2,
                          min_hyperbolic=2, ell_choices=PRIMES_TO_97)
        if not is_nonspecial(c):
            continue
        rep = ind_sym_report(c)
        if rep.coprime:
            out.append((c, rep))
    return out


def criterion_3():
    rng = _rng(3)
    bad = []
    cases = _prop_configs(rng, 30, 2, 10) + _prop_configs(rng, 5, 3, 8)
    for c, rep in cases:
        if rep.ind != c.ell ** c.n:
            bad.append((c.ell, c.n, rep.ind))
    # divisibility on arbitrary configs, special ones included
    div_bad = 0
    extra = [random_config(rng, max_mukai_rank=9, n=2) for _ in range(30)]
    extra.append(load_fixture("special").config)
    specials = sum(not is_nonspecial(c) for c in extra)
    for c in extra:
        rep = ind_sym_report(c)
        div_bad += (c.ell ** c.n) % rep.ind != 0 or (period(c) ** c.n) % rep.ind != 0
    return not bad and not div_bad, (f"{len(cases)} equality cases, {len(bad)} failures; "
                                     f"{len(extra)} divisibility cases ({specials} special), {div_bad} failures")


def criterion_4():
    rng = _rng(4)
    bad = 0
    count = 0
    for n in (2, 3):
        for _ in range(100):
            L = random_h2(rng, rng.randint(2, 6))
            a, b = _vec(rng, L.rank), _vec(rng, L.rank)
            bad += sym_pair(L, sym_power_vec(a, n), sym_power_vec(b, n)) != factorial(n) * pair(L, a, b) ** n
            gamma = _vec(rng, L.rank)
            k = rng.randint(0, n)
            u = _random_sym(rng, L.rank, k)
            v = _random_sym(rng, L.rank, n - k)
            lhs, rhs = splitting_pair(L, gamma, k, u, v)
            bad += lhs != rhs
            count += 2
    return bad == 0, f"{count} identities, {bad} failures"


def _random_sym(rng, rank, degree, terms=3):
    out = SymVector(degree)
    for _ in range(terms):
        mono = tuple(sorted(rng.randrange(rank) for _ in range(degree)))
        out = out + SymVector(degree, {mono: rng.randint(-4, 4)})
    return out


def _random_from(rng, vectors, degree, terms=3):
    out = SymVector(degree) if degree else SymVector(0)
    for _ in range(terms):
        p = SymVector.one()
        for _ in range(degree):
            p = p * SymVector.from_vector(rng.choice(vectors))
        out = out + p.scale(rng.randint(-3, 3) or 1)
    return out


def criterion_5():
    rng = _rng(5)
    pairs = bad = checks = 0
    while pairs < 30:
        n = 2 if pairs < 20 else 3
        c = random_config(rng, max_mukai_rank=9 if n == 2 else 8, n=n, min_t_rank=6, max_ns=1,
                          min_hyperbolic=2)
        if c.qb <= 0:
            continue
        eta = eta_for_config(c)
        if eta is None:
            continue
        pairs += 1
        M = mukai(c)
        L = M.lattice
        b, e = M.embed(c.b), M.embed(eta.eta)
        w = w_class(L, b, e, n)
        qe, m = eta.q_eta, n // 2
        N = [list(r) for r in hodge_classes_mukai(c).basis]
        for _ in range(10):
            u = _random_from(rng, N, n)
            checks += 1
            bad += sym_pair(L, w, u) != qe ** m * sym_pair(L, sym_power_vec(b, n), u)
        qT = qT_class(transcendental_twist(c))
        for i in range(1, m + 1):
            for _ in range(3):
                u = _random_from(rng, N, n - 2 * i) if n - 2 * i else SymVector.one()
                checks += 1
                bad += sym_pair(L, w, u * qT.power(i)) != 0
    return bad == 0, f"30 (b, eta) pairs, {checks} identities, {bad} failures"


def criterion_6():
    rng = _rng(6)
    done = bad = 0
    while done < 50:
        T = random_h2(rng, rng.randint(6, 9), min_hyperbolic=2)
        if T.rank < 6:
            continue
        b = _vec(rng, T.rank)
        qb = square(T, b)
        if qb == 0:
            continue
        w = eta_finder(T, b)
        done += 1
        bad += w.q_eta != 8 * w.d ** 2 or (8 * qb ** 2 * discriminant(T) ** 2) % w.q_eta != 0
        bad += square(T, w.gamma) != 0 or pair(T, w.eta, b) != 0
    return bad == 0, f"50 (T, b) pairs, {bad} failures"


def criterion_7():
    rng = _rng(7)
    bad = done = 0
    special = 0
    while done < 20:
        n = rng.choice([2, 3, 4])
        p = rng.choice([5, 7, 11, 13])
        try:
            req = random_bprime_request(rng, n, p, special=(done % 4 == 3))
        except (RuntimeError, PreconditionError):
            continue
        res = b_prime(req)
        L, bp = req.h2, res.b_prime
        div_h = divisibility(L, req.h)
        ok = (is_primitive(L, bp) and divisibility(L, bp) == gcd(req.epsilon, div_h)
              and square(L, bp) > 0 and (square(L, bp) - req.nu * square(L, req.b)) % p == 0
              and divisibility(L, req.b) % p != 0)
        bad += not ok
        special += req.epsilon == 2
        done += 1
    return bad == 0, f"20 requests ({special} special), {bad} failures"


def _brute_roots(a2, a1, a0, mod):
    return [x for x in range(mod) if (a2 * x * x + a1 * x + a0) % mod == 0]


def criterion_8():
    rng = _rng(8)
    disagree = 0
    for _ in range(200):
        p = rng.choice([3, 5, 7, 11, 13, 17, 19, 23])
        params = OGradyParams(p, rng.randint(1, 3), rng.randint(2, 8), 2 * rng.randint(-50, 200))
        disagree += not ogrady_check(params).agree
    adjust_bad = adjusted = 0
    while adjusted < 20:
        n = rng.choice([2, 3, 4])
        p = rng.choice([5, 7, 11, 13])
        if (n + 3) % p == 0:
            continue
        try:
            req = random_bprime_request(rng, n, p, special=False)
            nu = ogrady_nu(square(req.h2, req.b), n, p)
            req = BPrimeRequest(req.h2, req.h, req.b, p, req.m, nu)
            res = b_prime(req)
            if not res.ell_unit:
                continue
            j = ogrady_adjust(req.h2, req.h, res.b_prime, res.ell, p, req.m, n)
        except (RuntimeError, PreconditionError, NoSolution):
            continue
        shifted = [x + j * y for x, y in zip(res.b_prime, req.h)]
        adjust_bad += (2 * square(req.h2, shifted) + n + 3) % p ** req.m != 0
        adjusted += 1
    hensel_bad = hensel_cases = 0
    for p in (3, 5, 7, 11, 13):
        m = 1
        while p ** m <= 10 ** 4 and hensel_cases < 400:
            for _ in range(8):
                a2 = rng.choice([x for x in range(1, 3 * p) if x % p])
                a1, a0 = rng.randint(-50, 50), rng.randint(-50, 50)
                brute = _brute_roots(a2, a1, a0, p ** m)
                simple = [x for x in _brute_roots(a2, a1, a0, p) if (2 * a2 * x + a1) % p]
                try:
                    x = hensel_quadratic(a2, a1, a0, p, m)
                except NoRoot:
                    ok = not brute if m == 1 else not simple
                else:
                    if m == 1:
                        ok = x == min(brute)
                    else:
                        lifts = [y for y in brute if y % p == simple[0]]
                        ok = lifts == [x]
                hensel_bad += not ok
                hensel_cases += 1
            m += 1
    ok = disagree == 0 and adjust_bad == 0 and hensel_bad == 0
    return ok, (f"raw/reduced disagreements {disagree}/200; adjust failures {adjust_bad}/20; "
                f"hensel failures {hensel_bad}/{hensel_cases}")


def _brute_dim4(inst):
    for lam in range(inst.ell * inst.cF.denominator):
        if dim4_value(inst, lam).denominator == 1:
            return lam
    return None


def _brute_dim6(inst):
    for t in range(2 * inst.ell * inst.cF.denominator):
        if dim6_value(inst, Fraction(inst.ell * t, inst.r - 2)).denominator == 1:
            return t
    return None


def criterion_9():
    rng = _rng(9)
    bad = solved = 0
    for k in range(500):
        dim = 4 if k % 2 == 0 else 6
        inst = DJPInstance(dim, rng.randint(dim, dim + 12), rng.randint(1, 200),
                           rng.choice([-1, 1]) * rng.randint(1, 40),
                           Fraction(rng.randint(-12, 12) or 1, rng.randint(1, 4)))
        brute = _brute_dim4(inst) if dim == 4 else _brute_dim6(inst)
        try:
            sol = djp_dim4_solve(inst) if dim == 4 else djp_dim6_solve(inst)
            got = sol.t
            value = dim4_value(inst, sol.lam) if dim == 4 else dim6_value(inst, sol.lam)
            bad += value.denominator != 1
            solved += 1
        except NoSolution:
            got = None
        bad += got != brute
    return bad == 0, f"500 instances ({solved} solvable), {bad} disagreements"


def criterion_10():
    inv = ogrady_invariants(5, 1, 2)
    ok = inv == (25, 5, 50)
    r1 = prime_split_bound([(2, 1), (3, 1)], 2)
    r2 = prime_split_bound([(2, 2), (3, 1)], 2)
    r3 = prime_split_bound([(7, 1)], 5)
    ok &= r1["bound"] == 36 and len(r1["factors"]) == 2
    ok &= all(f["branch"] == "non-special prime-power" for f in r1["factors"])
    ok &= r2["bound"] == 144 and r3["bound"] == 7 ** 5
    rs = prime_split_bound([(3, 1), (5, 1)], 2, special=True)
    ok &= rs["covered"] and all(f["branch"] == "special reduced-prime" for f in rs["factors"])
    ok &= not prime_split_bound([(3, 2)], 2, special=True)["covered"]
    return ok, f"invariants {tuple(str(x) for x in inv)}, bounds {r1['bound']}/{r2['bound']}/{r3['bound']}"


CRITERIA: dict[int, tuple[str, Callable]] = {
    1: ("ind_mukai equals period", criterion_1),
    2: ("non-special classes have period ell", criterion_2),
    3: ("ind_sym equals ell^n at desk scale", criterion_3),
    4: ("defining property and splitting pairing", criterion_4),
    5: ("w identities", criterion_5),
    6: ("eta lemma", criterion_6),
    7: ("b' postconditions", criterion_7),
    8: ("O'Grady reductions and Hensel lifts", criterion_8),
    9: ("de Jong-Perry solvers", criterion_9),
    10: ("O'Grady invariants and prime splitting", criterion_10),
}


def run_criterion(number: int) -> CriterionResult:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - start)


def run_all() -> list[CriterionResult]:
    return [run_criterion(k) for k in sorted(CRITERIA)]
