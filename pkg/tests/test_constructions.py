import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from periodindex.constructions import (BPrimeRequest, NoRoot, NoSolution, OGradyParams,
                                       PreconditionError, b_prime, conic_point,
                                       crucial_divisibility, eta_finder, hensel_quadratic,
                                       hyperbolic_in_complement, is_prime, ogrady_adjust,
                                       ogrady_check, ogrady_invariants, ogrady_nu,
                                       prime_split_bound)
from periodindex.lattice import (direct_sum, discriminant, divisibility, is_primitive, pair,
                                 square, standard_lattice)
from periodindex.sampling import random_bprime_request, random_h2

U = standard_lattice("U")
seeds = st.integers(0, 2 ** 32 - 1)
odd_primes = st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29])


def test_is_prime():
    assert [x for x in range(30) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_eta_on_three_planes():
    T = direct_sum(U, U, U)
    b = (1, -1, 0, 0, 0, 0)
    w = eta_finder(T, b)
    assert square(T, w.gamma) == 0
    assert w.q_eta == 8 * w.d ** 2
    assert pair(T, w.eta, b) == 0


@settings(max_examples=30)
@given(seeds)
def test_eta_lemma(seed):
    rng = random.Random(seed)
    T = random_h2(rng, rng.randint(6, 8), min_hyperbolic=2)
    assume(T.rank >= 6)
    b = [rng.randint(-3, 3) for _ in range(T.rank)]
    qb = square(T, b)
    assume(qb != 0)
    w = eta_finder(T, b)
    assert w.q_eta == 8 * w.d ** 2
    assert (8 * qb ** 2 * discriminant(T) ** 2) % w.q_eta == 0
    assert pair(T, w.eta, b) == 0 and pair(T, w.gamma, b) == 0


def test_eta_needs_rank_six():
    with pytest.raises(PreconditionError):
        eta_finder(direct_sum(U, U), (1, 1, 0, 0))


@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(1, 40), odd_primes)
def test_conic_point_solves_congruence(qb, qh, nu, p):
    assume((qb * qh) % p and nu % p)
    try:
        k, l = conic_point(qb, qh, nu, p)
    except NoSolution:
        assert not any((k * k * qb + l * l * qh - nu * qb) % p == 0
                       for k in range(1, p) for l in range(p))
        return
    assert 1 <= k < p and 0 <= l < p
    assert (k * k * qb + l * l * qh - nu * qb) % p == 0


def test_conic_point_rejects():
    with pytest.raises(PreconditionError):
        conic_point(5, 1, 1, 5)
    with pytest.raises(PreconditionError):
        conic_point(1, 1, 1, 4)


def test_nonzero_l_can_fail():
    # k^2 q(b) + l^2 q(h) = q(b) mod 5 with q(b) = -2, q(h) = 2 forces l = 0
    assert conic_point(-2, 2, 1, 5) == (1, 0)
    with pytest.raises(NoSolution):
        conic_point(-2, 2, 1, 5, nonzero_l=True)


@given(st.integers(1, 30), st.integers(-30, 30), st.integers(-30, 30), odd_primes,
       st.integers(1, 3))
def test_hensel_against_brute_force(a2, a1, a0, p, m):
    assume(a2 % p and p ** m <= 3000)
    mod = p ** m
    roots = [x for x in range(mod) if (a2 * x * x + a1 * x + a0) % mod == 0]
    try:
        x = hensel_quadratic(a2, a1, a0, p, m)
    except NoRoot:
        simple = [x for x in range(p) if (a2 * x * x + a1 * x + a0) % p == 0
                  and (2 * a2 * x + a1) % p]
        assert not roots if m == 1 else not simple
        return
    assert x in roots


def test_hensel_no_root():
    with pytest.raises(NoRoot):
        hensel_quadratic(1, 0, 1, 7, 2)
    assert hensel_quadratic(1, 0, 1, 5, 1) == 2


@pytest.mark.parametrize("lattice,span", [
    (direct_sum(U, U, U), [(1, -1, 0, 0, 0, 0)]),
    (standard_lattice("K3n", 2), [(1, -1) + (0,) * 21, (0, 0, 1, 2) + (0,) * 19]),
    (direct_sum(U, U, standard_lattice("diag", entries=[2, -2])), []),
])
def test_hyperbolic_in_complement(lattice, span):
    e, f = hyperbolic_in_complement(lattice, span)
    assert square(lattice, e) == square(lattice, f) == 0
    assert pair(lattice, e, f) == -1
    for v in span:
        assert pair(lattice, e, v) == pair(lattice, f, v) == 0


@settings(max_examples=25)
@given(seeds, st.sampled_from([2, 3, 4]), st.sampled_from([5, 7, 11, 13]), st.booleans())
def test_b_prime_postconditions(seed, n, p, special):
    try:
        req = random_bprime_request(random.Random(seed), n, p, special=special)
    except RuntimeError:
        return
    res = b_prime(req)
    L, bp = req.h2, res.b_prime
    assert is_primitive(L, bp)
    assert divisibility(L, bp) == (2 if req.epsilon == 2 and divisibility(L, req.h) % 2 == 0 else 1)
    assert square(L, bp) > 0
    assert (square(L, bp) - req.nu * square(L, req.b)) % p == 0
    # lambda is the largest admissible value
    assert square(L, bp) - 2 * req.epsilon ** 2 * p ** (2 * req.m) <= 0
    assert res.branch == ("special" if req.epsilon == 2 else "nonspecial")


def test_b_prime_request_validation():
    L = standard_lattice("K3n", 2)
    h = (1, -1) + (0,) * 21
    b = (0, 0, 1, -1) + (0,) * 19
    with pytest.raises(PreconditionError):
        BPrimeRequest(L, h, b, 5, epsilon=2)            # epsilon is forced to 1 here
    with pytest.raises(PreconditionError):
        BPrimeRequest(L, h, (0, 0, 5, -5) + (0,) * 19, 5)
    with pytest.raises(PreconditionError):
        BPrimeRequest(L, h, h, 5)
    with pytest.raises(PreconditionError):
        BPrimeRequest(L, (1, -1) + (0,) * 21, b, 2)
    assert BPrimeRequest(L, h, (0, 0, 5, -1) + (0,) * 19, 5).epsilon == 2


def test_ogrady_adjust_reaches_congruence():
    L = standard_lattice("K3n", 2)
    h = (1, -1) + (0,) * 21
    b = (0, 0, 1, -2) + (0,) * 19
    p, n = 7, 2
    nu = ogrady_nu(square(L, b), n, p)
    for m in (1, 2):
        res = b_prime(BPrimeRequest(L, h, b, p, m, nu))
        if not res.ell_unit:
            continue
        j = ogrady_adjust(L, h, res.b_prime, res.ell, p, m, n)
        shifted = [x + j * y for x, y in zip(res.b_prime, h)]
        assert (2 * square(L, shifted) + n + 3) % p ** m == 0


@given(odd_primes, st.integers(1, 3), st.integers(2, 8), st.integers(-100, 300))
def test_ogrady_raw_matches_reduced_for_even_e(p, m, n, half_e):
    rep = ogrady_check(OGradyParams(p, m, n, 2 * half_e))
    assert rep.agree
    assert rep.hypotheses["e_even"]


def test_ogrady_invariants():
    assert ogrady_invariants(5, 1, 2) == (25, 5, 50)
    assert ogrady_invariants(3, 1, 3) == (27, 9, 54)
    rk, c1, delta = ogrady_invariants(7, 2, 2)
    assert isinstance(delta, Fraction) and rk == 49 ** 2 and c1 == 49


def test_crucial_divisibility():
    assert crucial_divisibility(25, 5, 2)
    assert not crucial_divisibility(25, 1, 2)


def test_prime_split_bound():
    rep = prime_split_bound([(2, 1), (3, 1)], 2)
    assert rep["bound"] == 36 and rep["period"] == 6 and rep["covered"]
    assert [f["ind_bound"] for f in rep["factors"]] == [4, 9]
    special = prime_split_bound([(3, 2), (5, 1)], 2, special=True)
    assert not special["covered"]
    assert special["factors"][0]["branch"].endswith("(not covered)")
    with pytest.raises(PreconditionError):
        prime_split_bound([(4, 1)], 2)
    with pytest.raises(PreconditionError):
        prime_split_bound([(3, 1), (3, 2)], 2)
