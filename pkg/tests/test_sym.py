import random
from fractions import Fraction
from math import comb, factorial

import oracle
import pytest
from hypothesis import given, settings, strategies as st

from periodindex.lattice import direct_sum, pair, square, standard_lattice
from periodindex.mukai import BrauerConfig, mukai, period, transcendental_twist
from periodindex.sampling import random_config, random_h2
from periodindex.sym import (SizeCapExceeded, SymVector, hodge_classes_sym, ind_sym,
                             ind_sym_report, permanent, qT_class, rank_n, splitting_pair,
                             sym_lattice, sym_pair, sym_power_vec)

U = standard_lattice("U")
seeds = st.integers(0, 2 ** 32 - 1)
small = st.integers(-4, 4)


def nonzero(rank):
    return st.lists(small, min_size=rank, max_size=rank).filter(any)


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_permanent_matches_brute_force(A):
    assert permanent(A) == oracle.permanent(A)


def test_permanent_small_cases():
    assert permanent([]) == 1
    assert permanent([[1] * 4] * 4) == 24


def test_symvector_algebra():
    x = SymVector.from_vector([1, 2])
    assert x.power(2).coefficient((0, 0)) == 1
    assert x.power(2).coefficient((0, 1)) == 4
    assert (x * x) - x.power(2) == SymVector(2)
    assert (x * 3).coefficient((1,)) == 6
    assert x.scale(Fraction(1, 2)).integral is False
    assert SymVector.from_json(2, x.power(2).to_json()) == x.power(2)


def test_sym_lattice_dimension_and_cap(monkeypatch):
    L = standard_lattice("K3n", 2)
    assert sym_lattice(L, 2).dimension == comb(24, 2)
    monkeypatch.setenv("MLK_SIZE_CAP", "100")
    with pytest.raises(SizeCapExceeded):
        sym_lattice(L, 2)
    with pytest.raises(SizeCapExceeded):
        sym_lattice(U, 7)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@given(data=st.data())
def test_defining_property(n, data):
    L = random_h2(random.Random(data.draw(seeds)), 5)
    a, b = data.draw(nonzero(L.rank)), data.draw(nonzero(L.rank))
    lhs = sym_pair(L, sym_power_vec(a, n), sym_power_vec(b, n))
    assert lhs == factorial(n) * pair(L, a, b) ** n


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_splitting_pairing(n, data):
    L = random_h2(random.Random(data.draw(seeds)), 5)
    k = data.draw(st.integers(0, n))
    g = data.draw(nonzero(L.rank))
    u = SymVector.from_vector(data.draw(nonzero(L.rank))).power(k)
    v = SymVector.one()
    for _ in range(n - k):
        v = v * SymVector.from_vector(data.draw(nonzero(L.rank)))
    lhs, rhs = splitting_pair(L, g, k, u, v)
    assert lhs == rhs


@given(data=st.data())
def test_gram_symmetric(data):
    L = random_h2(random.Random(data.draw(seeds)), 4)
    G = sym_lattice(L, 2).gram()
    assert all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(len(G)))


@pytest.fixture
def toy():
    return BrauerConfig(direct_sum(standard_lattice("diag", entries=[2]), U, U),
                        ((1, 0, 0, 0, 0),), (0, 1, -1, 0, 0), 5)


def test_rank_n_reads_e_power(toy):
    M = mukai(toy)
    for n in (1, 2, 3):
        assert rank_n(M, sym_power_vec(M.e, n)) == 1
        assert rank_n(M, sym_power_vec(M.embed([0] * 5, 5, 0), n)) == 5 ** n
        assert rank_n(toy, sym_power_vec(M.f, n)) == 0


def test_qT_reproduces_form(toy):
    T = transcendental_twist(toy)
    qT = qT_class(T)
    L = mukai(toy).lattice
    for t in T.basis:
        assert sym_pair(L, sym_power_vec(t, 2), qT) == 2 * square(L, t)


def test_toy_ind_sym(toy):
    assert ind_sym(toy) == 25
    assert ind_sym(toy.with_n(1)) == 5
    assert ind_sym(toy.with_n(3)) == 125
    rep = ind_sym_report(toy)
    assert rep.per == 5 and rep.n == 2


def test_e_tilde_power_is_hodge(toy):
    from periodindex.mukai import e_tilde
    S = sym_lattice(mukai(toy).lattice, 2)
    assert hodge_classes_sym(toy).contains(S.dense(sym_power_vec(e_tilde(toy), 2)))


def args(c):
    return [list(r) for r in c.h2.gram], [list(r) for r in c.ns_basis], list(c.b), c.ell


@settings(max_examples=12)
@given(seeds)
def test_ind_sym_matches_oracle(seed):
    c = random_config(random.Random(seed), max_mukai_rank=7, n=2, min_t_rank=3)
    assert ind_sym(c) == oracle.ind_sym(*args(c), 2)


@settings(max_examples=25)
@given(seeds)
def test_ind_sym_divides_period_power(seed):
    c = random_config(random.Random(seed), max_mukai_rank=8, n=2)
    ind = ind_sym(c)
    assert (period(c) ** 2) % ind == 0
    assert (c.ell ** 2) % ind == 0
