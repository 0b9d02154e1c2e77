import json

import pytest
from hypothesis import assume, given, strategies as st

from periodindex.lattice import (IntLattice, LatticeError, NotContained, NotFiniteIndex,
                                 SearchExhausted, Sublattice, definiteness, direct_sum,
                                 discriminant, divisibility, find_isotropic, is_primitive,
                                 orthogonal_complement, pair, saturation, search_isotropic, shell,
                                 square, standard_lattice, sublattice_index)

U = standard_lattice("U")


def diag(*d):
    return standard_lattice("diag", entries=list(d))


@st.composite
def lattices(draw, max_rank=5):
    pieces = draw(st.lists(st.sampled_from(["U", 2, -2, 4, -6]), min_size=1, max_size=3))
    lat = direct_sum(*[U if p == "U" else diag(p) for p in pieces])
    assume(lat.rank <= max_rank)
    return lat


def vectors(rank, lo=-5, hi=5):
    return st.lists(st.integers(lo, hi), min_size=rank, max_size=rank)


def test_k3_invariants():
    K3 = standard_lattice("K3")
    assert K3.rank == 22
    assert discriminant(K3) == 1
    assert discriminant(standard_lattice("E8neg")) == 1
    assert definiteness(standard_lattice("E8neg")) == -1
    K3n = standard_lattice("K3n", 3)
    assert K3n.rank == 23 and discriminant(K3n) == 4


def test_gram_validation():
    with pytest.raises(LatticeError):
        IntLattice([[1, 2], [3, 1]])
    with pytest.raises(LatticeError):
        standard_lattice("K3n", 1)
    with pytest.raises(LatticeError):
        standard_lattice("nope")


def test_json_round_trip():
    L = direct_sum(U, diag(-2))
    assert IntLattice.from_json(json.loads(json.dumps(L.to_json()))) == L


@given(lattices(), st.data())
def test_pairing_bilinear_symmetric(L, data):
    a, b, c = (data.draw(vectors(L.rank)) for _ in range(3))
    s = [x + y for x, y in zip(a, b)]
    assert pair(L, a, c) == pair(L, c, a)
    assert pair(L, s, c) == pair(L, a, c) + pair(L, b, c)
    assert square(L, a) == pair(L, a, a)


@given(lattices(), st.data())
def test_divisibility_divides_all_pairings(L, data):
    v = data.draw(vectors(L.rank))
    assume(any(v))
    d = divisibility(L, v)
    for i in range(L.rank):
        e = [int(i == j) for j in range(L.rank)]
        assert pair(L, v, e) % d == 0


def test_divisibility_examples():
    L = direct_sum(U, diag(-2))
    assert divisibility(L, [0, 0, 1]) == 2
    assert divisibility(L, [1, 1, 0]) == 1
    assert is_primitive(L, [1, 1, 0]) and not is_primitive(L, [2, 0, 2])


@given(lattices(), st.data())
def test_orthogonal_complement_is_saturated_and_orthogonal(L, data):
    v = data.draw(vectors(L.rank))
    assume(any(v))
    C = orthogonal_complement(L, [v])
    assert C.rank == L.rank - 1
    for row in C.basis:
        assert pair(L, row, v) == 0
    assert saturation(L, C).basis == C.basis


def test_saturation_and_index():
    L = direct_sum(U, U)
    S = Sublattice.span(L, [[2, 0, 0, 0], [0, 0, 3, 3]])
    sat = saturation(L, S)
    assert sublattice_index(sat, S) == 6
    assert sat.contains([1, 0, 0, 0]) and sat.contains([0, 0, 1, 1])
    assert sat.coordinates([0, 0, 1, 0]) is None
    with pytest.raises(NotContained):
        sublattice_index(S, Sublattice.span(L, [[1, 0, 0, 0]]))
    with pytest.raises(NotFiniteIndex):
        sublattice_index(sat, Sublattice.span(L, [[2, 0, 0, 0]]))


def test_shell_order():
    assert list(shell(2, 1)) == [(1, 0), (0, 1), (1, 1), (1, -1)]
    assert all(max(map(abs, v)) == 2 for v in shell(3, 2))


def test_find_isotropic_is_first_in_order():
    assert find_isotropic(direct_sum(U, diag(2))) == (1, 0, 0)
    v = find_isotropic(direct_sum(diag(2), diag(-2), diag(2)))
    assert v == (1, 1, 0)


def test_find_isotropic_definite_raises():
    with pytest.raises(SearchExhausted):
        find_isotropic(diag(2, 4))


def test_search_isotropic_doubles_bound():
    # 7x^2 - y^2 has no rational zero except 0, but x^2 - 49 y^2 has (7, 1)
    L = diag(1, -49)
    with pytest.raises(SearchExhausted):
        find_isotropic(L, 4)
    assert search_isotropic(L, 4, 16) == (7, 1)


@given(lattices(), st.data())
def test_isotropic_hit_is_isotropic(L, data):
    assume(definiteness(L) == 0)
    try:
        v = find_isotropic(L, 4)
    except SearchExhausted:
        return
    assert square(L, v) == 0 and any(v)
