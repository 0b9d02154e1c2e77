"""Shipped fixtures carry frozen oracle values; the small ones are also re-derived live."""
import oracle
import pytest

from periodindex.fixtures import fixture_names, load_fixture
from periodindex.mukai import ind_mukai, is_nonspecial, period, period_closed_form
from periodindex.sym import ind_sym

NAMES = fixture_names()
LIVE = ["toy_a", "special", "untwisted", "special_period6"]


def test_fixture_set():
    assert {"toy_a", "special", "k3n2_nonspecial", "cube_rank8"} <= set(NAMES)


@pytest.mark.parametrize("name", NAMES)
def test_fixture_expected_values(name):
    fx = load_fixture(name)
    c = fx.config
    assert period(c) == fx.expected["period"]
    assert period_closed_form(c) == fx.expected["period"]
    assert ind_mukai(c) == fx.expected["ind_mukai"]
    assert ind_sym(c) == fx.expected["ind_sym"]
    assert is_nonspecial(c) == fx.expected["nonspecial"]


@pytest.mark.parametrize("name", LIVE)
def test_fixture_live_oracle(name):
    c = load_fixture(name).config
    args = [list(r) for r in c.h2.gram], [list(r) for r in c.ns_basis], list(c.b), c.ell
    assert oracle.period(*args) == period(c)
    assert oracle.ind_mukai(*args) == ind_mukai(c)
    assert oracle.ind_sym(*args, c.n) == ind_sym(c)


def test_special_fixture_period_below_ell():
    c = load_fixture("special").config
    assert (period(c), c.ell) == (1, 3)
