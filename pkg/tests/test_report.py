import json
from fractions import Fraction

import pytest

from periodindex.fixtures import load_fixture
from periodindex.report import canonical, dumps, index_report


def test_canonical_big_ints_and_fractions():
    assert canonical({"a": 2 ** 70, "b": Fraction(3, 4), "c": (1, Fraction(2))}) == \
        {"a": str(2 ** 70), "b": "3/4", "c": [1, 2]}
    with pytest.raises(TypeError):
        canonical(object())


def test_dumps_is_deterministic():
    assert dumps({"b": 1, "a": 2}) == '{"a":2,"b":1}'


@pytest.mark.parametrize("name", ["toy_a", "special", "special_period6"])
def test_index_report(name):
    fx = load_fixture(name)
    rep = index_report(fx.config)
    data = json.loads(dumps(rep))
    assert data["period"] == fx.expected["period"]
    assert data["ind_sym"] == fx.expected["ind_sym"]
    assert all(v is not False for v in data["verdicts"].values())
    assert data["witnesses"]["e_tilde"][-2] == fx.expected["period"]
