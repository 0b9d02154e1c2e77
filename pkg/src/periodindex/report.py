"""Index reports and deterministic JSON output."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .mukai import (BrauerConfig, ModelViolation, e_tilde, hodge_classes_mukai, ind_mukai,
                    is_hodge_mukai, is_nonspecial, mukai, period)
from .sym import hodge_classes_sym, ind_sym_report, rank_n, sym_lattice, sym_power_vec

INT_LIMIT = 2 ** 63


def canonical(obj):
    """JSON-ready copy: Fractions and huge ints become strings, tuples become lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= INT_LIMIT else obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 and abs(obj) < INT_LIMIT else str(obj)
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if hasattr(obj, "to_json"):
        return canonical(obj.to_json())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, pretty: bool = False) -> str:
    data = canonical(obj)
    if pretty:
        return json.dumps(data, sort_keys=True, indent=2)
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class IndexReport:
    config: BrauerConfig
    period: int
    ind_mukai: int
    ind_sym: int
    n: int
    nonspecial: bool
    obstruction_modulus: int | None
    coprime: bool | None
    e_tilde: tuple[int, ...]

    def verdicts(self) -> dict:
        """Divisibility claims, recomputed from the witnesses."""
        M = mukai(self.config)
        et = self.e_tilde
        et_n = sym_power_vec(et, self.n)
        witness_ok = is_hodge_mukai(self.config, et) and M.rk(et) == self.period
        rank_witness = rank_n(M, et_n)
        S = sym_lattice(M.lattice, self.n)
        sym_member = hodge_classes_sym(self.config).contains(S.dense(et_n))
        per_n = self.period ** self.n
        hyp = self.nonspecial and bool(self.coprime)
        return {
            "e_tilde_is_hodge_with_rank_per": witness_ok,
            "e_tilde_n_is_hodge_with_rank_per_n": sym_member and rank_witness == per_n,
            "per_divides_ind_mukai": self.ind_mukai % self.period == 0,
            "ind_mukai_divides_rk_e_tilde": M.rk(et) % self.ind_mukai == 0,
            "ind_sym_divides_per_n": per_n % self.ind_sym == 0 and rank_witness % self.ind_sym == 0,
            "per_n_divides_ind_sym": (self.ind_sym % per_n == 0) if hyp else None,
        }

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "period": self.period,
            "ind_mukai": self.ind_mukai,
            "ind_sym": self.ind_sym,
            "n": self.n,
            "nonspecial": self.nonspecial,
            "obstruction_modulus": self.obstruction_modulus,
            "coprime_to_obstruction": self.coprime,
            "witnesses": {
                "e_tilde": list(self.e_tilde),
                "e_tilde_n": sym_power_vec(self.e_tilde, self.n).to_json(),
                "n_basis": [list(r) for r in hodge_classes_mukai(self.config).basis],
            },
            "verdicts": self.verdicts(),
        }


def index_report(config: BrauerConfig) -> IndexReport:
    per = period(config)
    im = ind_mukai(config)
    sym = ind_sym_report(config)
    rep = IndexReport(config, per, im, sym.ind, config.n, is_nonspecial(config),
                      sym.obstruction_modulus, sym.coprime, e_tilde(config))
    bad = [k for k, v in rep.verdicts().items() if v is False]
    if bad:
        raise ModelViolation(f"report verdicts failed: {bad}")
    return rep
