"""Command line front end. Every subcommand prints one JSON document."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from math import factorial

from .constructions import (BPrimeRequest, NoSolution, OGradyParams, PreconditionError, b_prime,
                            eta_finder, ogrady_adjust, ogrady_check, ogrady_nu, prime_split_bound)
from .lattice import LatticeError, pair, square
from .mukai import (BrauerConfig, ConfigError, ModelViolation, hodge_classes_mukai, is_nonspecial,
                    mukai, period, transcendental_twist)
from .obstructions import (DJPInstance, djp_conditions, djp_dim4_solve, djp_dim6_solve,
                           evaluate_reduced, record_to_json)
from .report import dumps, index_report
from .sym import (SymVector, qT_class, splitting_pair, sym_pair, sym_power_vec, w_class)

EXIT_OK, EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


class MalformedInput(ValueError):
    pass


def load_config(path: str | None, n: int | None = None) -> BrauerConfig:
    if not path:
        raise MalformedInput("--config is required")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedInput("configuration must be a JSON object")
    if "config" in data and "h2" not in data:
        data = data["config"]  # accept fixture files directly
    missing = [k for k in ("h2", "b", "ell") if k not in data]
    if missing:
        raise MalformedInput(f"missing keys: {missing}")
    try:
        cfg = BrauerConfig.from_json(data)
    except ConfigError as exc:
        if "malformed" in str(exc):
            raise MalformedInput(str(exc)) from exc
        raise
    except (ValueError, TypeError) as exc:
        raise MalformedInput(str(exc)) from exc
    return cfg.with_n(n) if n else cfg


def cmd_index(args):
    return index_report(load_config(args.config, args.n))


def _polarisation(cfg: BrauerConfig, index: int):
    if not cfg.ns_basis:
        raise PreconditionError("the configuration has no NS class to use as h")
    return cfg.ns_basis[index]


def cmd_construct(args):
    cfg = load_config(args.config, args.n)
    if args.what == "eta":
        T = cfg.transcendental
        coords = T.coordinates(cfg.b)
        w = eta_finder(T.as_lattice(), coords)
        amb = T.to_ambient
        return {"eta": amb(w.eta), "gamma": amb(w.gamma), "delta": amb(w.delta), "d": w.d,
                "q_eta": w.q_eta, "q_b": cfg.qb,
                "checks": [{"condition": "q(eta) = 8 d^2", "lhs": w.q_eta, "modulus": 0,
                            "verdict": w.q_eta == 8 * w.d ** 2},
                           {"condition": "q(eta) | 8 q(b)^2 disc(T)^2",
                            "lhs": 8 * cfg.qb ** 2 * abs(T.as_lattice().det) ** 2,
                            "modulus": w.q_eta,
                            "verdict": (8 * cfg.qb ** 2 * T.as_lattice().det ** 2) % w.q_eta == 0}]}
    req = _bprime_request(cfg, args)
    return {"request": {"p": req.p, "m": req.m, "nu": req.nu, "epsilon": req.epsilon,
                        "h": req.h, "b": req.b}, "certificate": b_prime(req).to_json()}


def _bprime_request(cfg, args, nu=None):
    if args.p is None:
        raise PreconditionError("--p is required")
    h = _polarisation(cfg, args.h_index)
    return BPrimeRequest(cfg.h2, h, cfg.b, args.p, args.m or 1,
                         nu if nu is not None else (args.nu or 1), args.epsilon)


def cmd_check(args):
    if args.what == "djp":
        missing = [k for k in ("dim", "r", "ell", "qb") if getattr(args, k) is None]
        if missing:
            raise MalformedInput(f"missing flags: {missing}")
        inst = DJPInstance(args.dim, args.r, args.ell, args.qb, Fraction(args.cF))
        out = {"instance": {"dim": inst.dim, "r": inst.r, "ell": inst.ell, "qb": inst.qb,
                            "cF": str(inst.cF)}, "variant": args.variant}
        records = djp_conditions(args.variant, inst)
        out["records"] = [record_to_json(r) for r in records]
        try:
            sol = djp_dim4_solve(inst) if inst.dim == 4 else djp_dim6_solve(inst)
            out["solution"] = sol.to_json()
            out["reduced_values"] = {str(r["i"]): str(evaluate_reduced(r, sol.lam))
                                     for r in records if r["reduced"] is not None}
        except NoSolution as exc:
            out["solution"] = None
            out["obstruction"] = {"message": str(exc), **exc.info}
        return out
    # ogrady: full pipeline on a configuration
    cfg = load_config(args.config, args.n)
    n = cfg.n
    p = args.p
    if p is None:
        raise PreconditionError("--p is required")
    nu = args.nu if args.nu is not None else ogrady_nu(cfg.qb, n, p)
    req = _bprime_request(cfg, args, nu)
    res = b_prime(req)
    out = {"request": {"p": p, "m": req.m, "nu": nu, "n": n}, "b_prime": res.to_json()}
    bp = list(res.b_prime)
    if res.ell_unit:
        j = ogrady_adjust(cfg.h2, req.h, bp, res.ell, p, req.m, n)
        bp = [x + j * y for x, y in zip(bp, req.h)]
        out["adjustment_j"] = j
    else:
        out["adjustment_j"] = None
    e = square(cfg.h2, bp)
    out["adjusted_b_prime"] = bp
    out["report"] = ogrady_check(OGradyParams(p, req.m, n, e, square(cfg.h2, req.h))).to_json()
    return out


def cmd_verify(args):
    cfg = load_config(args.config, args.n)
    rng = random.Random(args.seed)
    M = mukai(cfg)
    L = M.lattice
    n = cfg.n
    results = []

    def rvec():
        while True:
            v = [rng.randint(-2, 2) for _ in range(L.rank)]
            if any(v):
                return v

    for _ in range(args.samples):
        a, c = rvec(), rvec()
        lhs = sym_pair(L, sym_power_vec(a, n), sym_power_vec(c, n))
        rhs = factorial(n) * pair(L, a, c) ** n
        results.append({"identity": "defining property", "lhs": lhs, "rhs": rhs, "verdict": lhs == rhs})
        k = rng.randint(0, n)
        g = rvec()
        u = SymVector.from_vector(rvec()).power(k)
        v = SymVector.from_vector(rvec()).power(n - k)
        lhs, rhs = splitting_pair(L, g, k, u, v)
        results.append({"identity": f"splitting pairing k={k}", "lhs": lhs, "rhs": rhs,
                        "verdict": lhs == rhs})
    T = transcendental_twist(cfg)
    qT = qT_class(T)
    for t in T.basis[: args.samples]:
        lhs = sym_pair(L, sym_power_vec(t, 2), qT)
        rhs = 2 * square(L, t)
        results.append({"identity": "q_T reproduction", "lhs": lhs, "rhs": rhs, "verdict": lhs == rhs})
    from .constructions import eta_for_config
    eta = eta_for_config(cfg)
    if eta is not None and cfg.qb > 0:
        b, e = M.embed(cfg.b), M.embed(eta.eta)
        w = w_class(L, b, e, n)
        N = [list(r) for r in hodge_classes_mukai(cfg).basis]
        for _ in range(args.samples):
            u = SymVector.one()
            for _ in range(n):
                u = u * SymVector.from_vector(rng.choice(N))
            lhs = sym_pair(L, w, u)
            rhs = eta.q_eta ** (n // 2) * sym_pair(L, sym_power_vec(b, n), u)
            results.append({"identity": "w against S^n N", "lhs": lhs, "rhs": rhs, "verdict": lhs == rhs})
        for i in range(1, n // 2 + 1):
            u = SymVector.one()
            for _ in range(n - 2 * i):
                u = u * SymVector.from_vector(rng.choice(N))
            lhs = sym_pair(L, w, u * qT.power(i))
            results.append({"identity": f"w against q_T^{i}", "lhs": lhs, "rhs": 0, "verdict": lhs == 0})
    ok = all(r["verdict"] for r in results)
    if not ok:
        raise ModelViolation("identity check failed: " + dumps(results))
    return {"identities": results, "all_hold": ok}


def _factor(n: int) -> list[tuple[int, int]]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def cmd_report(args):
    if args.factors:
        try:
            fac = [(int(p), int(m)) for p, m in (item.split(":") for item in args.factors.split(","))]
        except ValueError as exc:
            raise MalformedInput("--factors expects p:m,p:m,...") from exc
        return prime_split_bound(fac, args.n or 2, special=args.special)
    cfg = load_config(args.config, args.n)
    per = period(cfg)
    return prime_split_bound(_factor(per), cfg.n, special=not is_nonspecial(cfg))


def cmd_suite(args):
    from .acceptance import CRITERIA, run_criterion
    from .fixtures import fixture_names, load_fixture
    from .mukai import ind_mukai
    from .sym import ind_sym
    lines, ok = [], True
    for name in fixture_names():
        fx = load_fixture(name)
        got = {"period": period(fx.config), "ind_mukai": ind_mukai(fx.config),
               "ind_sym": ind_sym(fx.config), "nonspecial": is_nonspecial(fx.config)}
        good = got == fx.expected
        ok &= good
        lines.append({"fixture": name, "expected": fx.expected, "computed": got, "verdict": good})
    crit = []
    numbers = args.criteria or sorted(CRITERIA)
    for k in numbers:
        res = run_criterion(k)
        print(res.line(), file=sys.stderr)
        ok &= res.passed
        crit.append({"criterion": k, "title": res.title, "passed": res.passed, "detail": res.detail})
    return {"fixtures": lines, "criteria": crit, "passed": ok}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="BrauerConfig JSON file")
    common.add_argument("--n", type=int, help="override the half-dimension n")
    common.add_argument("--json", action="store_true", help="compact JSON (default)")
    common.add_argument("--pretty", action="store_true", help="indented JSON")

    cons = argparse.ArgumentParser(add_help=False)
    cons.add_argument("--p", type=int)
    cons.add_argument("--m", type=int)
    cons.add_argument("--nu", type=int)
    cons.add_argument("--epsilon", type=int, choices=[1, 2])
    cons.add_argument("--h-index", type=int, default=0, help="row of ns_basis used as h")

    parser = argparse.ArgumentParser(prog="periodindex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("index", parents=[common], help="period and Hodge-theoretic indices")
    p.set_defaults(func=cmd_index)
    p = sub.add_parser("construct", parents=[common, cons], help="eta or b' with certificate")
    p.add_argument("what", choices=["eta", "bprime"])
    p.set_defaults(func=cmd_construct)
    p = sub.add_parser("check", parents=[common, cons], help="O'Grady or de Jong-Perry conditions")
    p.add_argument("what", choices=["ogrady", "djp"])
    p.add_argument("--dim", type=int, choices=[4, 6])
    p.add_argument("--variant", choices=["delta", "Delta"], default="delta")
    p.add_argument("--r", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--qb", type=int)
    p.add_argument("--cF", default="1")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("verify", parents=[common], help="exact identity checks on a config")
    p.add_argument("what", choices=["identities"])
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("report", parents=[common], help="prime splitting bound")
    p.add_argument("what", choices=["split"])
    p.add_argument("--factors", help="p:m,p:m,... instead of a config")
    p.add_argument("--special", action="store_true")
    p.set_defaults(func=cmd_report)
    p = sub.add_parser("suite", parents=[common], help="fixtures and acceptance criteria")
    p.add_argument("--criteria", type=int, nargs="*")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        out = args.func(args)
    except MalformedInput as exc:
        print(dumps({"error": "malformed input", "message": str(exc)}), file=sys.stderr)
        return EXIT_MALFORMED
    except ModelViolation as exc:
        print(dumps({"error": "internal consistency failure", "message": str(exc)}), file=sys.stderr)
        return EXIT_INTERNAL
    except (LatticeError, ValueError) as exc:
        print(dumps({"error": "precondition violation", "type": type(exc).__name__,
                     "message": str(exc)}), file=sys.stderr)
        return EXIT_PRECONDITION
    print(dumps(out, pretty=args.pretty))
    if args.command == "suite" and not out["passed"]:
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
