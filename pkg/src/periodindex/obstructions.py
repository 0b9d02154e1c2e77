"""Integrality conditions for the classes delta and Delta under the q-power ansatz.

The ansatz is ``c_j = 0`` for odd ``j`` and ``c_2t = lambda_t q^t``. Fujiki
constants ``cF`` are inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .constructions import NoSolution, PreconditionError


@dataclass(frozen=True)
class DJPInstance:
    dim: int
    r: int
    ell: int
    qb: int
    cF: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "cF", Fraction(self.cF))
        if self.dim not in (4, 6):
            raise PreconditionError("only dimensions 4 and 6 are supported")
        if self.r < self.dim:
            raise PreconditionError("r must be at least dim")
        if self.ell < 1:
            raise PreconditionError("ell must be positive")
        if self.qb == 0:
            raise PreconditionError("q(b) must be nonzero")


@dataclass(frozen=True)
class DJPSolution:
    lam: Fraction
    t: int
    step: int
    cleared_modulus: int

    def to_json(self) -> dict:
        return {"lambda_1": str(self.lam), "t": self.t, "solution_step": self.step,
                "cleared_modulus": self.cleared_modulus}


def solve_linear_congruence(a: int, c: int, M: int) -> tuple[int, int]:
    """Smallest ``x >= 0`` with ``a x + c = 0 mod M`` and the period of the solutions."""
    g = gcd(a, M)
    if c % g:
        raise NoSolution(f"gcd {g} does not divide {c}", gcd=g, rhs=c, modulus=M)
    Mg = M // g
    if Mg == 1:
        return 0, 1
    return (-(c // g) * pow(a // g, -1, Mg)) % Mg, Mg


def djp_dim4_solve(inst: DJPInstance) -> DJPSolution:
    """Smallest integer ``lambda_1 >= 0`` with ``(cF C(r,3) q(b) + lambda_1 (r-2)) / ell`` integral."""
    if inst.dim != 4:
        raise PreconditionError("dim must be 4")
    u, v = inst.cF.numerator, inst.cF.denominator
    # v*lam*(r-2) + u*C(r,3)*qb = 0 mod v*ell
    M = v * inst.ell
    lam, step = solve_linear_congruence(v * (inst.r - 2), u * comb(inst.r, 3) * inst.qb, M)
    return DJPSolution(Fraction(lam), lam, step, M)


def djp_dim6_solve(inst: DJPInstance) -> DJPSolution:
    """Smallest ``lambda_1 = (ell/(r-2)) t``, ``t >= 0``, with the degree-4 condition integral.

    Substituting gives ``(cF C(r,4) q(b) + t (r-3)/2) / ell`` in Z, cleared by ``2 * den(cF)``.
    """
    if inst.dim != 6:
        raise PreconditionError("dim must be 6")
    u, v = inst.cF.numerator, inst.cF.denominator
    M = 2 * v * inst.ell
    t, step = solve_linear_congruence(v * (inst.r - 3), 2 * u * comb(inst.r, 4) * inst.qb, M)
    return DJPSolution(Fraction(inst.ell * t, inst.r - 2), t, step, M)


def dim4_value(inst: DJPInstance, lam) -> Fraction:
    return (inst.cF * comb(inst.r, 3) * inst.qb + Fraction(lam) * (inst.r - 2)) / inst.ell


def dim6_value(inst: DJPInstance, lam) -> Fraction:
    return (inst.ell * inst.cF * comb(inst.r, 4) * inst.qb
            + Fraction(lam) * comb(inst.r - 2, 2)) / inst.ell ** 2


def _term(exp_b: int, t: int, const=Fraction(0), lam=None) -> dict:
    return {"monomial": f"b^{exp_b} q^{t}", "const": Fraction(const),
            "lambda": {} if lam is None else {t: Fraction(lam)}}


def djp_conditions(variant: str, inst: DJPInstance) -> list[dict]:
    """One record per degree ``i = 1..dim``.

    ``terms`` lists the coefficient of ``b^(i-2t) q^t`` as ``const + lambda_t * coeff``.
    ``trivial`` says the condition already holds with every ``c_j = 0``.
    ``reduced`` carries the scalar congruence for the degrees where the
    Fujiki reduction is known (delta, dims 4 and 6).
    """
    if variant not in ("delta", "Delta"):
        raise PreconditionError("variant must be 'delta' or 'Delta'")
    D, r, ell = inst.dim, inst.r, inst.ell
    top = ell ** (D // 2)
    records = []
    for i in range(1, D + 1):
        terms = []
        if variant == "delta":
            terms.append(_term(i, 0, Fraction(ell) ** (D // 2 - i) * comb(r, i)))
            for t in range(1, i // 2 + 1):
                terms.append(_term(i - 2 * t, t, 0, comb(r - 2 * t, i - 2 * t) * Fraction(ell) ** (2 * t - i)))
        else:
            sign = (-1) ** i
            terms.append(_term(i, 0, sign * Fraction(comb(top, i), ell ** i)))
            for t in range(1, i // 2 + 1):
                coeff = (-1) ** (i - 2 * t) * comb(top - 2 * t, i - 2 * t) * Fraction(ell) ** (2 * t - i)
                terms.append(_term(i - 2 * t, t, 0, coeff))
        trivial = all(term["const"].denominator == 1 for term in terms)
        rec = {"i": i, "variant": variant, "terms": terms, "trivial": trivial,
               "reduced": _reduced(variant, inst, i)}
        records.append(rec)
    return records


def _reduced(variant: str, inst: DJPInstance, i: int) -> dict | None:
    if variant != "delta":
        return None
    r, ell, qb, cF = inst.r, inst.ell, inst.qb, inst.cF
    if inst.dim == 4 and i == 2:
        return {"modulus": 1, "const": Fraction(0), "coeff": Fraction(1),
                "note": "scalar reading of an H^4 condition; amounts to lambda_1 integral"}
    if inst.dim == 4 and i == 3:
        return {"modulus": ell, "const": cF * comb(r, 3) * qb, "coeff": Fraction(r - 2),
                "note": "uses b^3 = cF q(b) (b q)"}
    if inst.dim == 6 and i == 3:
        return {"modulus": ell, "const": Fraction(0), "coeff": Fraction(r - 2),
                "note": "lambda_1 in (ell/(r-2)) Z"}
    if inst.dim == 6 and i == 4:
        return {"modulus": ell * ell, "const": ell * cF * comb(r, 4) * qb,
                "coeff": Fraction(comb(r - 2, 2)), "note": "uses b^4 = cF q(b) (b^2 q)"}
    return None


def evaluate_reduced(record: dict, lam) -> Fraction | None:
    red = record["reduced"]
    if red is None:
        return None
    return (red["const"] + red["coeff"] * Fraction(lam)) / red["modulus"]


def record_to_json(record: dict) -> dict:
    def term(t):
        return {"monomial": t["monomial"], "const": str(t["const"]),
                "lambda": {f"lambda_{k}": str(v) for k, v in t["lambda"].items()}}
    red = record["reduced"]
    if red is not None:
        red = {"modulus": red["modulus"], "const": str(red["const"]),
               "lambda_1_coeff": str(red["coeff"]), "note": red["note"]}
    return {"i": record["i"], "variant": record["variant"], "trivial": record["trivial"],
            "terms": [term(t) for t in record["terms"]], "reduced": red}
