"""Regenerate the shipped fixtures; expected values come from tests/oracle.py only."""
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))
sys.path.insert(0, str(ROOT / "src"))

import oracle  # noqa: E402
from periodindex.lattice import direct_sum, standard_lattice  # noqa: E402

U = standard_lattice("U")


def diag(*d):
    return standard_lattice("diag", entries=list(d))


def vec(rank, **entries):
    v = [0] * rank
    for k, x in entries.items():
        v[int(k[1:])] = x
    return v


K3N2 = standard_lattice("K3n", 2)
FIXTURES = [
    ("toy_a", "diag(2)+U+U, NS = diag(2), b = e1 - f1, ell = 5",
     direct_sum(diag(2), U, U), [[1, 0, 0, 0, 0]], [0, 1, -1, 0, 0], 5, 2),
    ("special", "U+U, NS = e1 + 3 f1, b = e1 - 3 f1, ell = 3; period 1",
     direct_sum(U, U), [[1, 3, 0, 0]], [1, -3, 0, 0], 3, 2),
    ("untwisted", "toy_a with ell = 1",
     direct_sum(diag(2), U, U), [[1, 0, 0, 0, 0]], [0, 1, -1, 0, 0], 1, 2),
    ("k3n2_nonspecial", "K3^[2] lattice, NS = e1 - f1, b in the second and third U, ell = 7",
     K3N2, [vec(23, i0=1, i1=-1)], vec(23, i2=1, i3=-1, i4=1, i5=-2), 7, 2),
    ("cube_rank8", "U+U+diag(-2,2), NS = 0, b = e1 - f1, ell = 7, n = 3",
     direct_sum(U, U, diag(-2, 2)), [], [1, -1, 0, 0, 0, 0], 7, 3),
    ("special_period6", "U+U+diag(-2), NS = e1 + f1, b = 3e1 - 3f1 + 2e2 + 2f2, ell = 12; period 6",
     direct_sum(U, U, diag(-2)), [[1, 1, 0, 0, 0]], [3, -3, 2, 2, 0], 12, 2),
]


def main():
    from periodindex.mukai import BrauerConfig, ind_mukai, period
    from periodindex.sym import ind_sym
    out = ROOT / "src" / "periodindex" / "fixtures"
    for name, desc, h2, ns, b, ell, n in FIXTURES:
        gram = [list(r) for r in h2.gram]
        per = oracle.period(gram, ns, b, ell)
        im = oracle.ind_mukai(gram, ns, b, ell)
        isym = oracle.ind_sym(gram, ns, b, ell, n)
        qb = sum(b[i] * gram[i][j] * b[j] for i in range(len(b)) for j in range(len(b)))
        from math import gcd
        expected = {"period": per, "ind_mukai": im, "ind_sym": isym, "nonspecial": gcd(ell, qb) == 1}
        cfg = BrauerConfig(h2, tuple(map(tuple, ns)), tuple(b), ell, n)
        got = (period(cfg), ind_mukai(cfg), ind_sym(cfg))
        if got != (per, im, isym):
            raise SystemExit(f"{name}: implementation {got} disagrees with oracle {(per, im, isym)}")
        data = {"name": name, "description": desc, "config": cfg.to_json(), "expected": expected}
        (out / f"{name}.json").write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")
        print(name, expected)


if __name__ == "__main__":
    main()
