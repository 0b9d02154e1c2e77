"""
Building b' and checking O'Grady's conditions
=============================================

On the K3^[2] lattice we take h in the first hyperbolic plane and b in the
second, construct b' for the prime p = 7 and then adjust it so that the
O'Grady congruence holds modulo 49. The last part solves the integrality
conditions of the q-power ansatz in dimensions 4 and 6.
"""

from fractions import Fraction

from periodindex import (BPrimeRequest, DJPInstance, NoSolution, OGradyParams, b_prime,
                         djp_dim4_solve, djp_dim6_solve, ogrady_check, prime_split_bound,
                         square, standard_lattice)
from periodindex.constructions import ogrady_adjust, ogrady_invariants, ogrady_nu

L = standard_lattice("K3n", 2)
h = (1, -1) + (0,) * 21
b = (0, 0, 1, -2) + (0,) * 19
p, m, n = 7, 2, 2

nu = ogrady_nu(square(L, b), n, p)
res = b_prime(BPrimeRequest(L, h, b, p, m, nu))
print("b' =", res.b_prime[:6], "...  q(b') =", square(L, res.b_prime), " branch:", res.branch)
for check in res.checks:
    print("  ", check["condition"], check["verdict"])

j = ogrady_adjust(L, h, res.b_prime, res.ell, p, m, n)
bp = [x + j * y for x, y in zip(res.b_prime, h)]
report = ogrady_check(OGradyParams(p, m, n, square(L, bp), square(L, h)))
print("adjusted by j =", j, " conditions:", report.raw, " raw == reduced:", report.agree)
print("sheaf invariants for p^m = 5, n = 2:", ogrady_invariants(5, 1, 2))
print("bound for period 6, n = 2:", prime_split_bound([(2, 1), (3, 1)], 2)["bound"])

print(djp_dim4_solve(DJPInstance(4, 8, 5, 3, Fraction(1, 2))))
try:
    djp_dim6_solve(DJPInstance(6, 7, 4, 1))
except NoSolution as exc:
    print("dimension 6 obstruction:", exc, exc.info)
