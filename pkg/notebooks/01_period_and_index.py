"""
Period and Hodge-theoretic index of a twisted lattice
=====================================================

A Brauer class is given by a B-field b/ell with b in the transcendental
lattice. We build the rank 5 lattice <2> + U + U, take NS = <2> and
b = e1 - f1 with ell = 5, and compare three invariants.
"""

from periodindex import (BrauerConfig, direct_sum, e_tilde, ind_mukai, ind_sym, is_nonspecial,
                         mukai, period, standard_lattice)

U = standard_lattice("U")
h2 = direct_sum(standard_lattice("diag", entries=[2]), U, U)
config = BrauerConfig(h2, ns_basis=((1, 0, 0, 0, 0),), b=(0, 1, -1, 0, 0), ell=5)

print("q(b) =", config.qb, " non-special:", is_nonspecial(config))
print("period    =", period(config))
print("ind_mukai =", ind_mukai(config))

# The period is realised by an explicit Hodge class of rank per.
v = e_tilde(config)
print("witness", v, "of rank", mukai(config).rk(v))

# On the symmetric square the index grows to per^2.
for n in (1, 2, 3):
    print(f"n = {n}: ind_sym = {ind_sym(config.with_n(n))}")

# A special class: gcd(ell, q(b)) > 1 and the period drops below ell.
special = BrauerConfig(direct_sum(U, U), ((1, 3, 0, 0),), (1, -3, 0, 0), 3)
print("special class: ell =", special.ell, " period =", period(special))
