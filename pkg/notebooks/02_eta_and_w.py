"""
The auxiliary class eta and the tensor w
========================================

Inside the transcendental lattice we look for eta orthogonal to b with
q(eta) = 8 d^2. The tensor w built from b and eta then pairs with products
of Hodge classes exactly like q(eta)^m b^n does, and kills every product
that contains a power of q_T.
"""

from periodindex import direct_sum, eta_finder, pair, standard_lattice
from periodindex.constructions import eta_for_config
from periodindex.fixtures import load_fixture
from periodindex.mukai import hodge_classes_mukai, mukai, transcendental_twist
from periodindex.sym import SymVector, qT_class, sym_pair, sym_power_vec, w_class

U = standard_lattice("U")
T = direct_sum(U, U, U)
b = (1, -3, 0, 0, 0, 0)
wit = eta_finder(T, b)
print("gamma =", wit.gamma, " delta =", wit.delta, " d =", wit.d)
print("eta =", wit.eta, " q(eta) =", wit.q_eta, " (b, eta) =", pair(T, b, wit.eta))

# Now on a K3^[2]-type configuration, inside the twisted Mukai lattice.
config = load_fixture("k3n2_nonspecial").config
eta = eta_for_config(config)
M = mukai(config)
L = M.lattice
b_m, eta_m = M.embed(config.b), M.embed(eta.eta)
w = w_class(L, b_m, eta_m, 2)

N = [SymVector.from_vector(r) for r in hodge_classes_mukai(config).basis]
for i in range(len(N)):
    for j in range(i, len(N)):
        u = N[i] * N[j]
        lhs = sym_pair(L, w, u)
        rhs = eta.q_eta * sym_pair(L, sym_power_vec(b_m, 2), u)
        print(f"u = N{i} N{j}:  q(w, u) = {lhs:>6}   q(eta) q(b^2, u) = {rhs:>6}")

qT = qT_class(transcendental_twist(config))
print("q(w, q_T) =", sym_pair(L, w, qT))
