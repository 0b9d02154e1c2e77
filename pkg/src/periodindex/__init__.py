"""Exact period and Hodge-theoretic index computations for Brauer classes on
hyperkähler lattices of K3^[n] type."""
from .constructions import (BPrimeRequest, BPrimeResult, NoRoot, NoSolution, OGradyParams,
                            PreconditionError, b_prime, conic_point, eta_finder, hensel_quadratic,
                            hyperbolic_in_complement, ogrady_check, prime_split_bound)
from .lattice import (IntLattice, LatticeError, SearchExhausted, Sublattice, direct_sum,
                      discriminant, divisibility, find_isotropic, orthogonal_complement, pair,
                      saturation, square, standard_lattice)
from .mukai import (BrauerConfig, ConfigError, ModelViolation, e_tilde, hodge_classes_mukai,
                    ind_mukai, is_nonspecial, mukai, period, transcendental_twist)
from .obstructions import DJPInstance, djp_conditions, djp_dim4_solve, djp_dim6_solve
from .report import IndexReport, dumps, index_report
from .sym import (SizeCapExceeded, SymLattice, SymVector, hodge_classes_sym, ind_sym, permanent,
                  qT_class, rank_n, sym_lattice, sym_pair, sym_power_vec)

__version__ = "0.1.0"
