"""Exact calculus on the ring of Colombeau generalized numbers.

A decidable class of representatives (eventually periodic dyadic-block index
sets with sparse grid diagonals, Puiseux rational and graded monomial values)
closed under the ring, lattice and ideal-theoretic operations, with exact
decision procedures for valuation, membership in principal ideals, radicals,
closures, z-closures, pure parts, annihilators and filter-relative quotients,
plus a floating-point sampling oracle used for cross-validation only.
"""

from .core import (GenNum, abs2, abs_num, add, alpha_power, classify_element,
                   conj, divide, equal_germ, inv_test, invert, invert_on,
                   leq, make_alpha, make_graded, make_idempotent, make_imag,
                   make_rational, mul, neg, pow_int, pow_rational, scale,
                   sharp_dist, sub, sup_num, inf_num, valuation, z_test, zero)
from .calculus import (BezoutResult, bezout_gen, clean_idempotent, meet_gen,
                       nth_root_skeleton, skeleton, split_zero_divisors)
from .errors import GennumError
from .exponents import ExpFn
from .gallery import (gallery_beta, gallery_beta_m, gallery_closure_witness,
                      gallery_gamma)
from .ideals import (FilterBase, IdealExpr, LevelScheme, PurePartScheme,
                     annihilator, annihilator_split, find_ann_witness,
                     ideal_intersect, ideal_product, ideal_sum, idem_gen,
                     in_annihilator, in_closure, in_closure_principal,
                     in_ideal, in_principal, in_pure_part, in_radical,
                     in_z_closure, inv_subset, level_set, merged_generator,
                     normalize_ideal, orthogonal_decomposition,
                     orthogonal_witness, principal, pseudoprime_check,
                     pure_part, pure_part_ideal, quotient_equiv, quotient_val,
                     radical, closure, z_closure, scheme_ideal, stationary)
from .indexsets import (Diag, IndexSet, PieceFamily, boolean_ops,
                        classify_set, compl, diag_set, family_piece,
                        family_support, germ_relation, blocks_mod, grid_mod,
                        interval_set, nu2_ge, nu2_piece, nu2sq_piece,
                        empty_set, full_set, inter, union, diff, subset_germ,
                        same_germ)
from .oracle import (SampleProfile, oracle_equal, oracle_leq, oracle_val,
                     sample_net, sample_table_csv)
from .suites import SUITES, run_all, run_suite

__version__ = "0.1.0"
