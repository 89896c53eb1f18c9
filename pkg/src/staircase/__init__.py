"""Exact combinatorics of staircase tableaux, labeled tree-like tableaux and lazy paths."""

from .ltlt import (BASE, Ltlt, crossings, enumerate_ltlt, insert, lambda_inv, lambda_map,
                   rank, special_box, underlying_tree, uninsert, unrank, validate_ltlt)
from .partition import (count_roots_in, delta_t_classification, differential_identity_check,
                        log_concave, p_poly, product_formula, t_table_enumerated,
                        t_table_recurrence, verify_product, z_fugacity)
from .paths import (BnTree, classify, enumerate_lazy, factors, is_odd_frobenius, peaks, phi,
                    phi_inv, pi, pi_prime, stats)
from .poly import MultiPoly, UniPoly
from .tableau import (Label, StaircaseTableau, enumerate_direct, fill_q, indexed_stats,
                      particle_count, validate_staircase, weight)

__version__ = "0.1.0"
