"""Quadratic non-residues modulo p that are not primitive roots (QNRNPs).

Exact arithmetic, unit classification, Ramanujan and beta character sums,
the character-sum count of QNRNPs coprime to (p-1)/q with its error bound,
and the fixed-point construction g^x = x (mod p).
"""

from .arith import (Factorization, SpfSieve, euler_phi, factorize, gcd, is_prime, mobius,
                    mobius_divisor_sum, mod_inverse, mod_pow, omega_bound_check,
                    squarefree_divisor_count)
from .charsums import (ComplexSum, alpha_abs_sum_identity, beta_sum, characteristic_value,
                       coprime_restricted_sum, interval_character_sum, ramanujan_sum,
                       verify_lemma21)
from .errors import DomainError, NoWitness, NotInvertible, PrecisionError, ResourceError
from .fixedpoint import FixedPointResult, construct_fixed_point, search_fixed_points
from .residues import (IndexTable, UnitClass, build_index_table, classify_unit,
                       is_quadratic_residue, multiplicative_order, qnrnp_set,
                       smallest_primitive_root)
from .theorem import (CountReport, SearchParams, TheoremCertificate, ThresholdInfo, certify,
                      count_qnrnp_coprime_brute, count_qnrnp_coprime_formula,
                      coprime_unit_count, lps_witness, scan, threshold,
                      verify_inequality_chain)

__version__ = "0.1.0"
