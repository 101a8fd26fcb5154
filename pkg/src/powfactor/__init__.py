"""Deterministic factorization of sums and differences of powers."""

from .engine import Factorization, divisor_set, factor, factor_with_residue, order_gcd, special_form_factor
from .forms import SpecialForm, parse_special_form
from .primality import is_prime
from .sieve import ResidueInfo, find_factor_below

__all__ = [
    "Factorization",
    "ResidueInfo",
    "SpecialForm",
    "divisor_set",
    "factor",
    "factor_with_residue",
    "find_factor_below",
    "is_prime",
    "order_gcd",
    "parse_special_form",
    "special_form_factor",
]
__version__ = "0.1.0"
