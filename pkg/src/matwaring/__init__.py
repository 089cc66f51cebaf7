"""Exact decompositions of matrices over finite fields into sums of k-th powers."""

from .decompose import Decomposition, botha_split, decompose2, decompose_n
from .errors import *  # noqa: F401,F403
from .ff import is_kth_power, kth_power_count, kth_root, make_field, minus_one_is_kth_power
from .matff import Mat, char_poly, companion, frobenius_form
from .oracle import brute_decompose, census, min_waring_number, verify, weil_check
from .polyff import Poly
from .scalar_waring import constrained_pair, two_power_rep, waring_constant

__version__ = "0.1.0"

__all__ = [
    "Decomposition",
    "Mat",
    "Poly",
    "botha_split",
    "brute_decompose",
    "census",
    "char_poly",
    "companion",
    "constrained_pair",
    "decompose2",
    "decompose_n",
    "frobenius_form",
    "is_kth_power",
    "kth_power_count",
    "kth_root",
    "make_field",
    "min_waring_number",
    "minus_one_is_kth_power",
    "two_power_rep",
    "verify",
    "waring_constant",
    "weil_check",
]
