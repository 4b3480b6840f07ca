"""Digit-block-counting sequences with growing block length.

Core objects: base-q digit primitives and phase functions (:mod:`.digits`,
:mod:`.blocks`), the growth function P (:mod:`.growth`), decay exponents
and admissibility (:mod:`.bounds`), sieve tables (:mod:`.sieve`),
exponential sums and Fourier tables (:mod:`.expsum`), counting-lemma
oracles (:mod:`.counting`), and run-length parity statistics
(:mod:`.runlength`).  A FastAPI service (:mod:`.service`) exposes the
same operations over HTTP; the CLI (:mod:`.cli`) is a thin client.
"""

from .digits import (DigitExpansion, PhaseParam, TruncationProfile, a_p,
                     a_p_trunc, digit, f_double_trunc, f_p, middle_digits,
                     phi_p, t_q, window_product_sum)
from .errors import (CapacityError, GelfondError, SearchExhaustedError,
                     ValidationError)
from .growth import GrowthFunction

__all__ = [
    "DigitExpansion", "PhaseParam", "TruncationProfile", "GrowthFunction",
    "digit", "t_q", "window_product_sum", "a_p", "a_p_trunc",
    "middle_digits", "f_p", "f_double_trunc", "phi_p",
    "GelfondError", "ValidationError", "CapacityError",
    "SearchExhaustedError",
]

__version__ = "0.1.0"
