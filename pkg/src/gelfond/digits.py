"""Base-q digit primitives and the phase functions built on them.

All integer operations here avoid floating point entirely; the only floats
produced are the final unit-complex phases.  Everything is a pure function
of its arguments and safe to call from any thread; the root-of-unity tables
held by :class:`PhaseParam` are immutable after construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidBaseError, UndefinedIndexError, ValidationError
from .growth import GrowthFunction

__all__ = [
    "DigitExpansion", "TruncationProfile", "PhaseParam",
    "digit", "t_q", "window_product_sum", "a_p", "a_p_xy", "a_p_trunc",
    "middle_digits", "f_p", "f_p_xy", "f_p_trunc", "f_p_trunc_xy",
    "f_double_trunc", "f_double_trunc_xy", "phi_p",
]


def _check_base(q: int) -> None:
    if q < 2:
        raise InvalidBaseError(f"invalid base q={q}, need q >= 2")


def digit(n: int, i: int, q: int) -> int:
    """i-th base-q digit of n, least-significant first; 0 past the end."""
    _check_base(q)
    if n < 0 or i < 0:
        raise ValidationError("digit() needs n >= 0 and i >= 0")
    return (n // q**i) % q


def t_q(n: int, q: int) -> int:
    """Index of the most significant nonzero digit: largest i with q**i <= n.

    Computed by repeated integer division; the floating floor(log/log) form
    misfires near powers of q.
    """
    _check_base(q)
    if n <= 0:
        raise UndefinedIndexError("t_q is undefined for n = 0")
    i = 0
    while n >= q:
        n //= q
        i += 1
    return i


@dataclass(frozen=True)
class DigitExpansion:
    """Base-q digit vector of a nonnegative integer, least-significant first."""

    base: int
    digits: tuple[int, ...]

    @classmethod
    def of(cls, n: int, q: int) -> "DigitExpansion":
        _check_base(q)
        if n < 0:
            raise ValidationError("DigitExpansion needs n >= 0")
        ds = []
        while n:
            n, d = divmod(n, q)
            ds.append(d)
        return cls(base=q, digits=tuple(ds))

    def __post_init__(self):
        _check_base(self.base)
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValidationError("digit out of range for base")
        if self.digits and self.digits[-1] == 0:
            raise ValidationError("trailing zero digit stored")

    def value(self) -> int:
        return sum(d * self.base**i for i, d in enumerate(self.digits))

    def most_significant_index(self) -> int:
        if not self.digits:
            raise UndefinedIndexError("zero has no most significant digit")
        return len(self.digits) - 1


@dataclass(frozen=True)
class TruncationProfile:
    """Digit-index window (mu0 <= mu1 <= mu2) plus the rho truncation index."""

    mu0: int
    mu1: int
    mu2: int
    rho: int = 0

    def __post_init__(self):
        if min(self.mu0, self.mu1, self.mu2, self.rho) < 0:
            raise ValidationError("truncation indices must be >= 0")
        if not self.mu0 <= self.mu1 <= self.mu2:
            raise ValidationError(
                f"need mu0 <= mu1 <= mu2, got ({self.mu0}, {self.mu1}, {self.mu2})")


class PhaseParam:
    """The phase parameter alpha, either an exact rational p/r or a float.

    In exact-rational mode e(alpha * a) is read from a precomputed table of
    r-th roots of unity and all phase arithmetic stays in integers (a mod r)
    until the final complex materialization, so 1e8-term sums accumulate no
    phase drift.
    """

    def __init__(self, value):
        if isinstance(value, Fraction):
            self.fraction: Fraction | None = value
            self.value = float(value)
        elif isinstance(value, int):
            self.fraction = Fraction(value, 1)
            self.value = float(value)
        else:
            self.value = float(value)
            if not math.isfinite(self.value):
                raise ValidationError("real phase parameter must be finite")
            self.fraction = None
        if self.fraction is not None:
            r = self.fraction.denominator
            c = np.arange(r)
            self._table = np.exp(2j * np.pi * c / r)
            # pin quarter-turn entries to their exact values so halves and
            # quarters multiply without residue (e.g. e(1/2) == -1 exactly)
            quarter = (4 * c) % r == 0
            self._table[quarter] = (1j) ** (4 * c[quarter] // r)
            self._table.setflags(write=False)
        else:
            self._table = None

    @classmethod
    def rational(cls, p: int, r: int) -> "PhaseParam":
        if r < 1:
            raise ValidationError("rational phase needs denominator >= 1")
        return cls(Fraction(p, r))

    @classmethod
    def real(cls, v: float) -> "PhaseParam":
        return cls(float(v))

    @classmethod
    def parse(cls, text: str) -> "PhaseParam":
        text = text.strip()
        try:
            if "/" in text:
                p, r = text.split("/")
                return cls.rational(int(p), int(r))
            if "." in text or "e" in text.lower():
                return cls.real(float(text))
            return cls(int(text))
        except ValueError as exc:
            raise ValidationError(f"bad phase parameter {text!r}") from exc

    @property
    def is_rational(self) -> bool:
        return self.fraction is not None

    @property
    def is_integer(self) -> bool:
        if self.fraction is not None:
            return self.fraction.denominator == 1
        return self.value == round(self.value)

    def spec(self) -> str:
        if self.fraction is not None:
            return f"{self.fraction.numerator}/{self.fraction.denominator}"
        return repr(self.value)

    @property
    def root_table(self) -> np.ndarray:
        """e(c/r) for c = 0..r-1 (exact-rational mode only); residue(a)
        indexes into this table."""
        if self._table is None:
            raise ValidationError("root_table needs an exact-rational phase")
        return self._table

    def residue(self, a: int) -> int:
        """Class of alpha * a modulo 1, as an index into the root table."""
        f = self.fraction
        if f is None:
            raise ValidationError("residue() needs an exact-rational phase")
        return (f.numerator * a) % f.denominator

    def phase(self, a: int) -> complex:
        """e(alpha * a) with e(x) = exp(2 pi i x)."""
        if self.fraction is not None:
            return complex(self._table[self.residue(a)])
        return cmath.exp(2j * math.pi * self.value * a)

    def phase_values(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.fraction is not None:
            f = self.fraction
            return self._table[(f.numerator * a) % f.denominator]
        return np.exp(2j * np.pi * self.value * a)

    def multiple_is_integral(self, d: int, tol: float = 1e-9) -> bool:
        """Whether alpha * d is an integer (so e(alpha * d) == 1)."""
        if self.fraction is not None:
            return (self.fraction.numerator * d) % self.fraction.denominator == 0
        x = self.value * d
        return abs(x - round(x)) <= tol

    def __repr__(self):
        return f"PhaseParam({self.spec()})"


def window_product_sum(x: int, p: int, q: int) -> int:
    """Sum over i >= 0 of the product of digits i..i+p of x.

    For q = 2 this counts the windows of p+1 consecutive ones.  For q > 2
    the digit products can exceed 1 and are summed verbatim.
    """
    _check_base(q)
    if x < 0 or p < 0:
        raise ValidationError("window_product_sum needs x >= 0 and p >= 0")
    ds = []
    n = x
    while n:
        n, d = divmod(n, q)
        ds.append(d)
    total = 0
    for i in range(len(ds) - p):
        prod = 1
        for j in range(i, i + p + 1):
            prod *= ds[j]
            if prod == 0:
                break
        total += prod
    return total


def a_p_xy(x: int, y: int, P: GrowthFunction, q: int) -> int:
    """Two-variable block count: window length P(y)+1 applied to x."""
    return window_product_sum(x, P(y), q)


def a_p(n: int, P: GrowthFunction, q: int) -> int:
    """Block count of n with window length P(T_q(n))+1; a_p(0) = 0."""
    if n == 0:
        return 0
    return a_p_xy(n, t_q(n, q), P, q)


def a_p_trunc(n: int, rho: int, P: GrowthFunction, q: int) -> int:
    """Truncated block count: digits reduced mod q**rho, window length kept.

    The window length is evaluated at the original T_q(n), never at
    T_q(n mod q**rho): truncation must not change how many digits each
    window spans.
    """
    if n == 0:
        return 0
    return window_product_sum(n % q**rho, P(t_q(n, q)), q)


def middle_digits(n: int, mu0: int, mu2: int, q: int) -> int:
    """The digit block of n between indices mu0 (incl.) and mu2 (excl.)."""
    _check_base(q)
    if not 0 <= mu0 <= mu2:
        raise ValidationError(f"need 0 <= mu0 <= mu2, got ({mu0}, {mu2})")
    if n < 0:
        raise ValidationError("middle_digits needs n >= 0")
    return (n // q**mu0) % q ** (mu2 - mu0)


def f_p_xy(x: int, y: int, alpha: PhaseParam, P: GrowthFunction, q: int) -> complex:
    return alpha.phase(a_p_xy(x, y, P, q))


def f_p(n: int, alpha: PhaseParam, P: GrowthFunction, q: int) -> complex:
    """e(alpha * a_p(n)); f_p(0) = 1 by convention."""
    return alpha.phase(a_p(n, P, q))


def f_p_trunc(n: int, rho: int, alpha: PhaseParam, P: GrowthFunction, q: int) -> complex:
    return alpha.phase(a_p_trunc(n, rho, P, q))


def f_p_trunc_xy(x: int, y: int, rho: int, alpha: PhaseParam,
                 P: GrowthFunction, q: int) -> complex:
    return alpha.phase(window_product_sum(x % q**rho, P(y), q))


def f_double_trunc_xy(x: int, y: int, mu1: int, mu2: int, alpha: PhaseParam,
                      P: GrowthFunction, q: int) -> complex:
    """mu2-truncated phase times the conjugate mu1-truncated phase.

    Sensitive only to the digits of x in the index band [mu1, mu2).
    """
    if mu1 > mu2:
        raise ValidationError(f"need mu1 <= mu2, got ({mu1}, {mu2})")
    p = P(y)
    a2 = window_product_sum(x % q**mu2, p, q)
    a1 = window_product_sum(x % q**mu1, p, q)
    return alpha.phase(a2 - a1)


def f_double_trunc(n: int, mu1: int, mu2: int, alpha: PhaseParam,
                   P: GrowthFunction, q: int) -> complex:
    if n == 0:
        return 1.0 + 0.0j
    return f_double_trunc_xy(n, t_q(n, q), mu1, mu2, alpha, P, q)


def phi_p(x: int, y: int, profile: TruncationProfile, alpha: PhaseParam,
          P: GrowthFunction, q: int) -> complex:
    """Band-restricted window phase of the shifted argument q**mu0 * x.

    Sums the windows starting at indices mu1-P(y) .. mu2-P(y) of the digits
    of q**mu0 * x.  The argument is reduced mod q**(mu2-mu0) first, which
    makes the stated periodicity hold by construction and agrees with the
    verbatim formula on the canonical range x < q**(mu2-mu0).
    """
    _check_base(q)
    p = P(y)
    mu0, mu1, mu2 = profile.mu0, profile.mu1, profile.mu2
    if mu1 - p < 0:
        raise ValidationError(
            f"phi_p needs mu1 - P(y) >= 0, got mu1={mu1}, P(y)={p}")
    x = x % q ** (mu2 - mu0)
    shifted = x * q**mu0
    total = 0
    for i in range(mu1 - p, mu2 - p + 1):
        prod = 1
        for j in range(i, i + p + 1):
            prod *= (shifted // q**j) % q
            if prod == 0:
                break
        total += prod
    return alpha.phase(total)
