"""Decay exponents, admissibility scan, and the headline right-hand bound.

The central quantity is the Fourier-decay exponent gamma, built from the
term 8*sin(pi*||alpha||/4)**2 where ||alpha|| is the distance from alpha to
the nearest integer.  The headline bound combines it with the base-only
constant c1(q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .digits import PhaseParam, t_q
from .errors import DomainError, ValidationError
from .growth import GrowthFunction
from .sieve import omega, tau

__all__ = ["BoundReport", "AdmissibilityReport", "norm_to_int", "sin_term",
           "gamma_p", "gamma_lemma", "c1", "theorem_rhs", "admissible"]


def norm_to_int(alpha: PhaseParam | float) -> float:
    """Distance from alpha to the nearest integer, in [0, 1/2]."""
    if isinstance(alpha, PhaseParam):
        if alpha.fraction is not None:
            f = alpha.fraction
            r = f.denominator
            a = f.numerator % r
            return min(a, r - a) / r
        value = alpha.value
    else:
        value = float(alpha)
    frac = value - math.floor(value)
    return min(frac, 1.0 - frac)


def sin_term(alpha: PhaseParam | float) -> float:
    """8 * sin(pi * ||alpha|| / 4)**2, the decay driver; 0 for integer alpha."""
    nrm = norm_to_int(alpha)
    if nrm == 0.0:
        return 0.0
    return 8.0 * math.sin(math.pi * nrm / 4.0) ** 2


def _log_argument(p_val: int, q: int, alpha) -> float:
    """q**P - sin_term, guarded to stay positive."""
    if p_val < 1:
        raise ValidationError(f"need P value >= 1, got {p_val}")
    s = sin_term(alpha)
    arg = float(q**p_val) - s
    if arg <= 0.0:
        raise DomainError(
            f"log argument q**P - 8*sin^2 <= 0 for q={q}, P={p_val}, "
            f"||alpha||={norm_to_int(alpha)}")
    return arg


def gamma_p(l: float, k: int, q: int, alpha: PhaseParam | float,
            P: GrowthFunction) -> float:
    """l * (1 - log(q**P(k) - 8 sin^2)/(P(k) log q)); 0 for integer alpha."""
    if l < 0:
        raise ValidationError("gamma_p needs l >= 0")
    p_val = P(k)
    if sin_term(alpha) == 0.0:
        _log_argument(p_val, q, alpha)  # still validate P(k) >= 1
        return 0.0
    arg = _log_argument(p_val, q, alpha)
    return l * (1.0 - math.log(arg) / (p_val * math.log(q)))


def gamma_lemma(l: int, kappa: int, q: int, alpha: PhaseParam | float,
                P: GrowthFunction) -> float:
    """l * log(q**P(kappa+l) - 8 sin^2)/(P(kappa+l) log q); equals l for
    integer alpha."""
    if l < 0 or kappa < 0:
        raise ValidationError("gamma_lemma needs l, kappa >= 0")
    p_val = P(kappa + l)
    if p_val > l:
        raise ValidationError(
            f"gamma_lemma hypothesis P(kappa+l) <= l violated: "
            f"P({kappa + l})={p_val} > l={l}")
    if sin_term(alpha) == 0.0:
        _log_argument(p_val, q, alpha)
        return float(l)
    arg = _log_argument(p_val, q, alpha)
    return l * math.log(arg) / (p_val * math.log(q))


def c1(q: int) -> float:
    """Base-only constant of the headline bound.

    q**(13/64) * max((log q)**3, tau(q)**(1/4)) * (log q)**(-3 - omega(q)/4).
    The exponent 13/64 is sometimes written 26/128; they are identical.
    """
    if q < 2:
        raise ValidationError("c1 needs q >= 2")
    lq = math.log(q)
    return (q ** (13.0 / 64.0) * max(lq**3, tau(q) ** 0.25)
            * lq ** (-3.0 - omega(q) / 4.0))


@dataclass(frozen=True)
class BoundReport:
    x: int
    q: int
    alpha: str
    gamma_value: float
    rhs: float
    rhs_over_x: float


def theorem_rhs(x: int, q: int, alpha: PhaseParam, P: GrowthFunction) -> BoundReport:
    """The headline right-hand side, without its unspecified absolute constant:

        c1(q) * (log x)**(3 + omega(q)/4) * x
              * q**(-(1/64) * gamma_p(ell/120, ell))

    with ell the base-q digit-length index of x.  Because the absolute
    constant is unknown, callers compare trends (rhs_over_x decay), never
    absolute domination.
    """
    if x < q:
        raise ValidationError(f"theorem_rhs needs x >= q, got x={x}, q={q}")
    ell = t_q(x, q)
    gamma = gamma_p(ell / 120.0, ell, q, alpha, P)
    rhs = (c1(q) * math.log(x) ** (3.0 + omega(q) / 4.0) * x
           * q ** (-gamma / 64.0))
    return BoundReport(x=x, q=q, alpha=alpha.spec(), gamma_value=gamma,
                       rhs=rhs, rhs_over_x=rhs / x)


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    first_failure: int | None
    threshold: int | None          # smallest x0 with no failure at x >= x0
    failure_count: int
    vacuous: bool                  # P identically 0 on the scanned range
    growth_ok: bool | None         # P(x) <= c*log(x) check, if c was given
    x_max: int


def admissible(P: GrowthFunction, q: int, alpha: PhaseParam, x_max: int,
               growth_c: float | None = None) -> AdmissibilityReport:
    """Scan P(2x)*q**P(x)*P(x)*log(q) <= x/(640*48) * 8 sin^2 over integer
    x in [2, x_max].

    Integer scanning stands in for the real-variable statement: both sides
    are monotone between consecutive integers at desk scale.  A growth
    constant c < 1/log q may be supplied to also check P(x) <= c*log(x).
    """
    if x_max < 2:
        raise ValidationError("admissible needs x_max >= 2")
    if q < 2:
        raise ValidationError("admissible needs q >= 2")
    xs = np.arange(2, x_max + 1, dtype=np.int64)
    p_x = P.values_at(xs)
    p_2x = P.values_at(2 * xs)
    vacuous = bool(p_x.max(initial=0) == 0 and p_2x.max(initial=0) == 0)
    lhs = p_2x.astype(np.float64) * np.power(float(q), p_x) \
        * p_x.astype(np.float64) * math.log(q)
    rhs = xs / (640.0 * 48.0) * sin_term(alpha)
    bad = lhs > rhs
    failure_count = int(bad.sum())
    if failure_count:
        first_failure = int(xs[bad][0])
        last_failure = int(xs[bad][-1])
        threshold = last_failure + 1 if last_failure < x_max else None
    else:
        first_failure = None
        threshold = 2
    growth_ok: bool | None = None
    if growth_c is not None:
        if growth_c >= 1.0 / math.log(q):
            raise ValidationError("growth constant must satisfy c < 1/log q")
        growth_ok = bool(np.all(p_x <= growth_c * np.log(xs)))
    return AdmissibilityReport(ok=failure_count == 0,
                               first_failure=first_failure,
                               threshold=threshold,
                               failure_count=failure_count,
                               vacuous=vacuous, growth_ok=growth_ok,
                               x_max=x_max)
