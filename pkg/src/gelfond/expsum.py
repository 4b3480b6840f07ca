"""Weighted exponential sums, type I / type II sums, and Fourier tables.

Two accumulation strategies are provided for the headline weighted sums:

* ``bucketed`` — exact: requires theta = 0 and an exact-rational phase
  parameter; integer counts per residue class of the block count modulo the
  denominator are combined with one root of unity each at the very end.
* ``compensated`` — general: numpy pairwise reduction inside fixed-size
  chunks in ascending order, chunk partials combined by exact float
  summation; serial and threaded runs are bit-identical.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .blocks import a_p_values, window_counts
from .bounds import gamma_lemma, gamma_p
from .digits import PhaseParam, TruncationProfile, _check_base
from .errors import CapacityError, ModeError, ValidationError
from .growth import GrowthFunction
from .sieve import ArithTables, build_tables

__all__ = ["SumQuery", "SumReport", "FourierTable", "weighted_sum",
           "type_I_sum", "type_II_sum", "fourier_table",
           "fourier_table_direct", "fourier_lemma_check",
           "double_trunc_fourier_mass"]

_CHUNK = 1 << 20
_MAX_TABLE_BITS = 24


@dataclass(frozen=True)
class SumQuery:
    weight: str                      # "mangoldt" | "moebius" | "unit"
    x: int
    alpha: PhaseParam
    P: GrowthFunction
    q: int
    theta: float = 0.0
    accumulation: str = "bucketed"   # "bucketed" | "compensated"

    def __post_init__(self):
        if self.weight not in ("mangoldt", "moebius", "unit"):
            raise ValidationError(f"unknown weight {self.weight!r}")
        if self.accumulation not in ("bucketed", "compensated"):
            raise ValidationError(
                f"unknown accumulation {self.accumulation!r}")
        if self.x < 2:
            raise ValidationError("weighted sum needs x >= 2")
        _check_base(self.q)
        if self.accumulation == "bucketed":
            if self.theta != 0.0:
                raise ModeError("bucketed accumulation requires theta = 0")
            if not self.alpha.is_rational:
                raise ModeError(
                    "bucketed accumulation requires an exact-rational alpha")


@dataclass(frozen=True)
class SumReport:
    value: complex
    modulus: float
    normalized: float
    term_count: int
    elapsed: float
    rhs_over_x: float | None = None
    extra: dict = field(default_factory=dict)

    def to_json_dict(self, query: SumQuery | None = None) -> dict:
        out = {
            "re": self.value.real, "im": self.value.imag,
            "modulus": self.modulus, "normalized": self.normalized,
            "term_count": self.term_count, "seconds": self.elapsed,
            "rhs_over_x": self.rhs_over_x,
        }
        if query is not None:
            out.update(weight=query.weight, x=query.x, theta=query.theta,
                       alpha=query.alpha.spec(), P=query.P.spec(), q=query.q)
        out.update(self.extra)
        return out


def _weights_for(query: SumQuery, tables: ArithTables | None,
                 n: np.ndarray) -> np.ndarray:
    if query.weight == "unit":
        return np.ones(len(n), dtype=np.int64)
    if tables is None or tables.limit < query.x:
        raise ValidationError(
            f"weight {query.weight!r} needs sieve tables covering x={query.x}")
    if query.weight == "moebius":
        return tables.moebius[n].astype(np.int64)
    return tables.mangoldt_values(n)


def _chunk_ranges(x: int):
    for lo in range(1, x + 1, _CHUNK):
        yield lo, min(lo + _CHUNK - 1, x)


def weighted_sum(query: SumQuery, tables: ArithTables | None = None,
                 threads: int = 1) -> SumReport:
    """Sum of weight(n) * e(alpha * a_P(n)) * e(theta * n) over n <= x."""
    t0 = time.perf_counter()
    if query.weight != "unit" and tables is None:
        tables = build_tables(query.x)
    r = query.alpha.fraction.denominator if query.alpha.is_rational else 0

    # Bucketed mode: integer (or float for the prime-power weight) totals per
    # residue class of a_P modulo the phase denominator.
    def run_bucketed():
        f = query.alpha.fraction
        buckets_int = np.zeros(r, dtype=np.int64)
        buckets_float = np.zeros(r, dtype=np.float64)
        float_weights = query.weight == "mangoldt"

        def one(bounds):
            lo, hi = bounds
            n = np.arange(lo, hi + 1, dtype=np.int64)
            cls = (f.numerator * a_p_values(n, query.P, query.q)) % f.denominator
            w = _weights_for(query, tables, n)
            if float_weights:
                return np.bincount(cls, weights=w, minlength=r)
            pos = np.bincount(cls[w == 1], minlength=r)
            neg = np.bincount(cls[w == -1], minlength=r)
            return pos.astype(np.int64) - neg.astype(np.int64)

        chunks = list(_chunk_ranges(query.x))
        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(one, chunks))
        else:
            parts = [one(c) for c in chunks]
        for part in parts:  # deterministic ascending merge
            if float_weights:
                buckets_float += part
            else:
                buckets_int += part
        # buckets are indexed by the residue class c of numerator*a_P mod r,
        # so each combines with the plain root of unity e(c/r)
        roots = query.alpha.root_table
        buckets = buckets_float if float_weights else buckets_int
        value = complex(np.dot(buckets, roots))
        extra = {"buckets": buckets.tolist()}
        return value, extra

    def run_compensated():
        def one(bounds):
            lo, hi = bounds
            n = np.arange(lo, hi + 1, dtype=np.int64)
            terms = query.alpha.phase_values(
                a_p_values(n, query.P, query.q)).astype(np.complex128)
            if query.theta != 0.0:
                terms *= np.exp(2j * np.pi * query.theta * n)
            w = _weights_for(query, tables, n)
            terms *= w
            return complex(np.sum(terms))  # numpy pairwise reduction

        chunks = list(_chunk_ranges(query.x))
        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(one, chunks))
        else:
            parts = [one(c) for c in chunks]
        value = complex(math.fsum(p.real for p in parts),
                        math.fsum(p.imag for p in parts))
        return value, {}

    if query.accumulation == "bucketed":
        value, extra = run_bucketed()
    else:
        value, extra = run_compensated()
    elapsed = time.perf_counter() - t0
    modulus = abs(value)
    return SumReport(value=value, modulus=modulus,
                     normalized=modulus / query.x, term_count=query.x,
                     elapsed=elapsed, extra=extra)


def type_I_sum(M: int, N: int, interval: tuple[int, int], theta: float,
               alpha: PhaseParam, P: GrowthFunction, q: int) -> dict:
    """S_I = sum over M/q < m <= M of |sum over n with mn in the interval
    of f_P(mn) e(theta mn)|.

    The interval is inclusive on both ends and clipped to [1, M*N].
    Returns the real value plus a flag for the side condition
    M <= (M*N)**(1/3) (reported, never enforced).
    """
    _check_base(q)
    if not 1 <= M <= N:
        raise ValidationError(f"type I sum needs 1 <= M <= N, got ({M}, {N})")
    lo, hi = interval
    lo, hi = max(int(lo), 1), min(int(hi), M * N)
    total = 0.0
    for m in range(M // q + 1, M + 1):
        n_lo = (lo + m - 1) // m
        n_hi = hi // m
        if n_hi < n_lo:
            continue
        mn = m * np.arange(n_lo, n_hi + 1, dtype=np.int64)
        terms = alpha.phase_values(a_p_values(mn, P, q))
        if theta != 0.0:
            terms = terms * np.exp(2j * np.pi * theta * mn)
        total += abs(complex(np.sum(terms)))
    return {"value": total, "M": M, "N": N, "interval": [lo, hi],
            "m_constraint_ok": M**3 <= M * N}


def type_II_sum(M: int, N: int, a, b, theta: float, alpha: PhaseParam,
                P: GrowthFunction, q: int) -> dict:
    """Bilinear sum of a_m b_n f_P(mn) e(theta mn) over m in (M/q, M],
    n in (N/q, N].

    ``a`` maps m to a coefficient (callable or sequence indexed from M//q+1);
    likewise ``b`` for n.  All coefficients must have modulus <= 1.
    """
    _check_base(q)
    if M < 1 or N < 1:
        raise ValidationError("type II sum needs M, N >= 1")
    ms = np.arange(M // q + 1, M + 1, dtype=np.int64)
    ns = np.arange(N // q + 1, N + 1, dtype=np.int64)

    def coeffs(spec, idx):
        if callable(spec):
            vals = np.asarray([spec(int(i)) for i in idx], dtype=np.complex128)
        else:
            vals = np.asarray(list(spec), dtype=np.complex128)
            if len(vals) != len(idx):
                raise ValidationError(
                    f"coefficient sequence length {len(vals)} != range "
                    f"length {len(idx)}")
        if np.any(np.abs(vals) > 1.0 + 1e-12):
            raise ValidationError("coefficients must satisfy |c| <= 1")
        return vals

    am = coeffs(a, ms)
    bn = coeffs(b, ns)
    if len(ms) * len(ns) > 1 << 26:
        raise CapacityError("type II grid exceeds the 2^26 pair budget")
    mn = (ms[:, None] * ns[None, :]).ravel()
    terms = alpha.phase_values(a_p_values(mn, P, q))
    if theta != 0.0:
        terms = terms * np.exp(2j * np.pi * theta * mn)
    value = complex(np.sum((am[:, None] * bn[None, :]).ravel() * terms))
    mu_len = math.log(M) / math.log(q)
    nu_len = math.log(N) / math.log(q)
    balanced = (mu_len + nu_len) / 4.0 <= mu_len <= nu_len
    return {"value": value, "M": M, "N": N, "balanced": balanced}


@dataclass(frozen=True)
class FourierTable:
    """Normalized DFT of u -> f_P(u * q**kappa, k) over u < q**lam."""

    kappa: int
    lam: int
    k: int
    q: int
    entries: np.ndarray        # complex, length q**lam: G(h)
    signal: np.ndarray         # the phase signal, kept for offset queries

    def at_offset(self, t: float) -> np.ndarray:
        """G(h + t) for all integer h: DFT at fractional frequency offset."""
        size = len(self.signal)
        if t == 0.0:
            return self.entries
        u = np.arange(size)
        shifted = self.signal * np.exp(-2j * np.pi * u * t / size)
        return np.fft.fft(shifted) / size

    def parseval_mass(self, t: float = 0.0) -> float:
        g = self.at_offset(t)
        return float(np.sum(np.abs(g) ** 2))


def _fourier_signal(kappa: int, lam: int, k: int, alpha: PhaseParam,
                    P: GrowthFunction, q: int) -> np.ndarray:
    _check_base(q)
    if lam < 0 or kappa < 0:
        raise ValidationError("fourier table needs lam, kappa >= 0")
    if lam * math.log2(q) > _MAX_TABLE_BITS:
        raise CapacityError(
            f"fourier table of size q**lam = {q}**{lam} exceeds the "
            f"2**{_MAX_TABLE_BITS} budget")
    u = np.arange(q**lam, dtype=np.int64)
    counts = window_counts(u * q**kappa, P(k), q)
    return alpha.phase_values(counts).astype(np.complex128)


def fourier_table(kappa: int, lam: int, k: int, alpha: PhaseParam,
                  P: GrowthFunction, q: int) -> FourierTable:
    signal = _fourier_signal(kappa, lam, k, alpha, P, q)
    entries = np.fft.fft(signal) / len(signal)
    return FourierTable(kappa=kappa, lam=lam, k=k, q=q, entries=entries,
                        signal=signal)


def fourier_table_direct(kappa: int, lam: int, k: int, alpha: PhaseParam,
                         P: GrowthFunction, q: int) -> FourierTable:
    """Quadratic-time DFT of the same signal; independent of the FFT path."""
    signal = _fourier_signal(kappa, lam, k, alpha, P, q)
    size = len(signal)
    if size > 1 << 13:
        raise CapacityError("direct DFT limited to 2^13 points")
    u = np.arange(size)
    kernel = np.exp(-2j * np.pi * np.outer(u, u) / size)
    entries = kernel @ signal / size
    return FourierTable(kappa=kappa, lam=lam, k=k, q=q, entries=entries,
                        signal=signal)


def fourier_lemma_check(l: int, kappa: int, t_grid, alpha: PhaseParam,
                        P: GrowthFunction, q: int) -> dict:
    """Max over the t grid of |sum over q**(l-1) <= u < q**l of
    f_P(u q**kappa) e(-u t)| divided by q**gamma_lemma(l, kappa).

    t values are phases per unit u (one full turn per integer t).  The
    uniform-in-t statement cannot be exhausted; grids plus random offsets
    are a sampling check only.
    """
    if l < 1:
        raise ValidationError("fourier lemma check needs l >= 1")
    gamma = gamma_lemma(l, kappa, q, alpha, P)
    u = np.arange(q ** (l - 1), q**l, dtype=np.int64)
    n = u * q**kappa
    signal = alpha.phase_values(a_p_values(n, P, q))
    ts = np.asarray(list(t_grid), dtype=np.float64)
    bound = float(q) ** gamma
    max_ratio = 0.0
    argmax_t = 0.0
    for start in range(0, len(ts), 512):
        chunk = ts[start:start + 512]
        kernel = np.exp(-2j * np.pi * np.outer(chunk, u))
        vals = np.abs(kernel @ signal) / bound
        i = int(np.argmax(vals))
        if vals[i] > max_ratio:
            max_ratio = float(vals[i])
            argmax_t = float(chunk[i])
    return {"max_ratio": max_ratio, "ok": max_ratio <= 1.0 + 1e-9,
            "gamma": gamma, "bound": bound, "argmax_t": argmax_t,
            "grid_size": len(ts)}


def double_trunc_fourier_mass(profile: TruncationProfile, lam: int, k: int,
                              alpha: PhaseParam, P: GrowthFunction, q: int,
                              t: float = 0.0) -> dict:
    """Partial Fourier mass of the doubly truncated phase.

    Builds the table G over u < q**(mu2-mu0) for the signal
    u -> band-truncated phase of u*q**mu0, then sums |G(h+t)|^2 over
    h < q**(mu2-mu0-lam).  The hypotheses
    (1/3)(mu2-mu0) <= lam <= (4/5)(mu2-mu0) and P(k) <= (1/3)(mu1-mu0)
    are reported as flags, not enforced.  The companion ``rhs_shape`` is
    the lemma's right-hand side without its absolute constant.
    """
    mu0, mu1, mu2 = profile.mu0, profile.mu1, profile.mu2
    width = mu2 - mu0
    if not 0 <= lam <= width:
        raise ValidationError(f"need 0 <= lam <= mu2-mu0, got lam={lam}")
    if width * math.log2(q) > _MAX_TABLE_BITS:
        raise CapacityError("double truncation table exceeds the size budget")
    p_val = P(k)
    u = np.arange(q**width, dtype=np.int64)
    n = u * q**mu0
    a2 = window_counts(n % q**mu2, p_val, q)
    a1 = window_counts(n % q**mu1, p_val, q)
    signal = alpha.phase_values(a2 - a1).astype(np.complex128)
    size = len(signal)
    if t != 0.0:
        signal = signal * np.exp(-2j * np.pi * np.arange(size) * t / size)
    g = np.fft.fft(signal) / size
    h_count = q ** (width - lam)
    mass = float(np.sum(np.abs(g[:h_count]) ** 2))
    gamma = gamma_p(lam, k, q, alpha, P) if p_val >= 1 else 0.0
    rhs_shape = (float(q) ** (0.5 * (mu1 - mu0 - gamma) + 0.75 * p_val)
                 * math.log(float(q) ** max(mu2 - mu1, 1)) ** 2)
    return {
        "mass": mass, "rhs_shape": rhs_shape, "gamma": gamma,
        "h_count": h_count, "t": t,
        "lam_window_ok": width / 3.0 <= lam <= 0.8 * width,
        "p_window_ok": p_val <= (mu1 - mu0) / 3.0,
    }
