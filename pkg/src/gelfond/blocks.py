"""Vectorized counterparts of the scalar digit primitives.

These operate on int64 numpy arrays and are the workhorses behind the
large exponential sums: counting digit-product windows for millions of
integers at once.  Base 2 uses a shift-and-AND popcount path; general
bases build a digit matrix in bounded chunks.
"""

from __future__ import annotations

import numpy as np

from .digits import _check_base
from .errors import ValidationError
from .growth import GrowthFunction

__all__ = ["powers_of", "t_values", "window_counts", "a_p_values",
           "a_p_trunc_values"]

_CHUNK = 1 << 18


def powers_of(q: int, top: int) -> np.ndarray:
    """Powers q**0 .. q**m as int64, with q**m the first power > top."""
    _check_base(q)
    pws = [1]
    while pws[-1] <= top:
        pws.append(pws[-1] * q)
    return np.asarray(pws, dtype=np.int64)


def t_values(n: np.ndarray, q: int) -> np.ndarray:
    """T_q for each entry of a positive int64 array."""
    n = np.asarray(n, dtype=np.int64)
    if n.size and int(n.min()) <= 0:
        raise ValidationError("t_values needs strictly positive entries")
    pws = powers_of(q, int(n.max()) if n.size else 1)
    return np.searchsorted(pws, n, side="right").astype(np.int64) - 1


def _window_counts_bits(n: np.ndarray, p: int) -> np.ndarray:
    m = n.copy()
    for j in range(1, p + 1):
        m &= n >> j
    return np.bitwise_count(m).astype(np.int64)


def _window_counts_digits(n: np.ndarray, p: int, q: int) -> np.ndarray:
    out = np.empty(n.shape, dtype=np.int64)
    top = int(n.max()) if n.size else 0
    pws = powers_of(q, top)
    ndig = len(pws) - 1
    for start in range(0, len(n), _CHUNK):
        chunk = n[start:start + _CHUNK]
        digits = (chunk[:, None] // pws[None, :ndig]) % q
        acc = np.zeros(len(chunk), dtype=np.int64)
        for i in range(max(ndig - p, 0)):
            prod = digits[:, i].copy()
            for j in range(1, p + 1):
                prod *= digits[:, i + j]
            acc += prod
        out[start:start + _CHUNK] = acc
    return out


def window_counts(n: np.ndarray, p: int, q: int) -> np.ndarray:
    """window_product_sum with fixed window parameter p, elementwise."""
    _check_base(q)
    if p < 0:
        raise ValidationError("window parameter must be >= 0")
    n = np.asarray(n, dtype=np.int64)
    if n.size and int(n.min()) < 0:
        raise ValidationError("window_counts needs nonnegative entries")
    if q == 2:
        return _window_counts_bits(n, p)
    return _window_counts_digits(n, p, q)


def _grouped_counts(n: np.ndarray, arg: np.ndarray, P: GrowthFunction,
                    q: int) -> np.ndarray:
    """Window counts of arg[i] with window parameter P(T_q(n[i]))."""
    out = np.zeros(n.shape, dtype=np.int64)
    pos = n > 0
    if not pos.any():
        return out
    ts = t_values(n[pos], q)
    ps = P.values_at(ts)
    arg_pos = arg[pos]
    res = np.empty(arg_pos.shape, dtype=np.int64)
    for p in np.unique(ps):
        sel = ps == p
        res[sel] = window_counts(arg_pos[sel], int(p), q)
    out[pos] = res
    return out


def a_p_values(n: np.ndarray, P: GrowthFunction, q: int) -> np.ndarray:
    """a_P elementwise; entries equal to 0 map to 0."""
    n = np.asarray(n, dtype=np.int64)
    return _grouped_counts(n, n, P, q)


def a_p_trunc_values(n: np.ndarray, rho: int, P: GrowthFunction,
                     q: int) -> np.ndarray:
    """rho-truncated a_P elementwise; window parameter from the full n."""
    if rho < 0:
        raise ValidationError("rho must be >= 0")
    n = np.asarray(n, dtype=np.int64)
    modulus = q**rho
    if modulus > np.iinfo(np.int64).max:
        return a_p_values(n, P, q)
    return _grouped_counts(n, n % modulus, P, q)
