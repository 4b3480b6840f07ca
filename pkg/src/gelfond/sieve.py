"""Arithmetic-function tables: von Mangoldt, Moebius, smallest prime factor.

Tables are built by a linear sieve (each composite crossed exactly once by
its smallest prime factor) compiled with numba.  The von Mangoldt values
are stored exactly as the prime base p of each prime power and materialized
to log p only at summation time, so no log-precision loss accumulates in
the tables themselves.

A completed table set is immutable and can be shared across threads.  An
optional binary cache avoids resieving between processes; see
:func:`cache_path` for the on-disk format.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numba import njit

from .errors import CapacityError, ValidationError

__all__ = ["ArithTables", "build_tables", "tau", "omega", "mertens"]

#: Largest x accepted without an explicit budget override; tables take
#: 9 bytes per entry, so this cap keeps a build near 1.2 GiB.
DEFAULT_BUDGET = 1 << 27
HARD_LIMIT = 1 << 31

CACHE_MAGIC = b"GELFSIEV"
CACHE_VERSION = 1


@njit(cache=True)
def _linear_sieve(x):
    spf = np.zeros(x + 1, dtype=np.int32)
    mu = np.zeros(x + 1, dtype=np.int8)
    primes = np.empty(x // 2 + 1, dtype=np.int32)
    count = 0
    if x >= 1:
        mu[1] = 1
        spf[1] = 1
    for i in range(2, x + 1):
        if spf[i] == 0:
            spf[i] = i
            mu[i] = -1
            primes[count] = i
            count += 1
        for j in range(count):
            p = primes[j]
            if p > spf[i] or i * p > x:
                break
            spf[i * p] = p
            if p < spf[i]:
                mu[i * p] = -mu[i]
            else:
                mu[i * p] = 0
    return spf, mu, primes[:count]


@njit(cache=True)
def _prime_power_bases(x, primes):
    # base[n] = p when n = p**k (k >= 1), else 0: the support of von Mangoldt.
    base = np.zeros(x + 1, dtype=np.int32)
    for j in range(len(primes)):
        p = np.int64(primes[j])
        pk = p
        while pk <= x:
            base[pk] = primes[j]
            pk *= p
    return base


@dataclass(frozen=True)
class ArithTables:
    """Sieve tables for 1..limit inclusive (index 0 unused)."""

    limit: int
    smallest_prime_factor: np.ndarray  # int32, spf[1] = 1
    moebius: np.ndarray                # int8 in {-1, 0, 1}
    mangoldt_base: np.ndarray          # int32: p if n is a power of p, else 0

    def mangoldt(self, n: int) -> float:
        """Lambda(n) = log p on prime powers p**k, 0 elsewhere."""
        p = int(self.mangoldt_base[n])
        return float(np.log(p)) if p else 0.0

    def mangoldt_values(self, n: np.ndarray) -> np.ndarray:
        base = self.mangoldt_base[n].astype(np.float64)
        return np.log(np.maximum(base, 1.0))

    def mu(self, n: int) -> int:
        return int(self.moebius[n])


def _cache_key(x: int) -> str:
    return f"sieve-v{CACHE_VERSION}-x{x}.bin"


def cache_path(x: int, cache_dir: str | None = None) -> Path | None:
    """Cache file location, controlled by the GELFOND_CACHE directory.

    File layout (all little-endian): 8-byte magic ``GELFSIEV``, u32 format
    version, u64 limit x, then three raw arrays of x+1 entries each in
    order: smallest_prime_factor (i32), moebius (i8), mangoldt_base (i32).
    """
    root = cache_dir if cache_dir is not None else os.environ.get("GELFOND_CACHE")
    if not root:
        return None
    return Path(root) / _cache_key(x)


def _write_cache(path: Path, tables: ArithTables) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<IQ", CACHE_VERSION, tables.limit))
        fh.write(tables.smallest_prime_factor.astype("<i4").tobytes())
        fh.write(tables.moebius.astype("<i1").tobytes())
        fh.write(tables.mangoldt_base.astype("<i4").tobytes())
    tmp.replace(path)


def _read_cache(path: Path, x: int) -> ArithTables | None:
    try:
        with open(path, "rb") as fh:
            if fh.read(8) != CACHE_MAGIC:
                return None
            version, limit = struct.unpack("<IQ", fh.read(12))
            if version != CACHE_VERSION or limit != x:
                return None
            count = x + 1
            spf = np.frombuffer(fh.read(4 * count), dtype="<i4").astype(np.int32)
            mu = np.frombuffer(fh.read(count), dtype="<i1").astype(np.int8)
            base = np.frombuffer(fh.read(4 * count), dtype="<i4").astype(np.int32)
    except (OSError, struct.error):
        return None
    if len(base) != count:
        return None
    return ArithTables(limit=x, smallest_prime_factor=spf, moebius=mu,
                       mangoldt_base=base)


def build_tables(x: int, budget: int = DEFAULT_BUDGET,
                 cache_dir: str | None = None) -> ArithTables:
    """Sieve moebius / von Mangoldt / spf tables covering 1..x."""
    if x < 1:
        raise ValidationError("build_tables needs x >= 1")
    if x > HARD_LIMIT:
        raise CapacityError(f"x={x} exceeds the 2^31 table limit")
    if x > budget:
        raise CapacityError(
            f"x={x} exceeds the table budget {budget}; raise the budget or "
            "process the range in segments")
    path = cache_path(x, cache_dir)
    if path is not None and path.exists():
        cached = _read_cache(path, x)
        if cached is not None:
            return cached
    spf, mu, primes = _linear_sieve(x)
    base = _prime_power_bases(x, primes)
    for arr in (spf, mu, base):
        arr.setflags(write=False)
    tables = ArithTables(limit=x, smallest_prime_factor=spf, moebius=mu,
                         mangoldt_base=base)
    if path is not None:
        _write_cache(path, tables)
    return tables


def _factorization(n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise ValidationError("factorization needs n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def tau(n: int) -> int:
    """Number of divisors of n."""
    result = 1
    for _, e in _factorization(n):
        result *= e + 1
    return result


def omega(n: int) -> int:
    """Number of distinct prime factors of n."""
    return len(_factorization(n))


def mertens(x: int, tables: ArithTables | None = None) -> int:
    """Sum of moebius(n) for n <= x."""
    if tables is None or tables.limit < x:
        tables = build_tables(x)
    return int(tables.moebius[1:x + 1].sum(dtype=np.int64))
