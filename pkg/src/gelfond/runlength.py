"""Run-length statistics and parity counts of all-ones windows.

Two window-length conventions coexist in this area and are kept explicit:
the parity counts E_k / I_k use windows of length k+1 (matching the
block-counting function's P+1 digits), while the signed weighted sum uses
windows of length exactly k (the monomial X_i ... X_{i+k-1}).  Every
operation documents which one it uses.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .blocks import window_counts
from .errors import ValidationError

__all__ = ["ParityCounts", "RunProfile", "exact_parity_counts",
           "parity_counts_brute", "proposition_check", "random_word",
           "maxrun_tail", "weighted_parity_sum"]


@dataclass(frozen=True)
class ParityCounts:
    N: int
    k: int
    even_count: int
    odd_count: int

    def __post_init__(self):
        if self.even_count + self.odd_count != 1 << self.N:
            raise ValidationError("parity counts must sum to 2**N")


@dataclass(frozen=True)
class RunProfile:
    """Run decomposition of a binary word: maximal blocks of equal symbols."""

    word_length: int
    runs: tuple[tuple[int, int], ...]   # (digit, length), in word order

    def __post_init__(self):
        if sum(length for _, length in self.runs) != self.word_length:
            raise ValidationError("run lengths must sum to the word length")
        for (d1, _), (d2, _) in zip(self.runs, self.runs[1:]):
            if d1 == d2:
                raise ValidationError("consecutive runs must alternate digits")

    @property
    def run_count(self) -> int:
        return len(self.runs)

    @property
    def max_run(self) -> int:
        return max(length for _, length in self.runs)

    def word(self) -> str:
        return "".join(str(d) * length for d, length in self.runs)


def exact_parity_counts(N: int, k: int) -> ParityCounts:
    """E and I: how many n < 2**N have an even / odd number of all-ones
    windows of length k+1 among their N low bits.

    Digit DP with state (current trailing-ones run capped at k+1, parity):
    appending a 1 toggles the parity exactly when it completes or extends
    a run of length >= k+1.
    """
    if N < 0 or N > 60:
        raise ValidationError("exact_parity_counts supports 0 <= N <= 60")
    if k < 1:
        raise ValidationError("need k >= 1")
    L = k + 1
    # counts[r][p] = number of prefixes with trailing-ones run min(r, L)
    # and window parity p.
    counts = np.zeros((L + 1, 2), dtype=object)
    counts[0][0] = 1
    for _ in range(N):
        nxt = np.zeros((L + 1, 2), dtype=object)
        for r in range(L + 1):
            for p in range(2):
                c = counts[r][p]
                if not c:
                    continue
                nxt[0][p] += c                       # append 0: run resets
                r2 = min(r + 1, L)
                p2 = p ^ (1 if r + 1 >= L else 0)    # append 1
                nxt[r2][p2] += c
        counts = nxt
    even = int(sum(counts[r][0] for r in range(L + 1)))
    odd = int(sum(counts[r][1] for r in range(L + 1)))
    return ParityCounts(N=N, k=k, even_count=even, odd_count=odd)


def parity_counts_brute(N: int, k: int) -> ParityCounts:
    """Exhaustive scan over all n < 2**N; independent of the DP."""
    if N > 26:
        raise ValidationError("brute-force parity limited to N <= 26")
    if k < 1:
        raise ValidationError("need k >= 1")
    n = np.arange(1 << N, dtype=np.int64)
    # window parameter k gives window length k+1
    odd = int((window_counts(n, k, 2) & 1).sum())
    return ParityCounts(N=N, k=k, even_count=(1 << N) - odd, odd_count=odd)


def proposition_check(N: int, A: float, slack: float = 3.0) -> dict:
    """Check E_k(2**N)/2**N >= 1 - slack * N**(1-A) at k = ceil(A*log2(N)).

    The default slack 3 absorbs the finite-N lower-order term; it is a
    testing convention, not a claim of the underlying statement.
    """
    if A <= 1:
        raise ValidationError("need A > 1")
    if N < 2:
        raise ValidationError("need N >= 2")
    k = math.ceil(A * math.log2(N))
    pc = exact_parity_counts(N, k)
    lhs = pc.even_count / (1 << N)
    rhs = 1.0 - slack * N ** (1.0 - A)
    return {"ok": lhs >= rhs, "lhs": lhs, "rhs": rhs, "k": k,
            "even_count": pc.even_count}


def random_word(N: int, seed: int) -> RunProfile:
    """Word built from alternating runs with i.i.d. geometric(1/2) lengths
    (support 1, 2, ...), the first digit a fair coin flip, and the last run
    clipped so the lengths sum to N.

    Geometric lengths come from the inverse CDF applied to a deterministic
    64-bit generator; identical seeds give identical words.  This law
    coincides with N independent fair bits, which the Monte Carlo tail
    estimator exploits.
    """
    if N < 1:
        raise ValidationError("need N >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    digit = int(rng.integers(0, 2))
    runs = []
    remaining = N
    while remaining > 0:
        u = rng.random()
        length = int(math.floor(-math.log2(1.0 - u))) + 1  # inverse CDF
        length = min(length, remaining)
        runs.append((digit, length))
        remaining -= length
        digit ^= 1
    return RunProfile(word_length=N, runs=tuple(runs))


def maxrun_tail(N: int, A: float, samples: int, seed: int,
                threads: int = 1) -> dict:
    """Monte Carlo estimate of P(max run >= A * log2(N)) against the bound
    2 * N**(1-A).

    Words are sampled as uniform fair bits — exactly the law of the
    geometric-run construction — and the event "some run of length
    ceil(A*log2 N)" is detected by window ANDs on the bit matrix and its
    complement.  Sharded with per-shard seeds derived from the master seed.
    """
    if not 1 < A < 2:
        raise ValidationError("need 1 < A < 2")
    if samples < 10**4:
        raise ValidationError("need samples >= 10**4")
    threshold = A * math.log2(N)
    length = math.ceil(threshold)
    bound = 2.0 * N ** (1.0 - A)
    if length > N:
        return {"empirical_p": 0.0, "bound": bound, "ok": True,
                "threshold": threshold, "samples": samples}
    shard = 1 << 12
    seeds = np.random.SeedSequence(seed).spawn((samples + shard - 1) // shard)
    sizes = [min(shard, samples - i * shard) for i in range(len(seeds))]

    def one(args) -> int:
        ss, count = args
        rng = np.random.Generator(np.random.PCG64(ss))
        bits = rng.integers(0, 2, size=(count, N), dtype=np.uint8)
        has = np.zeros(count, dtype=bool)
        for word in (bits, 1 - bits):
            m = word[:, :N - length + 1].copy()
            for j in range(1, length):
                m &= word[:, j:j + N - length + 1]
            has |= m.any(axis=1)
        return int(has.sum())

    if threads > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(one, zip(seeds, sizes)))
    else:
        hits = sum(one(args) for args in zip(seeds, sizes))
    empirical = hits / samples
    sigma = math.sqrt(max(empirical * (1 - empirical), 1e-12) / samples)
    return {"empirical_p": empirical, "bound": bound,
            "ok": empirical <= bound + 3 * sigma, "sigma": sigma,
            "threshold": threshold, "samples": samples}


def weighted_parity_sum(f: np.ndarray, N: int, k: int,
                        A: float | None = None) -> dict:
    """Signed versus plain weighted sums over n < 2**N.

    The sign is (-1)**(number of all-ones windows of length exactly k) —
    window length k, not k+1, per the defining monomial of k consecutive
    symbols.  With A supplied, |epsilon| is reported against
    2**(N+1) * N**(1-A) * sup|f|.
    """
    if k < 1:
        raise ValidationError("need k >= 1")
    f = np.asarray(f)
    if len(f) < (1 << N):
        raise ValidationError(
            f"weight table of length {len(f)} does not cover [0, 2**{N})")
    f = f[:1 << N]
    n = np.arange(1 << N, dtype=np.int64)
    # window length k means window parameter k-1
    parity = window_counts(n, k - 1, 2) & 1
    signs = 1.0 - 2.0 * parity
    sum_plain = float(np.sum(f, dtype=np.float64))
    sum_signed = float(np.sum(f * signs, dtype=np.float64))
    out = {"sum_with_sign": sum_signed, "sum_plain": sum_plain,
           "epsilon": sum_signed - sum_plain, "N": N, "k": k}
    if A is not None:
        sup = float(np.max(np.abs(f))) if len(f) else 0.0
        out["bound"] = 2.0 ** (N + 1) * N ** (1.0 - A) * sup
    return out
