"""Acceptance suite: eleven self-contained checks over the whole library.

Each criterion function returns ``{"num", "name", "ok", "detail",
"seconds"}`` and never raises on a mathematical failure — ``ok`` carries
the verdict.  ``run_suite`` prints one line per criterion.

The naive evaluators in this module are deliberately written against the
scalar digit definitions (numba loops, no shared code with the vectorized
kernels) so that agreement between the two is meaningful evidence.
"""

from __future__ import annotations

import math
import time

import numpy as np
from numba import njit

from . import bounds, counting, expsum, runlength
from .digits import PhaseParam
from .growth import GrowthFunction
from .sieve import build_tables

__all__ = ["run_suite", "CRITERIA"]


# --------------------------------------------------------------------------
# Independent naive evaluators (scalar digit loops, numba-compiled).

@njit(cache=True)
def _naive_a(n, p, q):
    if n <= 0:
        return 0
    t = 0
    m = n
    while m >= q:
        m //= q
        t += 1
    total = 0
    for i in range(t - p + 1):
        prod = 1
        for j in range(i, i + p + 1):
            prod *= (n // q**j) % q
            if prod == 0:
                break
        total += prod
    return total


@njit(cache=True)
def _naive_weighted(x, w, p_of_t, q, alpha, theta):
    re = 0.0
    im = 0.0
    for n in range(1, x + 1):
        t = 0
        m = n
        while m >= q:
            m //= q
            t += 1
        a = _naive_a(n, p_of_t[t], q)
        phase = 2.0 * math.pi * (alpha * a + theta * n)
        re += w[n] * math.cos(phase)
        im += w[n] * math.sin(phase)
    return re, im


@njit(cache=True)
def _naive_type1(M, N, lo, hi, p_of_t, q, alpha, theta):
    total = 0.0
    for m in range(M // q + 1, M + 1):
        re = 0.0
        im = 0.0
        for n in range(max(1, (lo + m - 1) // m), hi // m + 1):
            mn = m * n
            t = 0
            v = mn
            while v >= q:
                v //= q
                t += 1
            a = _naive_a(mn, p_of_t[t], q)
            phase = 2.0 * math.pi * (alpha * a + theta * mn)
            re += math.cos(phase)
            im += math.sin(phase)
        total += math.sqrt(re * re + im * im)
    return total


@njit(cache=True)
def _naive_type2(M, N, am, bn, p_of_t, q, alpha, theta):
    re = 0.0
    im = 0.0
    for i, m in enumerate(range(M // q + 1, M + 1)):
        for j, n in enumerate(range(N // q + 1, N + 1)):
            mn = m * n
            t = 0
            v = mn
            while v >= q:
                v //= q
                t += 1
            a = _naive_a(mn, p_of_t[t], q)
            phase = 2.0 * math.pi * (alpha * a + theta * mn)
            c = am[i] * bn[j]
            re += c * math.cos(phase)
            im += c * math.sin(phase)
    return re, im


def _p_of_t(P: GrowthFunction, t_max: int) -> np.ndarray:
    return np.asarray([P(t) for t in range(t_max + 1)], dtype=np.int64)


# --------------------------------------------------------------------------
# Criteria.

def criterion_1() -> dict:
    """Parseval mass of every Fourier table equals 1 at random offsets."""
    rng = np.random.default_rng(101)
    worst = 0.0
    configs = 0
    for q, lam_top in ((2, 10), (3, 6)):
        for lam in range(2, lam_top + 1):
            for kappa in (0, 2):
                for k in (lam + kappa, lam + kappa + 3):
                    for p_spec in ("const:4", "log:2/3"):
                        P = GrowthFunction.parse(p_spec, q)
                        for a_spec in ("1/2", "1/3", "0.137"):
                            alpha = PhaseParam.parse(a_spec)
                            table = expsum.fourier_table(kappa, lam, k,
                                                         alpha, P, q)
                            for t in rng.random(16):
                                err = abs(table.parseval_mass(float(t)) - 1.0)
                                worst = max(worst, err)
                            configs += 1
    ok = worst <= 1e-9
    return {"name": "parseval mass", "ok": ok,
            "detail": f"{configs} tables, max |mass-1| = {worst:.2e}"}


def criterion_2() -> dict:
    """Fourier lemma bound on a dense grid plus random offsets."""
    rng = np.random.default_rng(202)
    P = GrowthFunction.constant(4)
    alpha = PhaseParam.parse("1/2")
    worst = 0.0
    configs = 0
    base_grid = [j / 2**12 for j in range(2**12)]
    for kappa in range(4):
        for l in range(4, 13):
            if P(kappa + l) > l:
                continue
            grid = base_grid + rng.random(64).tolist()
            out = expsum.fourier_lemma_check(l, kappa, grid, alpha, P, 2)
            worst = max(worst, out["max_ratio"])
            configs += 1
    ok = worst <= 1.0 + 1e-9
    return {"name": "fourier lemma bound", "ok": ok,
            "detail": f"{configs} (kappa,l) configs, max ratio = {worst:.6f}"}


def criterion_3() -> dict:
    """Decay exponent sanity: half-l cap, exact zero, linearity."""
    problems = []
    alphas = [PhaseParam.parse(s) for s in ("1/2", "1/3", "0.137", "2.75")]
    int_alphas = [PhaseParam.parse(s) for s in ("2", "-1", "3.0")]
    growths = [GrowthFunction.constant(d) for d in range(4, 17)]
    growths.append(GrowthFunction.parse("log:2/3", 2))
    for q in (2, 3, 10):
        for P in growths:
            for k in (6, 20, 40):
                if P(k) < 4:
                    continue
                for alpha in alphas:
                    for lam in (0.5, 1.0, 7.0, 31.0):
                        g = bounds.gamma_p(lam, k, q, alpha, P)
                        if g > lam / 2 + 1e-12:
                            problems.append(f"cap q={q} P(k)={P(k)} lam={lam}")
                        ga = bounds.gamma_p(3.0, k, q, alpha, P)
                        gb = bounds.gamma_p(4.0, k, q, alpha, P)
                        gs = bounds.gamma_p(7.0, k, q, alpha, P)
                        if gs and abs(ga + gb - gs) > 1e-12 * abs(gs):
                            problems.append(f"linearity q={q}")
                for alpha in int_alphas:
                    if bounds.gamma_p(5.0, k, q, alpha, P) != 0.0:
                        problems.append(f"nonzero at integer alpha q={q}")
    ok = not problems
    return {"name": "gamma_p sanity", "ok": ok,
            "detail": "all checks pass" if ok else "; ".join(problems[:3])}


def _check_weighted(rng, tables) -> float:
    q = int(rng.choice([2, 2, 3]))
    x = int(2 ** rng.uniform(8, 20))
    weight = str(rng.choice(["unit", "moebius", "mangoldt"]))
    p_spec = str(rng.choice(["const:1", "const:2", "log:2/3"]))
    P = GrowthFunction.parse(p_spec, q)
    num, den = int(rng.integers(1, 5)), int(rng.integers(2, 7))
    alpha = PhaseParam.rational(num, den)
    theta = float(rng.choice([0.0, rng.random()]))

    if weight == "unit":
        w = np.ones(x + 1)
    elif weight == "moebius":
        w = np.zeros(x + 1)
        w[1:] = tables.moebius[1:x + 1]
    else:
        w = np.zeros(x + 1)
        w[1:] = tables.mangoldt_values(np.arange(1, x + 1))
    t_max = int(math.log(x) / math.log(q)) + 2
    re, im = _naive_weighted(x, w, _p_of_t(P, t_max), q, float(alpha.value),
                             theta)
    oracle = complex(re, im)
    scale = max(1.0, float(np.abs(w).sum()))

    err = 0.0
    query = expsum.SumQuery(weight=weight, x=x, alpha=alpha, P=P, q=q,
                            theta=theta, accumulation="compensated")
    rep = expsum.weighted_sum(query, tables)
    err = max(err, abs(rep.value - oracle) / scale)
    if theta == 0.0:
        query_b = expsum.SumQuery(weight=weight, x=x, alpha=alpha, P=P,
                                  q=q, accumulation="bucketed")
        rep_b = expsum.weighted_sum(query_b, tables)
        err = max(err, abs(rep_b.value - oracle) / scale)
    return err


def _check_type1(rng) -> float:
    q = int(rng.choice([2, 3]))
    M = int(2 ** rng.uniform(2, 6))
    N = int(2 ** rng.uniform(math.log2(M), 20 - math.log2(M)))
    N = max(N, M)
    lo = int(rng.integers(1, max(2, M * N // 2)))
    hi = int(rng.integers(lo, M * N + 1))
    P = GrowthFunction.parse(str(rng.choice(["const:1", "log:2/3"])), q)
    alpha = PhaseParam.rational(1, int(rng.integers(2, 6)))
    theta = float(rng.choice([0.0, rng.random()]))
    out = expsum.type_I_sum(M, N, (lo, hi), theta, alpha, P, q)
    t_max = int(math.log(max(M * N, q)) / math.log(q)) + 2
    oracle = _naive_type1(M, N, max(lo, 1), min(hi, M * N),
                          _p_of_t(P, t_max), q, float(alpha.value), theta)
    return abs(out["value"] - oracle) / max(1.0, abs(oracle))


def _check_type2(rng) -> float:
    q = int(rng.choice([2, 3]))
    M = int(2 ** rng.uniform(2, 8))
    N = int(2 ** rng.uniform(math.log2(M), 18 - math.log2(M)))
    N = max(N, M)
    P = GrowthFunction.parse(str(rng.choice(["const:1", "const:2"])), q)
    alpha = PhaseParam.rational(1, int(rng.integers(2, 6)))
    theta = float(rng.choice([0.0, rng.random()]))
    am = rng.choice([-1.0, 1.0], size=M - M // q)
    bn = rng.choice([-1.0, 1.0], size=N - N // q)
    out = expsum.type_II_sum(M, N, am.tolist(), bn.tolist(), theta, alpha,
                             P, q)
    t_max = int(math.log(max(M * N, q)) / math.log(q)) + 2
    re, im = _naive_type2(M, N, am, bn, _p_of_t(P, t_max), q,
                          float(alpha.value), theta)
    oracle = complex(re, im)
    scale = max(1.0, len(am) * len(bn))
    return abs(out["value"] - oracle) / scale


def criterion_4() -> dict:
    """Vectorized sums match the scalar-loop naive evaluators."""
    rng = np.random.default_rng(404)
    tables = build_tables(1 << 20)
    worst = 0.0
    for _ in range(50):
        worst = max(worst, _check_weighted(rng, tables))
        worst = max(worst, _check_type1(rng))
        worst = max(worst, _check_type2(rng))
    ok = worst <= 1e-9
    return {"name": "sum oracle equivalence", "ok": ok,
            "detail": f"150 comparisons, max relative error = {worst:.2e}"}


def criterion_5() -> dict:
    """Moebius-weighted normalized sums shrink; bound shape decreases."""
    q = 2
    alpha = PhaseParam.parse("1/2")
    P = GrowthFunction.parse("log:2/3", q)
    tables = build_tables(1 << 24)
    normalized = []
    rhs_over_x = []
    for exp in (12, 16, 20, 24):
        x = 1 << exp
        query = expsum.SumQuery(weight="moebius", x=x, alpha=alpha, P=P,
                                q=q)
        normalized.append(expsum.weighted_sum(query, tables).normalized)
        rhs_over_x.append(bounds.theorem_rhs(x, q, alpha, P).rhs_over_x)
    decay_ok = normalized[-1] < 0.5 * normalized[0]
    rhs_ok = all(b < a for a, b in zip(rhs_over_x, rhs_over_x[1:]))
    ok = decay_ok and rhs_ok
    detail = ("normalized " + " -> ".join(f"{v:.3e}" for v in normalized)
              + f"; rhs_over_x decreasing: {rhs_ok}")
    return {"name": "moebius randomness trend", "ok": ok, "detail": detail}


def criterion_6() -> dict:
    """Carry lemma: dual counts agree; ratio stable across lam."""
    P = GrowthFunction.constant(1)
    problems = []
    detail_parts = []
    for kappa in (1, 2):
        ratios = []
        for lam in range(6, 12):
            rho = lam // 2
            a = counting.carry_bad_count(lam, kappa, rho, P, 2)
            b = counting.carry_bad_count_direct(lam, kappa, rho, P, 2)
            if a.count != b.count:
                problems.append(f"disagreement lam={lam} kappa={kappa}")
            ratios.append(a.ratio)
        spread = max(ratios) / max(min(ratios), 1e-12)
        detail_parts.append(f"kappa={kappa}: spread {spread:.2f}x")
        if spread >= 4.0:
            problems.append(f"ratio spread {spread:.2f}x at kappa={kappa}")
    ok = not problems
    return {"name": "carry propagation lemma", "ok": ok,
            "detail": "; ".join(detail_parts + problems)}


def criterion_7() -> dict:
    """Size perturbation: dual agreement, monotone in rho, stable ratio."""
    problems = []
    detail_parts = []
    for mu, nu in ((5, 8), (6, 9), (6, 10)):
        counts = []
        ratios = []
        for rho in range(1, (nu - 1) // 2 + 1):
            a = counting.size_perturbation_count(mu, nu, rho, 2)
            b = counting.size_perturbation_count_direct(mu, nu, rho, 2)
            if a.count != b.count:
                problems.append(f"disagreement ({mu},{nu},{rho})")
            counts.append(a.count)
            ratios.append(a.ratio)
        if any(c2 > c1 for c1, c2 in zip(counts, counts[1:])):
            problems.append(f"not monotone at ({mu},{nu}): {counts}")
        spread = max(ratios) / max(min(ratios), 1e-12)
        detail_parts.append(f"({mu},{nu}): spread {spread:.2f}x")
        if spread >= 4.0:
            problems.append(f"ratio spread {spread:.2f}x at ({mu},{nu})")
    ok = not problems
    return {"name": "size perturbation lemma", "ok": ok,
            "detail": "; ".join(detail_parts + problems)}


def criterion_8() -> dict:
    """Parity DP versus brute force; parity and max-run propositions."""
    problems = []
    for N in range(1, 23):
        for k in range(1, 11):
            dp = runlength.exact_parity_counts(N, k)
            br = runlength.parity_counts_brute(N, k)
            if (dp.even_count, dp.odd_count) != (br.even_count,
                                                 br.odd_count):
                problems.append(f"DP != brute at N={N}, k={k}")
    for N in range(8, 41):
        out = runlength.proposition_check(N, 2.0, slack=3.0)
        if not out["ok"]:
            problems.append(f"parity proposition fails at N={N}")
    for N, A in ((1 << 8, 1.5), (1 << 10, 1.5), (1 << 10, 1.9)):
        out = runlength.maxrun_tail(N, A, 10**5, seed=88)
        if not out["ok"]:
            problems.append(f"maxrun tail fails at N={N}, A={A}: "
                            f"p={out['empirical_p']:.4f} "
                            f"bound={out['bound']:.4f}")
    ok = not problems
    return {"name": "run-length propositions", "ok": ok,
            "detail": "all checks pass" if ok else "; ".join(problems[:4])}


def criterion_9() -> dict:
    """Signed weighted sums stay close to the plain ones."""
    N, A = 22, 2.5
    k = math.ceil(A * math.log2(N))
    tables = build_tables(1 << N)
    lam = tables.mangoldt_values(np.arange(1 << N))
    out = runlength.weighted_parity_sum(lam, N, k, A)
    ratio = out["sum_with_sign"] / out["sum_plain"]
    lam_ok = ratio >= 1.0 - 8.0 * N ** (1.0 - A)
    mu = tables.moebius[:1 << N].astype(np.float64)
    out_mu = runlength.weighted_parity_sum(mu, N, k, A)
    mu_bound = 2.0 ** (N + 2) * N ** (1.0 - A)
    mu_ok = abs(out_mu["epsilon"]) <= mu_bound
    ok = lam_ok and mu_ok
    return {"name": "signed-sum defeat theorem", "ok": ok,
            "detail": f"Lambda ratio {ratio:.6f} (needs >= "
                      f"{1.0 - 8.0 * N**(1.0 - A):.6f}); "
                      f"|mu epsilon| {abs(out_mu['epsilon']):.1f} <= "
                      f"{mu_bound:.1f}: {mu_ok}"}


def criterion_10() -> dict:
    """Distinguishing pairs exist and split window parity as promised."""
    P = GrowthFunction.parse("log:2/3", 2)
    problems = []
    for k_states in range(1, 9):
        out = counting.distinguishing_pair(k_states, P, 1 << 20)
        even = counting._window_runs(out["word_even"], out["block_length"])
        odd = counting._window_runs(out["word_odd"], out["block_length"])
        if even % 2 != 0 or odd % 2 != 1 or not out["ok"]:
            problems.append(f"parity split broken at k_states={k_states}")
    ok = not problems
    return {"name": "non-automaticity pairs", "ok": ok,
            "detail": "k_states 1..8 verified" if ok
            else "; ".join(problems)}


def criterion_11() -> dict:
    """Admissibility scan: eventual validity for the log growth and an
    immediate first failure for a large constant growth."""
    alpha = PhaseParam.parse("1/2")
    P_log = GrowthFunction.parse("log:2/3", 2)
    rep = bounds.admissible(P_log, 2, alpha, 1 << 20)
    log_ok = rep.threshold is not None and rep.threshold <= 1 << 16
    P_const = GrowthFunction.constant(10)
    rep_c = bounds.admissible(P_const, 2, alpha, 10**4)
    const_ok = rep_c.first_failure == 2
    ok = log_ok and const_ok
    detail = (f"log:2/3 threshold = {rep.threshold} "
              f"(failures up to x_max: {rep.failure_count}); "
              f"const:10 first_failure = {rep_c.first_failure}")
    return {"name": "growth admissibility", "ok": ok, "detail": detail}


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8,
            criterion_9, criterion_10, criterion_11]


def run_suite(only: int | None = None, stream=None) -> list[dict]:
    """Run all (or one) acceptance criteria, printing one line each."""
    import sys
    stream = stream or sys.stdout
    results = []
    for num, fn in enumerate(CRITERIA, start=1):
        if only is not None and num != only:
            continue
        t0 = time.perf_counter()
        out = fn()
        out["num"] = num
        out["seconds"] = time.perf_counter() - t0
        results.append(out)
        verdict = "PASS" if out["ok"] else "FAIL"
        stream.write(f"criterion {num:2d} [{verdict}] {out['name']}: "
                     f"{out['detail']} ({out['seconds']:.1f}s)\n")
        stream.flush()
    return results
