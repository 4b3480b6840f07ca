"""Brute-force counting oracles and the distinguishing-word construction.

Every counter here exists twice: a vectorized numpy implementation and an
independent pure-Python direct scan.  Exhaustive runs of the two must agree
exactly; tests rely on that redundancy instead of trusting either one.

Bound shapes are the lemmas' right-hand sides without their absolute
constants; callers compare ratio stability across parameters, never
absolute inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .blocks import a_p_trunc_values, a_p_values, powers_of
from .digits import PhaseParam, _check_base, a_p, a_p_trunc, t_q
from .errors import CapacityError, SearchExhaustedError, ValidationError
from .growth import GrowthFunction

__all__ = ["CountReport", "carry_bad_count", "carry_bad_count_direct",
           "size_perturbation_count", "size_perturbation_count_direct",
           "truncation_mismatch_count", "truncation_mismatch_count_direct",
           "distinguishing_pair"]

_CARRY_BUDGET = 1 << 30
_PERTURB_BUDGET = 1 << 26


@dataclass(frozen=True)
class CountReport:
    parameters: dict
    count: int
    bound_shape: float
    ratio: float
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = dict(self.parameters)
        out.update(count=self.count, bound_shape=self.bound_shape,
                   ratio=self.ratio)
        out.update(self.extra)
        return out


def _carry_check(lam: int, kappa: int, rho: int, P: GrowthFunction,
                 q: int, enforce: bool) -> None:
    _check_base(q)
    if lam < 1 or kappa < 0 or rho < 0:
        raise ValidationError("need lam >= 1, kappa >= 0, rho >= 0")
    if q ** (lam + 2 * kappa) > _CARRY_BUDGET:
        raise CapacityError(
            f"carry scan size q**(lam+2*kappa) exceeds {_CARRY_BUDGET}")
    if enforce and not P(lam + kappa + 1) <= rho <= 0.75 * lam:
        raise ValidationError(
            f"carry lemma hypothesis P(lam+kappa+1) <= rho <= 3*lam/4 "
            f"violated: P={P(lam + kappa + 1)}, rho={rho}, lam={lam}")


def _carry_report(lam, kappa, rho, P, q, count, boundary_count, impl):
    bound_shape = float(q) ** (lam - rho + P(lam + kappa + 1))
    return CountReport(
        parameters={"lam": lam, "kappa": kappa, "rho": rho, "q": q,
                    "P": P.spec()},
        count=count, bound_shape=bound_shape,
        ratio=count / bound_shape,
        extra={"boundary_count": boundary_count, "impl": impl})


def carry_bad_count(lam: int, kappa: int, rho: int, P: GrowthFunction,
                    q: int, enforce_hypotheses: bool = True) -> CountReport:
    """Number of l < q**lam for which some k1, k2 < q**kappa make the full
    and the (kappa+rho)-truncated block-count increments disagree:

        a_P(l*q**kappa + k1 + k2) - a_P(l*q**kappa + k1)
          != trunc versions of the same difference.

    The count is independent of alpha: it compares integer block counts.
    ``boundary_count`` separately reports the l whose witnesses involve a
    digit-length change between the two arguments (there the two a_P use
    different window lengths by convention, so they are tallied but also
    surfaced on their own).
    """
    _carry_check(lam, kappa, rho, P, q, enforce_hypotheses)
    k1 = np.arange(q**kappa, dtype=np.int64)
    k12 = (k1[:, None] + k1[None, :]).ravel()
    k1_flat = np.broadcast_to(k1[:, None], (q**kappa, q**kappa)).ravel()
    count = 0
    boundary_count = 0
    chunk = max(1, _CARRY_BUDGET // (8 * max(len(k12), 1) * 8))
    ell = np.arange(q**lam, dtype=np.int64)
    for start in range(0, len(ell), chunk):
        ls = ell[start:start + chunk]
        base = ls[:, None] * q**kappa
        n1 = (base + k1_flat[None, :]).ravel()
        n12 = (base + k12[None, :]).ravel()
        d_full = a_p_values(n12, P, q) - a_p_values(n1, P, q)
        d_tr = (a_p_trunc_values(n12, kappa + rho, P, q)
                - a_p_trunc_values(n1, kappa + rho, P, q))
        bad = (d_full != d_tr).reshape(len(ls), -1).any(axis=1)
        count += int(bad.sum())
        pws = powers_of(q, int(n12.max()) if n12.size else 1)
        t1 = np.searchsorted(pws, np.maximum(n1, 1), side="right") - 1
        t12 = np.searchsorted(pws, np.maximum(n12, 1), side="right") - 1
        bnd = (t1 != t12).reshape(len(ls), -1).any(axis=1)
        boundary_count += int(bnd.sum())
    return _carry_report(lam, kappa, rho, P, q, count, boundary_count,
                         "vectorized")


def carry_bad_count_direct(lam: int, kappa: int, rho: int, P: GrowthFunction,
                           q: int,
                           enforce_hypotheses: bool = True) -> CountReport:
    """Pure-Python scan of the same set; must agree with the vectorized one."""
    _carry_check(lam, kappa, rho, P, q, enforce_hypotheses)
    count = 0
    boundary_count = 0
    k_top = q**kappa
    for ell in range(q**lam):
        base = ell * k_top
        bad = False
        boundary = False
        for key1 in range(k_top):
            for key2 in range(k_top):
                n1 = base + key1
                n12 = base + key1 + key2
                d_full = a_p(n12, P, q) - a_p(n1, P, q)
                d_tr = (a_p_trunc(n12, kappa + rho, P, q)
                        - a_p_trunc(n1, kappa + rho, P, q))
                if d_full != d_tr:
                    bad = True
                t1 = t_q(n1, q) if n1 else 0
                t12 = t_q(n12, q) if n12 else 0
                if t1 != t12:
                    boundary = True
            if bad and boundary:
                break
        count += bad
        boundary_count += boundary
    return _carry_report(lam, kappa, rho, P, q, count, boundary_count,
                         "direct")


def _perturb_check(mu: int, nu: int, rho: int, q: int,
                   enforce: bool) -> None:
    _check_base(q)
    if mu < 1 or nu < 1 or rho < 0:
        raise ValidationError("need mu, nu >= 1 and rho >= 0")
    if rho > mu:
        raise ValidationError("need rho <= mu (the shift q**(mu-rho))")
    if q ** (mu + nu) > _PERTURB_BUDGET:
        raise CapacityError(
            f"perturbation scan size q**(mu+nu) exceeds {_PERTURB_BUDGET}")
    if enforce and not 2 * rho <= nu - 1:
        raise ValidationError(
            f"perturbation lemma hypothesis 2*rho <= nu-1 violated: "
            f"rho={rho}, nu={nu}")


def _perturb_report(mu, nu, rho, q, count, impl):
    bound_shape = (mu + nu) * math.log(q) * float(q) ** (mu + nu - rho)
    return CountReport(
        parameters={"mu": mu, "nu": nu, "rho": rho, "q": q},
        count=count, bound_shape=bound_shape, ratio=count / bound_shape,
        extra={"impl": impl})


def size_perturbation_count(mu: int, nu: int, rho: int, q: int,
                            enforce_hypotheses: bool = True) -> CountReport:
    """Pairs (m, n) with q**(mu-1) <= m < q**mu, q**(nu-1) <= n < q**nu whose
    product changes digit length under the joint perturbation
    m -> m + q**(mu-rho), n -> n + q**rho."""
    _perturb_check(mu, nu, rho, q, enforce_hypotheses)
    m = np.arange(q ** (mu - 1), q**mu, dtype=np.int64)
    n = np.arange(q ** (nu - 1), q**nu, dtype=np.int64)
    prod = (m[:, None] * n[None, :]).ravel()
    prod2 = ((m + q ** (mu - rho))[:, None] * (n + q**rho)[None, :]).ravel()
    pws = powers_of(q, int(prod2.max()))
    t1 = np.searchsorted(pws, prod, side="right")
    t2 = np.searchsorted(pws, prod2, side="right")
    count = int((t1 != t2).sum())
    return _perturb_report(mu, nu, rho, q, count, "vectorized")


def size_perturbation_count_direct(mu: int, nu: int, rho: int, q: int,
                                   enforce_hypotheses: bool = True
                                   ) -> CountReport:
    _perturb_check(mu, nu, rho, q, enforce_hypotheses)
    count = 0
    for m in range(q ** (mu - 1), q**mu):
        mp = m + q ** (mu - rho)
        for n in range(q ** (nu - 1), q**nu):
            if t_q(m * n, q) != t_q(mp * (n + q**rho), q):
                count += 1
    return _perturb_report(mu, nu, rho, q, count, "direct")


def _mismatch_check(mu: int, nu: int, rho: int, P: GrowthFunction,
                    q: int, enforce: bool) -> None:
    _check_base(q)
    if mu < 1 or nu < 1 or rho < 0:
        raise ValidationError("need mu, nu >= 1 and rho >= 0")
    if enforce:
        if not 2 * rho < nu:
            raise ValidationError(
                f"mismatch lemma hypothesis 2*rho < nu violated: "
                f"rho={rho}, nu={nu}")
        if not P(mu + nu) <= rho:
            raise ValidationError(
                f"mismatch lemma hypothesis P(mu+nu) <= rho violated: "
                f"P={P(mu + nu)}, rho={rho}")


def _mismatch_report(mu, nu, rho, P, q, count, mode, impl):
    bound_shape = math.log(q) * float(q) ** (mu + nu - rho + P(mu + nu + 1))
    return CountReport(
        parameters={"mu": mu, "nu": nu, "rho": rho, "q": q, "P": P.spec()},
        count=count, bound_shape=bound_shape, ratio=count / bound_shape,
        extra={"mode": mode, "impl": impl})


def _phase_mismatch(alpha: PhaseParam, d_full: int, d_tr: int) -> bool:
    # The two phase products differ exactly when alpha*(d_full - d_tr) is
    # not an integer.
    return not alpha.multiple_is_integral(d_full - d_tr)


def truncation_mismatch_count(mu: int, nu: int, rho: int, alpha: PhaseParam,
                              P: GrowthFunction, q: int,
                              sample_budget: int = 1 << 22, seed: int = 0,
                              enforce_hypotheses: bool = True) -> CountReport:
    """Pairs (m, n) in the dyadic boxes [q**(mu-1), q**mu) x [q**(nu-1),
    q**nu) admitting a witness k < q**(mu+rho) for which the phase increment
    of f_P differs from that of its (mu+2*rho)-truncation.

    k is scanned exhaustively when the total work fits the sample budget,
    otherwise a seeded random k-sample is drawn per pair (mode recorded;
    sampling can only undercount).
    """
    _mismatch_check(mu, nu, rho, P, q, enforce_hypotheses)
    m = np.arange(q ** (mu - 1), q**mu, dtype=np.int64)
    n = np.arange(q ** (nu - 1), q**nu, dtype=np.int64)
    prod = (m[:, None] * n[None, :]).ravel()
    k_top = q ** (mu + rho)
    exhaustive = len(prod) * k_top <= sample_budget
    if exhaustive:
        ks = np.arange(k_top, dtype=np.int64)
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        n_samples = max(1, sample_budget // max(len(prod), 1))
        ks = rng.integers(0, k_top, size=n_samples, dtype=np.int64)
        mode = "sampled"
    count = 0
    trunc_idx = mu + 2 * rho
    f = alpha.fraction
    for start in range(0, len(prod), 1 << 12):
        pr = prod[start:start + (1 << 12)]
        grid = (pr[:, None] + ks[None, :]).ravel()
        d_full = a_p_values(grid, P, q) - np.repeat(a_p_values(pr, P, q),
                                                    len(ks))
        d_tr = (a_p_trunc_values(grid, trunc_idx, P, q)
                - np.repeat(a_p_trunc_values(pr, trunc_idx, P, q), len(ks)))
        diff = d_full - d_tr
        if f is not None:
            bad = (f.numerator * diff) % f.denominator != 0
        else:
            frac = alpha.value * diff
            bad = np.abs(frac - np.round(frac)) > 1e-9
        count += int(bad.reshape(len(pr), -1).any(axis=1).sum())
    return _mismatch_report(mu, nu, rho, P, q, count, mode, "vectorized")


def truncation_mismatch_count_direct(mu: int, nu: int, rho: int,
                                     alpha: PhaseParam, P: GrowthFunction,
                                     q: int,
                                     enforce_hypotheses: bool = True
                                     ) -> CountReport:
    """Exhaustive pure-Python scan comparing the actual complex phases."""
    _mismatch_check(mu, nu, rho, P, q, enforce_hypotheses)
    count = 0
    k_top = q ** (mu + rho)
    trunc_idx = mu + 2 * rho
    for m in range(q ** (mu - 1), q**mu):
        for n in range(q ** (nu - 1), q**nu):
            mn = m * n
            a_full_0 = a_p(mn, P, q)
            a_tr_0 = a_p_trunc(mn, trunc_idx, P, q)
            for k in range(k_top):
                d_full = a_p(mn + k, P, q) - a_full_0
                d_tr = a_p_trunc(mn + k, trunc_idx, P, q) - a_tr_0
                lhs = alpha.phase(d_full)
                rhs = alpha.phase(d_tr)
                if abs(lhs - rhs) > 1e-9:
                    count += 1
                    break
    return _mismatch_report(mu, nu, rho, P, q, count, "exhaustive", "direct")


def _window_runs(word: str, length: int) -> int:
    """Number of all-ones windows of exactly the given length in a 0/1 word."""
    if length < 1:
        raise ValidationError("window length must be >= 1")
    target = "1" * length
    return sum(1 for i in range(len(word) - length + 1)
               if word[i:i + length] == target)


def distinguishing_pair(k_states: int, P: GrowthFunction,
                        max_m: int = 1 << 20) -> dict:
    """Two binary words of equal length m that any automaton with at most
    k_states states must confuse, yet whose all-ones-window parities differ.

    Prefix words are x_l = 0**(k-l) 1**l for l <= k := k_states; by
    pigeonhole some two prefixes x_i, x_j (the lexicographically first pair
    (i, j) = (0, 1) is returned) lead to the same state.  The suffix
    y = 1**(P(m)-j) 0**(m-P(m)+j-k) makes x_j.y contain exactly one
    all-ones window of length P(m) while x_i.y contains none.

    Note the window length here is P(m) itself (the word-construction
    convention), not the P+1 of the block-counting function; the two
    conventions are deliberately kept separate.
    """
    if k_states < 1:
        raise ValidationError("need k_states >= 1")
    k = k_states
    i, j = 0, 1
    m = None
    for cand in range(2, max_m + 1):
        p_val = P(cand)
        if p_val > k and cand > p_val + k:
            m = cand
            break
    if m is None:
        raise SearchExhaustedError(
            f"no m <= {max_m} with P(m) > {k} and m > P(m) + {k}")
    p_val = P(m)
    y = "1" * (p_val - j) + "0" * (m - p_val + j - k)
    x_i = "0" * (k - i) + "1" * i
    x_j = "0" * (k - j) + "1" * j
    word_even = x_i + y
    word_odd = x_j + y
    assert len(word_even) == len(word_odd) == m
    even_windows = _window_runs(word_even, p_val)
    odd_windows = _window_runs(word_odd, p_val)
    return {"i": i, "j": j, "m": m, "block_length": p_val,
            "word_even": word_even, "word_odd": word_odd,
            "even_windows": even_windows, "odd_windows": odd_windows,
            "ok": even_windows % 2 == 0 and odd_windows % 2 == 1}
