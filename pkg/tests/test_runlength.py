import math

import numpy as np
import pytest

from gelfond.errors import ValidationError
from gelfond.runlength import (ParityCounts, RunProfile, exact_parity_counts,
                               maxrun_tail, parity_counts_brute,
                               proposition_check, random_word,
                               weighted_parity_sum)


class TestParityCounts:
    def test_hand_case(self):
        # N=3, k=1: windows of length 2; only 011, 110, 111 have odd counts?
        # direct enumeration gives (E, I) = (6, 2)
        pc = exact_parity_counts(3, 1)
        assert (pc.even_count, pc.odd_count) == (6, 2)

    def test_k_at_least_n_all_even(self):
        for N in range(1, 10):
            pc = exact_parity_counts(N, N)  # window length N+1 > N
            assert pc.even_count == 1 << N
            assert pc.odd_count == 0

    def test_dp_matches_brute(self):
        for N in range(1, 15):
            for k in range(1, min(N + 2, 11)):
                dp = exact_parity_counts(N, k)
                br = parity_counts_brute(N, k)
                assert (dp.even_count, dp.odd_count) == \
                    (br.even_count, br.odd_count)

    def test_even_count_nondecreasing_in_k(self):
        N = 16
        evens = [exact_parity_counts(N, k).even_count for k in range(1, N + 2)]
        assert evens == sorted(evens)

    def test_sum_invariant_enforced(self):
        with pytest.raises(ValidationError):
            ParityCounts(N=3, k=1, even_count=5, odd_count=2)

    def test_capacity_guards(self):
        with pytest.raises(ValidationError):
            exact_parity_counts(61, 2)
        with pytest.raises(ValidationError):
            parity_counts_brute(27, 2)


class TestProposition:
    def test_holds_over_range(self):
        for N in (8, 16, 24, 32, 40):
            out = proposition_check(N, 1.5)
            assert out["ok"], (N, out)
            assert out["k"] == math.ceil(1.5 * math.log2(N))

    def test_a_guard(self):
        with pytest.raises(ValidationError):
            proposition_check(16, 1.0)


class TestRandomWord:
    def test_reproducible(self):
        w1 = random_word(200, seed=5)
        w2 = random_word(200, seed=5)
        assert w1 == w2
        assert w1 != random_word(200, seed=6)

    def test_profile_invariants(self):
        w = random_word(500, seed=1)
        assert w.word_length == 500
        assert len(w.word()) == 500
        assert w.max_run == max(length for _, length in w.runs)

    def test_run_alternation_enforced(self):
        with pytest.raises(ValidationError):
            RunProfile(word_length=4, runs=((1, 2), (1, 2)))
        with pytest.raises(ValidationError):
            RunProfile(word_length=5, runs=((1, 2), (0, 2)))

    def test_fair_bit_statistics(self):
        # the construction's law is N i.i.d. fair bits: mean run length 2,
        # ones fraction 1/2, both within 3 sigma over many samples
        N, trials = 256, 400
        ones = 0
        run_lengths = []
        for s in range(trials):
            w = random_word(N, seed=s)
            ones += sum(length for d, length in w.runs if d == 1)
            run_lengths.extend(length for _, length in w.runs)
        total_bits = N * trials
        p_hat = ones / total_bits
        assert abs(p_hat - 0.5) < 3 * math.sqrt(0.25 / total_bits)
        mean_run = sum(run_lengths) / len(run_lengths)
        assert abs(mean_run - 2.0) < 0.1


class TestMaxrunTail:
    def test_bound_holds(self):
        out = maxrun_tail(64, 1.5, 20000, seed=11)
        assert out["ok"]
        assert 0.0 <= out["empirical_p"] <= 1.0

    def test_threshold_above_n_gives_zero(self):
        out = maxrun_tail(3, 1.9, 10**4, seed=0)
        assert out["empirical_p"] == 0.0 and out["ok"]

    def test_threads_reproducible(self):
        a = maxrun_tail(32, 1.3, 20000, seed=9, threads=1)
        b = maxrun_tail(32, 1.3, 20000, seed=9, threads=4)
        assert a["empirical_p"] == b["empirical_p"]

    def test_guards(self):
        with pytest.raises(ValidationError):
            maxrun_tail(64, 2.5, 10**4, seed=0)
        with pytest.raises(ValidationError):
            maxrun_tail(64, 1.5, 100, seed=0)


class TestWeightedParitySum:
    def test_trivial_weight_long_window(self):
        # f identically 1 and window length k > N: every sign is +1
        N = 10
        f = np.ones(1 << N)
        out = weighted_parity_sum(f, N, N + 1)
        assert out["epsilon"] == 0.0
        assert out["sum_plain"] == float(1 << N)

    def test_python_oracle(self):
        N, k = 8, 2
        rng = np.random.default_rng(3)
        f = rng.standard_normal(1 << N)

        def runs_of(n, length):
            word = format(n, f"0{N}b")
            target = "1" * length
            return sum(1 for i in range(N - length + 1)
                       if word[i:i + length] == target)

        expected_signed = sum(
            float(f[n]) * (-1.0) ** runs_of(n, k) for n in range(1 << N))
        out = weighted_parity_sum(f, N, k)
        assert out["sum_with_sign"] == pytest.approx(expected_signed)

    def test_bound_reported(self):
        N = 12
        f = np.ones(1 << N)
        out = weighted_parity_sum(f, N, math.ceil(1.5 * math.log2(N)), A=1.5)
        assert abs(out["epsilon"]) <= out["bound"]

    def test_short_table_rejected(self):
        with pytest.raises(ValidationError):
            weighted_parity_sum(np.ones(10), 5, 2)
