import pytest

from gelfond.counting import (carry_bad_count, carry_bad_count_direct,
                              distinguishing_pair, size_perturbation_count,
                              size_perturbation_count_direct,
                              truncation_mismatch_count,
                              truncation_mismatch_count_direct)
from gelfond.digits import PhaseParam
from gelfond.errors import (CapacityError, SearchExhaustedError,
                            ValidationError)
from gelfond.growth import GrowthFunction

HALF = PhaseParam.parse("1/2")
P1 = GrowthFunction.constant(1)
LOG23 = GrowthFunction.parse("log:2/3", 2)


class TestCarry:
    def test_dual_agreement(self):
        for lam, kappa, rho in ((5, 1, 2), (6, 1, 3), (4, 2, 2)):
            vec = carry_bad_count(lam, kappa, rho, P1, 2)
            direct = carry_bad_count_direct(lam, kappa, rho, P1, 2)
            assert vec.count == direct.count
            assert vec.extra["boundary_count"] == \
                direct.extra["boundary_count"]
            assert vec.bound_shape == direct.bound_shape

    def test_zero_kappa_never_bad(self):
        # k1 = k2 = 0: both differences vanish identically
        rep = carry_bad_count(5, 0, 2, P1, 2)
        assert rep.count == 0

    def test_monotone_in_rho(self):
        counts = [carry_bad_count(6, 1, rho, P1, 2,
                                  enforce_hypotheses=False).count
                  for rho in range(1, 6)]
        assert counts == sorted(counts, reverse=True)

    def test_hypothesis_guard(self):
        with pytest.raises(ValidationError):
            carry_bad_count(4, 1, 0, P1, 2)  # rho < P(lam+kappa+1)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            carry_bad_count(20, 6, 2, P1, 2)


class TestPerturb:
    def test_dual_agreement(self):
        for mu, nu, rho in ((3, 5, 1), (4, 5, 2), (2, 7, 1)):
            vec = size_perturbation_count(mu, nu, rho, 2)
            direct = size_perturbation_count_direct(mu, nu, rho, 2)
            assert vec.count == direct.count

    def test_base_three(self):
        vec = size_perturbation_count(2, 3, 1, 3)
        direct = size_perturbation_count_direct(2, 3, 1, 3)
        assert vec.count == direct.count

    def test_hypothesis_guard(self):
        with pytest.raises(ValidationError):
            size_perturbation_count(4, 4, 2, 2)  # 2*rho > nu-1

    def test_rho_bound(self):
        with pytest.raises(ValidationError):
            size_perturbation_count(3, 9, 4, 2, enforce_hypotheses=False)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            size_perturbation_count(14, 14, 2, 2)


class TestMismatch:
    def test_dual_agreement_exhaustive(self):
        for mu, nu, rho in ((2, 4, 1), (2, 5, 1)):
            vec = truncation_mismatch_count(mu, nu, rho, HALF, P1, 2)
            direct = truncation_mismatch_count_direct(mu, nu, rho, HALF,
                                                      P1, 2)
            assert vec.extra["mode"] == "exhaustive"
            assert vec.count == direct.count

    def test_integer_alpha_no_mismatch(self):
        rep = truncation_mismatch_count(2, 4, 1, PhaseParam(1), P1, 2)
        assert rep.count == 0

    def test_sampled_undercounts(self):
        exhaustive = truncation_mismatch_count(2, 5, 1, HALF, P1, 2)
        sampled = truncation_mismatch_count(2, 5, 1, HALF, P1, 2,
                                            sample_budget=128, seed=7)
        assert sampled.extra["mode"] == "sampled"
        assert sampled.count <= exhaustive.count

    def test_sampling_reproducible(self):
        a = truncation_mismatch_count(2, 5, 1, HALF, P1, 2,
                                      sample_budget=128, seed=3)
        b = truncation_mismatch_count(2, 5, 1, HALF, P1, 2,
                                      sample_budget=128, seed=3)
        assert a.count == b.count

    def test_hypothesis_guards(self):
        with pytest.raises(ValidationError):
            truncation_mismatch_count(2, 4, 2, HALF, P1, 2)  # 2*rho >= nu
        with pytest.raises(ValidationError):
            truncation_mismatch_count(2, 5, 1, HALF,
                                      GrowthFunction.constant(3), 2)


class TestDistinguishingPair:
    def test_construction_valid(self):
        for k_states in range(1, 9):
            out = distinguishing_pair(k_states, LOG23)
            assert out["ok"]
            assert len(out["word_even"]) == len(out["word_odd"]) == out["m"]
            assert out["even_windows"] % 2 == 0
            assert out["odd_windows"] % 2 == 1

    def test_minimal_m(self):
        out = distinguishing_pair(3, LOG23)
        m = out["m"]
        # no smaller candidate satisfies both constraints
        for cand in range(2, m):
            p = LOG23(cand)
            assert not (p > 3 and cand > p + 3)

    def test_constant_growth_exhausts(self):
        with pytest.raises(SearchExhaustedError):
            distinguishing_pair(4, GrowthFunction.constant(2), max_m=1000)

    def test_k_states_guard(self):
        with pytest.raises(ValidationError):
            distinguishing_pair(0, LOG23)
