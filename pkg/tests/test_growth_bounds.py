import math

import mpmath
import pytest

from gelfond.bounds import (admissible, c1, gamma_lemma, gamma_p,
                            norm_to_int, sin_term, theorem_rhs)
from gelfond.digits import PhaseParam
from gelfond.errors import ValidationError
from gelfond.growth import GrowthFunction

HALF = PhaseParam.parse("1/2")


class TestGrowthFunction:
    def test_parse_spec_roundtrip(self):
        for spec in ("const:4", "log:2/3", "table:0,1,1,2"):
            P = GrowthFunction.parse(spec, 2)
            assert P.spec() == spec
            assert GrowthFunction.parse(P.spec(), 2) == P

    def test_log_scaled_exact_floor(self):
        P = GrowthFunction.parse("log:2/3", 2)
        for y in range(1, 5000):
            assert P(y) == math.floor((2 / 3) * math.log2(y) + 1e-12)
        # the float formula is wrong exactly at eighth powers; the exact
        # integer comparison must get them right
        assert P(0) == P(1) == 0
        assert P(8) == 2 and P(7) == 1

    def test_log_boundaries_at_powers(self):
        P = GrowthFunction.log_scaled(1, 1, 2)  # floor(log2 y)
        for k in range(1, 40):
            assert P(2**k) == k
            assert P(2**k - 1) == k - 1

    def test_tabulated_tail_rule(self):
        P = GrowthFunction.tabulated([0, 1, 1, 3])
        assert [P(y) for y in (0, 1, 2, 3, 4, 100)] == [0, 1, 1, 3, 3, 3]
        with pytest.raises(ValidationError):
            GrowthFunction.tabulated([2, 1])

    def test_vectorized_matches_scalar(self):
        import numpy as np
        for spec in ("const:3", "log:2/3", "log:3/2", "table:0,0,2,2,5"):
            P = GrowthFunction.parse(spec, 2)
            ys = np.arange(0, 3000)
            assert list(P.values_at(ys)) == [P(int(y)) for y in ys]

    def test_monotone(self):
        assert GrowthFunction.parse("log:2/3", 2).is_monotone_on(10**4)


class TestNorm:
    def test_values(self):
        assert norm_to_int(HALF) == 0.5
        assert norm_to_int(PhaseParam(3)) == 0.0
        assert norm_to_int(PhaseParam.real(2.75)) == 0.25
        assert norm_to_int(PhaseParam.parse("-1/3")) == pytest.approx(1 / 3)


class TestGamma:
    def test_high_precision_cross_check(self):
        # independent evaluation at 50 digits
        mpmath.mp.dps = 50
        s = 8 * mpmath.sin(mpmath.pi * mpmath.mpf(1) / 2 / 4) ** 2
        expected = 100 * (1 - mpmath.log(2**4 - s) / (4 * mpmath.log(2)))
        P4 = GrowthFunction.constant(4)
        got = gamma_p(100, 7, 2, HALF, P4)
        assert abs(got - float(expected)) < 1e-12
        expected_lemma = 4 * mpmath.log(2**4 - s) / (4 * mpmath.log(2))
        got_lemma = gamma_lemma(4, 0, 2, HALF, P4)
        assert abs(got_lemma - float(expected_lemma)) < 1e-12

    def test_integer_alpha_exact(self):
        P4 = GrowthFunction.constant(4)
        assert gamma_p(17.0, 3, 2, PhaseParam(2), P4) == 0.0
        assert gamma_lemma(6, 1, 2, PhaseParam(2), P4) == 6.0

    def test_zero_l(self):
        assert gamma_p(0, 3, 2, HALF, GrowthFunction.constant(4)) == 0.0

    def test_strictly_below_l_for_nonint(self):
        P4 = GrowthFunction.constant(4)
        assert gamma_lemma(7, 0, 2, HALF, P4) < 7

    def test_half_l_cap(self):
        for d in range(4, 17):
            P = GrowthFunction.constant(d)
            for lam in (0.5, 3.0, 11.0):
                for q in (2, 3, 5):
                    assert gamma_p(lam, 5, q, HALF, P) <= lam / 2 + 1e-12

    def test_nonincreasing_in_window(self):
        prev = None
        for d in range(4, 17):
            g = gamma_p(10.0, 1, 2, HALF, GrowthFunction.constant(d))
            if prev is not None:
                assert g <= prev + 1e-12
            prev = g

    def test_linearity(self):
        P = GrowthFunction.constant(5)
        a = gamma_p(3.5, 2, 2, HALF, P)
        b = gamma_p(2.5, 2, 2, HALF, P)
        s = gamma_p(6.0, 2, 2, HALF, P)
        assert abs(a + b - s) <= 1e-12 * abs(s)

    def test_window_guard(self):
        # the sin term never exceeds 8 sin^2(pi/8) < 2, so the log argument
        # is positive whenever P(k) >= 1; a zero window is rejected outright
        with pytest.raises(ValidationError):
            gamma_p(1.0, 0, 2, HALF, GrowthFunction.constant(0))

    def test_lemma_hypothesis_guard(self):
        with pytest.raises(ValidationError):
            gamma_lemma(3, 0, 2, HALF, GrowthFunction.constant(4))


class TestC1:
    def test_formula(self):
        for q in (2, 3, 12):
            from gelfond.sieve import omega, tau
            lq = math.log(q)
            expected = (q ** (13 / 64) * max(lq**3, tau(q) ** 0.25)
                        * lq ** (-3 - omega(q) / 4))
            assert c1(q) == pytest.approx(expected)


class TestTheoremRhs:
    def test_positive(self):
        P = GrowthFunction.parse("log:2/3", 2)
        for e in (4, 10, 20, 40):
            assert theorem_rhs(1 << e, 2, HALF, P).rhs_over_x > 0

    def test_integer_alpha_shape(self):
        P = GrowthFunction.constant(4)
        rep = theorem_rhs(1 << 20, 2, PhaseParam(1), P)
        assert rep.gamma_value == 0.0
        x = 1 << 20
        # omega(2) = 1, so the log exponent is 3 + 1/4
        assert rep.rhs == pytest.approx(c1(2) * math.log(x) ** 3.25 * x)

    def test_x_below_q(self):
        with pytest.raises(ValidationError):
            theorem_rhs(1, 2, HALF, GrowthFunction.constant(4))


class TestAdmissible:
    def test_vacuous_zero_growth(self):
        rep = admissible(GrowthFunction.constant(0), 2, HALF, 100)
        assert rep.ok and rep.vacuous

    def test_constant_ten_first_failure(self):
        rep = admissible(GrowthFunction.constant(10), 2, HALF, 10**4)
        assert rep.first_failure == 2
        assert not rep.ok

    def test_direct_scan_oracle(self):
        # independent scalar re-evaluation of the inequality
        P = GrowthFunction.constant(2)
        x_max = 4000
        rep = admissible(P, 2, HALF, x_max)
        s = sin_term(HALF)
        failures = [x for x in range(2, x_max + 1)
                    if P(2 * x) * 2 ** P(x) * P(x) * math.log(2)
                    > x / (640 * 48) * s]
        assert rep.failure_count == len(failures)
        if failures:
            assert rep.first_failure == failures[0]
            expected_threshold = failures[-1] + 1 \
                if failures[-1] < x_max else None
            assert rep.threshold == expected_threshold

    def test_growth_constant_check(self):
        P = GrowthFunction.parse("log:2/3", 2)
        rep = admissible(P, 2, HALF, 1000, growth_c=1.0)
        assert rep.growth_ok is True
        with pytest.raises(ValidationError):
            admissible(P, 2, HALF, 1000, growth_c=2.0)
