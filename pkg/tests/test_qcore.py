import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qumbra.qcore import (
    QContext,
    Variant,
    arcsinh_partial_sum,
    cn_coefficient,
    q_bracket,
    q_factorial_ratio,
)


def bracket_fraction(q: Fraction, n: int, variant: Variant) -> Fraction:
    # independent oracle: explicit power sums in exact rational arithmetic
    if variant is Variant.RIGHT:
        return sum((q**k for k in range(n)), Fraction(0))
    if variant is Variant.LEFT:
        return sum((q**-k for k in range(n)), Fraction(0))
    return sum((q ** (n - 1 - 2 * k) for k in range(n)), Fraction(0))


class TestQContext:
    def test_derived_constants(self):
        ctx = QContext(2.0)
        assert ctx.qplus == 1.0
        assert ctx.qminus == 0.5
        assert ctx.qsym == 1.5

    @pytest.mark.parametrize("bad", [1.0, 0.0, -2.0, math.inf, math.nan])
    def test_rejects_invalid_q(self, bad):
        with pytest.raises(ValueError):
            QContext(bad)

    def test_variant_from_string(self):
        assert QContext(2.0, "sym").variant is Variant.SYMMETRIC


class TestQBracket:
    def test_right_q2_n3_is_seven(self):
        # brute-force sum 1 + 2 + 4
        assert q_bracket(QContext(2.0, Variant.RIGHT), 3) == 1 + 2 + 4

    @pytest.mark.parametrize("variant", list(Variant))
    @pytest.mark.parametrize("q", [0.5, 1.3, 2.0])
    def test_n_zero_and_one(self, q, variant):
        ctx = QContext(q, variant)
        assert q_bracket(ctx, 0) == 0.0
        assert q_bracket(ctx, 1) == 1.0

    def test_symmetric_q2_n3(self):
        # (8 - 1/8) / (2 - 1/2)
        expected = (8.0 - 0.125) / 1.5
        assert q_bracket(QContext(2.0, Variant.SYMMETRIC), 3) == pytest.approx(
            expected, rel=1e-15
        )
        assert expected == 5.25

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            q_bracket(QContext(2.0), -1)

    @given(
        num=st.integers(min_value=1, max_value=40),
        den=st.integers(min_value=1, max_value=40),
        n=st.integers(min_value=0, max_value=25),
        variant=st.sampled_from(list(Variant)),
    )
    @settings(max_examples=60, deadline=None)
    def test_matches_exact_rational_oracle(self, num, den, n, variant):
        q = Fraction(num, den)
        if q == 1 or q <= 0:
            return
        got = q_bracket(QContext(num / den, variant), n)
        want = float(bracket_fraction(q, n, variant))
        assert got == pytest.approx(want, rel=1e-11, abs=1e-300)

    @pytest.mark.parametrize("variant", list(Variant))
    @pytest.mark.parametrize("q", [1.0 + 1e-6, 1.0 - 1e-6])
    def test_continuous_limit(self, q, variant):
        ctx = QContext(q, variant)
        for n in range(1, 21):
            assert q_bracket(ctx, n) / n == pytest.approx(1.0, rel=1e-4)

    @given(q=st.floats(min_value=0.05, max_value=20.0), n=st.integers(1, 30))
    @settings(max_examples=60, deadline=None)
    def test_symmetric_invariant_under_inversion(self, q, n):
        if abs(q - 1.0) < 1e-3:
            return
        a = q_bracket(QContext(q, Variant.SYMMETRIC), n)
        b = q_bracket(QContext(1.0 / q, Variant.SYMMETRIC), n)
        assert a == pytest.approx(b, rel=1e-14)

    @given(q=st.floats(min_value=0.05, max_value=20.0), n=st.integers(1, 30))
    @settings(max_examples=60, deadline=None)
    def test_right_left_duality(self, q, n):
        if abs(q - 1.0) < 1e-3:
            return
        left = q_bracket(QContext(q, Variant.LEFT), n)
        right_inverted = q_bracket(QContext(1.0 / q, Variant.RIGHT), n)
        assert left == pytest.approx(right_inverted, rel=1e-12)


class TestFactorialRatio:
    def test_empty_product(self):
        assert q_factorial_ratio(QContext(1.3), 0) == 1.0

    def test_q2_right_values(self):
        ctx = QContext(2.0, Variant.RIGHT)
        # 2!/(1*3) and 3!/(1*3*7), exact rationals
        assert q_factorial_ratio(ctx, 2) == pytest.approx(float(Fraction(2, 3)), rel=1e-15)
        assert q_factorial_ratio(ctx, 3) == pytest.approx(float(Fraction(6, 21)), rel=1e-15)

    def test_no_overflow_deep(self):
        # [n]_q! itself would overflow near n = 40 for q = 2; the ratio must not
        value = q_factorial_ratio(QContext(2.0), 400)
        assert math.isfinite(value)
        assert value >= 0.0

    @given(n=st.integers(0, 30))
    @settings(max_examples=30, deadline=None)
    def test_matches_fraction_oracle_q2(self, n):
        want = Fraction(math.factorial(n))
        for k in range(1, n + 1):
            want /= 2**k - 1
        got = q_factorial_ratio(QContext(2.0, Variant.RIGHT), n)
        assert got == pytest.approx(float(want), rel=1e-12)


class TestCnCoefficients:
    def test_first_value_is_one(self):
        assert cn_coefficient(1) == Fraction(1)

    def test_matches_arcsinh_taylor_oracle(self):
        # independent route: asinh z = sum (-1)^k (2k-1)!!/((2k)!! (2k+1)) z^(2k+1)
        for k in range(0, 12):
            double_odd = math.prod(range(1, 2 * k, 2)) or 1
            double_even = math.prod(range(2, 2 * k + 1, 2)) or 1
            want = Fraction(double_odd, double_even * (2 * k + 1))
            assert cn_coefficient(k + 1) == want

    def test_known_values(self):
        assert cn_coefficient(2) == Fraction(1, 6)
        assert cn_coefficient(3) == Fraction(3, 40)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            cn_coefficient(0)

    def test_partial_sums_reproduce_arcsinh(self):
        for z in [-0.5, -0.3, 0.0, 0.1, 0.25, 0.5]:
            assert arcsinh_partial_sum(z, 20) == pytest.approx(
                math.asinh(z), abs=1e-8
            )
