import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qumbra import opspace, qfun
from qumbra.qcore import QContext, Variant, q_bracket
from qumbra.qfun import (
    QExp,
    QGauss,
    QHermite,
    QShiftedPower,
    ScanRange,
    build,
    continuous_value,
    convergence_radius,
    evaluate,
    evaluate_grid,
    first_zero,
    hermite_residual,
)

mp.mp.dps = 40


def mp_bracket(q, n, variant=Variant.RIGHT):
    if variant is Variant.RIGHT:
        return sum(mp.mpf(q) ** k for k in range(n))
    return sum(mp.mpf(q) ** (n - 1 - 2 * k) for k in range(n))


def mp_qexp(q, lam, x, variant=Variant.RIGHT, terms=300):
    term, total = mp.mpf(1), mp.mpf(1)
    for k in range(1, terms):
        term = term * lam * x / mp_bracket(q, k, variant)
        total += term
    return total


def mp_qgauss(q, lam, x, variant=Variant.RIGHT, terms=200):
    term, total, xp = mp.mpf(1), mp.mpf(0), mp.mpf(1)
    for k in range(terms):
        total += term * xp
        xp *= x * x
        term = (
            term
            * (-mp.mpf(lam))
            * 2
            * (2 * k + 1)
            / (mp_bracket(q, 2 * k + 1, variant) * mp_bracket(q, 2 * k + 2, variant))
        )
    return total


class TestBuild:
    def test_qexp_leading_coefficients(self):
        ctx = QContext(2.0, Variant.RIGHT)
        f = build(QExp(1.0), ctx, 16)
        assert f.coeffs.coeffs[0] == 1.0
        assert f.coeffs.coeffs[1] == 1.0
        assert f.coeffs.coeffs[2] == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_qexp_matches_fraction_oracle_q2(self):
        # c_n = 1 / prod(2^k - 1), exact in rationals
        f = build(QExp(1.0), QContext(2.0, Variant.RIGHT), 24)
        want = Fraction(1)
        for n in range(1, 25):
            want /= 2**n - 1
            assert f.coeffs.coeffs[n] == pytest.approx(float(want), rel=1e-13)

    def test_qgauss_even_function(self):
        f = build(QGauss(0.8), QContext(1.3), 16)
        assert f.coeffs.coeffs[0] == 1.0
        assert np.all(f.coeffs.coeffs[1::2] == 0.0)

    def test_qgauss_matches_factorial_formula_q2(self):
        # independent route: c_2k = (-lam)^k (2k)! / (k! [2k]_q!) from factorials
        f = build(QGauss(1.0), QContext(2.0, Variant.RIGHT), 20)
        for k in range(0, 11):
            want = Fraction((-1) ** k * math.factorial(2 * k), math.factorial(k))
            for j in range(1, 2 * k + 1):
                want /= 2**j - 1
            assert f.coeffs.coeffs[2 * k] == pytest.approx(float(want), rel=1e-12)

    def test_hermite_zero_energy_is_constant(self):
        f = build(QHermite(0.0, 1.0, 0.0), QContext(1.3), 20)
        assert f.coeffs.coeffs[0] == 1.0
        assert np.all(f.coeffs.coeffs[1:] == 0.0)

    def test_shifted_power_needs_nonzero_x0(self):
        with pytest.raises(ValueError):
            build(QShiftedPower(0.5, 0.0), QContext(1.3), 8)

    def test_shifted_power_negative_x0_needs_integer_exponent(self):
        with pytest.raises(ValueError):
            build(QShiftedPower(0.5, -2.0), QContext(1.3), 8)
        f = build(QShiftedPower(2.0, -3.0), QContext(1.3), 8)
        assert f.coeffs.coeffs[0] == pytest.approx(9.0)

    def test_shifted_power_integer_exponent_terminates(self):
        f = build(QShiftedPower(2.0, 3.0), QContext(1.3), 10)
        # (beta x + 3)^2 projects onto 9 + 6x + (2/[2]) x^2
        assert f.coeffs.coeffs[0] == pytest.approx(9.0)
        assert f.coeffs.coeffs[1] == pytest.approx(6.0)
        assert f.coeffs.coeffs[2] == pytest.approx(2.0 / q_bracket(QContext(1.3), 2))
        assert np.all(f.coeffs.coeffs[3:] == 0.0)


class TestEvaluate:
    def test_qexp_at_one_q2(self):
        # frozen from a 40-digit summation: 2.3842310290313717
        f = build(QExp(1.0), QContext(2.0, Variant.RIGHT), 64)
        assert evaluate(f, 1.0).value == pytest.approx(2.3842310290313717, rel=1e-14)

    def test_qexp_at_zero_exact(self):
        f = build(QExp(3.0), QContext(1.3), 32)
        result = evaluate(f, 0.0)
        assert result.value == 1.0
        assert result.converged

    def test_matches_mpmath_at_scattered_points(self):
        for q, lam, x in [(1.3, -1.0, 2.0), (1.3, 1.0, 5.0), (2.0, -0.5, 3.0)]:
            f = build(QExp(lam), QContext(q, Variant.RIGHT), 96)
            want = float(mp_qexp(q, lam, x))
            assert evaluate(f, x).value == pytest.approx(want, rel=1e-13)

    def test_deep_cancellation_stays_accurate(self):
        # x = q^20 with lam = -1: plain double summation loses ~8 digits here
        q = 1.3
        f = build(QExp(-1.0), QContext(q, Variant.RIGHT), 160)
        x = q**20
        want = float(mp_qexp(q, -1.0, x))
        assert evaluate(f, x).value == pytest.approx(want, rel=1e-12)

    def test_gauss_subcritical_right_diverges(self):
        f = build(QGauss(1.0), QContext(0.5, Variant.RIGHT), 64)
        result = evaluate(f, 0.5)
        assert not result.converged

    def test_single_branch_hermite_divergence_detected(self):
        # exact zeros from the empty parity branch must not mask term growth
        f = build(QHermite(0.5, 0.0, 1.0), QContext(0.7, Variant.RIGHT), 96)
        assert not evaluate(f, 2.0).converged
        g = build(QHermite(0.5, 0.0, 1.0), QContext(1.3, Variant.RIGHT), 96)
        assert evaluate(g, 2.0).converged

    def test_early_stop_uses_fewer_terms(self):
        f = build(QExp(1.0), QContext(2.0, Variant.RIGHT), 64)
        assert evaluate(f, 1.0).terms_used < 30

    def test_grid_matches_scalar(self):
        f = build(QExp(-1.0), QContext(1.3, Variant.RIGHT), 96)
        xs = np.linspace(0.0, 4.0, 9)
        grid = evaluate_grid(f, xs)
        for x, v in zip(xs, grid):
            assert v == pytest.approx(evaluate(f, float(x)).value, rel=1e-13, abs=1e-15)

    def test_rejects_non_finite_x(self):
        f = build(QExp(1.0), QContext(1.3), 16)
        with pytest.raises(ValueError):
            evaluate(f, math.inf)


class TestConvergenceRadius:
    def test_right_exp_subcritical(self):
        assert convergence_radius(QExp(1.0), QContext(0.5, Variant.RIGHT)) == pytest.approx(2.0)

    def test_right_exp_supercritical_infinite(self):
        assert convergence_radius(QExp(1.0), QContext(1.3, Variant.RIGHT)) == math.inf

    def test_symmetric_gauss_infinite(self):
        assert convergence_radius(QGauss(1.0), QContext(1.3, Variant.SYMMETRIC)) == math.inf

    def test_right_gauss_subcritical_zero(self):
        assert convergence_radius(QGauss(1.0), QContext(0.5, Variant.RIGHT)) == 0.0

    def test_left_variant_rejected(self):
        with pytest.raises(ValueError):
            convergence_radius(QExp(1.0), QContext(1.3, Variant.LEFT))

    def test_hermite_rejected(self):
        with pytest.raises(ValueError):
            convergence_radius(QHermite(0.0, 1.0, 0.0), QContext(1.3))


class TestFirstZero:
    def test_right_exp_negative_lambda(self):
        q = 1.3
        f = build(QExp(-1.0), QContext(q, Variant.RIGHT), 128)
        zero = first_zero(f, ScanRange(0.1, 8.0, 0.05))
        assert zero == pytest.approx(q / (q - 1.0), abs=1e-6)

    def test_positive_lambda_has_none(self):
        f = build(QExp(1.0), QContext(1.3, Variant.RIGHT), 128)
        assert first_zero(f, ScanRange(0.1, 10.0, 0.05)) is None

    def test_symmetric_gauss_zero_matches_high_precision_oracle(self):
        # frozen from a 60-digit scan of the symmetric series: 2.2976558005792106
        f = build(QGauss(1.0), QContext(1.3, Variant.SYMMETRIC), 128)
        zero = first_zero(f, ScanRange(0.5, 5.0, 0.05))
        assert zero == pytest.approx(2.2976558005792106, abs=1e-8)

    def test_scan_outside_radius_rejected(self):
        f = build(QExp(1.0), QContext(0.5, Variant.RIGHT), 64)
        with pytest.raises(ValueError):
            first_zero(f, ScanRange(0.1, 3.0, 0.05))  # R = 2

    def test_bad_step_rejected(self):
        f = build(QExp(1.0), QContext(1.3, Variant.RIGHT), 64)
        with pytest.raises(ValueError):
            first_zero(f, ScanRange(0.1, 2.0, 0.0))


class TestDeltaEigenProperty:
    @given(
        lam=st.floats(min_value=-3.0, max_value=3.0),
        q=st.sampled_from([0.5, 0.9, 1.1, 1.3, 2.0]),
        variant=st.sampled_from(list(Variant)),
    )
    @settings(max_examples=40, deadline=None)
    def test_delta_qexp_is_lambda_qexp(self, lam, q, variant):
        ctx = QContext(q, variant)
        f = build(QExp(lam), ctx, 32)
        image = opspace.op_delta(ctx, 32).apply(f.coeffs).coeffs
        target = lam * f.coeffs.coeffs
        scale = np.maximum(1.0, np.maximum(np.abs(image), np.abs(target)))
        assert (np.abs(image - target) / scale)[:32].max() < 1e-12


class TestGaussDefiningRelation:
    @pytest.mark.parametrize(
        "q,variant",
        [(1.3, Variant.RIGHT), (2.0, Variant.RIGHT), (0.7, Variant.SYMMETRIC), (1.3, Variant.SYMMETRIC)],
    )
    def test_delta_gauss_is_minus_two_lambda_beta_gauss(self, q, variant):
        ctx = QContext(q, variant)
        for lam in (1.0, 0.5):
            g = build(QGauss(lam), ctx, 40)
            lhs = opspace.op_delta(ctx, 40).apply(g.coeffs).coeffs
            rhs = -2.0 * lam * opspace.op_beta_x(ctx, 40).apply(g.coeffs).coeffs
            scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
            assert (np.abs(lhs - rhs) / scale)[:40].max() < 1e-12


class TestShiftedPower:
    @pytest.mark.parametrize("variant", list(Variant))
    def test_delta_lowers_exponent(self, variant):
        ctx = QContext(1.4, variant)
        for a, x0 in ((2.5, 1.0), (-0.5, 2.0)):
            f = build(QShiftedPower(a, x0), ctx, 32)
            lower = build(QShiftedPower(a - 1.0, x0), ctx, 32)
            lhs = opspace.op_delta(ctx, 32).apply(f.coeffs).coeffs
            rhs = a * lower.coeffs.coeffs
            scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
            assert (np.abs(lhs - rhs) / scale)[:32].max() < 1e-12

    def test_evaluates_toward_binomial(self):
        # a = -1, |x| < x0: series converges to 1/(x + x0)
        f = build(QShiftedPower(-1.0, 2.0), QContext(1.001, Variant.RIGHT), 96)
        got = evaluate(f, 0.5).value
        assert got == pytest.approx(1.0 / 2.5, rel=1e-2)


class TestContinuousLimits:
    @pytest.mark.parametrize("variant", list(Variant))
    def test_qexp_approaches_exp(self, variant):
        f = build(QExp(1.0), QContext(1.001, variant), 96)
        for x in np.linspace(0.0, 5.0, 6):
            assert evaluate(f, float(x)).value == pytest.approx(math.exp(x), rel=1e-2)

    @pytest.mark.parametrize("variant", [Variant.RIGHT, Variant.SYMMETRIC])
    def test_qgauss_approaches_gaussian(self, variant):
        f = build(QGauss(1.0), QContext(1.001, variant), 96)
        for x in np.linspace(0.0, 2.0, 6):
            got = evaluate(f, float(x)).value
            assert abs(got - math.exp(-x * x)) < 1e-2  # scaled to the unit peak


class TestHermite:
    @pytest.mark.parametrize("energy", [0.0, -1.0, -2.0, -4.0, 0.5])
    def test_residual_zero_by_construction(self, energy):
        f = build(QHermite(energy, 1.0, 0.5), QContext(1.3), 48)
        assert hermite_residual(f) <= 1e-13

    def test_termination_even_branch(self):
        # eigenvalue = 2m stops the even ladder beyond degree 2m
        for m in (0, 1, 2, 3):
            f = build(QHermite(float(2 * m), 1.0, 0.0), QContext(1.3), 32)
            assert np.all(f.coeffs.coeffs[2 * m + 1 :] == 0.0)
            assert f.coeffs.coeffs[2 * m] != 0.0

    def test_termination_odd_branch(self):
        for m in (0, 1, 2):
            f = build(QHermite(float(2 * m + 1), 0.0, 1.0), QContext(1.3), 32)
            assert np.all(f.coeffs.coeffs[2 * m + 2 :] == 0.0)
            assert f.coeffs.coeffs[2 * m + 1] != 0.0

    def test_negative_even_energy_does_not_terminate(self):
        # the recurrence (E - n) c_n can only vanish for non-negative E
        f = build(QHermite(-2.0, 1.0, 0.0), QContext(1.3), 32)
        assert np.count_nonzero(f.coeffs.coeffs[::2]) == 17

    def test_perturbation_scales_with_bracket_product(self):
        ctx = QContext(1.3)
        f = build(QHermite(0.5, 1.0, 0.0), ctx, 24)
        eps = 1e-6
        bumped = np.array(f.coeffs.coeffs)
        bumped[6] += eps
        g = qfun.QSeriesFunction(f.kind, ctx, opspace.CoeffSeries(bumped))
        expected = eps * q_bracket(ctx, 6) * q_bracket(ctx, 5)
        assert hermite_residual(g) == pytest.approx(expected, rel=0.5)

    def test_continuous_limit_ground_state(self):
        f = build(QHermite(-1.0, 1.0, 0.0), QContext(1.001), 96)
        for x in np.linspace(0.0, 2.0, 9):
            got = evaluate(f, float(x)).value
            assert got == pytest.approx(math.exp(-x * x / 2.0), rel=1e-2)

    def test_residual_requires_hermite_kind(self):
        f = build(QExp(1.0), QContext(1.3), 16)
        with pytest.raises(ValueError):
            hermite_residual(f)


class TestContinuousValue:
    def test_exp_and_gauss(self):
        assert continuous_value(QExp(2.0), 1.5) == pytest.approx(math.exp(3.0))
        assert continuous_value(QGauss(1.0), 2.0) == pytest.approx(math.exp(-4.0))

    def test_hermite_series_matches_closed_form(self):
        # E = -1 ground state: psi = exp(-x^2/2)
        for x in (0.0, 0.7, 1.9):
            got = continuous_value(QHermite(-1.0, 1.0, 0.0), x)
            assert got == pytest.approx(math.exp(-x * x / 2.0), rel=1e-12)
