import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracplace import (
    FracSystem,
    Pattern,
    gl_coefficient,
    gl_tails,
    is_observable_numeric,
    numeric_rank,
    observability_matrix,
    simulate,
    transition_factors,
)


def exact_gl(alpha: float, j: int) -> Fraction:
    """Arbitrary-precision product-recurrence oracle for the tail coefficient."""
    a = Fraction(alpha)  # exact binary value of the float input
    b = Fraction(1)
    for m in range(1, j + 2):
        b *= Fraction(a - m + 1, m)
    return -b if j % 2 else b


def lgamma_gl(alpha: float, j: int) -> float:
    """Gamma-quotient evaluation, defined only away from the poles."""
    m = j + 1
    x = alpha - m + 1
    if x > 0:
        sign = 1.0
    else:
        sign = -1.0 if (math.floor(-x) + 1) % 2 else 1.0
    # math.lgamma handles negative non-integer arguments directly
    log_binom = math.lgamma(alpha + 1) - math.lgamma(m + 1) - math.lgamma(x)
    binom = sign * math.exp(log_binom)
    return -binom if j % 2 else binom


nonintegral_orders = st.floats(0.05, 2.95).filter(
    lambda a: abs(a - round(a)) > 1e-3
)


class TestGlCoefficient:
    def test_integer_order_kills_tails(self):
        for j in range(1, 12):
            assert gl_coefficient(1.0, j) == 0.0
        assert gl_coefficient(2.0, 1) == -1.0  # C(2, 2) = 1
        for j in range(2, 12):
            assert gl_coefficient(2.0, j) == 0.0

    def test_half_order(self):
        assert gl_coefficient(0.5, 1) == 0.125

    def test_three_halves(self):
        assert gl_coefficient(1.5, 1) == -0.375

    def test_against_exact_oracle_at_reported_orders(self):
        for alpha in (0.5, 0.97, 1.0, 1.28, 2.5):
            for j in range(1, 51):
                want = exact_gl(alpha, j)
                got = gl_coefficient(alpha, j)
                if want == 0:
                    assert got == 0.0
                else:
                    assert abs(got - float(want)) <= 1e-12 * abs(float(want))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            gl_coefficient(float("nan"), 1)
        with pytest.raises(ValueError):
            gl_coefficient(float("inf"), 2)
        with pytest.raises(ValueError):
            gl_coefficient(0.5, 0)

    @given(alpha=nonintegral_orders, j=st.integers(1, 50))
    def test_matches_exact_recurrence(self, alpha, j):
        want = exact_gl(alpha, j)
        got = gl_coefficient(alpha, j)
        assert abs(got - float(want)) <= 1e-12 * max(1e-300, abs(float(want)))

    @given(alpha=nonintegral_orders, j=st.integers(1, 50))
    def test_matches_gamma_quotients_where_defined(self, alpha, j):
        got = gl_coefficient(alpha, j)
        via_gamma = lgamma_gl(alpha, j)
        assert got == pytest.approx(via_gamma, rel=1e-10)


class TestGlTails:
    def test_integer_orders_give_zero_table(self):
        sysm = FracSystem(np.zeros((2, 2)), [1.0, 1.0], 3)
        assert np.all(gl_tails(sysm).table == 0.0)

    def test_single_state_half_order(self):
        sysm = FracSystem([[0.0]], [0.5], 1)
        assert gl_tails(sysm).table.tolist() == [[0.125]]

    def test_mixed_orders(self):
        sysm = FracSystem(np.zeros((2, 2)), [0.5, 1.5], 1)
        assert gl_tails(sysm).table.tolist() == [[0.125], [-0.375]]

    def test_table_matches_scalar_function(self):
        rng = np.random.default_rng(0)
        alpha = rng.uniform(0.2, 2.8, size=5)
        sysm = FracSystem(np.zeros((5, 5)), alpha, 7)
        table = gl_tails(sysm).table
        for i in range(5):
            for j in range(1, 8):
                assert table[i, j - 1] == pytest.approx(
                    gl_coefficient(alpha[i], j), rel=1e-14, abs=1e-300
                )


class TestTransitionFactors:
    def test_worked_two_state_example(self):
        sysm = FracSystem([[0, 1], [0, 0]], [0.5, 0.5], 2)
        seq = transition_factors(sysm)
        assert np.array_equal(seq[0], [[0, 1], [0, 0]])
        assert np.array_equal(seq[1], np.zeros((2, 2)))
        assert np.array_equal(seq[2], [[0, 0.125], [0, 0]])

    def test_identity_with_integer_order(self):
        sysm = FracSystem(np.eye(2), [1.0, 1.0], 2)
        seq = transition_factors(sysm)
        for k in range(3):
            assert np.array_equal(seq[k], np.eye(2))

    def test_zero_horizon(self):
        A = np.arange(9.0).reshape(3, 3)
        seq = transition_factors(FracSystem(A, [0.7, 0.7, 0.7], 0))
        assert len(seq) == 1
        assert np.array_equal(seq[0], A)

    def test_recursion_identity_on_random_systems(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            n = int(rng.integers(1, 9))
            K = int(rng.integers(0, 11))
            A = rng.normal(size=(n, n))
            alpha = rng.uniform(0.2, 2.5, size=n)
            sysm = FracSystem(A, alpha, K)
            seq = transition_factors(sysm)
            tails = gl_tails(sysm).table
            for k in range(1, K + 1):
                expect = A @ seq[k - 1]
                for j in range(1, k):
                    expect = expect + tails[:, j - 1, None] * seq[k - 1 - j]
                err = np.linalg.norm(seq[k] - expect)
                assert err <= 1e-12 * max(1.0, np.linalg.norm(expect))

    def test_integer_order_degenerates_to_powers(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            A = rng.normal(size=(8, 8))
            sysm = FracSystem(A, np.ones(8), 5)
            seq = transition_factors(sysm)
            power = A.copy()
            for k in range(6):
                err = np.abs(seq[k] - power).max()
                assert err <= 1e-12 * max(1.0, np.abs(power).max())
                power = A @ power

    def test_refuses_oversized_dense_systems(self):
        with pytest.raises(ValueError):
            transition_factors(FracSystem(np.zeros((513, 513)), np.ones(513) * 0.5, 1))


class TestSimulate:
    def test_zero_initial_state(self):
        sysm = FracSystem([[0, 1], [1, 0]], [0.8, 0.8], 3)
        traj = simulate(sysm, [0, 0], 3)
        assert np.all(traj.states == 0.0)

    def test_worked_example(self):
        sysm = FracSystem([[0, 1], [0, 0]], [0.5, 0.5], 2)
        traj = simulate(sysm, [0, 1], 2)
        assert np.array_equal(traj[0], [0, 1])
        assert np.array_equal(traj[1], [0, 0])
        assert np.array_equal(traj[2], [0.125, 0])

    @given(scale=st.floats(-5, 5), shift=st.floats(-3, 3))
    @settings(max_examples=30)
    def test_superposition_in_x0(self, scale, shift):
        sysm = FracSystem([[0.3, 1.1], [0.2, 0.0]], [1.1, 0.9], 4)
        x0 = np.array([1.0, -2.0])
        y0 = np.array([shift, 0.5])
        base = simulate(sysm, x0, 4).states
        other = simulate(sysm, y0, 4).states
        combined = simulate(sysm, scale * x0 + y0, 4).states
        assert np.allclose(combined, scale * base + other, rtol=1e-12, atol=1e-12)

    def test_steps_beyond_horizon(self):
        sysm = FracSystem([[0.0]], [0.5], 2)
        with pytest.raises(ValueError):
            simulate(sysm, [1.0], 3)


class TestObservabilityMatrix:
    def test_identity_output_zero_horizon_returns_coupling(self):
        A = np.arange(16.0).reshape(4, 4)
        seq = transition_factors(FracSystem(A, np.full(4, 0.7), 0))
        assert np.array_equal(observability_matrix(np.eye(4), seq), A)

    def test_chain_single_row_stack(self):
        A = np.array([[0, 0, 0], [2.0, 0, 0], [0, 3.0, 0]])
        seq = transition_factors(FracSystem(A, np.full(3, 0.5), 2))
        C = np.array([[0.0, 0.0, 1.0]])
        M = observability_matrix(C, seq)
        assert M.shape == (3, 3)
        assert np.array_equal(M[0], A[2])
        assert np.array_equal(M[1], (A @ A)[2])

    def test_zero_output_matrix(self):
        seq = transition_factors(FracSystem(np.eye(2), [0.5, 0.5], 1))
        assert np.all(observability_matrix(np.zeros((2, 2)), seq) == 0.0)

    def test_accepts_pattern_output(self):
        seq = transition_factors(FracSystem(np.eye(2), [0.5, 0.5], 0))
        M = observability_matrix(Pattern.identity_columns(2, [1]).transpose(), seq)
        assert M.shape == (1, 2)

    def test_dimension_mismatch(self):
        seq = transition_factors(FracSystem(np.eye(2), [0.5, 0.5], 0))
        with pytest.raises(ValueError):
            observability_matrix(np.eye(3), seq)


class TestNumericRank:
    def test_identity(self):
        assert numeric_rank(np.eye(4), 1e-9) == 4

    def test_rank_one_outer_product(self):
        u = np.array([1.0, 2.0, -1.0])
        v = np.array([0.5, 3.0, 1.0, -2.0])
        assert numeric_rank(np.outer(u, v), 1e-9) == 1

    def test_duplicated_rows(self):
        rng = np.random.default_rng(9)
        M = rng.normal(size=(6, 6))
        M[3] = M[0]
        assert numeric_rank(M, 1e-9) == 5

    def test_empty_and_zero(self):
        assert numeric_rank(np.zeros((0, 3)), 1e-9) == 0
        assert numeric_rank(np.zeros((3, 3)), 1e-9) == 0

    def test_tolerance_validation(self):
        with pytest.raises(ValueError):
            numeric_rank(np.eye(2), 0.0)


class TestIsObservableNumeric:
    def test_full_sensor_set_on_identity(self):
        sysm = FracSystem(np.eye(3), np.full(3, 0.5), 3)
        assert is_observable_numeric(sysm, {0, 1, 2})

    def test_chain_sensor_at_sink_end(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            A = np.zeros((3, 3))
            A[1, 0] = rng.uniform(0.5, 1.5)
            A[2, 1] = rng.uniform(0.5, 1.5)
            sysm = FracSystem(A, rng.uniform(0.9, 1.3, 3), 3)
            assert is_observable_numeric(sysm, {2})

    def test_chain_sensor_at_source_end(self):
        A = np.zeros((3, 3))
        A[1, 0] = 1.3
        A[2, 1] = 0.7
        sysm = FracSystem(A, [1.1, 1.2, 0.97], 3)
        assert not is_observable_numeric(sysm, {0})

    def test_empty_sensor_set(self):
        sysm = FracSystem(np.eye(2), [0.5, 0.5], 2)
        assert not is_observable_numeric(sysm, set())

    def test_out_of_range_sensor(self):
        sysm = FracSystem(np.eye(2), [0.5, 0.5], 2)
        with pytest.raises(ValueError):
            is_observable_numeric(sysm, {5})


class TestFracSystemValidation:
    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            FracSystem(np.eye(2), [0.5], 1)

    def test_nonpositive_order(self):
        with pytest.raises(ValueError):
            FracSystem(np.eye(2), [0.5, 0.0], 1)

    def test_negative_horizon(self):
        with pytest.raises(ValueError):
            FracSystem(np.eye(2), [0.5, 0.5], -1)

    def test_default_horizon_is_dimension(self):
        assert FracSystem(np.eye(4), np.full(4, 0.5)).horizon == 4
