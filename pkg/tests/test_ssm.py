import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from locomotif.ssm import compute_ssm, quantile_threshold


def test_direct_formula():
    S = compute_ssm([0.0, 1.0])
    assert S[0, 0] == 1.0
    assert S[0, 1] == pytest.approx(np.exp(-1), abs=1e-12)
    S2 = compute_ssm(np.array([[0.0, 0.0], [1.0, 1.0]]))
    assert S2[0, 1] == pytest.approx(np.exp(-2), abs=1e-12)
    assert S2[0, 1] == pytest.approx(0.13534, abs=1e-5)


@settings(max_examples=50)
@given(arrays(np.float64, st.tuples(st.integers(1, 30), st.integers(1, 3)),
              elements=st.floats(-5, 5)))
def test_symmetric_unit_diagonal_bounded(x):
    S = compute_ssm(x)
    np.testing.assert_array_equal(S, S.T)
    np.testing.assert_array_equal(np.diag(S), 1.0)
    assert np.all((S >= 0) & (S <= 1))


def test_only_diagonal_attains_one_for_distinct_samples():
    x = np.linspace(-1, 1, 20)
    S = compute_ssm(x)
    assert np.array_equal(S == 1.0, np.eye(20, dtype=bool))


def test_quantile_endpoints_and_interpolation():
    S = compute_ssm(np.random.default_rng(0).standard_normal(15))
    assert quantile_threshold(S, 0.0) == S.min()
    assert quantile_threshold(S, 1.0) == 1.0
    assert quantile_threshold(np.array([[0.1, 0.2], [0.3, 0.4]]), 0.5) == pytest.approx(0.25)


def test_quantile_monotone():
    S = compute_ssm(np.random.default_rng(1).standard_normal((40, 2)))
    taus = [quantile_threshold(S, r) for r in np.linspace(0, 1, 21)]
    assert all(a <= b for a, b in zip(taus, taus[1:]))


def test_quantile_rejects_out_of_range():
    with pytest.raises(ValueError):
        quantile_threshold(np.eye(2), 1.5)
