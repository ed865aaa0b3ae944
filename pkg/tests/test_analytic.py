import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grover_entropy import analytic, dense

CROSS_N = [2, 4, 8, 16, 64, 256]


@pytest.mark.parametrize(
    "n, expected", [(2, math.pi / 2), (4, math.pi / 3), (4, 1.0471975512)]
)
def test_grover_angle_small(n, expected):
    assert analytic.grover_angle(n) == pytest.approx(expected, abs=1e-10)


def test_grover_angle_large():
    n = 2**20
    theta = analytic.grover_angle(n)
    # cos(2 asin(a)) = 1 - 2 a^2, so theta = 2 asin(1/sqrt(N))
    assert theta == pytest.approx(2 * math.asin(1 / math.sqrt(n)), rel=1e-9)
    assert theta == pytest.approx(2 / 1024, rel=1e-6)
    assert 0.001953125 < theta < 0.001953126


def test_grover_angle_rejects_small():
    with pytest.raises(dense.InvalidDimensionError):
        analytic.grover_angle(1)


def test_closed_form_point_initial():
    p = analytic.closed_form_point(37, 0)
    assert (p.lambda1, p.lambda2, p.entropy_bits) == (1.0, 0.0, 0.0)
    assert p.success_prob == pytest.approx(1 / 37)


def test_closed_form_point_n4_step_one():
    p = analytic.closed_form_point(4, 1)
    assert p.lambda1 == pytest.approx(0.25, abs=1e-15)
    assert p.lambda2 == pytest.approx(0.25, abs=1e-15)
    assert p.entropy_bits == pytest.approx(2.0, abs=1e-12)
    assert p.success_prob == pytest.approx(1.0, abs=1e-15)


def test_closed_form_point_full_period():
    n = 2**20
    p = analytic.closed_form_point(n, analytic.period(n))
    assert p.entropy_bits == pytest.approx(0, abs=1e-6)


def test_closed_form_point_rejects_negative_time():
    with pytest.raises(ValueError):
        analytic.closed_form_point(4, -0.1)


@given(n=st.integers(2, 10**7), t=st.floats(0, 1e4))
def test_closed_form_invariants(n, t):
    p = analytic.closed_form_point(n, t)
    assert p.lambda1 + (n - 1) * p.lambda2 == pytest.approx(1, abs=1e-12)
    assert 0 <= p.lambda1 <= 1 and 0 <= p.lambda2 <= 1
    assert 0 <= p.entropy_bits <= math.log2(n) + 1e-12
    assert p.sup_norm == max(p.lambda1, p.lambda2)


@pytest.mark.parametrize("n, k", [(4, 1), (2**20, 804), (2, 1), (16, 3), (3, 1)])
def test_optimal_iterations(n, k):
    assert analytic.optimal_iterations(n) == k


def test_entropy_curve_sampling():
    curve = analytic.entropy_curve(16, 5, 0.5)
    ts = [p.t for p in curve]
    assert ts == [0.5 * j for j in range(11)]
    with pytest.raises(ValueError):
        analytic.entropy_curve(16, 5, 0)
    with pytest.raises(ValueError):
        analytic.entropy_curve(16, 0, 1)


def test_entropy_curve_two_periods_n2_20():
    n = 2**20
    per = analytic.period(n)
    assert per == pytest.approx(1608.5, abs=0.05)
    curve = analytic.entropy_curve(n, 3217, 1.0)
    ent = np.array([p.entropy_bits for p in curve])
    # the entropy returns to its minimum once per period
    for m in (1, 2):
        lo = int(m * per) - 50
        assert abs(lo + int(np.argmin(ent[lo : lo + 100])) - m * per) <= 0.5
    assert ent[0] == 0
    peak = int(np.argmax(ent[: int(per)]))
    assert 0 < peak < per
    assert ent.max() <= math.log2(n)


@pytest.mark.parametrize("n", [3, 16, 1000, 2**20])
def test_entropy_periodicity(n):
    per = analytic.period(n)
    for t in np.linspace(0, per, 37):
        a = analytic.closed_form_point(n, t).entropy_bits
        b = analytic.closed_form_point(n, t + per).entropy_bits
        assert a == pytest.approx(b, abs=1e-9)


@pytest.mark.parametrize("n", CROSS_N)
def test_closed_form_matches_dense(n):
    k_max = math.ceil(analytic.period(n))
    for k, psi in enumerate(dense.grover_ensemble(n, k_max)):
        spec = dense.spectrum_of(dense.mix_columns(psi))
        np.testing.assert_allclose(
            spec.eigenvalues, analytic.closed_form_spectrum(n, k), atol=1e-8
        )
        p = analytic.closed_form_point(n, k)
        assert dense.von_neumann_entropy(spec) == pytest.approx(p.entropy_bits, abs=1e-8)
        assert spec.sup_norm == pytest.approx(p.sup_norm, abs=1e-8)


@pytest.mark.parametrize("n", CROSS_N + [1024])
def test_success_at_optimum(n):
    k = analytic.optimal_iterations(n)
    p = analytic.closed_form_point(n, k)
    assert p.success_prob >= 1 - 4 / n
    final = dense.run_schedule(n, n // 3, k)[-1]
    assert p.success_prob == pytest.approx(final.success_probability, abs=1e-10)


@pytest.mark.parametrize("n", CROSS_N + [1024, 2**20])
def test_sup_norm_step_change_below_drift_bound(n):
    k_max = math.ceil(analytic.period(n))
    mus = [analytic.closed_form_point(n, k).sup_norm for k in range(k_max + 1)]
    assert max(abs(b - a) for a, b in zip(mus, mus[1:])) <= 2 * math.pi / math.sqrt(n)


def test_channel_mutual_information_matches_dense():
    n = 16
    for k, psi in enumerate(dense.grover_ensemble(n, 5)):
        mi = dense.mutual_information(dense.channel_from_columns(psi))
        assert analytic.grover_channel_mutual_information(n, k) == pytest.approx(mi, abs=1e-10)
