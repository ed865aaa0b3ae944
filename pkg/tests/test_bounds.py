import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grover_entropy import analytic, bounds, dense

probs = st.floats(0, 1, allow_nan=False)


@pytest.mark.parametrize("u, expected", [(0, 0), (1, 0), (0.5, 1)])
def test_binary_entropy_values(u, expected):
    assert bounds.binary_entropy(u) == expected


def test_binary_entropy_near_half():
    assert bounds.binary_entropy(0.11) == pytest.approx(0.49991596, abs=1e-8)


def test_binary_entropy_rejects():
    for u in (-0.1, 1.1):
        with pytest.raises(ValueError):
            bounds.binary_entropy(u)


@given(probs)
def test_binary_entropy_symmetric(u):
    assert bounds.binary_entropy(u) == pytest.approx(bounds.binary_entropy(1 - u), abs=1e-12)
    assert 0 <= bounds.binary_entropy(u) <= 1


def test_fano_rhs_values():
    assert bounds.fano_rhs(0, 16) == 0
    assert bounds.fano_rhs(1, 16) == 4
    assert bounds.fano_rhs(0.5, 2**20) == pytest.approx(11.0)


def test_entropy_cap_endpoints():
    assert bounds.entropy_cap(1, 16) == (0, 0)
    cap = bounds.entropy_cap(1 / 16, 16)
    assert cap.tight == pytest.approx(4.0, abs=1e-12)
    assert cap.relaxed >= cap.tight
    with pytest.raises(ValueError):
        bounds.entropy_cap(0.01, 16)


@given(st.integers(2, 4096), probs)
def test_entropy_cap_tight_below_relaxed(n, frac):
    mu = 1 / n + frac * (1 - 1 / n)
    cap = bounds.entropy_cap(mu, n)
    assert cap.tight <= cap.relaxed + 1e-12
    assert cap.tight <= math.log2(n) + 1e-12


def test_entropy_cap_dominates_grover_entropy():
    psi = list(dense.grover_ensemble(16, 2))[-1]
    spec = dense.spectrum_of(dense.mix_columns(psi))
    assert dense.von_neumann_entropy(spec) <= bounds.entropy_cap(spec.sup_norm, 16).tight + 1e-9


def test_supnorm_requirement_values():
    assert bounds.supnorm_requirement(0, 2**20) == pytest.approx(0.1)
    assert bounds.supnorm_requirement(0.5, 2**10) == pytest.approx(0.7)


def test_query_lower_bound_headline():
    qb = bounds.query_lower_bound(0, 2**20)
    # 1024 * (1/(2 pi) +- 1/(20 pi))
    assert qb.paper_form == pytest.approx(1024 * (1 / (2 * math.pi) + 1 / (20 * math.pi)))
    assert qb.paper_form == pytest.approx(179.27, abs=0.01)
    assert qb.derived_form == pytest.approx(146.68, abs=0.01)
    assert analytic.optimal_iterations(2**20) > qb.paper_form


def test_query_lower_bound_vacuous_at_pe_one():
    assert bounds.query_lower_bound(1, 2**10).derived_form == 0


@given(st.integers(4, 2**30), probs, probs)
def test_query_lower_bound_monotone(n, a, b):
    lo, hi = sorted((a, b))
    assert bounds.query_lower_bound(hi, n).derived_form <= bounds.query_lower_bound(lo, n).derived_form


def test_audit_run_n4_exact():
    r = bounds.audit_run(4, 1)
    assert r.p_e == pytest.approx(0, abs=1e-15)
    assert r.entropy_final_bits == pytest.approx(2, abs=1e-12)
    assert r.mutual_info_bits == pytest.approx(2, abs=1e-12)
    assert r.holevo_slack == pytest.approx(0, abs=1e-12)


def test_audit_run_n16_no_queries():
    r = bounds.audit_run(16, 0)
    assert r.p_e == pytest.approx(15 / 16)
    assert r.mutual_info_bits == pytest.approx(0, abs=1e-12)
    assert r.entropy_final_bits == pytest.approx(0, abs=1e-12)
    assert r.delta_observed == 0


def test_audit_run_n256_k12():
    r = bounds.audit_run(256, 12)
    assert not r.failures()
    assert r.k_lower_derived_form <= 12
    assert r.delta_observed <= r.delta_bound


@pytest.mark.parametrize("n", [4, 16, 64])
def test_chain_soundness_sweep(n):
    for r in bounds.sweep(n, analytic.optimal_iterations(n) + 3):
        assert r.mutual_info_bits <= r.entropy_final_bits + 1e-9
        assert math.log2(n) - r.entropy_final_bits <= r.cond_entropy_bits + 1e-9
        assert r.cond_entropy_bits <= bounds.fano_rhs(r.p_e, n) + 1e-9
        assert not r.failures()


def test_analytic_audit_matches_dense():
    for K in range(4):
        d = bounds.audit_run(16, K)
        a = bounds.analytic_audit(16, K)
        for name in ("p_e", "entropy_final_bits", "mutual_info_bits", "sup_norm_final", "delta_observed"):
            assert getattr(a, name) == pytest.approx(getattr(d, name), abs=1e-10)


def test_analytic_audit_large_n():
    r = bounds.analytic_audit(2**20, 804)
    assert r.p_e < 1e-5
    assert not r.failures()


def test_audit_error_names_inequality():
    r = bounds.audit_run(16, 2)
    r.query_slack = -1.0
    assert r.failures() == [("query_slack", -1.0)]
    err = bounds.AuditError("query_slack", -1.0)
    assert "query_slack" in str(err)


def test_paper_form_is_not_sound_everywhere():
    # Grover runs that use fewer calls than the printed "+" form demands
    r = bounds.audit_run(16, 0)
    assert r.k_lower_paper_form > r.K
    assert r.k_lower_derived_form <= r.K
    r = bounds.analytic_audit(1024, 1)
    assert r.k_lower_paper_form > r.K
    assert r.k_lower_derived_form <= r.K
