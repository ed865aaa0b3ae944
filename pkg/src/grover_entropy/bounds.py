"""Information inequalities behind the sqrt(N) query lower bound.

The chain, all in bits, for a run stopped after ``K`` oracle calls:

    log N - S(rho_C(K)) <= H(X|Y)                    (Holevo)
    H(X|Y) <= H2(P_e) + P_e log N                    (Fano)
    S(rho_C(K)) <= H2(mu_K) + (1 - mu_K) log N       (entropy cap)
    mu_K log N <= P_e log N + H2(P_e) + H2(mu_K)     (sup-norm bound)
    K >= (1 - mu_K) / Delta,  Delta <= 2 pi / sqrt(N)

Combining the last two gives ``K >= ((1-P_e)/2pi - 1/(pi log N)) sqrt(N)``.
The published statement of the result carries ``+ 1/(pi log N)`` instead;
both are computed and labelled, and only the minus form is treated as a
proven bound.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

from . import analytic
from .dense import (
    channel_from_columns,
    check_desk_scale,
    check_dimension,
    conditional_entropy,
    error_probability,
    grover_ensemble,
    mix_columns,
    mutual_information,
    spectrum_of,
    von_neumann_entropy,
)
from .flow import drift_bound

SLACK_TOL = 1e-9


class AuditError(AssertionError):
    def __init__(self, inequality: str, slack: float):
        super().__init__(f"{inequality} violated: slack {slack!r}")
        self.inequality = inequality
        self.slack = slack


def _check_probability(u: float, name: str = "probability") -> float:
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {u!r}")
    return float(u)


def binary_entropy(u: float) -> float:
    u = _check_probability(u)
    if u == 0.0 or u == 1.0:
        return 0.0
    return -u * math.log2(u) - (1.0 - u) * math.log2(1.0 - u)


def fano_rhs(p_e: float, n: int) -> float:
    """``H2(P_e) + P_e log2 N``, the relaxed Fano bound on H(X|Y)."""
    n = check_dimension(n)
    return binary_entropy(p_e) + p_e * math.log2(n)


class EntropyCap(NamedTuple):
    tight: float
    relaxed: float


def entropy_cap(mu: float, n: int) -> EntropyCap:
    """Largest entropy of an ``n``-dim state whose top eigenvalue is ``mu``."""
    n = check_dimension(n)
    if not 1.0 / n - 1e-12 <= mu <= 1.0 + 1e-12:
        raise ValueError(f"sup norm must lie in [1/n, 1], got {mu!r}")
    mu = min(max(mu, 1.0 / n), 1.0)
    rest = 1.0 - mu
    tight = -mu * math.log2(mu) if mu > 0 else 0.0
    if rest > 0:
        tight -= rest * math.log2(rest / (n - 1))
    relaxed = binary_entropy(mu) + rest * math.log2(n)
    return EntropyCap(tight, relaxed)


def supnorm_requirement(p_e: float, n: int) -> float:
    """Cap ``P_e + 2 / log2 N`` on the final sup norm."""
    n = check_dimension(n)
    return p_e + 2.0 / math.log2(n)


class QueryBound(NamedTuple):
    paper_form: float
    derived_form: float


def query_lower_bound(p_e: float, n: int) -> QueryBound:
    p_e = _check_probability(p_e, "p_e")
    n = check_dimension(n)
    root, log_n = math.sqrt(n), math.log2(n)
    base = (1.0 - p_e) / (2.0 * math.pi)
    corr = 1.0 / (math.pi * log_n)
    return QueryBound(
        paper_form=(base + corr) * root,
        derived_form=max((base - corr) * root, 0.0),
    )


@dataclass
class BoundReport:
    n: int
    K: int
    engine: str
    p_e: float
    entropy_final_bits: float
    mutual_info_bits: float
    cond_entropy_bits: float
    sup_norm_final: float
    delta_observed: float
    delta_bound: float
    k_lower_paper_form: float
    k_lower_derived_form: float
    holevo_slack: float
    fano_slack: float
    entropy_cap_slack: float
    supbound_slack: float
    relaxation_slack: float
    query_slack: float

    SLACKS = (
        "holevo_slack",
        "fano_slack",
        "entropy_cap_slack",
        "supbound_slack",
        "relaxation_slack",
        "query_slack",
    )

    def failures(self, tol: float = SLACK_TOL) -> list[tuple[str, float]]:
        return [(name, getattr(self, name)) for name in self.SLACKS if getattr(self, name) < -tol]

    def as_dict(self) -> dict:
        return asdict(self)


def _build_report(n, K, engine, p_e, entropy, mi, cond, mu, delta) -> BoundReport:
    log_n = math.log2(n)
    h_pe, h_mu = binary_entropy(p_e), binary_entropy(min(max(mu, 0.0), 1.0))
    qb = query_lower_bound(p_e, n)
    return BoundReport(
        n=n,
        K=K,
        engine=engine,
        p_e=p_e,
        entropy_final_bits=entropy,
        mutual_info_bits=mi,
        cond_entropy_bits=cond,
        sup_norm_final=mu,
        delta_observed=delta,
        delta_bound=drift_bound(n),
        k_lower_paper_form=qb.paper_form,
        k_lower_derived_form=qb.derived_form,
        holevo_slack=entropy - mi,
        fano_slack=fano_rhs(p_e, n) - cond,
        entropy_cap_slack=entropy_cap(mu, n).tight - entropy,
        supbound_slack=p_e * log_n + h_pe + h_mu - mu * log_n,
        relaxation_slack=2.0 - h_pe - h_mu,
        query_slack=K - qb.derived_form,
    )


def _finish(report: BoundReport, strict: bool) -> BoundReport:
    if strict:
        bad = report.failures()
        if bad:
            raise AuditError(*bad[0])
    return report


def audit_run(n: int, K: int, strict: bool = True) -> BoundReport:
    """Simulate ``K`` Grover iterations densely and evaluate the whole chain."""
    n = check_desk_scale(n)
    if K < 0:
        raise ValueError("K must be >= 0")
    sup_norms = []
    psi = None
    for psi in grover_ensemble(n, K):
        spec = spectrum_of(mix_columns(psi))
        sup_norms.append(spec.sup_norm)
    ch = channel_from_columns(psi)
    delta = max((abs(b - a) for a, b in zip(sup_norms, sup_norms[1:])), default=0.0)
    report = _build_report(
        n,
        K,
        "dense",
        p_e=error_probability(ch),
        entropy=von_neumann_entropy(spec),
        mi=mutual_information(ch),
        cond=conditional_entropy(ch),
        mu=spec.sup_norm,
        delta=delta,
    )
    return _finish(report, strict)


def analytic_audit(n: int, K: int, strict: bool = True) -> BoundReport:
    """Same chain as :func:`audit_run` from closed forms; usable at any ``n``."""
    n = check_dimension(n)
    if K < 0:
        raise ValueError("K must be >= 0")
    points = [analytic.closed_form_point(n, k) for k in range(K + 1)]
    final = points[-1]
    mi = analytic.grover_channel_mutual_information(n, K)
    delta = max((abs(b.sup_norm - a.sup_norm) for a, b in zip(points, points[1:])), default=0.0)
    report = _build_report(
        n,
        K,
        "analytic",
        p_e=min(max(1.0 - final.success_prob, 0.0), 1.0),
        entropy=final.entropy_bits,
        mi=mi,
        cond=math.log2(n) - mi,
        mu=final.sup_norm,
        delta=delta,
    )
    return _finish(report, strict)


def sweep(n: int, k_max: int, engine: str = "dense", strict: bool = True) -> list[BoundReport]:
    audit = {"dense": audit_run, "analytic": analytic_audit}[engine]
    return [audit(n, K, strict=strict) for K in range(k_max + 1)]

