"""Continuous-time fractional oracle and the eigenvalue drift it causes.

Each oracle call is split into the flow ``O_x(tau) = exp(-i tau H_x)``
with ``H_x = -pi |x><x|``, ``tau in [0, 1]``.  Along that flow the
eigenvalues of the computer state move at rate ``<u| d rho/dt |u>``,
which is bounded by ``(2 pi / sqrt(N)) sqrt(lambda)``.  Inversion about
the mean is applied at the end of each step and leaves the spectrum
alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .dense import (
    ConditionalState,
    check_desk_scale,
    ensemble_columns,
    grover_ensemble,
    invert_columns,
    mix_columns,
    spectrum_of,
)

#: Eigenvalues closer than this are treated as one degenerate cluster.
CLUSTER_TOL = 1e-10


class DriftBoundError(AssertionError):
    pass


def drift_bound(n: int) -> float:
    return 2.0 * math.pi / math.sqrt(n)


def oracle_phase(tau: float) -> complex:
    """``exp(i pi tau)``, exact at multiples of one half."""
    if float(2 * tau).is_integer():
        return (1, 1j, -1, -1j)[int(2 * tau) % 4]
    return complex(math.cos(math.pi * tau), math.sin(math.pi * tau))


def hamiltonian(n: int, x: int) -> np.ndarray:
    h = np.zeros((n, n), dtype=np.complex128)
    h[x, x] = -math.pi
    return h


def fractional_oracle(state: ConditionalState, tau: float) -> ConditionalState:
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau!r}")
    amps = state.amplitudes.copy()
    amps[state.target] *= oracle_phase(tau)
    return ConditionalState(amps, state.target)


def fractional_oracle_columns(psi: np.ndarray, tau: float) -> np.ndarray:
    """Batched ``O_x(tau)``; no range check so it can be used for finite differences."""
    out = np.array(psi, dtype=np.complex128)
    idx = np.arange(out.shape[1])
    out[idx, idx] *= oracle_phase(tau)
    return out


def flow_rho(states_at_k0: Sequence[ConditionalState], tau: float) -> np.ndarray:
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau!r}")
    return mix_columns(fractional_oracle_columns(ensemble_columns(states_at_k0), tau))


def rho_dot_columns(psi: np.ndarray) -> np.ndarray:
    # sum_x |x><x| rho_x has row x equal to psi_x[x] * conj(psi_x)
    n = psi.shape[1]
    idx = np.arange(n)
    m = psi[idx, idx][:, None] * psi.conj().T
    return (1j * math.pi / n) * (m - m.conj().T)


def rho_time_derivative(states: Sequence[ConditionalState]) -> np.ndarray:
    """``-(i/N) sum_x [H_x, rho_x]`` for the given conditional states."""
    return rho_dot_columns(ensemble_columns(states))


def _eigen_flow(rho: np.ndarray, rho_dot: np.ndarray, tol: float = CLUSTER_TOL):
    """Eigenpairs of ``rho`` (descending) with branch derivatives.

    Inside a degenerate cluster the eigenvectors are rotated to diagonalize
    ``rho_dot`` restricted to the cluster, so each returned vector follows
    a differentiable branch to first order.
    """
    lam, vecs = np.linalg.eigh(rho)
    lam = lam[::-1].copy()
    vecs = vecs[:, ::-1].astype(np.complex128)
    dlam = np.empty_like(lam)
    start = 0
    n = lam.shape[0]
    while start < n:
        stop = start + 1
        while stop < n and lam[stop - 1] - lam[stop] <= tol:
            stop += 1
        block = vecs[:, start:stop]
        restricted = block.conj().T @ rho_dot @ block
        off = restricted - np.diag(np.diag(restricted))
        if stop - start == 1 or np.max(np.abs(off)) <= 1e-14:
            # already diagonal: the current basis follows the branches
            dlam[start:stop] = np.diag(restricted).real
        else:
            mu, w = np.linalg.eigh((restricted + restricted.conj().T) / 2)
            mu, w = mu[::-1], w[:, ::-1]
            vecs[:, start:stop] = block @ w
            dlam[start:stop] = mu
        start = stop
    return lam, vecs, dlam


def eigenvalue_derivative(rho: np.ndarray, rho_dot: np.ndarray) -> np.ndarray:
    """``d lambda / dt = <u| rho_dot |u>`` per eigenpair, eigenvalues descending."""
    return _eigen_flow(np.asarray(rho), np.asarray(rho_dot))[2]


def match_branches(prev_vecs: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Permutation ``p`` with ``vecs[:, p[b]]`` continuing branch ``b``.

    Branches are paired by maximal total overlap ``|<u_b|v_j>|^2``.
    """
    overlap = np.abs(prev_vecs.conj().T @ vecs) ** 2
    rows, cols = linear_sum_assignment(overlap, maximize=True)
    perm = np.empty_like(cols)
    perm[rows] = cols
    return perm


def finite_difference_derivatives(psi_k0: np.ndarray, tau: float, h: float = 1e-5):
    """Analytic and central-difference branch derivatives at ``k0 + tau``.

    Returns ``(analytic, numeric)`` aligned branch by branch; the
    eigenpairs at ``tau +- h`` are matched to the branches at ``tau`` by
    eigenvector overlap, so crossings do not scramble the pairing.
    """
    phi = fractional_oracle_columns(psi_k0, tau)
    _, vecs, dlam = _eigen_flow(mix_columns(phi), rho_dot_columns(phi))
    lam_p, vec_p = np.linalg.eigh(mix_columns(fractional_oracle_columns(psi_k0, tau + h)))
    lam_m, vec_m = np.linalg.eigh(mix_columns(fractional_oracle_columns(psi_k0, tau - h)))
    fd = (lam_p[match_branches(vecs, vec_p)] - lam_m[match_branches(vecs, vec_m)]) / (2 * h)
    return dlam, fd


@dataclass
class FlowSample:
    """Eigenvalues and derivatives at time ``t``, indexed by tracked branch."""

    t: float
    eigenvalues: np.ndarray
    d_lambda_dt: np.ndarray


@dataclass
class DriftReport:
    n: int
    k_max: int
    grid: int
    bound: float
    sup_norms: list[float]
    delta_observed: float
    max_abs_derivative: float
    max_sharp_excess: float
    max_derivative_sum: float
    samples: list[FlowSample] = field(repr=False, default_factory=list)

    @property
    def margin(self) -> float:
        return self.bound - self.delta_observed

    @property
    def passed(self) -> bool:
        return (
            self.delta_observed <= self.bound + 1e-10
            and self.max_abs_derivative <= self.bound + 1e-8
            and self.max_sharp_excess <= 1e-8
            and self.max_derivative_sum <= 1e-8
        )


def drift_audit(n: int, k_max: int | None = None, grid: int = 64, strict: bool = True) -> DriftReport:
    """Run Grover for ``k_max`` steps and measure how fast the spectrum moves.

    The sup norm is evaluated at integer steps only, so ``delta_observed``
    does not depend on ``grid``.  Within each step the fractional oracle is
    sampled at ``tau = j / grid`` and the branch derivatives recorded.
    """
    from .analytic import optimal_iterations

    n = check_desk_scale(n)
    if k_max is None:
        k_max = optimal_iterations(n)
    if grid < 2:
        raise ValueError("grid must be >= 2")
    bound = drift_bound(n)

    sup_norms: list[float] = []
    samples: list[FlowSample] = []
    prev_vecs = None
    max_abs = max_excess = max_sum = 0.0

    def record(t, phi):
        nonlocal prev_vecs, max_abs, max_excess, max_sum
        lam, vecs, dlam = _eigen_flow(mix_columns(phi), rho_dot_columns(phi))
        if prev_vecs is not None:
            perm = match_branches(prev_vecs, vecs)
            lam, vecs, dlam = lam[perm], vecs[:, perm], dlam[perm]
        prev_vecs = vecs
        samples.append(FlowSample(t, lam, dlam))
        max_abs = max(max_abs, float(np.max(np.abs(dlam))))
        sharp = bound * np.sqrt(np.clip(lam, 0.0, None))
        max_excess = max(max_excess, float(np.max(np.abs(dlam) - sharp)))
        max_sum = max(max_sum, abs(float(dlam.sum())))

    psi_last = None
    for k0, psi in enumerate(grover_ensemble(n, k_max)):
        norms = np.linalg.norm(psi, axis=0)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ArithmeticError("conditional states lost purity/normalization")
        sup_norms.append(spectrum_of(mix_columns(psi)).sup_norm)
        if prev_vecs is not None:
            # inversion about the mean closes the previous step
            prev_vecs = invert_columns(prev_vecs)
        if k0 == k_max:
            psi_last = psi
            break
        for j in range(grid):
            record(k0 + j / grid, fractional_oracle_columns(psi, j / grid))
    record(float(k_max), np.asarray(psi_last, dtype=np.complex128))

    delta = max((abs(b - a) for a, b in zip(sup_norms, sup_norms[1:])), default=0.0)
    report = DriftReport(
        n=n,
        k_max=k_max,
        grid=grid,
        bound=bound,
        sup_norms=sup_norms,
        delta_observed=delta,
        max_abs_derivative=max_abs,
        max_sharp_excess=max_excess,
        max_derivative_sum=max_sum,
        samples=samples,
    )
    if strict and not report.passed:
        raise DriftBoundError(
            f"drift bound violated for n={n}: delta={delta!r}, "
            f"max|dl/dt|={max_abs!r}, bound={bound!r}, sharp excess={max_excess!r}"
        )
    return report
