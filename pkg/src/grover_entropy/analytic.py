"""Closed-form Grover dynamics, valid at any N.

The computer state after ``k`` iterations has a simple eigenvalue
``cos^2(theta k)`` and an ``(N-1)``-fold eigenvalue ``sin^2(theta k)/(N-1)``,
with ``theta = arccos(1 - 2/N)``.  Times may be real so that smooth
curves can be drawn; only integer times correspond to algorithm steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dense import check_dimension


@dataclass(frozen=True)
class ClosedFormPoint:
    n: int
    t: float
    lambda1: float
    lambda2: float
    entropy_bits: float
    sup_norm: float
    success_prob: float


def grover_angle(n: int) -> float:
    n = check_dimension(n)
    return math.acos(1.0 - 2.0 / n)


def period(n: int) -> float:
    """Period of the entropy curve, ``pi / theta`` oracle calls."""
    return math.pi / grover_angle(n)


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def closed_form_point(n: int, t: float) -> ClosedFormPoint:
    if t < 0:
        raise ValueError("time must be >= 0")
    theta = grover_angle(n)
    c = math.cos(theta * t)
    s = math.sin(theta * t)
    lam1 = c * c
    lam2 = s * s / (n - 1)
    entropy = -_xlog2x(lam1) - (n - 1) * _xlog2x(lam2)
    half = (2.0 * t + 1.0) * theta / 2.0
    return ClosedFormPoint(
        n=n,
        t=float(t),
        lambda1=lam1,
        lambda2=lam2,
        entropy_bits=entropy if entropy > 0.0 else 0.0,
        sup_norm=max(lam1, lam2),
        success_prob=math.sin(half) ** 2,
    )


def optimal_iterations(n: int) -> int:
    n = check_dimension(n)
    return math.floor(math.pi / 4.0 * math.sqrt(n))


def entropy_curve(n: int, t_max: float, dt: float) -> list[ClosedFormPoint]:
    """Sample ``closed_form_point`` at ``t = 0, dt, 2 dt, ... <= t_max``."""
    if dt <= 0 or t_max <= 0:
        raise ValueError("dt and t_max must be positive")
    count = math.floor(t_max / dt + 1e-9) + 1
    return [closed_form_point(n, j * dt) for j in range(count)]


def closed_form_spectrum(n: int, k: float) -> list[float]:
    """All ``n`` eigenvalues at time ``k``, sorted descending."""
    p = closed_form_point(n, k)
    vals = [p.lambda1] + [p.lambda2] * (n - 1)
    return sorted(vals, reverse=True)


def grover_channel_mutual_information(n: int, k: float) -> float:
    """I(X;Y) of the computational-basis readout after ``k`` iterations.

    Every row of the Grover channel is a permutation of
    ``(p, q, ..., q)`` with ``q = (1-p)/(N-1)``, so H(Y) = log2 N.
    """
    p = closed_form_point(n, k).success_prob
    q = (1.0 - p) / (n - 1)
    h_row = -_xlog2x(p) - (n - 1) * _xlog2x(q)
    return max(math.log2(n) - h_row, 0.0)
