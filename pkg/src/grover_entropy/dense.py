"""Brute-force density-matrix simulation of quantum search.

The joint target/computer state is block diagonal, so it is never built.
A run is stored as one pure conditional state per target, and the
computer state is the uniform mixture of those.  Batched helpers work on
an ``(n, n)`` array whose column ``x`` is the conditional state for
target ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

#: Largest dimension accepted by the O(n^3) eigensolver paths.
DESK_LIMIT = 2048

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10


class InvalidDimensionError(ValueError):
    pass


class DeskScaleError(ValueError):
    """Raised when a brute-force path is asked for ``n > DESK_LIMIT``."""


class NonHermitianError(ValueError):
    pass


def check_dimension(n: int) -> int:
    if int(n) != n or n < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {n!r}")
    return int(n)


def check_desk_scale(n: int) -> int:
    n = check_dimension(n)
    if n > DESK_LIMIT:
        raise DeskScaleError(
            f"n={n} exceeds the dense limit of {DESK_LIMIT}; use the analytic engine"
        )
    return n


@dataclass(frozen=True, eq=False)
class ConditionalState:
    """Pure computer state conditioned on the target being ``target``."""

    amplitudes: np.ndarray
    target: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise InvalidDimensionError("amplitudes must be a 1-D vector")
        check_dimension(amps.shape[0])
        if not 0 <= self.target < amps.shape[0]:
            raise ValueError(f"target {self.target} outside [0, {amps.shape[0]})")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def success_probability(self) -> float:
        return float(abs(self.amplitudes[self.target]) ** 2)

    def fidelity(self, other: ConditionalState) -> float:
        """``|<other|self>|``; equals 1 for states equal up to global phase."""
        return float(abs(np.vdot(other.amplitudes, self.amplitudes)))


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray  # descending

    @property
    def sup_norm(self) -> float:
        return float(self.eigenvalues[0])

    def distinct(self, tol: float = 1e-8) -> list[tuple[float, int]]:
        """Cluster eigenvalues closer than ``tol``; returns (value, multiplicity) pairs."""
        groups: list[list[float]] = []
        for lam in self.eigenvalues:
            if groups and groups[-1][-1] - lam <= tol:
                groups[-1].append(float(lam))
            else:
                groups.append([float(lam)])
        return [(float(np.mean(g)), len(g)) for g in groups]


# -- single-state operators ------------------------------------------------


def uniform_superposition(n: int) -> np.ndarray:
    n = check_dimension(n)
    return np.full(n, np.sqrt(1.0 / n))


def initial_state(n: int, target: int) -> ConditionalState:
    return ConditionalState(uniform_superposition(n), target)


def basis_state(n: int, index: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.complex128)
    e[index] = 1.0
    return e


def oracle_reflect(state: ConditionalState) -> ConditionalState:
    """Apply ``I - 2|x><x|``: flip the sign of the target amplitude."""
    amps = state.amplitudes.copy()
    amps[state.target] = -amps[state.target]
    return ConditionalState(amps, state.target)


def inversion_about_mean(state: ConditionalState) -> ConditionalState:
    """Apply ``2|s><s| - I``: ``a_y -> 2 mean(a) - a_y``."""
    amps = state.amplitudes
    return ConditionalState(2.0 * amps.mean() - amps, state.target)


def grover_iterate(state: ConditionalState) -> ConditionalState:
    return inversion_about_mean(oracle_reflect(state))


def run_schedule(n: int, x: int, k: int) -> list[ConditionalState]:
    """States after 0, 1, ..., k Grover iterations for target ``x``."""
    if k < 0:
        raise ValueError("step count must be >= 0")
    states = [initial_state(n, x)]
    for _ in range(k):
        states.append(grover_iterate(states[-1]))
    return states


# -- batched ensemble (column x = conditional state for target x) ------------


def ensemble_columns(states: Sequence[ConditionalState]) -> np.ndarray:
    if len(states) == 0:
        raise InvalidDimensionError("empty ensemble")
    n = states[0].n
    if any(s.n != n for s in states):
        raise InvalidDimensionError("conditional states have mismatched dimensions")
    return np.stack([s.amplitudes for s in states], axis=1)


def ensemble_states(psi: np.ndarray) -> list[ConditionalState]:
    return [ConditionalState(psi[:, x], x) for x in range(psi.shape[1])]


def reflect_columns(psi: np.ndarray) -> np.ndarray:
    """Oracle on every conditional: column ``x`` gets its entry ``x`` negated."""
    out = psi.copy()
    idx = np.arange(psi.shape[1])
    out[idx, idx] = -out[idx, idx]
    return out


def invert_columns(psi: np.ndarray) -> np.ndarray:
    return 2.0 * psi.mean(axis=0, keepdims=True) - psi


def grover_ensemble(n: int, k: int) -> Iterator[np.ndarray]:
    """Yield the ensemble matrix at steps 0..k for every target at once."""
    n = check_dimension(n)
    if k < 0:
        raise ValueError("step count must be >= 0")
    psi = np.full((n, n), np.sqrt(1.0 / n))
    yield psi
    for _ in range(k):
        psi = invert_columns(reflect_columns(psi))
        yield psi


def mix_columns(psi: np.ndarray) -> np.ndarray:
    n = psi.shape[1]
    return (psi @ psi.conj().T) / n


def mix_conditionals(states: Sequence[ConditionalState]) -> np.ndarray:
    """Computer state ``(1/N) sum_x |psi_x><psi_x|`` under a uniform prior."""
    psi = ensemble_columns(states)
    if psi.shape[1] != psi.shape[0]:
        raise InvalidDimensionError(
            f"need one conditional state per target ({psi.shape[0]}), got {psi.shape[1]}"
        )
    return mix_columns(psi)


# -- spectra and entropy -----------------------------------------------------


def _as_hermitian(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {rho.shape}")
    scale = max(1.0, float(np.max(np.abs(rho))))
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL * scale:
        raise NonHermitianError("matrix is not Hermitian within tolerance")
    if np.iscomplexobj(rho) and not np.any(rho.imag):
        # real symmetric path is several times faster
        rho = rho.real
    return rho


def validate_density_matrix(rho: np.ndarray, psd_tol: float = 1e-10) -> np.ndarray:
    rho = _as_hermitian(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"trace is {tr!r}, expected 1")
    if np.linalg.eigvalsh(rho)[0] < -psd_tol:
        raise ValueError("matrix is not positive semidefinite")
    return rho


def spectrum_of(rho: np.ndarray) -> Spectrum:
    rho = _as_hermitian(rho)
    lam = np.linalg.eigvalsh(rho)[::-1].copy()
    if abs(lam.sum() - np.trace(rho).real) > 1e-9:
        raise ArithmeticError("eigenvalue sum does not reproduce the trace")
    lam.setflags(write=False)
    return Spectrum(lam)


def gram_spectrum(psi: np.ndarray) -> Spectrum:
    """Spectrum of ``mix_columns(psi)`` from the Gram matrix ``psi^H psi / N``.

    The nonzero eigenvalues of ``A A^H`` and ``A^H A`` coincide; when there
    are as many conditionals as dimensions the two spectra are identical.
    """
    m = psi.shape[1]
    gram = (psi.conj().T @ psi) / m
    lam = np.linalg.eigvalsh(_as_hermitian(gram))[::-1]
    n = psi.shape[0]
    if m < n:
        lam = np.concatenate([lam, np.zeros(n - m)])
    else:
        lam = lam[:n]
    lam = lam.copy()
    lam.setflags(write=False)
    return Spectrum(lam)


def entropy_bits(probs) -> float:
    """Shannon entropy in bits of a probability vector, ``0 log 0 = 0``."""
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(spec: Spectrum) -> float:
    lam = spec.eigenvalues
    if lam[-1] < -1e-10:
        raise ValueError(f"negative eigenvalue {lam[-1]!r}")
    return entropy_bits(lam)


# -- measurement -------------------------------------------------------------


def channel_from_columns(psi: np.ndarray) -> np.ndarray:
    return np.abs(psi.T) ** 2


def measurement_channel(final_states: Sequence[ConditionalState]) -> np.ndarray:
    """Computational-basis readout: ``probs[x, y] = |<y|psi_x>|^2``."""
    return channel_from_columns(ensemble_columns(final_states))


def check_channel(ch: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    ch = np.asarray(ch, dtype=float)
    if ch.ndim != 2 or ch.shape[0] != ch.shape[1]:
        raise InvalidDimensionError(f"channel must be square, got {ch.shape}")
    if np.any(ch < -tol) or np.any(ch > 1 + tol):
        raise ValueError("channel entries outside [0, 1]")
    if np.max(np.abs(ch.sum(axis=1) - 1.0)) > tol:
        raise ValueError("channel rows do not sum to 1")
    return ch


def error_probability(ch: np.ndarray) -> float:
    ch = check_channel(ch)
    pe = 1.0 - float(np.trace(ch)) / ch.shape[0]
    return min(max(pe, 0.0), 1.0)


def mutual_information(ch: np.ndarray) -> float:
    """I(X;Y) = H(Y) - H(Y|X) in bits for a uniform input."""
    ch = check_channel(ch)
    n = ch.shape[0]
    h_y = entropy_bits(ch.mean(axis=0))
    h_y_given_x = sum(entropy_bits(row) for row in ch) / n
    return max(h_y - h_y_given_x, 0.0)


def conditional_entropy(ch: np.ndarray) -> float:
    """H(X|Y) = log2 N - I(X;Y) for a uniform input."""
    ch = check_channel(ch)
    return float(np.log2(ch.shape[0])) - mutual_information(ch)
