"""
Exact dephasing dynamics of electron-nucleus product states.

The perturbation is treated as diagonal in the product eigenbasis, so a
product state evolves by pure phases,

    psi(t) = sum_{n,N} c_n d_N exp(-i E(n,N) t / hbar) |n>|N>,
    E(n,N) = E_n + E_N + E1(n,N),

and the reduced density matrices follow in closed form. No ODE is
integrated; every grid point is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .constants import HBAR_EV_S, ModelParams
from .corrections import CorrectionTable
from .spectra import SubsystemKind, SubsystemSpectrum, electron_spectrum, nucleus_spectrum

__all__ = [
    "StateError",
    "ProductState",
    "DensityMatrix",
    "PurityTrace",
    "TraceSummary",
    "make_product_state",
    "spectra_for",
    "reduced_density_matrix",
    "reduced_density_matrices",
    "purity_of",
    "purity_values",
    "purity_trace",
    "trace_summary",
]

# bound on the (time, level, level, level) phase array built per chunk
_CHUNK_ELEMENTS = 2**22


class StateError(ValueError):
    """Raised for malformed product states."""


def _normalized(pairs, name):
    pairs = list(pairs)
    if not pairs:
        raise StateError(f"{name} amplitudes must be nonempty")
    levels = [int(q) for q, _ in pairs]
    if any(q < 1 for q in levels):
        raise StateError(f"{name} levels must be positive integers")
    if len(set(levels)) != len(levels):
        raise StateError(f"duplicate {name} levels: {levels}")
    amps = np.array([complex(a) for _, a in pairs])
    order = np.argsort(levels, kind="stable")
    levels = tuple(levels[i] for i in order)
    amps = amps[order]
    norm = np.linalg.norm(amps)
    if norm == 0 or not np.isfinite(norm):
        raise StateError(f"{name} amplitude vector is zero")
    amps = amps / norm
    amps.setflags(write=False)
    return levels, amps


@dataclass(frozen=True, eq=False)
class ProductState:
    """Normalized product of an electron and a nucleus superposition."""

    electron_levels: tuple[int, ...]
    electron_amplitudes: np.ndarray
    nucleus_levels: tuple[int, ...]
    nucleus_amplitudes: np.ndarray

    @property
    def electron_weights(self) -> np.ndarray:
        return np.abs(self.electron_amplitudes) ** 2

    @property
    def nucleus_weights(self) -> np.ndarray:
        return np.abs(self.nucleus_amplitudes) ** 2

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.electron_levels), len(self.nucleus_levels)


def make_product_state(
    electron: Iterable[tuple[int, complex]],
    nucleus: Iterable[tuple[int, complex]],
) -> ProductState:
    """Build a :class:`ProductState` from ``(level, amplitude)`` pairs.

    Each subsystem vector is normalized independently; levels are sorted.

    >>> s = make_product_state([(1, 1), (2, 1)], [(1, 1), (2, 1)])
    >>> np.allclose(s.electron_amplitudes, 2**-0.5)
    True
    """
    e_levels, e_amps = _normalized(electron, "electron")
    n_levels, n_amps = _normalized(nucleus, "nucleus")
    return ProductState(e_levels, e_amps, n_levels, n_amps)


def spectra_for(state: ProductState, params: ModelParams) -> tuple[SubsystemSpectrum, SubsystemSpectrum]:
    """Electron and nucleus spectra covering every level of ``state``."""
    return (
        electron_spectrum(max(state.electron_levels), params),
        nucleus_spectrum(max(state.nucleus_levels), params),
    )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    kind: SubsystemKind
    levels: tuple[int, ...]
    matrix: np.ndarray

    def check(self, atol: float = 1e-12) -> None:
        """Raise ``ValueError`` unless hermitian, unit trace and positive semidefinite."""
        rho = self.matrix
        if not np.allclose(rho, rho.conj().T, rtol=0, atol=atol):
            raise ValueError("density matrix is not hermitian")
        if abs(np.trace(rho) - 1) > atol:
            raise ValueError(f"density matrix trace {np.trace(rho)} != 1")
        if np.linalg.eigvalsh(rho).min() < -1e-10:
            raise ValueError("density matrix has negative eigenvalues")


def _phase_inputs(state, table, spectra, kind):
    """Amplitudes, local and dephasing energy differences for one reduction.

    Returns ``(amps, local, gaps, weights)`` where ``local[i]`` is E_i - E_0
    of the kept subsystem, ``gaps[i, j, k]`` is the difference of corrections
    between kept levels i, j at traced level k (both in eV) and ``weights``
    are the traced-out probabilities. Differences are formed here, before any
    multiplication by time.
    """
    e_spec, n_spec = spectra
    corr = table.submatrix(state.electron_levels, state.nucleus_levels)
    if kind is SubsystemKind.ELECTRON:
        amps = state.electron_amplitudes
        energies = np.array(e_spec.energies(state.electron_levels))
        weights = state.nucleus_weights
        gap = corr[:, None, :] - corr[None, :, :]
    else:
        amps = state.nucleus_amplitudes
        energies = np.array(n_spec.energies(state.nucleus_levels))
        weights = state.electron_weights
        ct = corr.T
        gap = ct[:, None, :] - ct[None, :, :]
    return amps, energies - energies[0], gap, weights


def reduced_density_matrices(
    state: ProductState,
    table: CorrectionTable,
    spectra: tuple[SubsystemSpectrum, SubsystemSpectrum],
    times: Sequence[float] | np.ndarray,
    kind: SubsystemKind = SubsystemKind.ELECTRON,
    hbar_eV_s: float = HBAR_EV_S,
) -> np.ndarray:
    """Stack of reduced density matrices, shape ``(len(times), d, d)``."""
    kind = SubsystemKind(kind)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    amps, local_e, gap_e, weights = _phase_inputs(state, table, spectra, kind)
    local_w = local_e / hbar_eV_s
    gap_w = gap_e / hbar_eV_s

    d, k = gap_w.shape[0], gap_w.shape[2]
    out = np.empty((times.size, d, d), dtype=complex)
    step = max(1, _CHUNK_ELEMENTS // max(1, d * d * k))
    for start in range(0, times.size, step):
        t = times[start : start + step]
        dephase = np.exp(-1j * gap_w[None, :, :, :] * t[:, None, None, None]) @ weights
        # local evolution as a per-level phase vector: pairwise phases of MeV
        # levels at long times would be mutually inconsistent
        v = amps[None, :] * np.exp(-1j * local_w[None, :] * t[:, None])
        out[start : start + step] = v[:, :, None] * v.conj()[:, None, :] * dephase
    return out


def reduced_density_matrix(
    state: ProductState,
    table: CorrectionTable,
    spectra: tuple[SubsystemSpectrum, SubsystemSpectrum],
    t: float,
    kind: SubsystemKind = SubsystemKind.ELECTRON,
    hbar_eV_s: float = HBAR_EV_S,
) -> DensityMatrix:
    """Reduced state of one subsystem at time ``t`` (seconds).

    For the electron,

        rho_{nn'}(t) = c_n c_n'^* exp(-i (E_n - E_n') t / hbar)
                       * sum_N |d_N|^2 exp(-i (E1(n,N) - E1(n',N)) t / hbar)

    and symmetrically for the nucleus.
    """
    kind = SubsystemKind(kind)
    rho = reduced_density_matrices(state, table, spectra, [t], kind, hbar_eV_s)[0]
    levels = state.electron_levels if kind is SubsystemKind.ELECTRON else state.nucleus_levels
    return DensityMatrix(kind, levels, rho)


def purity_of(rho: DensityMatrix | np.ndarray) -> float:
    """Tr(rho^2) = sum |rho_ij|^2 for a hermitian ``rho``."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return float(np.sum(np.abs(m) ** 2))


def purity_values(
    state: ProductState,
    table: CorrectionTable,
    spectra: tuple[SubsystemSpectrum, SubsystemSpectrum],
    times: Sequence[float] | np.ndarray,
    kind: SubsystemKind = SubsystemKind.ELECTRON,
    hbar_eV_s: float = HBAR_EV_S,
) -> np.ndarray:
    rhos = reduced_density_matrices(state, table, spectra, times, kind, hbar_eV_s)
    return np.sum(np.abs(rhos) ** 2, axis=(1, 2))


@dataclass(frozen=True, eq=False)
class PurityTrace:
    times_s: np.ndarray
    purity: np.ndarray
    scenario: str = ""


@dataclass(frozen=True)
class TraceSummary:
    min: float
    argmin_s: float
    mean: float
    first_crossing: dict[float, float | None] = field(default_factory=dict)


def purity_trace(
    state: ProductState,
    table: CorrectionTable,
    spectra: tuple[SubsystemSpectrum, SubsystemSpectrum],
    t_max: float,
    num_points: int,
    hbar_eV_s: float = HBAR_EV_S,
    scenario: str = "",
) -> PurityTrace:
    """Electron purity on the uniform grid ``linspace(0, t_max, num_points)``."""
    if int(num_points) != num_points or num_points < 2:
        raise ValueError(f"num_points must be an integer >= 2, got {num_points!r}")
    if not (t_max > 0 and math.isfinite(t_max)):
        raise ValueError(f"t_max must be positive and finite, got {t_max!r}")
    times = np.linspace(0.0, t_max, int(num_points))
    p = purity_values(state, table, spectra, times, SubsystemKind.ELECTRON, hbar_eV_s)
    times.setflags(write=False)
    p.setflags(write=False)
    return PurityTrace(times, p, scenario)


def trace_summary(trace: PurityTrace, thresholds: Iterable[float] = (0.999,)) -> TraceSummary:
    """Grid statistics of a trace.

    ``first_crossing[thr]`` is the earliest grid time with purity strictly
    below ``thr``, or ``None``.
    """
    p = np.asarray(trace.purity)
    t = np.asarray(trace.times_s)
    if p.size == 0:
        raise ValueError("empty trace")
    i = int(np.argmin(p))
    crossings = {}
    for thr in thresholds:
        below = np.flatnonzero(p < thr)
        crossings[float(thr)] = float(t[below[0]]) if below.size else None
    return TraceSummary(float(p[i]), float(t[i]), float(np.mean(p)), crossings)
