"""
Eigenenergies and radial densities of the two decoupled subsystems.

The electron is hydrogenic with charge Z around a point nucleus and reduced
rest energy mu_e c^2. The nucleus relative coordinate K moves in an infinite
spherical well of radius R_w = 2 r0 with reduced rest energy M c^2 / 2.
Only s-states are modelled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .constants import ModelParams

__all__ = [
    "DomainError",
    "SubsystemKind",
    "SubsystemSpectrum",
    "electron_level_energy",
    "nucleus_level_energy",
    "electron_spectrum",
    "nucleus_spectrum",
    "nucleus_radial_density",
    "nucleus_mean_square_radius",
    "electron_radial_density",
]


class DomainError(ValueError):
    """Raised for quantum numbers or coordinates outside an operation's domain."""


class SubsystemKind(enum.Enum):
    ELECTRON = "electron"
    NUCLEUS = "nucleus"


@dataclass(frozen=True)
class SubsystemSpectrum:
    kind: SubsystemKind
    levels: tuple[tuple[int, float], ...]

    def __post_init__(self):
        qs = [q for q, _ in self.levels]
        es = [e for _, e in self.levels]
        if not qs or qs[0] != 1 or any(b != a + 1 for a, b in zip(qs, qs[1:])):
            raise ValueError("quantum numbers must run 1, 2, 3, ...")
        if any(b <= a for a, b in zip(es, es[1:])):
            raise ValueError("energies must increase with the quantum number")
        if self.kind is SubsystemKind.ELECTRON and es[-1] >= 0:
            raise ValueError("electron energies must be negative")
        if self.kind is SubsystemKind.NUCLEUS and es[0] <= 0:
            raise ValueError("nucleus energies must be positive")

    def energy(self, q: int) -> float:
        if not 1 <= q <= len(self.levels):
            raise KeyError(f"level {q} not in {self.kind.value} spectrum")
        return self.levels[q - 1][1]

    def energies(self, qs: Iterable[int]) -> list[float]:
        return [self.energy(q) for q in qs]


def _check_level(q: int, name: str) -> None:
    if isinstance(q, bool) or int(q) != q or q < 1:
        raise DomainError(f"{name} must be a positive integer, got {q!r}")


def electron_level_energy(n: int, params: ModelParams) -> float:
    """Hydrogenic s-level -mu_e c^2 (Z alpha)^2 / (2 n^2), in eV."""
    _check_level(n, "n")
    mu = params.reduced_electron_rest_energy_eV
    za = params.nuclear_charge * params.alpha
    return -mu * za * za / (2.0 * n * n)


def nucleus_level_energy(N: int, params: ModelParams) -> float:
    """s-wave level of the hard-wall well, (hbar c)^2 pi^2 N^2 / (M c^2 R_w^2)."""
    _check_level(N, "N")
    hc = params.hbar_c_eV_m
    rw = params.well_radius_m
    return (hc * math.pi * N) ** 2 / (params.proton_rest_energy_eV * rw * rw)


def electron_spectrum(n_max: int, params: ModelParams) -> SubsystemSpectrum:
    _check_level(n_max, "n_max")
    levels = tuple((n, electron_level_energy(n, params)) for n in range(1, n_max + 1))
    return SubsystemSpectrum(SubsystemKind.ELECTRON, levels)


def nucleus_spectrum(N_max: int, params: ModelParams) -> SubsystemSpectrum:
    _check_level(N_max, "N_max")
    levels = tuple((N, nucleus_level_energy(N, params)) for N in range(1, N_max + 1))
    return SubsystemSpectrum(SubsystemKind.NUCLEUS, levels)


def nucleus_radial_density(N: int, K: float, params: ModelParams) -> float:
    """Radial probability density (2/R_w) sin^2(N pi K / R_w), zero outside the well."""
    _check_level(N, "N")
    if K < 0:
        raise DomainError(f"K must be non-negative, got {K!r}")
    rw = params.well_radius_m
    if K > rw:
        return 0.0
    s = math.sin(N * math.pi * K / rw)
    return 2.0 / rw * s * s


def nucleus_mean_square_radius(N: int, params: ModelParams) -> float:
    """<K^2> = R_w^2 (1/3 - 1/(2 pi^2 N^2)) for the N-th well s-state."""
    _check_level(N, "N")
    rw = params.well_radius_m
    return rw * rw * (1.0 / 3.0 - 1.0 / (2.0 * math.pi**2 * N * N))


def _radial_s(n: int, x: float) -> float:
    # R_n0 * a^{3/2} as a function of x = r / a
    if n == 1:
        return 2.0 * math.exp(-x)
    if n == 2:
        return (1.0 - 0.5 * x) * math.exp(-0.5 * x) / math.sqrt(2.0)
    return (
        2.0 / (3.0 * math.sqrt(3.0))
        * (1.0 - 2.0 * x / 3.0 + 2.0 * x * x / 27.0)
        * math.exp(-x / 3.0)
    )


def electron_radial_density(n: int, R: float, params: ModelParams) -> float:
    """4 pi R^2 |psi_n0(R)|^2 for n in {1, 2, 3}, per meter.

    The length scale is :attr:`ModelParams.electron_length_scale_m`.
    """
    if n not in (1, 2, 3):
        raise DomainError(f"electron densities are available for n in {{1, 2, 3}}, got {n!r}")
    if R < 0:
        raise DomainError(f"R must be non-negative, got {R!r}")
    a = params.electron_length_scale_m
    x = R / a
    radial = _radial_s(n, x)
    return x * x * radial * radial / a
