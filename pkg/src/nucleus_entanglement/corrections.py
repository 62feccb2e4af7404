"""
First-order energy corrections E1(n, N) for s-state products.

The closed form

    E1(n, N) = alpha hbar c r0^2 / (6 (a n)^3 (n!)^2) * (1/3 - 1/(2 pi^2 N^2))

drives all dynamics. :func:`correction_oracle` evaluates the diagonal matrix
element of the perturbation by nested radial quadrature, using the angular
average of the two proton Coulomb terms minus the point-nucleus term. The two
routes are kept independent and their disagreement is reported, never
reconciled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import ModelParams
from .quadrature import QuadratureSpec, adaptive_simpson
from .spectra import DomainError, electron_radial_density, nucleus_radial_density

__all__ = [
    "CorrectionSource",
    "CorrectionTable",
    "TableError",
    "MAX_ELECTRON_LEVEL",
    "ORACLE_MAX_ELECTRON_LEVEL",
    "ORACLE_MAX_NUCLEUS_LEVEL",
    "electron_factor",
    "nucleus_factor",
    "correction_prefactor",
    "correction_closed_form",
    "perturbation_angular_average",
    "correction_oracle",
    "nonadditive_gap",
    "build_correction_table",
]

MAX_ELECTRON_LEVEL = 20
ORACLE_MAX_ELECTRON_LEVEL = 3
ORACLE_MAX_NUCLEUS_LEVEL = 10


class CorrectionSource(enum.Enum):
    CLOSED_FORM = "closed-form"
    ORACLE = "oracle"


class TableError(ValueError):
    """Raised when a correction table cannot be built or violates its invariants."""


@dataclass(frozen=True, eq=False)
class CorrectionTable:
    """Dense matrix of corrections, ``values_eV[i, j] = E1(electron_levels[i], nucleus_levels[j])``.

    Direct construction only checks shapes; :func:`build_correction_table`
    additionally enforces the physical invariants.
    """

    electron_levels: tuple[int, ...]
    nucleus_levels: tuple[int, ...]
    values_eV: np.ndarray
    source: CorrectionSource = CorrectionSource.CLOSED_FORM

    def __post_init__(self):
        values = np.array(self.values_eV, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "electron_levels", tuple(int(n) for n in self.electron_levels))
        object.__setattr__(self, "nucleus_levels", tuple(int(N) for N in self.nucleus_levels))
        object.__setattr__(self, "values_eV", values)
        if values.shape != (len(self.electron_levels), len(self.nucleus_levels)):
            raise TableError(
                f"values shape {values.shape} does not match "
                f"{len(self.electron_levels)} x {len(self.nucleus_levels)} levels"
            )
        if len(set(self.electron_levels)) != len(self.electron_levels) or len(
            set(self.nucleus_levels)
        ) != len(self.nucleus_levels):
            raise TableError("level labels must be distinct")

    def electron_index(self, n: int) -> int:
        try:
            return self.electron_levels.index(n)
        except ValueError:
            raise KeyError(f"electron level {n} not in correction table") from None

    def nucleus_index(self, N: int) -> int:
        try:
            return self.nucleus_levels.index(N)
        except ValueError:
            raise KeyError(f"nucleus level {N} not in correction table") from None

    def value(self, n: int, N: int) -> float:
        return float(self.values_eV[self.electron_index(n), self.nucleus_index(N)])

    def submatrix(self, electron_levels: Sequence[int], nucleus_levels: Sequence[int]) -> np.ndarray:
        rows = [self.electron_index(n) for n in electron_levels]
        cols = [self.nucleus_index(N) for N in nucleus_levels]
        return self.values_eV[np.ix_(rows, cols)]


def _check_level(q, name):
    if isinstance(q, bool) or int(q) != q or q < 1:
        raise DomainError(f"{name} must be a positive integer, got {q!r}")


def electron_factor(n: int) -> float:
    """1 / (n^3 (n!)^2); evaluated through log-gamma above n = 10."""
    _check_level(n, "n")
    if n > MAX_ELECTRON_LEVEL:
        raise DomainError(f"n must be <= {MAX_ELECTRON_LEVEL}, got {n}")
    if n <= 10:
        return 1.0 / (n**3 * math.factorial(n) ** 2)
    return math.exp(-3.0 * math.log(n) - 2.0 * math.lgamma(n + 1))


def nucleus_factor(N: int) -> float:
    """1/3 - 1/(2 pi^2 N^2), the well average <K^2> in units of R_w^2."""
    _check_level(N, "N")
    return 1.0 / 3.0 - 1.0 / (2.0 * math.pi**2 * N * N)


def correction_prefactor(params: ModelParams) -> float:
    """alpha hbar c r0^2 / (6 a^3), in eV."""
    a = params.bohr_radius_m
    r0 = params.nucleon_core_radius_m
    return params.alpha * params.hbar_c_eV_m * r0 * r0 / (6.0 * a**3)


def correction_closed_form(n: int, N: int, params: ModelParams) -> float:
    """Closed-form first-order correction E1(n, N) in eV, for 1 <= n <= 20."""
    return correction_prefactor(params) * electron_factor(n) * nucleus_factor(N)


def perturbation_angular_average(R: float, K: float, params: ModelParams) -> float:
    """Angular average of the perturbation at radii ``R`` (electron) and ``K`` (core).

    Each term 1/|R -+ K/2| averages to 1/max(R, K/2), so the perturbation
    vanishes for R >= K/2 and equals 2 alpha hbar c (1/R - 2/K) inside.
    """
    half = 0.5 * K
    if R >= half:
        return 0.0
    return 2.0 * params.alpha * params.hbar_c_eV_m * (1.0 / R - 2.0 / K)


def correction_oracle(
    n: int,
    N: int,
    params: ModelParams,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Diagonal first-order matrix element <n N| H1 |n N> by nested quadrature.

    The inner integral runs over the electron radius R in (0, K/2), the only
    region where the angular-averaged perturbation is nonzero; the outer one
    over the core separation K in (0, R_w). The 1/R singularity is cancelled
    by the R^2 of the radial density.

    Raises
    ------
    DomainError
        Outside n in {1, 2, 3}, 1 <= N <= 10.
    ConvergenceError
        If either quadrature axis fails to converge.
    """
    if n not in range(1, ORACLE_MAX_ELECTRON_LEVEL + 1):
        raise DomainError(f"oracle supports n in 1..{ORACLE_MAX_ELECTRON_LEVEL}, got {n!r}")
    _check_level(N, "N")
    if N > ORACLE_MAX_NUCLEUS_LEVEL:
        raise DomainError(f"oracle supports N <= {ORACLE_MAX_NUCLEUS_LEVEL}, got {N}")

    rw = params.well_radius_m

    def inner(K: float) -> float:
        if K == 0.0:
            return 0.0
        half = 0.5 * K

        # R = half * y; the density's y^2 cancels 1/R, so y = 0 contributes 0
        def integrand(y: float) -> float:
            if y == 0.0:
                return 0.0
            R = half * y
            return electron_radial_density(n, R, params) * perturbation_angular_average(R, K, params)

        return half * adaptive_simpson(integrand, 0.0, 1.0, quad)

    def outer(x: float) -> float:
        K = rw * x
        return nucleus_radial_density(N, K, params) * inner(K)

    return rw * adaptive_simpson(outer, 0.0, 1.0, quad)


def nonadditive_gap(n: int, n2: int, N: int, N2: int, table: CorrectionTable) -> float:
    """E1(n,N) - E1(n2,N) - E1(n,N2) + E1(n2,N2); zero for any additive E1."""
    # grouped so that swapping n and n2 negates the result exactly
    return (table.value(n, N) - table.value(n2, N)) - (table.value(n, N2) - table.value(n2, N2))


def _check_levels(levels, name):
    levels = [int(q) for q in levels]
    if not levels:
        raise TableError(f"{name} must be nonempty")
    if any(q < 1 for q in levels):
        raise TableError(f"{name} must be positive")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise TableError(f"{name} must be sorted and distinct")
    return tuple(levels)


def build_correction_table(
    electron_levels: Sequence[int],
    nucleus_levels: Sequence[int],
    params: ModelParams,
    source: CorrectionSource | str = CorrectionSource.CLOSED_FORM,
    quad: QuadratureSpec = QuadratureSpec(),
) -> CorrectionTable:
    """Tabulate E1 over the given levels and verify the table invariants.

    All entries must be positive and increase with N; closed-form entries
    must also decrease with n.
    """
    source = CorrectionSource(source)
    ns = _check_levels(electron_levels, "electron_levels")
    Ns = _check_levels(nucleus_levels, "nucleus_levels")

    if source is CorrectionSource.CLOSED_FORM:
        if ns[-1] > MAX_ELECTRON_LEVEL:
            raise TableError(f"closed form supports n <= {MAX_ELECTRON_LEVEL}")
        values = np.array([[correction_closed_form(n, N, params) for N in Ns] for n in ns])
    else:
        if ns[-1] > ORACLE_MAX_ELECTRON_LEVEL or Ns[-1] > ORACLE_MAX_NUCLEUS_LEVEL:
            raise TableError(
                f"oracle source requires n <= {ORACLE_MAX_ELECTRON_LEVEL} "
                f"and N <= {ORACLE_MAX_NUCLEUS_LEVEL}"
            )
        values = np.array([[correction_oracle(n, N, params, quad) for N in Ns] for n in ns])

    if not np.all(values > 0):
        raise TableError("corrections must be strictly positive")
    if not np.all(np.diff(values, axis=1) > 0):
        raise TableError("corrections must increase with N")
    if source is CorrectionSource.CLOSED_FORM and not np.all(np.diff(values, axis=0) < 0):
        raise TableError("closed-form corrections must decrease with n")
    return CorrectionTable(ns, Ns, values, source)
