"""
Equilibrium purity from initial-state weights.

:func:`p_eq` is the typicality prediction

    P_eq = S_e + S_c - S_e S_c,   S_x = sum of squared weights,

which needs no dynamics. :func:`analytic_time_average` is the exact
infinite-time mean of the simulated purity; the two agree whenever no two
nucleus levels produce the same dephasing gap for an electron pair, which
:func:`degenerate_gap_report` audits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .corrections import CorrectionTable
from .dynamics import ProductState

__all__ = [
    "WeightProfile",
    "GapCollision",
    "GAP_REL_TOL",
    "p_eq",
    "weights_of",
    "analytic_time_average",
    "degenerate_gap_report",
]

GAP_REL_TOL = 1e-9


@dataclass(frozen=True)
class WeightProfile:
    weights_e: tuple[float, ...]
    weights_c: tuple[float, ...]

    def __post_init__(self):
        for name in ("weights_e", "weights_c"):
            w = tuple(float(x) for x in getattr(self, name))
            if not w or any(x < 0 for x in w):
                raise ValueError(f"{name} must be nonempty and nonnegative")
            if abs(math.fsum(w) - 1.0) > 1e-12:
                raise ValueError(f"{name} must sum to 1, got {math.fsum(w)!r}")
            object.__setattr__(self, name, w)

    @classmethod
    def uniform(cls, d_e: int, d_c: int) -> WeightProfile:
        return cls((1.0 / d_e,) * d_e, (1.0 / d_c,) * d_c)


def weights_of(state: ProductState) -> WeightProfile:
    # renormalize so the sum-to-one check is immune to rounding in |amp|^2
    we = state.electron_weights / math.fsum(state.electron_weights)
    wc = state.nucleus_weights / math.fsum(state.nucleus_weights)
    return WeightProfile(tuple(we), tuple(wc))


def p_eq(profile: WeightProfile) -> float:
    se = math.fsum(w * w for w in profile.weights_e)
    sc = math.fsum(w * w for w in profile.weights_c)
    return se + sc - se * sc


class GapCollision(NamedTuple):
    n: int
    n2: int
    N: int
    N2: int
    gap_eV: float


def _gaps_equal(g1: float, g2: float) -> bool:
    return math.isclose(g1, g2, rel_tol=GAP_REL_TOL, abs_tol=0.0)


def analytic_time_average(state: ProductState, table: CorrectionTable) -> float:
    """Infinite-time average of the electron purity under the dephasing dynamics.

    Expanding the purity gives terms W_n W_n' w_N w_N' exp(-i (gap(N) - gap(N')) t / hbar)
    with gap(N) = E1(n,N) - E1(n',N); only terms whose gaps coincide (to
    relative 1e-9) survive the average.
    """
    corr = table.submatrix(state.electron_levels, state.nucleus_levels)
    W = state.electron_weights
    w = state.nucleus_weights
    de, dc = state.dims
    terms = []
    for i in range(de):
        for j in range(de):
            gap = corr[i] - corr[j]
            for k in range(dc):
                for l in range(dc):
                    if k == l or _gaps_equal(gap[k], gap[l]):
                        terms.append(W[i] * W[j] * w[k] * w[l])
    return math.fsum(terms)


def degenerate_gap_report(state: ProductState, table: CorrectionTable) -> list[GapCollision]:
    """All (n, n', N, N') with n < n', N < N' whose dephasing gaps coincide.

    A state with a single electron level has only the trivial pair n = n',
    whose gaps are all zero; its N < N' pairs are then reported as degenerate
    by convention.
    """
    corr = table.submatrix(state.electron_levels, state.nucleus_levels)
    ns, Ns = state.electron_levels, state.nucleus_levels
    pairs = [(i, j) for i in range(len(ns)) for j in range(i + 1, len(ns))]
    if len(ns) == 1:
        pairs = [(0, 0)]
    out = []
    for i, j in pairs:
        gap = corr[i] - corr[j]
        for k in range(len(Ns)):
            for l in range(k + 1, len(Ns)):
                if _gaps_equal(gap[k], gap[l]):
                    out.append(GapCollision(ns[i], ns[j], Ns[k], Ns[l], float(gap[k])))
    return out
