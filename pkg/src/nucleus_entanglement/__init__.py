"""Electron-nucleus entanglement in a two-subsystem He+ model.

The nucleus is kept as a quantum subsystem (two protons in a hard-wall
well) instead of a fixed Coulomb centre. Its first-order, nonadditive
coupling to the electron dephases product states; this package computes
the subsystem spectra, the corrections, the exact purity dynamics and the
equilibrium purity.
"""

from .constants import ModelParams, ParameterError, default_params, validate
from .corrections import (
    CorrectionSource,
    CorrectionTable,
    build_correction_table,
    correction_closed_form,
    correction_oracle,
    nonadditive_gap,
)
from .dynamics import (
    DensityMatrix,
    ProductState,
    PurityTrace,
    make_product_state,
    purity_of,
    purity_trace,
    reduced_density_matrix,
    spectra_for,
    trace_summary,
)
from .equilibrium import WeightProfile, analytic_time_average, degenerate_gap_report, p_eq
from .quadrature import ConvergenceError, QuadratureSpec
from .spectra import (
    SubsystemKind,
    SubsystemSpectrum,
    electron_level_energy,
    nucleus_level_energy,
)

__version__ = "0.1.0"
