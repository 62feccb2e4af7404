"""
Physical constants and model parameters for the two-subsystem He+ model.

Units are eV for energies, meters for lengths and seconds for times.
Masses are carried as rest energies so every formula is written with
``hbar_c_eV_m`` and rest energies, never kilograms.

Source
------
CODATA 2018 recommended values (NIST, May 2019):

=========================  ======================  =========
quantity                   value                   unit
=========================  ======================  =========
fine-structure constant    7.2973525693e-3         1
reduced Planck constant    6.582119569e-16         eV s
hbar * c                   197.3269804e-9          eV m
electron rest energy       0.51099895000e6         eV
proton rest energy         938.27208816e6          eV
Bohr radius                5.29177210903e-11       m
=========================  ======================  =========

The two-proton core radius r0 = 2.2e-15 m is the alpha-particle radius
from scattering data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

__all__ = [
    "ModelParams",
    "ParameterError",
    "default_params",
    "validate",
    "FINE_STRUCTURE",
    "HBAR_EV_S",
    "HBAR_C_EV_M",
    "ELECTRON_REST_ENERGY_EV",
    "PROTON_REST_ENERGY_EV",
    "BOHR_RADIUS_M",
    "CORE_RADIUS_M",
]

FINE_STRUCTURE = 7.2973525693e-3
HBAR_EV_S = 6.582119569e-16
HBAR_C_EV_M = 197.3269804e-9
ELECTRON_REST_ENERGY_EV = 0.51099895000e6
PROTON_REST_ENERGY_EV = 938.27208816e6
BOHR_RADIUS_M = 5.29177210903e-11
CORE_RADIUS_M = 2.2e-15

CANONICAL_CHARGE = 2


class ParameterError(ValueError):
    """Raised when a parameter set violates a model invariant."""


@dataclass(frozen=True)
class ModelParams:
    """Immutable parameter set for the He+ model.

    ``bohr_radius_m`` is the length ``a`` entering the closed-form energy
    correction. It is the infinite-nuclear-mass, Z=1 Bohr radius by default;
    the hydrogenic densities use their own reduced-mass, Z-scaled radius
    (:attr:`electron_length_scale_m`).
    """

    alpha: float = FINE_STRUCTURE
    hbar_eV_s: float = HBAR_EV_S
    hbar_c_eV_m: float = HBAR_C_EV_M
    electron_rest_energy_eV: float = ELECTRON_REST_ENERGY_EV
    proton_rest_energy_eV: float = PROTON_REST_ENERGY_EV
    nucleon_core_radius_m: float = CORE_RADIUS_M
    bohr_radius_m: float = BOHR_RADIUS_M
    nuclear_charge: int = CANONICAL_CHARGE

    @property
    def reduced_electron_rest_energy_eV(self) -> float:
        """mu_e c^2 = 2 M m c^2 / (2M + m), electron against the two-proton core."""
        M = self.proton_rest_energy_eV
        m = self.electron_rest_energy_eV
        return 2.0 * M * m / (2.0 * M + m)

    @property
    def well_radius_m(self) -> float:
        """Radius of the internuclear hard-wall well, twice the core radius."""
        return 2.0 * self.nucleon_core_radius_m

    @property
    def electron_length_scale_m(self) -> float:
        """Reduced-mass, Z-scaled Bohr radius used by the hydrogenic densities."""
        m_over_mu = self.electron_rest_energy_eV / self.reduced_electron_rest_energy_eV
        return self.bohr_radius_m * m_over_mu / self.nuclear_charge

    def with_overrides(self, **overrides) -> ModelParams:
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ParameterError(f"unknown parameter(s): {', '.join(unknown)}")
        return replace(self, **overrides)


def default_params() -> ModelParams:
    """Canonical CODATA 2018 parameter set with r0 = 2.2e-15 m and Z = 2."""
    return ModelParams()


def validate(params: ModelParams) -> list[str]:
    """Check the invariants of ``params``.

    Returns
    -------
    list of str
        Warning flags; empty for the canonical set. ``"non-canonical Z"`` is
        reported when ``nuclear_charge != 2``.

    Raises
    ------
    ParameterError
        On the first violated invariant, naming the offending field.
    """
    for f in fields(params):
        value = getattr(params, f.name)
        if f.name == "nuclear_charge":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParameterError("nuclear_charge must be an integer")
        if not math.isfinite(value) or value <= 0:
            raise ParameterError(f"{f.name} must be positive")

    mu = params.reduced_electron_rest_energy_eV
    if not 0.0 < mu < params.electron_rest_energy_eV:
        raise ParameterError("reduced electron rest energy must lie in (0, m c^2)")

    warnings = []
    if params.nuclear_charge != CANONICAL_CHARGE:
        warnings.append("non-canonical Z")
    return warnings
