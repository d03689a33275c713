"""Single-photon emission and scattering spectra of a linear plus quadratic optomechanical cavity."""

from ._optospec import (
    DomainError,
    ModelParams,
    NumericError,
    TruncationError,
    UsageError,
    ValidationError,
    analyze,
    eigen_energy,
    emission,
    energy_shift,
    infer_couplings,
    scattering,
    sideband_location,
    sideband_weights,
    sub_peak_spacing,
    transition_matrix,
    unit_integral,
    verify,
)

__all__ = [
    "DomainError",
    "ModelParams",
    "NumericError",
    "TruncationError",
    "UsageError",
    "ValidationError",
    "analyze",
    "eigen_energy",
    "emission",
    "energy_shift",
    "infer_couplings",
    "scattering",
    "sideband_location",
    "sideband_weights",
    "sub_peak_spacing",
    "transition_matrix",
    "unit_integral",
    "verify",
]
