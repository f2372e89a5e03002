"""Exact power spectra of constrained binary codes."""

from ._cspec import (
    CapacityError,
    ComputationError,
    UsageError,
    __version__,
    autocorr,
    bandwidth,
    clocked_ostd,
    codebook,
    monte_carlo,
    ostm,
    psd,
)

__all__ = [
    "CapacityError",
    "ComputationError",
    "UsageError",
    "__version__",
    "autocorr",
    "bandwidth",
    "clocked_ostd",
    "codebook",
    "monte_carlo",
    "ostm",
    "psd",
]
