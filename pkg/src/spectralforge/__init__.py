"""Spectrum realization, integrability certificates and spectral statistics."""

from .errors import CapacityError, InputError, NotIsospectralError, SpectralForgeError

__all__ = [
    "CapacityError",
    "InputError",
    "NotIsospectralError",
    "SpectralForgeError",
]

__version__ = "0.1.0"
