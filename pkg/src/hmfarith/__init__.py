"""Exact arithmetic for Hilbert modular forms: fields and ideals, Hecke
characters, local representations, the classical/automorphic dictionary and
L-series with certified truncation bounds."""

from .errors import HMFError
from .field import build_field, quadratic_field
from .hmf1 import parse_hmf1, serialize_hmf1

__version__ = "0.1.0"

__all__ = ["HMFError", "build_field", "quadratic_field", "parse_hmf1", "serialize_hmf1"]
