"""Finite semigroup analysis: congruence lattices, J-classes, identity checks,
T1/T2R/T2L structure and exhaustive small-order verification."""

__version__ = "0.1.0"

from .table import CayleyTable, validate_table  # noqa: E402

__all__ = ["CayleyTable", "validate_table", "__version__"]
