"""Argument checks shared across modules and the estimator layer."""

from __future__ import annotations

import numbers

import numpy as np


class UnsupportedDimensionError(ValueError):
    """Raised when an operation needs pointwise spherical harmonics for d >= 4."""


class AccuracyWarning(UserWarning):
    """Emitted when a computation leaves its validated accuracy range."""


def check_int(value, name, minimum=None, maximum=None) -> int:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Integral):
        if isinstance(value, numbers.Real) and float(value).is_integer():
            value = int(value)
        else:
            raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ValueError(f"{name} must be <= {maximum}, got {value}")
    return value


def check_real(value, name, *, gt=None, ge=None, le=None) -> float:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    if gt is not None and not value > gt:
        raise ValueError(f"{name} must be > {gt}, got {value}")
    if ge is not None and not value >= ge:
        raise ValueError(f"{name} must be >= {ge}, got {value}")
    if le is not None and not value <= le:
        raise ValueError(f"{name} must be <= {le}, got {value}")
    return value


def check_pointwise_dim(d) -> int:
    """Dimensions for which explicit spherical-harmonic bases exist."""
    d = check_int(d, "d", minimum=1)
    if d > 3:
        raise UnsupportedDimensionError(
            f"pointwise evaluation needs explicit harmonics; only d <= 3 is supported, got d={d}"
        )
    return d
