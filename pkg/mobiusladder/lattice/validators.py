"""
Validation functions that are useful for more than one parameter object,
but not every one.
"""
import numbers

import numpy as np

from .base import LadderInvalidData


def _validate_integer(value, name, minimum=None):
    """
    Integers only; booleans are refused even though Python counts them.
    """
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise LadderInvalidData("{} must be an integer, got {!r}".format(name, value))
    if minimum is not None and value < minimum:
        raise LadderInvalidData("{} must be >= {}, got {}".format(name, minimum, value))
    return int(value)


def _validate_real(value, name, positive=False, nonnegative=False):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise LadderInvalidData("{} must be a real number, got {!r}".format(name, value))
    if not np.isfinite(value):
        raise LadderInvalidData("{} must be finite, got {}".format(name, value))
    if positive and value <= 0:
        raise LadderInvalidData("{} must be > 0, got {}".format(name, value))
    if nonnegative and value < 0:
        raise LadderInvalidData("{} must be >= 0, got {}".format(name, value))
    return value


def _validate_site_array(value, name, n_sites):
    """
    A scalar is broadcast to every rung; anything else must have exactly
    one entry per rung. The returned array is read-only.
    """
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise LadderInvalidData("{} must be numeric, got {!r}".format(name, value))
    if arr.ndim == 0:
        arr = np.full(n_sites, float(arr))
    elif arr.shape != (n_sites,):
        raise LadderInvalidData("{} must be a scalar or have length {}, got shape {}"
                                .format(name, n_sites, arr.shape))
    if not np.all(np.isfinite(arr)):
        raise LadderInvalidData("{} must be finite".format(name))
    arr.setflags(write=False)
    return arr
