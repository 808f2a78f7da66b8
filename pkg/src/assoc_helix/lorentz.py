"""Vector algebra in Minkowski 3-space.

Vectors are plain numpy arrays whose last axis has length 3; the first
coordinate carries the negative sign of the metric ``-dx1^2 + dx2^2 + dx3^2``.
Every function broadcasts over leading axes, so a frame field stored as an
``(n, 3)`` array can be passed wherever a single vector is accepted.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np

# Metric diagonal of E^3_1.
METRIC = np.array([-1.0, 1.0, 1.0])

DEFAULT_TOL = 1e-10

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


class AngleKind(enum.Enum):
    SPACELIKE_PLANE = "spacelike-plane"        # two spacelike vectors, spacelike span
    TIMELIKE_PLANE = "timelike-plane"          # two spacelike vectors, timelike span
    SPACELIKE_TIMELIKE = "spacelike-timelike"
    TIMELIKE_TIMELIKE = "timelike-timelike"


class LorentzAngle(NamedTuple):
    value: float
    kind: AngleKind


def lvec(x1, x2, x3) -> np.ndarray:
    """Build a finite 3-vector, rejecting NaN and infinities."""
    return as_lvec((x1, x2, x3))


def as_lvec(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.shape[-1:] != (3,):
        raise ValueError(f"expected trailing dimension 3, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector coordinates must be finite")
    return a


def minkowski_inner(a, b):
    """Lorentzian inner product ``-a1*b1 + a2*b2 + a3*b3``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return -a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def lorentz_norm(a):
    """``sqrt(|<a, a>|)``; zero for lightlike and zero vectors."""
    return np.sqrt(np.abs(minkowski_inner(a, a)))


def causal_character(a, tolerance: float = DEFAULT_TOL) -> CausalCharacter:
    """Classify a single vector by the sign of ``<a, a>``.

    The zero vector is spacelike by convention. ``tolerance`` is an absolute
    band around zero on ``<a, a>`` inside which a nonzero vector counts as
    lightlike.
    """
    a = as_lvec(a)
    if a.shape != (3,):
        raise ValueError("causal_character classifies one vector at a time")
    q = float(minkowski_inner(a, a))
    if not np.any(a):
        return CausalCharacter.SPACELIKE
    if q > tolerance:
        return CausalCharacter.SPACELIKE
    if q < -tolerance:
        return CausalCharacter.TIMELIKE
    return CausalCharacter.LIGHTLIKE


def lorentz_cross(a, b):
    """Lorentzian vector product.

    Expansion of ``-det([[-i, j, k], a, b])``. The result is orthogonal to
    both arguments under the Lorentzian metric.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2]
    b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2]
    return np.stack(
        [a2 * b3 - a3 * b2, a1 * b3 - a3 * b1, a2 * b1 - a1 * b2], axis=-1
    )


def is_future_pointing(a) -> bool:
    """Time orientation used for timelike pairs: positive first coordinate."""
    return float(np.asarray(a)[0]) > 0.0


def lorentz_angle(x, y, tolerance: float = DEFAULT_TOL) -> LorentzAngle:
    """Angle between two non-lightlike vectors.

    Dispatches on the causal characters of the inputs. For two spacelike
    vectors the causal type of their span is read off the Gram determinant
    ``<x,x><y,y> - <x,y>^2`` (positive: spacelike plane, negative: timelike
    plane). Two timelike vectors must share a time orientation.

    Raises
    ------
    ValueError
        For lightlike or zero input, a lightlike span, or timelike vectors
        of opposite time orientation.
    """
    x = as_lvec(x)
    y = as_lvec(y)
    cx = causal_character(x, tolerance)
    cy = causal_character(y, tolerance)
    if CausalCharacter.LIGHTLIKE in (cx, cy):
        raise ValueError("angle undefined for lightlike vector")
    if not np.any(x) or not np.any(y):
        raise ValueError("angle undefined for zero vector")

    nx = float(lorentz_norm(x))
    ny = float(lorentz_norm(y))
    xy = float(minkowski_inner(x, y))
    ratio = abs(xy) / (nx * ny)

    if cx is CausalCharacter.SPACELIKE and cy is CausalCharacter.SPACELIKE:
        gram = float(minkowski_inner(x, x) * minkowski_inner(y, y)) - xy * xy
        if abs(gram) <= tolerance:
            raise ValueError("degenerate span: spacelike vectors span a lightlike plane")
        if gram > 0:
            return LorentzAngle(math.acos(min(ratio, 1.0)), AngleKind.SPACELIKE_PLANE)
        return LorentzAngle(math.acosh(max(ratio, 1.0)), AngleKind.TIMELIKE_PLANE)

    if cx is CausalCharacter.TIMELIKE and cy is CausalCharacter.TIMELIKE:
        if is_future_pointing(x) != is_future_pointing(y):
            raise ValueError("timelike vectors must have the same time orientation")
        # <x,y> is negative for equally oriented timelike vectors
        return LorentzAngle(math.acosh(max(ratio, 1.0)), AngleKind.TIMELIKE_TIMELIKE)

    return LorentzAngle(math.asinh(ratio), AngleKind.SPACELIKE_TIMELIKE)
