"""Shared finite-difference and constancy helpers."""

from __future__ import annotations

import numpy as np

# Constant-function criterion: (max f - min f) <= rel_tol * (1 + median|f|)
DEFAULT_REL_TOL = 1e-4


def is_uniform(s, rtol: float = 1e-9) -> bool:
    ds = np.diff(s)
    return bool(ds.size) and np.allclose(ds, ds[0], rtol=rtol, atol=0.0)


def derivative(y, s):
    """First derivative of samples ``y`` (leading axis) with respect to ``s``.

    Fourth-order central differences on a uniform grid, with fourth-order
    one-sided stencils at the two points nearest each end. Falls back to
    second-order ``np.gradient`` on non-uniform grids.
    """
    y = np.asarray(y, dtype=float)
    s = np.asarray(s, dtype=float)
    n = y.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples for a derivative estimate")
    if not is_uniform(s):
        return np.gradient(y, s, axis=0, edge_order=2)
    h = s[1] - s[0]
    d = np.empty_like(y)
    d[2:-2] = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * h)
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h)
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / (12.0 * h)
    d[-1] = (25.0 * y[-1] - 48.0 * y[-2] + 36.0 * y[-3] - 16.0 * y[-4] + 3.0 * y[-5]) / (12.0 * h)
    d[-2] = (3.0 * y[-1] + 10.0 * y[-2] - 18.0 * y[-3] + 6.0 * y[-4] - y[-5]) / (12.0 * h)
    return d


def constancy(f, rel_tol: float = DEFAULT_REL_TOL):
    """Return ``(spread, allowed)`` for the constant-function criterion."""
    f = np.asarray(f, dtype=float)
    spread = float(np.max(f) - np.min(f))
    allowed = rel_tol * (1.0 + float(np.median(np.abs(f))))
    return spread, allowed


def is_constant(f, rel_tol: float = DEFAULT_REL_TOL) -> bool:
    spread, allowed = constancy(f, rel_tol)
    return spread <= allowed
