"""Natural-representation position vectors of helices, slant helices and their associated helices.

Every curve here is written as iterated integrals of intrinsic data. All
integrals on one grid come from a single :class:`NestedIntegralTable`, so
terms that should cancel are built from the same cumulative values.

Conventions
-----------
``theta(s) = int_0^s kappa`` is anchored at ``s = theta_origin`` (default 0)
even when the grid starts elsewhere.

Outer integrals of the helix representations use the primitive obtained by
freezing ``kappa`` at the left end of the grid; for constant curvature this is
the exact antiderivative, e.g. ``int cosh(c theta) ds = sinh(c theta)/(c kappa)``.

Slant helices use ``A = arcsin(m theta)/n`` and the exact primitives in
``theta`` of ``cosh(A)``, ``sinh(A)`` (and ``cos(A)``, ``sin(A)`` for the
timelike axis) to fix the inner integration constants. Positions start at the
origin at the left end of the grid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy.integrate import cumulative_simpson

from ._numerics import derivative
from .curve_model import (
    SPACELIKE_TYPE1,
    SPACELIKE_TYPE2,
    TIMELIKE,
    CausalSignature,
    FrenetFrame,
    SampledCurve,
)
from .lorentz import lorentz_cross, minkowski_inner

KappaLike = Union[float, Callable[[np.ndarray], np.ndarray]]

PARAM_TOL = 1e-12
WINDOW_MESSAGE = "slant-helix representation leaves its valid parameter window"


class Axis(str, enum.Enum):
    SPACELIKE = "spacelike"   # e3
    TIMELIKE = "timelike"     # e1


class AngleRule(str, enum.Enum):
    """How ``m`` follows from ``n``."""

    SINH = "sinh"   # n = sinh(phi), m = n / sqrt(1 + n^2)
    COSH = "cosh"   # n = cosh(phi), m = n / sqrt(n^2 - 1)


def m_from_n(n: float, rule: AngleRule) -> float:
    rule = AngleRule(rule)
    if rule is AngleRule.SINH:
        return n / math.sqrt(1.0 + n * n)
    if n <= 1.0:
        raise ValueError(f"n = cosh(phi) must exceed 1, got {n}")
    return n / math.sqrt(n * n - 1.0)


def n_from_m(m: float, rule: AngleRule) -> float:
    rule = AngleRule(rule)
    if rule is AngleRule.SINH:
        if abs(m) >= 1.0:
            raise ValueError(f"|m| must be below 1 for this representation, got {m}")
        return m / math.sqrt(1.0 - m * m)
    if m <= 1.0:
        raise ValueError(f"m must exceed 1 for this representation, got {m}")
    return m / math.sqrt(m * m - 1.0)


@dataclass(frozen=True)
class HelixParams:
    """Angle parameters ``(n, m)`` tied together by ``rule``.

    Build with :meth:`from_n` or :meth:`from_m`; the constructor checks that
    the pair is consistent to ``1e-12`` relative error.
    """

    n: float
    m: float
    rule: AngleRule
    l: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "rule", AngleRule(self.rule))
        expected = m_from_n(self.n, self.rule)
        if abs(expected - self.m) > PARAM_TOL * max(1.0, abs(expected)):
            raise ValueError(f"m = {self.m} inconsistent with n = {self.n} (expected {expected})")

    @classmethod
    def from_n(cls, n: float, rule, l: float = 0.0) -> "HelixParams":
        return cls(float(n), m_from_n(float(n), rule), AngleRule(rule), l)

    @classmethod
    def from_m(cls, m: float, rule, l: float = 0.0) -> "HelixParams":
        return cls(n_from_m(float(m), rule), float(m), AngleRule(rule), l)

    @property
    def phi(self) -> float:
        return math.asinh(self.n) if self.rule is AngleRule.SINH else math.acosh(self.n)

    @property
    def root(self) -> float:
        """``sqrt(1 + n^2)`` or ``sqrt(n^2 - 1)``."""
        return math.sqrt(1.0 + self.n**2) if self.rule is AngleRule.SINH else math.sqrt(self.n**2 - 1.0)


def _require_rule(params: HelixParams, rule: AngleRule, what: str):
    if params.rule is not rule:
        raise ValueError(f"{what} needs n = {rule.value}(phi); got {params.rule.value}")


# ---------------------------------------------------------------------------
# nested quadrature


@dataclass
class NestedIntegralTable:
    """Single and double cumulative integrals of registered integrands on one grid."""

    s: np.ndarray
    integrands: dict = field(default_factory=dict)
    single: dict = field(default_factory=dict)
    double: dict = field(default_factory=dict)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        if self.s.ndim != 1 or self.s.size < 3:
            raise ValueError("grid too short: nested quadrature needs at least 3 points")
        if np.any(np.diff(self.s) <= 0):
            raise ValueError("grid must be strictly increasing")

    def register(self, name: str, f, inner: float = 0.0, outer: float = 0.0):
        """Add ``int f`` (value ``inner`` at the left end) and its integral (value ``outer``)."""
        f = np.broadcast_to(np.asarray(f, dtype=float), self.s.shape).copy()
        if not np.all(np.isfinite(f)):
            raise ValueError(f"integrand {name!r} is not finite on the grid")
        self.integrands[name] = f
        self.single[name] = cumulative_simpson(f, x=self.s, initial=0.0) + inner
        self.double[name] = cumulative_simpson(self.single[name], x=self.s, initial=0.0) + outer
        return self

    def consistency_residual(self, name: str) -> float:
        """Max gap between the derivative of the double integral and the single integral."""
        return float(np.max(np.abs(derivative(self.double[name], self.s) - self.single[name])))


def nested_cumulative(f, s, inner: float = 0.0, outer: float = 0.0) -> NestedIntegralTable:
    """Table holding ``int f`` and ``int int f`` under the name ``"f"``."""
    return NestedIntegralTable(s).register("f", f, inner, outer)


def make_grid(domain, step: float) -> np.ndarray:
    """Uniform grid on ``[a, b]`` whose spacing is the largest value ``<= step`` dividing it."""
    a, b = map(float, domain)
    if not b > a:
        raise ValueError("domain must satisfy a < b")
    if step <= 0:
        raise ValueError("step must be positive")
    count = max(int(math.ceil((b - a) / step - 1e-9)), 4)
    return np.linspace(a, b, count + 1)


def _kappa_samples(kappa: KappaLike, s) -> np.ndarray:
    k = kappa(s) if callable(kappa) else kappa
    k = np.broadcast_to(np.asarray(k, dtype=float), np.shape(s)).copy()
    if not np.all(np.isfinite(k)) or np.any(k <= 0):
        raise ValueError("curvature must be positive and finite on the domain")
    return k


def theta_values(kappa: KappaLike, s, theta_origin: float = 0.0):
    """``(theta, kappa)`` samples with ``theta = int_{theta_origin}^s kappa``."""
    s = np.asarray(s, dtype=float)
    k = _kappa_samples(kappa, s)
    a = float(s[0])
    theta_a = 0.0
    if a != theta_origin:
        lo, hi = sorted((theta_origin, a))
        sub = np.linspace(lo, hi, 2049)
        theta_a = float(cumulative_simpson(_kappa_samples(kappa, sub), x=sub)[-1])
        theta_a = theta_a if a > theta_origin else -theta_a
    theta = cumulative_simpson(k, x=s, initial=0.0) + theta_a
    return theta, k


def _frames_with_torsion(T, N, dN, kappa, signature: CausalSignature):
    eT, eN, eB = signature.as_tuple()
    B = eT * eN * lorentz_cross(T, N)
    tau = eB * minkowski_inner(dN, B)
    return FrenetFrame(T, N, B, signature), tau


# ---------------------------------------------------------------------------
# general helices


def _trig_pair(hyperbolic: bool):
    """``(f, g, F, G)`` with ``F' = f`` and ``G' = g``."""
    if hyperbolic:
        return np.cosh, np.sinh, np.sinh, np.cosh
    return np.cos, np.sin, np.sin, lambda x: -np.cos(x)


def _helix_curve(s, kappa, params: HelixParams, *, hyperbolic: bool, const_first: bool,
                 signature: CausalSignature, c: float, theta_origin: float, meta: dict) -> SampledCurve:
    """``root * int (f(c theta), g(c theta), m)`` with the constant column first or last."""
    theta, k = theta_values(kappa, s, theta_origin)
    f, g, F, G = _trig_pair(hyperbolic)
    root, m = params.root, params.m
    ct = c * theta
    k_a, ct_a = k[0], ct[0]
    table = NestedIntegralTable(s)
    table.register("f", f(ct), inner=F(ct_a) / (c * k_a))
    table.register("g", g(ct), inner=G(ct_a) / (c * k_a))
    lin = m * s
    dsign = 1.0 if hyperbolic else -1.0      # d/dx of (f, g) = (dsign * g, f)
    Tf, Tg = f(ct), g(ct)
    Nf, Ng = dsign * g(ct), f(ct)
    dNf, dNg = dsign * f(ct), dsign * g(ct)
    ck = (c * k)[:, None]
    zeros = np.zeros_like(s)
    if const_first:
        pts = root * np.stack([lin, table.single["f"], table.single["g"]], axis=-1)
        T = root * np.stack([m + zeros, Tf, Tg], axis=-1)
        N = np.stack([zeros, Nf, Ng], axis=-1)
        dN = ck * np.stack([zeros, dNf, dNg], axis=-1)
    else:
        pts = root * np.stack([table.single["f"], table.single["g"], lin], axis=-1)
        T = root * np.stack([Tf, Tg, m + zeros], axis=-1)
        N = np.stack([Nf, Ng, zeros], axis=-1)
        dN = ck * np.stack([dNf, dNg, zeros], axis=-1)
    # T' = root * c * kappa * N; root * c == 1 for every variant
    frames, tau = _frames_with_torsion(T, N, dN, k, signature)
    meta = dict(meta, n=params.n, m=params.m, theta_origin=theta_origin, unit_speed=True)
    return SampledCurve(s, pts, frames, k, tau, signature, meta), table


def timelike_helix(kappa: KappaLike, params: HelixParams, s, axis: Axis = Axis.SPACELIKE,
                   theta_origin: float = 0.0, return_table: bool = False):
    """Unit-speed timelike general helix.

    Spacelike axis ``e3``::

        psi = sqrt(1+n^2) int (cosh(sqrt(1-m^2) theta), sinh(sqrt(1-m^2) theta), m) ds

    with ``n = sinh(phi)``. Timelike axis ``e1``::

        psi = sqrt(n^2-1) int (m, cos(sqrt(m^2-1) theta), sin(sqrt(m^2-1) theta)) ds

    with ``n = cosh(phi)``. The torsion is ``-m kappa`` for the spacelike axis.

    Examples
    --------
    >>> import numpy as np
    >>> p = HelixParams.from_n(np.sqrt(3) / 3, "sinh")
    >>> c = timelike_helix(6.0, p, np.linspace(0, 1, 101))
    >>> np.round(c.points[0], 6)
    array([0.      , 0.222222, 0.      ])
    """
    s = np.asarray(s, dtype=float)
    axis = Axis(axis)
    if axis is Axis.SPACELIKE:
        _require_rule(params, AngleRule.SINH, "timelike helix with spacelike axis")
        c = math.sqrt(1.0 - params.m**2)
        curve, table = _helix_curve(s, kappa, params, hyperbolic=True, const_first=False, signature=TIMELIKE,
                                    c=c, theta_origin=theta_origin,
                                    meta={"family": "timelike-helix", "axis": axis.value})
    else:
        _require_rule(params, AngleRule.COSH, "timelike helix with timelike axis")
        c = math.sqrt(params.m**2 - 1.0)
        curve, table = _helix_curve(s, kappa, params, hyperbolic=False, const_first=True, signature=TIMELIKE,
                                    c=c, theta_origin=theta_origin,
                                    meta={"family": "timelike-helix", "axis": axis.value})
    return (curve, table) if return_table else curve


def spacelike_type2_helix(kappa: KappaLike, params: HelixParams, s, axis: Axis = Axis.SPACELIKE,
                          theta_origin: float = 0.0, return_table: bool = False):
    """Unit-speed spacelike general helix with timelike binormal.

    Spacelike axis (``|tau/kappa| > 1``, ``n = cosh(phi)``)::

        psi = sqrt(n^2-1) int (cosh(sqrt(m^2-1) theta), sinh(sqrt(m^2-1) theta), m) ds

    Timelike axis (``|tau/kappa| < 1``, ``n = sinh(phi)``)::

        psi = sqrt(n^2+1) int (m, cos(sqrt(1-m^2) theta), sin(sqrt(1-m^2) theta)) ds
    """
    s = np.asarray(s, dtype=float)
    axis = Axis(axis)
    if axis is Axis.SPACELIKE:
        _require_rule(params, AngleRule.COSH, "spacelike type-2 helix with spacelike axis")
        c = math.sqrt(params.m**2 - 1.0)
        curve, table = _helix_curve(s, kappa, params, hyperbolic=True, const_first=False,
                                    signature=SPACELIKE_TYPE2, c=c, theta_origin=theta_origin,
                                    meta={"family": "spacelike-type2-helix", "axis": axis.value})
    else:
        _require_rule(params, AngleRule.SINH, "spacelike type-2 helix with timelike axis")
        c = math.sqrt(1.0 - params.m**2)
        curve, table = _helix_curve(s, kappa, params, hyperbolic=False, const_first=True,
                                    signature=SPACELIKE_TYPE2, c=c, theta_origin=theta_origin,
                                    meta={"family": "spacelike-type2-helix", "axis": axis.value})
    return (curve, table) if return_table else curve


# ---------------------------------------------------------------------------
# helix-connected associated helices, closed form


def hca_position(hca_type: int, kappa: KappaLike, params: HelixParams, s, *, l: float = 0.0,
                 c: float = 1.0, phase: float = 0.0, theta_origin: float = 0.0) -> SampledCurve:
    """Closed-form HCA helix of type 1 or 2 over the timelike helix with spacelike axis.

    Type 1 (``beta' || T``)::

        beta1 = sqrt(1+n^2) int cosh(q) ds + sin(p) sinh(q) + n cos(p) cosh(q)
        beta2 = sqrt(1+n^2) int sinh(q) ds + sin(p) cosh(q) + n cos(p) sinh(q)
        beta3 = n s + l + sqrt(1+n^2) cos(p)

    with ``q = sqrt(1-m^2) theta`` and ``p = phase + int tau ds = phase - m (theta - theta(a))``.
    The commonly quoted form with ``p = m theta`` does not satisfy
    ``beta' || T``; see :func:`hca1_sign_report`.

    Type 2 (``beta' || T``)::

        beta1, beta2 = helix columns,   beta3 = n s + l + c (n m - sqrt(1+n^2))

    which is the constructive type-2 curve with constant ``-c``.
    """
    _require_rule(params, AngleRule.SINH, "HCA closed form")
    s = np.asarray(s, dtype=float)
    alpha, table = timelike_helix(kappa, params, s, Axis.SPACELIKE, theta_origin, return_table=True)
    n, m, root = params.n, params.m, params.root
    theta, _ = theta_values(kappa, s, theta_origin)
    q = math.sqrt(1.0 - m * m) * theta
    ch, sh = np.cosh(q), np.sinh(q)
    b1 = root * table.single["f"]
    b2 = root * table.single["g"]
    b3 = n * s + l
    if int(hca_type) == 1:
        p = phase - m * (theta - theta[0])
        b1 = b1 + np.sin(p) * sh + n * np.cos(p) * ch
        b2 = b2 + np.sin(p) * ch + n * np.cos(p) * sh
        b3 = b3 + root * np.cos(p)
        extra = {"phase": phase}
    elif int(hca_type) == 2:
        if c == 0:
            raise ValueError("degenerate: beta = alpha (c must be non-zero)")
        b3 = b3 + c * (n * m - root)
        extra = {"c": c}
    else:
        raise ValueError("closed forms exist for HCA types 1 and 2 only")
    meta = {"family": f"hca{int(hca_type)}", "n": n, "m": m, "l": l, "unit_speed": False, **extra}
    return SampledCurve(s, np.stack([b1, b2, b3], axis=-1), meta=meta)


def hca1_sign_report(kappa: KappaLike, params: HelixParams, s, l: float = 0.0) -> dict:
    """Test both signs of ``p = +-m theta`` in the type-1 form against ``beta' || T``.

    Returns ``{"plus": ..., "minus": ...}``: the largest off-tangent
    component of ``beta'`` relative to the size of ``beta'`` for each sign.
    Only ``"minus"`` satisfies the contract.
    """
    s = np.asarray(s, dtype=float)
    alpha = timelike_helix(kappa, params, s)
    theta, _ = theta_values(kappa, s)
    out = {}
    for label, sign in (("plus", +1.0), ("minus", -1.0)):
        p = sign * params.m * theta
        beta = alpha.points + np.sin(p)[:, None] * alpha.frames.N + np.cos(p)[:, None] * alpha.frames.B
        v = derivative(beta, s)[2:-2]
        T = alpha.frames.T[2:-2]
        along = -minkowski_inner(v, T)[:, None] * T       # eps_T = -1
        off = np.linalg.norm(v - along, axis=-1)
        out[label] = float(np.max(off / np.maximum(np.linalg.norm(v, axis=-1), 1e-300)))
    return out


# ---------------------------------------------------------------------------
# slant helices


def _slant_window(theta, m):
    mt = m * theta
    if np.any(np.abs(mt) >= 1.0):
        raise ValueError(WINDOW_MESSAGE)
    return mt, np.sqrt(1.0 - mt * mt)


def spacelike_slant_helix(kappa: KappaLike, params: HelixParams, s, axis: Axis = Axis.SPACELIKE,
                          branch: int = 1, theta_origin: float = 0.0, return_table: bool = False):
    """Unit-speed spacelike slant helix with timelike principal normal.

    Spacelike axis ``e3`` (``n = sinh(phi)``)::

        psi = (R int Ic, R int Is, n int theta),   N = (R cosh A, R sinh A, n)
        Ic = int kappa cosh A,  Is = int kappa sinh A,  R = n / m,  A = arcsin(m theta) / n

    Timelike axis ``e1`` (``n = cosh(phi)``)::

        psi = (n int theta, R int Ic, R int Is),   N = (n, R cos A, R sin A)
        Ic = int kappa cos A,  Is = int kappa sin A

    Both require ``|m theta| < 1``. The torsion is
    ``branch * m kappa theta / sqrt(1 - m^2 theta^2)``; the opposite branch is
    the mirror image in ``x2`` (spacelike axis) or ``x3`` (timelike axis).
    ``<N, axis>`` is constant: ``n`` for ``e3`` and ``-n`` for ``e1``.

    Raises
    ------
    ValueError
        When ``|m theta| >= 1`` somewhere on the grid.
    """
    s = np.asarray(s, dtype=float)
    axis = Axis(axis)
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    rule = AngleRule.SINH if axis is Axis.SPACELIKE else AngleRule.COSH
    _require_rule(params, rule, f"slant helix with {axis.value} axis")
    n, m = params.n, params.m
    R = n / m
    theta, k = theta_values(kappa, s, theta_origin)
    mt, root = _slant_window(theta, m)
    A = np.arcsin(mt) / n
    t0, r0, A0 = theta[0], root[0], A[0]
    table = NestedIntegralTable(s)
    table.register("theta", k, inner=t0)
    zeros = np.zeros_like(s)
    if axis is Axis.SPACELIKE:
        c, sh = np.cosh(A), np.sinh(A)
        table.register("c", k * c, inner=(r0 * np.sinh(A0) + m * n * t0 * np.cosh(A0)) / R)
        table.register("s", k * sh, inner=(r0 * np.cosh(A0) + m * n * t0 * np.sinh(A0)) / R)
        Ic, Is = table.single["c"], table.single["s"]
        pts = np.stack([R * table.double["c"], R * table.double["s"], n * table.double["theta"]], axis=-1)
        T = np.stack([R * Ic, R * Is, n * theta], axis=-1)
        N = np.stack([R * c, R * sh, n + zeros], axis=-1)
        # Frame relation B = -T x N written out
        B = np.stack([
            n * n / m * (sh * theta - Is),
            n * n / m * (c * theta - Ic),
            n * n / (m * m) * (sh * Ic - c * Is),
        ], axis=-1)
        dA = k / (n * root)
        dN = (R * dA)[:, None] * np.stack([sh, c, zeros], axis=-1)
        mirror = 1
        meta_axis = [0.0, 0.0, 1.0]
    else:
        c, sn = np.cos(A), np.sin(A)
        table.register("c", k * c, inner=(-r0 * np.sin(A0) + m * n * t0 * np.cos(A0)) / R)
        table.register("s", k * sn, inner=(r0 * np.cos(A0) + m * n * t0 * np.sin(A0)) / R)
        Ic, Is = table.single["c"], table.single["s"]
        pts = np.stack([n * table.double["theta"], R * table.double["c"], R * table.double["s"]], axis=-1)
        T = np.stack([n * theta, R * Ic, R * Is], axis=-1)
        N = np.stack([n + zeros, R * c, R * sn], axis=-1)
        B = -lorentz_cross(T, N)
        dA = k / (n * root)
        dN = (R * dA)[:, None] * np.stack([zeros, -sn, c], axis=-1)
        mirror = 2
        meta_axis = [1.0, 0.0, 0.0]
    tau_natural = SPACELIKE_TYPE1.as_tuple()[2] * minkowski_inner(dN, B)
    natural_sign = 1 if np.sum(tau_natural * mt) >= 0 else -1
    if natural_sign != branch:
        for arr in (pts, T, N, B, dN):
            arr[:, mirror] *= -1.0
        B = -B
    tau = branch * m * k * theta / root
    frames = FrenetFrame(T, N, B, SPACELIKE_TYPE1)
    meta = {"family": "slant-helix", "axis": axis.value, "axis_vector": meta_axis, "n": n, "m": m,
            "branch": branch, "theta_origin": theta_origin, "unit_speed": True}
    curve = SampledCurve(s, pts, frames, k, tau, SPACELIKE_TYPE1, meta)
    return (curve, table) if return_table else curve


def shca_position(shca_type: int, kappa: KappaLike, params: HelixParams, s, *,
                  axis: Axis = Axis.SPACELIKE, branch: int = 1, constants=(0.0, 0.0, 0.0),
                  xi: float = 0.0, zeta: float = 0.0, omega: float = 0.0,
                  theta_origin: float = 0.0) -> SampledCurve:
    """Closed-form SHCA helix of type 1, 2 or 3 over :func:`spacelike_slant_helix`.

    With the spacelike axis and ``branch = 1`` the coordinates are the
    three-component formulas written out with the table's cumulative values,
    e.g. for type 3::

        beta1 = R int Ic + R (omega - s) Ic
        beta2 = R int Is + R (omega - s) Is
        beta3 = n int theta + n (omega - s) theta

    Type 1 uses the linear factors ``(m s + c_i)`` per coordinate where the
    constructive path has ``int tau/kappa``; :func:`shca1_linear_factor_report`
    measures the difference. Other axis/branch combinations apply the same
    combinations ``psi + a1 T + a2 N + a3 B`` to that helix's frame.
    """
    alpha, table = spacelike_slant_helix(kappa, params, s, axis, branch, theta_origin, return_table=True)
    s = alpha.s
    n, m = params.n, params.m
    R = n / m
    k = alpha.kappa
    shca_type = int(shca_type)
    verbatim = Axis(axis) is Axis.SPACELIKE and branch == 1
    if verbatim:
        Ic, Is, th = table.single["c"], table.single["s"], table.single["theta"]
        A = np.arcsin(m * th) / n
        c, sh = np.cosh(A), np.sinh(A)
        D = (table.double["c"], table.double["s"], table.double["theta"])
        if shca_type == 1:
            c1, c2, c3 = constants
            b1 = R * D[0] - n / (m * k) * c - n * n / m * (m * s + c1) * (Is - sh * th)
            b2 = R * D[1] - n / (m * k) * sh - n * n / m * (m * s + c2) * (Ic - c * th)
            b3 = n * D[2] - n / k + n * n / (m * m) * (m * s + c3) * (sh * Ic - c * Is)
        elif shca_type == 2:
            b1 = R * D[0] + R * (xi - s) * Ic + zeta * n * n / m * (sh * th - Is)
            b2 = R * D[1] + R * (xi - s) * Is + zeta * n * n / m * (c * th - Ic)
            b3 = n * D[2] + n * (xi - s) * th + zeta * n * n / (m * m) * (sh * Ic - c * Is)
        elif shca_type == 3:
            b1 = R * D[0] + R * (omega - s) * Ic
            b2 = R * D[1] + R * (omega - s) * Is
            b3 = n * D[2] + n * (omega - s) * th
        else:
            raise ValueError("shca_type must be 1..3")
        pts = np.stack([b1, b2, b3], axis=-1)
    else:
        fr = alpha.frames
        if shca_type == 1:
            lin = m * s[:, None] + np.asarray(constants, dtype=float)[None, :]
            pts = alpha.points - fr.N / k[:, None] + lin * fr.B
        elif shca_type == 2:
            pts = alpha.points + (xi - s)[:, None] * fr.T + zeta * fr.B
        elif shca_type == 3:
            pts = alpha.points + (omega - s)[:, None] * fr.T
        else:
            raise ValueError("shca_type must be 1..3")
    params_meta = {1: {"constants": list(constants)}, 2: {"xi": xi, "zeta": zeta}, 3: {"omega": omega}}
    meta = {"family": f"shca{shca_type}", "axis": Axis(axis).value, "branch": branch, "n": n, "m": m,
            "unit_speed": False, **params_meta[shca_type]}
    return SampledCurve(s, pts, meta=meta)


def shca1_linear_factor_report(kappa: KappaLike, params: HelixParams, s, *, axis: Axis = Axis.SPACELIKE,
                               branch: int = 1, c: float = 0.0, theta_origin: float = 0.0) -> dict:
    """How far the linear factor ``m s + c`` is from the binormal coefficient ``int tau/kappa``.

    The constants are matched at the left end of the grid. ``linear_fit_residual``
    is the distance of ``int tau/kappa`` from its best straight-line fit, which
    is zero only when that integral is affine in ``s``.
    """
    alpha = spacelike_slant_helix(kappa, params, s, axis, branch, theta_origin)
    s = alpha.s
    a3 = cumulative_simpson(alpha.tau / alpha.kappa, x=s, initial=0.0) + c
    lin = params.m * (s - s[0]) + c
    slope, icpt = np.polyfit(s, a3, 1)
    return {
        "max_factor_gap": float(np.max(np.abs(a3 - lin))),
        "max_position_gap": float(np.max(np.abs(a3 - lin) * np.linalg.norm(alpha.frames.B, axis=-1))),
        "linear_fit_residual": float(np.max(np.abs(a3 - (slope * s + icpt)))),
        "fitted_slope": float(slope),
        "m": params.m,
    }
