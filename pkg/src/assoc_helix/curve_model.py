"""Curves and their Frenet apparatus in Minkowski 3-space.

The Frenet equations are used in the signed single-matrix form

    T' = kappa N
    N' = eps_B kappa T + tau B
    B' = eps_T tau N

with ``eps_Y = <Y, Y>`` and ``eps_B = -eps_T eps_N``. Torsion is always
reported in this convention, i.e. ``tau = eps_B <N', B> = eps_T eps_N <B', N>``.
For a timelike curve this is the negative of the value obtained from the
alternative ``eps_N eps_B <B', N>`` reading found elsewhere in the literature.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import make_interp_spline

from ._numerics import derivative
from .lorentz import (
    CausalCharacter,
    as_lvec,
    causal_character,
    lorentz_cross,
    lorentz_norm,
    minkowski_inner,
)

DEFAULT_STEP = 1e-3
FRAME_TOL = 1e-6


class CurveType(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE_TYPE1 = "spacelike-type1"   # timelike principal normal
    SPACELIKE_TYPE2 = "spacelike-type2"   # timelike binormal


@dataclass(frozen=True)
class CausalSignature:
    """Causal signs ``(eps_T, eps_N, eps_B)`` of a non-lightlike Frenet frame."""

    eT: int
    eN: int
    eB: int

    def __post_init__(self):
        for e in (self.eT, self.eN, self.eB):
            if e not in (-1, 1):
                raise ValueError("signature entries must be -1 or +1")
        if self.eB != -self.eT * self.eN:
            raise ValueError("signature must satisfy eps_B = -eps_T * eps_N")

    @classmethod
    def for_type(cls, curve_type: CurveType) -> "CausalSignature":
        return _SIGNATURES[CurveType(curve_type)]

    @property
    def curve_type(self) -> CurveType:
        if self.eT == -1:
            return CurveType.TIMELIKE
        if self.eN == -1:
            return CurveType.SPACELIKE_TYPE1
        return CurveType.SPACELIKE_TYPE2

    def as_tuple(self):
        return (self.eT, self.eN, self.eB)


TIMELIKE = CausalSignature(-1, 1, 1)
SPACELIKE_TYPE1 = CausalSignature(1, -1, 1)
SPACELIKE_TYPE2 = CausalSignature(1, 1, -1)

_SIGNATURES = {
    CurveType.TIMELIKE: TIMELIKE,
    CurveType.SPACELIKE_TYPE1: SPACELIKE_TYPE1,
    CurveType.SPACELIKE_TYPE2: SPACELIKE_TYPE2,
}


@dataclass
class CurvatureProfile:
    """Intrinsic data of a curve: curvature and torsion as functions of s."""

    kappa: Callable
    tau: Callable
    signature: CausalSignature
    domain: tuple

    def __post_init__(self):
        a, b = map(float, self.domain)
        if not b > a:
            raise ValueError("domain must be an interval (a, b) with b > a")
        self.domain = (a, b)

    def sample(self, s):
        s = np.asarray(s, dtype=float)
        k = np.broadcast_to(np.asarray(self.kappa(s), dtype=float), s.shape).copy()
        t = np.broadcast_to(np.asarray(self.tau(s), dtype=float), s.shape).copy()
        return k, t

    def check(self, num: int = 2001):
        """Sample-based check that kappa is positive and finite on the domain."""
        s = np.linspace(*self.domain, num)
        k, t = self.sample(s)
        if not (np.all(np.isfinite(k)) and np.all(np.isfinite(t))):
            raise ValueError("curvature profile is not finite on its domain")
        if np.any(k <= 0):
            raise ValueError("curvature must be positive on the whole domain")


@dataclass
class FrenetFrame:
    """A frame ``(T, N, B)`` or a field of frames stacked along axis 0."""

    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    signature: CausalSignature

    def __post_init__(self):
        self.T = as_lvec(self.T)
        self.N = as_lvec(self.N)
        self.B = as_lvec(self.B)

    def __len__(self):
        return 1 if self.T.ndim == 1 else self.T.shape[0]

    def __getitem__(self, idx) -> "FrenetFrame":
        return FrenetFrame(self.T[idx], self.N[idx], self.B[idx], self.signature)

    def legs(self):
        return self.T, self.N, self.B

    def gram(self):
        """Gram matrices ``<X_i, X_j>`` with shape (..., 3, 3)."""
        legs = np.stack([self.T, self.N, self.B], axis=-2)
        return np.einsum("...ik,k,...jk->...ij", legs, np.array([-1.0, 1.0, 1.0]), legs)

    def gram_residual(self) -> float:
        target = np.diag([float(e) for e in self.signature.as_tuple()])
        return float(np.max(np.abs(self.gram() - target)))

    def cross_residual(self) -> float:
        """Largest deviation among the three vector-product frame relations."""
        eT, eN, eB = self.signature.as_tuple()
        T, N, B = self.legs()
        r1 = np.abs(B - eT * eN * lorentz_cross(T, N))
        r2 = np.abs(N - eB * eT * lorentz_cross(B, T))
        r3 = np.abs(T - eN * eB * lorentz_cross(N, B))
        return float(max(r1.max(), r2.max(), r3.max()))

    def validate(self, tol: float = FRAME_TOL):
        if self.gram_residual() > tol or self.cross_residual() > tol:
            raise ValueError(
                "frame violates Frenet invariants for signature "
                f"{self.signature.as_tuple()}"
            )
        return self


@dataclass
class SampledCurve:
    """Position samples ordered by parameter ``s`` plus optional frame data."""

    s: np.ndarray
    points: np.ndarray
    frames: Optional[FrenetFrame] = None
    kappa: Optional[np.ndarray] = None
    tau: Optional[np.ndarray] = None
    signature: Optional[CausalSignature] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.points = as_lvec(self.points)
        if self.s.ndim != 1 or self.points.shape != (self.s.size, 3):
            raise ValueError("points must have shape (len(s), 3)")
        if np.any(np.diff(self.s) <= 0):
            raise ValueError("s must be strictly increasing")
        if self.frames is not None and len(self.frames) != self.s.size:
            raise ValueError("frame field must align with samples")
        if self.signature is None and self.frames is not None:
            self.signature = self.frames.signature

    def __len__(self):
        return self.s.size

    @property
    def domain(self):
        return float(self.s[0]), float(self.s[-1])

    def speed_residual(self) -> float:
        """Max ``| ||p'|| - 1 |`` over interior samples (finite differences)."""
        v = derivative(self.points, self.s)
        return float(np.max(np.abs(lorentz_norm(v[2:-2]) - 1.0)))


def default_frame(signature: CausalSignature) -> FrenetFrame:
    """Coordinate-aligned initial frame for a given signature."""
    e1, e2, e3 = np.eye(3)
    if signature == TIMELIKE:
        legs = (e1, e2, e3)
    elif signature == SPACELIKE_TYPE1:
        # B = -(e2 x e1) = -e3 once the vector-product relation is enforced
        legs = (e2, e1, -e3)
    else:
        legs = (e2, e3, e1)
    return FrenetFrame(*legs, signature=signature).validate()


def darboux_vector(frame: FrenetFrame, kappa, tau):
    """Darboux vector ``W = -eps_B tau T - eps_N kappa B``."""
    _, eN, eB = frame.signature.as_tuple()
    kappa = np.asarray(kappa, dtype=float)[..., None]
    tau = np.asarray(tau, dtype=float)[..., None]
    return -eB * tau * frame.T - eN * kappa * frame.B


def _reorthonormalize(T, N, signature: CausalSignature):
    eT, eN, _ = signature.as_tuple()
    T = T / np.sqrt(abs(minkowski_inner(T, T)))
    N = N - eT * minkowski_inner(N, T) * T
    N = N / np.sqrt(abs(minkowski_inner(N, N)))
    B = eT * eN * lorentz_cross(T, N)
    return T, N, B


def integrate_frenet(
    profile: CurvatureProfile,
    initial: Optional[FrenetFrame] = None,
    initial_point=None,
    step: float = DEFAULT_STEP,
    reorthonormalize: bool = True,
) -> SampledCurve:
    """Integrate the Frenet equations from intrinsic data.

    Classical fixed-step RK4 on the 12-dimensional state (position and the
    three frame legs). The step is shrunk slightly so that it divides the
    domain exactly. After each step the frame is re-orthonormalized by a
    signed Gram-Schmidt pass that keeps the direction of T.

    Parameters
    ----------
    profile : CurvatureProfile
        Curvature, torsion, signature and domain ``(a, b)``.
    initial : FrenetFrame, optional
        Frame at ``s = a``; defaults to :func:`default_frame`.
    initial_point : array_like, optional
        Position at ``s = a``; defaults to the origin.
    step : float
        Target step size.

    Returns
    -------
    SampledCurve
        Samples with the frame field and the profile's kappa/tau attached.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    profile.check()
    sig = profile.signature
    eT, _, eB = sig.as_tuple()
    frame0 = default_frame(sig) if initial is None else initial
    if frame0.signature != sig:
        raise ValueError("initial frame signature does not match the profile")
    frame0.validate()
    p0 = np.zeros(3) if initial_point is None else as_lvec(initial_point)

    a, b = profile.domain
    n_steps = max(1, int(np.ceil((b - a) / step - 1e-9)))
    s = np.linspace(a, b, n_steps + 1)
    h = (b - a) / n_steps

    def rhs(si, y):
        k = float(profile.kappa(si))
        t = float(profile.tau(si))
        _, T, N, B = y
        return np.array([T, k * N, eB * k * T + t * B, eT * t * N])

    out = np.empty((n_steps + 1, 4, 3))
    y = np.array([p0, frame0.T, frame0.N, frame0.B], dtype=float)
    out[0] = y
    for i in range(n_steps):
        si = s[i]
        k1 = rhs(si, y)
        k2 = rhs(si + h / 2, y + h / 2 * k1)
        k3 = rhs(si + h / 2, y + h / 2 * k2)
        k4 = rhs(si + h, y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if reorthonormalize:
            y[1], y[2], y[3] = _reorthonormalize(y[1], y[2], sig)
        out[i + 1] = y

    kappa, tau = profile.sample(s)
    frames = FrenetFrame(out[:, 1], out[:, 2], out[:, 3], sig)
    return SampledCurve(s, out[:, 0], frames, kappa, tau, sig, meta={"source": "frenet-rk4"})


def _sign_of(q, what: str, tol: float) -> int:
    if np.any(np.abs(q) <= tol):
        raise ValueError(f"not a non-lightlike Frenet curve: {what} is lightlike somewhere")
    signs = np.sign(q)
    if not np.all(signs == signs[0]):
        raise ValueError(f"not a non-lightlike Frenet curve: {what} changes causal character")
    return int(signs[0])


def frenet_from_samples(curve: SampledCurve, speed_tol: float = 1e-3, kappa_tol: float = 1e-8):
    """Estimate the Frenet frame, curvature and torsion from position samples.

    The curve must be (approximately) arc-length parametrized. Derivatives
    use fourth-order differences (see :func:`assoc_helix._numerics.derivative`).

    Returns
    -------
    frames : FrenetFrame
    kappa, tau : ndarray
    """
    if len(curve) < 5:
        raise ValueError("need at least 5 samples to estimate a Frenet frame")
    s = curve.s
    v = derivative(curve.points, s)
    q = minkowski_inner(v, v)
    eT = _sign_of(q, "velocity", 1e-12)
    speed = np.sqrt(np.abs(q))
    if np.max(np.abs(speed - 1.0)) > speed_tol:
        raise ValueError("curve is not arc-length parametrized; reparametrize first")
    T = v / speed[:, None]
    dT = derivative(T, s)
    kappa = lorentz_norm(dT)
    if np.min(kappa) <= kappa_tol:
        raise ValueError("curvature vanishes; frame undefined")
    eN = _sign_of(minkowski_inner(dT, dT), "principal normal", 0.0)
    sig = CausalSignature(eT, eN, -eT * eN)
    N = dT / kappa[:, None]
    B = eT * eN * lorentz_cross(T, N)
    dN = derivative(N, s)
    tau = sig.eB * minkowski_inner(dN, B)
    return FrenetFrame(T, N, B, sig), kappa, tau


def classify_curve(curve: SampledCurve, tolerance: float = 1e-8) -> CurveType:
    """Timelike, spacelike type 1 (N timelike) or spacelike type 2 (B timelike)."""
    if curve.frames is not None:
        T, N, B = curve.frames.legs()
        eT = _sign_of(minkowski_inner(T, T), "tangent", tolerance)
        eN = _sign_of(minkowski_inner(N, N), "principal normal", tolerance)
        _sign_of(minkowski_inner(B, B), "binormal", tolerance)
        return CausalSignature(eT, eN, -eT * eN).curve_type
    frames, _, _ = frenet_from_samples(curve)
    return frames.signature.curve_type


def arc_length_reparametrize(curve: SampledCurve, num: Optional[int] = None, chord_tol: float = 1e-9) -> SampledCurve:
    """Resample a regular non-lightlike curve uniformly in Lorentzian arc length.

    A quintic interpolating spline through the samples supplies the velocity;
    its Lorentzian speed is integrated to the arc-length function, which is
    inverted by interpolation. The output starts at the input's first
    parameter value and has ``num`` samples (default: same count as input).
    """
    if len(curve) < 2:
        raise ValueError("need at least 2 samples")
    dp = np.diff(curve.points, axis=0)
    q = minkowski_inner(dp, dp)
    scale = np.sum(dp * dp, axis=-1)
    if np.any(np.abs(q) <= chord_tol * scale) or np.any(scale == 0):
        raise ValueError("cannot reparametrize near-lightlike segment")
    if not (np.all(q > 0) or np.all(q < 0)):
        raise ValueError("cannot reparametrize near-lightlike segment (mixed causal chords)")

    t = curve.s
    num = len(curve) if num is None else int(num)
    k = min(5, len(curve) - 1)
    if k % 2 == 0:
        k -= 1
    spline = make_interp_spline(t, curve.points, k=k)
    dspline = spline.derivative()
    # dense auxiliary grid for the speed integral
    fine = np.linspace(t[0], t[-1], 4 * (len(t) - 1) + 1)
    speed = lorentz_norm(dspline(fine))
    sigma = cumulative_simpson(speed, x=fine, initial=0.0)
    if np.any(np.diff(sigma) <= 0):
        raise ValueError("cannot reparametrize near-lightlike segment (zero speed)")
    s_new = np.linspace(0.0, sigma[-1], num)
    t_of_sigma = make_interp_spline(sigma, fine, k=k)
    t_new = np.clip(t_of_sigma(s_new), t[0], t[-1])
    points = spline(t_new)
    return SampledCurve(s_new + t[0], points, signature=curve.signature,
                        meta=dict(curve.meta, reparametrized=True))


def slant_invariant(kappa, tau, s, signature: CausalSignature):
    """``kappa^2 / |eps_T kappa^2 + eps_B tau^2|^(3/2) * (tau/kappa)'``.

    The base ``|eps_T kappa^2 + eps_B tau^2|`` is the squared norm of the
    Darboux vector; it reduces to ``|tau^2 - kappa^2|`` for timelike and
    type-2 curves and to ``kappa^2 + tau^2`` for type-1 curves. The curve is
    a slant helix exactly when this quantity is constant.

    Returns
    -------
    sigma, base : ndarray
        ``sigma`` is non-finite where ``base`` vanishes.
    """
    kappa = np.asarray(kappa, dtype=float)
    tau = np.asarray(tau, dtype=float)
    eT, _, eB = signature.as_tuple()
    base = np.abs(eT * kappa**2 + eB * tau**2)
    ratio_prime = derivative(tau / kappa, s)
    # a vanishing base is reported to callers through the returned base
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = kappa**2 / base**1.5 * ratio_prime
    return sigma, base


def frame_from_tangent(U, s, eps_T: int, dU=None):
    """Frenet apparatus of a unit tangent field given in any regular parameter.

    ``dU`` is the derivative of ``U`` with respect to ``s`` when known;
    otherwise it is estimated by finite differences.

    Returns ``(frames, kappa_s, tau_s)`` where ``kappa_s`` and ``tau_s`` are
    rates per unit of ``s``. Dividing both by the speed ``ds_arc/ds`` gives
    the curvatures; their ratio needs no such correction.
    """
    U = np.asarray(U, dtype=float)
    dU = derivative(U, s) if dU is None else np.asarray(dU, dtype=float)
    kt = lorentz_norm(dU)
    if np.any(kt <= 1e-12):
        raise ValueError("curvature vanishes; frame undefined")
    N = dU / kt[:, None]
    eN = _sign_of(minkowski_inner(N, N), "principal normal", 1e-8)
    eB = -eps_T * eN
    B = eps_T * eN * lorentz_cross(U, N)
    tt = eB * minkowski_inner(derivative(N, s), B)
    return FrenetFrame(U, N, B, CausalSignature(eps_T, eN, eB)), kt, tt


__all__ = [
    "CausalCharacter",
    "CausalSignature",
    "CurvatureProfile",
    "CurveType",
    "FrenetFrame",
    "SampledCurve",
    "TIMELIKE",
    "SPACELIKE_TYPE1",
    "SPACELIKE_TYPE2",
    "arc_length_reparametrize",
    "causal_character",
    "classify_curve",
    "darboux_vector",
    "default_frame",
    "frame_from_tangent",
    "frenet_from_samples",
    "integrate_frenet",
    "slant_invariant",
]
