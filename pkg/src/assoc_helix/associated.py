"""Associated curves ``beta = alpha + a1 T + a2 N + a3 B`` and their helix families.

Differentiating the associated curve with the Frenet equations gives

    beta' = F1 T + F2 N + F3 B,
    F1 = 1 + a1' + eps_B a2 kappa,
    F2 = a2' + a1 kappa + eps_T a3 tau,
    F3 = a3' + a2 tau.

Each family below is a solution of ``F_i = 0`` for two of the three
components, so that ``beta'`` is parallel to one leg of the reference frame:

==========  =====================  ======================================
family      reference curve        coefficients (a1, a2, a3)
==========  =====================  ======================================
HCA1        timelike helix         (0, sin(int tau), cos(int tau))
HCA2        timelike helix         (c tau/kappa, 0, c)
HCA3        spacelike, B timelike  (0, 1/kappa, -(1/kappa)'/tau)
HCA4        spacelike, B timelike  (nu - s, 0, -(nu - s) kappa/tau)
HCA5        spacelike, B timelike  variation-of-parameters solution, a3 = 0
SHCA1       spacelike, N timelike  (0, -1/kappa, int tau/kappa)
SHCA2       spacelike, N timelike  (xi - s, 0, zeta)
SHCA3       spacelike, N timelike  (omega - s, 0, 0)
==========  =====================  ======================================

Indefinite integrals run from the left end of the grid with additive
constant zero unless a constant is passed in.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson

from ._numerics import DEFAULT_REL_TOL, constancy, derivative, is_constant
from .curve_model import (
    CausalSignature,
    CurveType,
    FrenetFrame,
    SampledCurve,
    darboux_vector,
    frame_from_tangent,
    frenet_from_samples,
    slant_invariant,
)
from .lorentz import lorentz_cross, lorentz_norm, minkowski_inner

DEGENERACY_TOL = 1e-9


class Family(str, enum.Enum):
    GENERIC = "generic"
    HCA1 = "hca1"
    HCA2 = "hca2"
    HCA3 = "hca3"
    HCA4 = "hca4"
    HCA5 = "hca5"
    SHCA1 = "shca1"
    SHCA2 = "shca2"
    SHCA3 = "shca3"


# Frame leg of alpha that beta' is parallel to, per family.
TANGENT_LEG = {
    Family.HCA1: "T", Family.HCA2: "T",
    Family.HCA3: "B", Family.HCA4: "B", Family.HCA5: "B",
    Family.SHCA1: "N", Family.SHCA2: "N", Family.SHCA3: "N",
}
_LEG_INDEX = {"T": 0, "N": 1, "B": 2}


@dataclass
class CoefficientTriple:
    """Coefficient functions sampled on the reference grid, shape (n, 3)."""

    values: np.ndarray
    derivatives: np.ndarray

    @classmethod
    def from_samples(cls, values, s, derivatives=None) -> "CoefficientTriple":
        values = np.asarray(values, dtype=float)
        if derivatives is None:
            derivatives = derivative(values, s)
        return cls(values, np.asarray(derivatives, dtype=float))

    @classmethod
    def zero(cls, n: int) -> "CoefficientTriple":
        return cls(np.zeros((n, 3)), np.zeros((n, 3)))


@dataclass
class AssociatedPair:
    alpha: SampledCurve
    beta: SampledCurve
    coefficients: CoefficientTriple
    family: Family = Family.GENERIC
    params: dict = field(default_factory=dict)
    F: Optional[np.ndarray] = None

    @property
    def s(self):
        return self.alpha.s

    @property
    def tangent_leg(self) -> Optional[str]:
        return TANGENT_LEG.get(self.family)

    def fd_velocity(self):
        """Finite-difference ``beta'(s)``."""
        return derivative(self.beta.points, self.s)

    def frame_components(self, vec):
        """Components of ``vec`` on alpha's frame: ``eps_i <vec, X_i>``."""
        fr = self.alpha.frames
        eps = fr.signature.as_tuple()
        return np.stack(
            [e * minkowski_inner(vec, X) for e, X in zip(eps, fr.legs())], axis=-1
        )

    def velocity_residual(self, trim: int = 2) -> float:
        """Max gap between finite-difference ``beta'`` and ``sum F_i X_i``."""
        fr = self.alpha.frames
        model = (self.F[:, 0:1] * fr.T + self.F[:, 1:2] * fr.N + self.F[:, 2:3] * fr.B)
        gap = np.abs(self.fd_velocity() - model)
        return float(gap[trim: len(gap) - trim].max())

    def off_axis_ratio(self, trim: int = 2, rest_tol: float = 1e-8) -> float:
        """Largest off-leg component of the finite-difference ``beta'`` relative to its leg component.

        Samples where beta is at rest (``|F| <= rest_tol * max|F|`` on the
        tangent leg) are skipped: a zero velocity is parallel to every leg.
        """
        leg = self.tangent_leg
        if leg is None:
            raise ValueError("generic pairs have no tangent-direction contract")
        k = _LEG_INDEX[leg]
        inner = slice(trim, len(self.s) - trim)
        comps = self.frame_components(self.fd_velocity())[inner]
        speed = np.abs(self.F[inner, k])
        moving = speed > rest_tol * speed.max()
        off = np.delete(np.abs(comps), k, axis=1).max(axis=1)
        return float(np.max(off[moving] / np.abs(comps[moving, k])))


def _frames_of(alpha: SampledCurve):
    if alpha.frames is not None and alpha.kappa is not None and alpha.tau is not None:
        return alpha.frames, alpha.kappa, alpha.tau
    frames, kappa, tau = frenet_from_samples(alpha)
    alpha.frames, alpha.kappa, alpha.tau = frames, kappa, tau
    alpha.signature = frames.signature
    return frames, kappa, tau


def velocity_coefficients(coeffs: CoefficientTriple, kappa, tau, signature: CausalSignature):
    """Coefficients ``(F1, F2, F3)`` of ``beta'`` on the reference frame."""
    eT, _, eB = signature.as_tuple()
    a1, a2, a3 = coeffs.values.T
    d1, d2, d3 = coeffs.derivatives.T
    return np.stack(
        [1.0 + d1 + eB * a2 * kappa, d2 + a1 * kappa + eT * a3 * tau, d3 + a2 * tau],
        axis=-1,
    )


def associated_curve(alpha: SampledCurve, coeffs: CoefficientTriple,
                     family: Family = Family.GENERIC, params: Optional[dict] = None) -> AssociatedPair:
    """Build ``beta = alpha + a1 T + a2 N + a3 B`` on alpha's grid."""
    frames, kappa, tau = _frames_of(alpha)
    n = len(alpha)
    if coeffs.values.shape != (n, 3) or coeffs.derivatives.shape != (n, 3):
        raise ValueError("coefficient samples do not match the reference curve's domain")
    a = coeffs.values
    beta_pts = alpha.points + a[:, 0:1] * frames.T + a[:, 1:2] * frames.N + a[:, 2:3] * frames.B
    F = velocity_coefficients(coeffs, kappa, tau, frames.signature)
    family = Family(family)
    beta = SampledCurve(alpha.s, beta_pts, meta={"family": family.value, "unit_speed": False})
    return AssociatedPair(alpha, beta, coeffs, family, dict(params or {}), F)


def _cumulative(f, s, constant=0.0):
    return cumulative_simpson(f, x=s, initial=0.0) + constant


def _helix_ratio_check(kappa, tau, rel_tol):
    ratio = tau / kappa
    if not is_constant(ratio, rel_tol):
        raise ValueError("main curve is not a general helix")


def _require_type(frames: FrenetFrame, want: CurveType, label: str):
    if frames.signature.curve_type is not want:
        raise ValueError(f"{label} needs a {want.value} reference curve, got "
                         f"{frames.signature.curve_type.value}")


def _warn_if_vanishing(F, which: str, family: Family):
    if np.any(np.abs(F) <= DEGENERACY_TOL) or not (np.all(F > 0) or np.all(F < 0)):
        warnings.warn(f"{family.value}: {which} vanishes on the domain; beta is singular there",
                      RuntimeWarning, stacklevel=3)


def hca_construct(alpha: SampledCurve, hca_type: int, *, c: Optional[float] = None,
                  nu: Optional[float] = None, c1: float = 0.0, c2: float = 0.0,
                  phase: float = 0.0, theta0: float = 0.0, integral_constants=(0.0, 0.0),
                  require_helix: bool = True, rel_tol: float = DEFAULT_REL_TOL) -> AssociatedPair:
    """Helix-connected associated curve of type 1-5.

    Parameters
    ----------
    alpha : SampledCurve
        Arc-length parametrized reference curve. Types 1-2 need a timelike
        curve, types 3-5 a spacelike curve with timelike binormal.
    hca_type : int
        1..5.
    c : float
        Type 2 constant (non-zero).
    nu : float
        Type 4 integration constant (``beta(nu) = alpha(nu)``).
    c1, c2 : float
        Type 5 homogeneous-solution constants.
    phase : float
        Additive constant of ``int tau ds`` for type 1.
    theta0 : float
        Value of ``int kappa ds`` at the left end of the grid (type 5).
    integral_constants : (float, float)
        Additive constants of ``int sin(theta) ds`` and ``int cos(theta) ds``
        (type 5).
    require_helix : bool
        Reject reference curves whose ``tau/kappa`` is not constant.
    """
    frames, kappa, tau = _frames_of(alpha)
    s = alpha.s
    n = s.size
    hca_type = int(hca_type)
    family = Family(f"hca{hca_type}")
    if hca_type in (1, 2):
        _require_type(frames, CurveType.TIMELIKE, family.value)
    elif hca_type in (3, 4, 5):
        _require_type(frames, CurveType.SPACELIKE_TYPE2, family.value)
    else:
        raise ValueError("hca_type must be 1..5")
    if require_helix:
        _helix_ratio_check(kappa, tau, rel_tol)

    params = {}
    vals = np.zeros((n, 3))
    ders = np.zeros((n, 3))
    if hca_type == 1:
        phi = _cumulative(tau, s, phase)
        vals[:, 1], vals[:, 2] = np.sin(phi), np.cos(phi)
        ders[:, 1], ders[:, 2] = tau * np.cos(phi), -tau * np.sin(phi)
        params["phase"] = phase
    elif hca_type == 2:
        if c is None or c == 0:
            raise ValueError("degenerate: beta = alpha (c must be non-zero)")
        ratio = tau / kappa
        vals[:, 0], vals[:, 2] = c * ratio, c
        ders[:, 0] = c * derivative(ratio, s)
        params["c"] = c
    elif hca_type == 3:
        if np.any(np.abs(tau) <= DEGENERACY_TOL):
            raise ValueError("torsion vanishes where it is divided by")
        g = 1.0 / kappa
        gp = derivative(g, s)
        a3 = -gp / tau
        vals[:, 1], vals[:, 2] = g, a3
        ders[:, 1], ders[:, 2] = gp, derivative(a3, s)
    elif hca_type == 4:
        if nu is None:
            raise ValueError("type 4 needs the integration constant nu")
        if np.any(np.abs(tau) <= DEGENERACY_TOL):
            raise ValueError("torsion vanishes where it is divided by")
        q = kappa / tau
        vals[:, 0] = nu - s
        vals[:, 2] = -(nu - s) * q
        ders[:, 0] = -1.0
        ders[:, 2] = q - (nu - s) * derivative(q, s)
        params["nu"] = nu
    else:
        theta = _cumulative(kappa, s, theta0)
        S, C = np.sin(theta), np.cos(theta)
        P = _cumulative(S, s, integral_constants[0])
        Q = _cumulative(C, s, integral_constants[1])
        a2 = c1 * C + c2 * S - C * P + S * Q
        a1 = -S * (P - c1) - C * (Q + c2)
        vals[:, 0], vals[:, 1] = a1, a2
        ders[:, 1] = kappa * (-c1 * S + c2 * C + S * P + C * Q)
        ders[:, 0] = kappa * a2 - 1.0
        params.update(c1=c1, c2=c2, theta0=theta0, integral_constants=tuple(integral_constants))

    pair = associated_curve(alpha, CoefficientTriple(vals, ders), family, params)
    leg = _LEG_INDEX[TANGENT_LEG[family]]
    _warn_if_vanishing(pair.F[:, leg], f"F{leg + 1}", family)
    return pair


def degenerate_case3(alpha: SampledCurve) -> AssociatedPair:
    """The ``a3 = 0`` branch for a timelike reference: forces ``a1 = a2 = 0``, so beta = alpha."""
    frames, _, _ = _frames_of(alpha)
    _require_type(frames, CurveType.TIMELIKE, "case a3 = 0")
    return associated_curve(alpha, CoefficientTriple.zero(len(alpha)), Family.GENERIC,
                            {"degenerate": "a3 = 0 forces beta = alpha"})


def shca_construct(alpha: SampledCurve, shca_type: int, *, xi: Optional[float] = None,
                   zeta: float = 0.0, omega: Optional[float] = None, c: float = 0.0,
                   check_slant: bool = True, rel_tol: float = DEFAULT_REL_TOL) -> AssociatedPair:
    """Slant-helix-connected associated curve of type 1-3 (``beta'`` parallel to N).

    ``alpha`` must be a spacelike curve with timelike principal normal. When
    it does not pass the slant-helix test a warning is issued and the pair is
    still built; the helix property of beta then fails, which is the converse
    direction of the characterization.

    ``c`` is the additive constant of ``int tau/kappa ds`` (type 1).
    """
    frames, kappa, tau = _frames_of(alpha)
    _require_type(frames, CurveType.SPACELIKE_TYPE1, f"shca{shca_type}")
    s = alpha.s
    n = s.size
    shca_type = int(shca_type)
    family = Family(f"shca{shca_type}")
    if check_slant:
        sigma, _ = slant_invariant(kappa, tau, s, frames.signature)
        if not is_constant(sigma[2:-2], rel_tol):
            warnings.warn("reference curve does not pass the slant-helix test; "
                          "beta will not be a helix", RuntimeWarning, stacklevel=2)

    vals = np.zeros((n, 3))
    ders = np.zeros((n, 3))
    params = {}
    if shca_type == 1:
        g = 1.0 / kappa
        vals[:, 1] = -g
        vals[:, 2] = _cumulative(tau * g, s, c)
        ders[:, 1] = -derivative(g, s)
        ders[:, 2] = tau * g
        params["c"] = c
    elif shca_type == 2:
        if xi is None:
            raise ValueError("type 2 needs xi")
        vals[:, 0], vals[:, 2] = xi - s, zeta
        ders[:, 0] = -1.0
        params.update(xi=xi, zeta=zeta)
    elif shca_type == 3:
        if omega is None:
            raise ValueError("type 3 needs omega")
        vals[:, 0] = omega - s
        ders[:, 0] = -1.0
        params["omega"] = omega
    else:
        raise ValueError("shca_type must be 1..3")
    pair = associated_curve(alpha, CoefficientTriple(vals, ders), family, params)
    if shca_type != 3:
        _warn_if_vanishing(pair.F[:, 1], "F2", family)
    return pair


def shca_frame(frames: FrenetFrame, kappa, tau, sign=1.0) -> FrenetFrame:
    """Frame of beta when ``beta'`` is parallel to alpha's principal normal.

    ``T_beta = sign * N``, ``N_beta = (eps_B kappa T + tau B) / r`` and
    ``B_beta = -sign * W / r`` with ``r = sqrt|eps_T kappa^2 + eps_B tau^2|``
    and ``W`` the Darboux vector of alpha. ``sign`` may be an array (use the
    sign of ``F2`` to follow beta's actual direction of travel).
    """
    eT, eN, eB = frames.signature.as_tuple()
    kappa = np.asarray(kappa, dtype=float)
    tau = np.asarray(tau, dtype=float)
    q = eT * kappa**2 + eB * tau**2
    if np.any(np.abs(q) <= DEGENERACY_TOL):
        raise ValueError("Darboux vector lightlike; frame of beta undefined")
    r = np.sqrt(np.abs(q))[..., None]
    sign = np.asarray(sign, dtype=float)[..., None] if np.ndim(sign) else float(sign)
    T_b = sign * frames.N
    N_b = (eB * kappa[..., None] * frames.T + tau[..., None] * frames.B) / r
    B_b = -sign * darboux_vector(frames, kappa, tau) / r
    eNb = int(np.sign(np.atleast_1d(q)[0]))
    return FrenetFrame(T_b, N_b, B_b, CausalSignature(eN, eNb, -eN * eNb))


def transferred_frame(pair: AssociatedPair) -> FrenetFrame:
    """Exact frame of beta for a family whose ``beta'`` is parallel to a frame leg X of alpha.

    ``T_beta = sgn(F) X`` and ``N_beta`` is the normalized ``sgn(F) X'`` with
    ``X'`` read from the Frenet equations.
    """
    leg = pair.tangent_leg
    if leg is None:
        raise ValueError("generic pairs have no transferred frame")
    fr, kappa, tau = _frames_of(pair.alpha)
    eT, eN, eB = fr.signature.as_tuple()
    k = _LEG_INDEX[leg]
    sgn = np.sign(pair.F[:, k])
    sgn[sgn == 0] = 1.0
    sgn = sgn[:, None]
    if leg == "N":
        return shca_frame(fr, kappa, tau, sgn[:, 0])
    K, Tau = kappa[:, None], tau[:, None]
    if leg == "T":
        X, dX = fr.T, K * fr.N
        eps_X = eT
    else:
        X, dX = fr.B, eT * Tau * fr.N
        eps_X = eB
    nd = lorentz_norm(dX)
    if np.any(nd <= DEGENERACY_TOL):
        raise ValueError("derivative of the tangent leg vanishes; beta has no principal normal")
    T_b = sgn * X
    N_b = sgn * dX / nd[:, None]
    eps_N = int(np.sign(minkowski_inner(N_b[0], N_b[0])))
    B_b = eps_X * eps_N * lorentz_cross(T_b, N_b)
    return FrenetFrame(T_b, N_b, B_b, CausalSignature(eps_X, eps_N, -eps_X * eps_N))


def leg_derivative(alpha: SampledCurve, leg: str):
    """``T'``, ``N'`` or ``B'`` of the reference curve read from the Frenet equations."""
    fr, kappa, tau = _frames_of(alpha)
    eT, _, eB = fr.signature.as_tuple()
    K, Tau = kappa[:, None], tau[:, None]
    if leg == "T":
        return K * fr.N
    if leg == "N":
        return eB * K * fr.T + Tau * fr.B
    return eT * Tau * fr.N


def beta_frenet(pair: AssociatedPair, rest_tol: float = 1e-6):
    """Frame, curvature and torsion of beta with respect to its own arc length.

    Uses ``beta' = F X`` for the family's frame leg X, so the speed is ``|F|``
    and the tangent is ``sgn(F) X``. Raises when beta comes to rest on the
    grid, where its frame is undefined.

    Returns
    -------
    frames, kappa, tau, arc : FrenetFrame, ndarray, ndarray, ndarray
        ``arc`` is beta's arc length measured from the left end of the grid.
    """
    leg = pair.tangent_leg
    if leg is None:
        raise ValueError("generic pairs have no tangent-direction contract")
    fr, _, _ = _frames_of(pair.alpha)
    k = _LEG_INDEX[leg]
    F = pair.F[:, k]
    if np.any(np.abs(F) <= rest_tol * np.abs(F).max()) or not (np.all(F > 0) or np.all(F < 0)):
        raise ValueError("beta comes to rest on the domain; its Frenet frame is undefined there")
    X = fr.legs()[k]
    eps = fr.signature.as_tuple()[k]
    sign = np.sign(F[0])
    frames, kt, tt = frame_from_tangent(sign * X, pair.s, eps, sign * leg_derivative(pair.alpha, leg))
    speed = np.abs(F)
    arc = cumulative_simpson(speed, x=pair.s, initial=0.0)
    return frames, kt / speed, tt / speed, arc


@dataclass
class DistanceReport:
    family: Family
    constant: bool
    spread: float
    allowed: float
    conditions: dict = field(default_factory=dict)


def distance_function(pair: AssociatedPair, rel_tol: float = DEFAULT_REL_TOL, trim: int = 2):
    """Distance ``d(s) = ||beta(s) - alpha(s)||`` and a constancy report.

    Besides the plain constancy test, the report evaluates the characterizing
    conditions that are known for HCA3, HCA5 and SHCA1:

    * HCA3: kappa constant, or ``(1/kappa)(1/kappa)'`` linear in s with slope ``(tau/kappa)^2``;
    * HCA5: ``a1 = 0`` or ``a2`` constant;
    * SHCA1: ``tau * int(tau/kappa) - (1/kappa)' = 0`` and
      ``tau = g' / sqrt(c^2 + g^2)`` with ``g = 1/kappa``.
    """
    d = lorentz_norm(pair.beta.points - pair.alpha.points)
    spread, allowed = constancy(d, rel_tol)
    cond = {}
    s = pair.s
    kappa, tau = pair.alpha.kappa, pair.alpha.tau
    inner = slice(trim, len(s) - trim)
    if pair.family is Family.HCA3:
        g = 1.0 / kappa
        u = g * derivative(g, s)
        m2 = float(np.median(tau / kappa)) ** 2
        slope, icpt = np.polyfit(s[inner], u[inner], 1)
        lin_res = float(np.max(np.abs(u[inner] - (slope * s[inner] + icpt))))
        cond = {
            "kappa_constant": is_constant(kappa, rel_tol),
            "linear_residual": lin_res,
            "slope": float(slope),
            "m_squared": m2,
            "linear_with_slope_m2": lin_res <= rel_tol * (1 + np.abs(u).max())
            and abs(slope - m2) <= rel_tol * (1 + m2),
        }
        cond["predicts_constant"] = cond["kappa_constant"] or cond["linear_with_slope_m2"]
    elif pair.family is Family.HCA5:
        a1, a2 = pair.coefficients.values[:, 0], pair.coefficients.values[:, 1]
        cond = {
            "a1_zero": bool(np.max(np.abs(a1)) <= rel_tol),
            "a2_constant": is_constant(a2, rel_tol),
        }
        cond["predicts_constant"] = cond["a1_zero"] or cond["a2_constant"]
    elif pair.family is Family.SHCA1:
        g = 1.0 / kappa
        gp = derivative(g, s)
        integral = pair.coefficients.values[:, 2]
        res_b = float(np.max(np.abs(tau * integral - gp)[inner]))
        c2 = float(integral[0] ** 2 - g[0] ** 2)
        if c2 > 0:
            res_c = float(np.max(np.abs(tau - gp / np.sqrt(c2 + g**2))[inner]))
        else:
            res_c = float("inf")
        cond = {
            "ode_residual": res_b,
            "closed_form_residual": res_c,
            "predicts_constant": res_b <= rel_tol * (1 + np.abs(gp).max()),
        }
    return d, DistanceReport(pair.family, spread <= allowed, spread, allowed, cond)
