"""Numeric pass/fail checks for helix, slant-helix and Darboux-helix properties.

Every check returns a :class:`VerificationReport`. A report passes exactly
when its residual is within its tolerance; ``INCONCLUSIVE`` is reserved for
inputs on which the test itself is undefined (vanishing curvature, a
lightlike Darboux vector, a broken tangent contract).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._numerics import DEFAULT_REL_TOL, constancy
from .associated import AssociatedPair, Family, distance_function, leg_derivative
from .curve_model import (
    FRAME_TOL,
    CausalSignature,
    FrenetFrame,
    SampledCurve,
    arc_length_reparametrize,
    darboux_vector,
    frame_from_tangent,
    frenet_from_samples,
    slant_invariant,
)
from .lorentz import lorentz_cross, lorentz_norm, minkowski_inner

KAPPA_FLOOR = 1e-8
SINGULAR_FLOOR = 1e-8
CONTRACT_TOL = 1e-5


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class VerificationReport:
    name: str
    verdict: Verdict
    residual: float
    tolerance: float
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    summary: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "residual": _jsonable(self.residual),
            "tolerance": _jsonable(self.tolerance),
            "witnesses": [[_jsonable(a), _jsonable(b)] for a, b in self.witnesses],
            "details": _jsonable(self.details),
            "summary": self.summary,
        }

    def line(self) -> str:
        inner = f"{self.summary}, " if self.summary else ""
        if np.isfinite(self.residual):
            inner += f"residual {self.residual:.1g}"
        else:
            inner += "residual n/a"
        return f"{self.name}: {self.verdict.value} ({inner})"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if np.isfinite(x) else None
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, enum.Enum):
        return x.value
    return x


def _decide(residual, tolerance) -> Verdict:
    return Verdict.PASS if residual <= tolerance else Verdict.FAIL


def _inconclusive(name, reason, **details) -> VerificationReport:
    return VerificationReport(name, Verdict.INCONCLUSIVE, float("nan"), float("nan"),
                              details={"reason": reason, **details}, summary=reason)


def _extremal_witnesses(s, f):
    if s is None:
        s = np.arange(len(f), dtype=float)
    i, j = int(np.argmin(f)), int(np.argmax(f))
    return [(float(s[i]), float(f[i])), (float(s[j]), float(f[j]))]


def _trimmed(trim, *arrays):
    if trim <= 0:
        return arrays
    return tuple(None if a is None else np.asarray(a)[trim:-trim] for a in arrays)


def _constancy_report(name, f, s, rel_tol, summary, details=None) -> VerificationReport:
    spread, allowed = constancy(f, rel_tol)
    return VerificationReport(name, _decide(spread, allowed), spread, allowed,
                              _extremal_witnesses(s, f), dict(details or {}), summary)


def save_reports(reports, path=None) -> str:
    """JSON document ``{"reports": [...], "verdict": ...}``; written to ``path`` if given."""
    doc = {"reports": [r.to_dict() for r in reports], "verdict": overall_verdict(reports).value}
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    return text


def format_reports(reports) -> str:
    return "\n".join(r.line() for r in reports)


def overall_verdict(reports) -> Verdict:
    verdicts = [r.verdict for r in reports]
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if verdicts and all(v is Verdict.PASS for v in verdicts):
        return Verdict.PASS
    return Verdict.INCONCLUSIVE


# ---------------------------------------------------------------------------
# curve-level checks


def is_general_helix(kappa, tau, s=None, rel_tol: float = DEFAULT_REL_TOL, trim: int = 0) -> VerificationReport:
    """Constancy of ``tau / kappa``.

    Examples
    --------
    >>> is_general_helix([6.0] * 5, [3.0] * 5).line()
    'helix: PASS (ratio 0.5000, residual 0)'
    """
    kappa, tau, s = _trimmed(trim, np.asarray(kappa, float), np.asarray(tau, float), s)
    if np.any(np.abs(kappa) <= KAPPA_FLOOR):
        return _inconclusive("helix", "curvature below resolution")
    ratio = tau / kappa
    med = float(np.median(ratio))
    return _constancy_report("helix", ratio, s, rel_tol, f"ratio {med:.4f}", {"ratio": med})


def is_slant_helix(kappa, tau, s, signature: CausalSignature, rel_tol: float = DEFAULT_REL_TOL,
                   trim: int = 2) -> VerificationReport:
    """Constancy of ``kappa^2 / |eps_T kappa^2 + eps_B tau^2|^(3/2) * (tau/kappa)'``."""
    kappa = np.asarray(kappa, float)
    tau = np.asarray(tau, float)
    s = np.asarray(s, float)
    if np.any(np.abs(kappa) <= KAPPA_FLOOR):
        return _inconclusive("slant", "curvature below resolution")
    sigma, base = slant_invariant(kappa, tau, s, signature)
    if np.any(base <= SINGULAR_FLOOR):
        return _inconclusive("slant", "slant invariant singular")
    sigma, s = _trimmed(trim, sigma, s)
    med = float(np.median(sigma))
    return _constancy_report("slant", sigma, s, rel_tol, f"invariant {med:.4f}", {"invariant": med})


def estimate_axis(unit_field, rel_tol: float = DEFAULT_REL_TOL):
    """Fixed direction making a constant angle with a field of unit vectors.

    A field that does not move gives its own normalized mean. Otherwise the
    samples must lie in an affine plane ``<u, x> = const``; ``u`` is read
    off the smallest singular direction of the centred samples.
    """
    U = np.asarray(unit_field, float)
    mean = U.mean(axis=0)
    centred = U - mean
    if np.max(np.abs(centred)) <= rel_tol:
        u = mean
    else:
        _, _, vt = np.linalg.svd(centred, full_matrices=False)
        u = vt[-1] * np.array([-1.0, 1.0, 1.0])    # Euclidean normal -> Lorentzian normal
    norm = float(lorentz_norm(u))
    if norm <= SINGULAR_FLOOR * max(1.0, float(np.linalg.norm(u))):
        raise ValueError("estimated axis is near-lightlike")
    return u / norm


def is_darboux_helix(frames: FrenetFrame, kappa, tau, s=None, axis=None,
                     rel_tol: float = DEFAULT_REL_TOL, trim: int = 0) -> VerificationReport:
    """Constancy of ``<W/||W||, axis>`` for the Darboux vector ``W``.

    Without ``axis`` the direction is estimated by :func:`estimate_axis`.
    """
    W = darboux_vector(frames, kappa, tau)
    q = minkowski_inner(W, W)
    if np.any(np.abs(q) <= SINGULAR_FLOOR):
        return _inconclusive("darboux", "Darboux vector lightlike")
    Wn = W / np.sqrt(np.abs(q))[:, None]
    Wn, s = _trimmed(trim, Wn, s)
    if axis is None:
        try:
            axis = estimate_axis(Wn, rel_tol)
        except ValueError as exc:
            return _inconclusive("darboux", str(exc))
    axis = np.asarray(axis, float)
    proj = minkowski_inner(Wn, axis)
    med = float(np.median(proj))
    return _constancy_report("darboux", proj, s, rel_tol, f"<W,axis> {med:.4f}",
                             {"axis": axis.tolist(), "projection": med})


def check_frame_field(frames: FrenetFrame, signature: Optional[CausalSignature] = None,
                      tol: float = FRAME_TOL, s=None) -> VerificationReport:
    """Gram matrix and the three cross-product relations of a frame field."""
    if signature is not None and signature != frames.signature:
        frames = FrenetFrame(frames.T, frames.N, frames.B, signature)
    T, N, B = (np.atleast_2d(X) for X in frames.legs())
    eT, eN, eB = frames.signature.as_tuple()
    target = [eT, eN, eB, 0.0, 0.0, 0.0]
    pairs = [(T, T), (N, N), (B, B), (T, N), (T, B), (N, B)]
    gram = np.max([np.abs(minkowski_inner(a, b) - t) for (a, b), t in zip(pairs, target)], axis=0)
    cross = np.max([
        np.abs(B - eT * eN * lorentz_cross(T, N)).max(axis=-1),
        np.abs(N - eB * eT * lorentz_cross(B, T)).max(axis=-1),
        np.abs(T - eN * eB * lorentz_cross(N, B)).max(axis=-1),
    ], axis=0)
    per_sample = np.maximum(gram, cross)
    i = int(np.argmax(per_sample))
    where = float(s[i]) if s is not None else float(i)
    res = float(per_sample[i])
    return VerificationReport("frames", _decide(res, tol), res, tol, [(where, res)],
                              {"gram": float(gram.max()), "cross": float(cross.max())},
                              f"gram {gram.max():.1g}, cross {cross.max():.1g}")


# ---------------------------------------------------------------------------
# sampled curves and associated pairs


def estimate_curvatures(curve: SampledCurve, samples: Optional[int] = None):
    """``(frames, kappa, tau, s)`` of a curve, reparametrizing by arc length if needed."""
    if curve.speed_residual() > 1e-6:
        curve = arc_length_reparametrize(curve, num=samples)
    frames, kappa, tau = frenet_from_samples(curve)
    return frames, kappa, tau, curve.s


def tangent_contract_residual(pair: AssociatedPair, leg: str = "N", trim: int = 2,
                              rest_tol: float = 1e-8) -> float:
    """Largest off-``leg`` component of the finite-difference ``beta'`` relative to its ``leg`` component."""
    k = {"T": 0, "N": 1, "B": 2}[leg]
    inner = slice(trim, len(pair.s) - trim)
    comps = pair.frame_components(pair.fd_velocity())[inner]
    main = np.abs(comps[:, k])
    moving = main > rest_tol * max(main.max(), 1e-300)
    if not np.any(moving):
        return float("inf")
    off = np.delete(np.abs(comps), k, axis=1).max(axis=1)
    return float(np.max(off[moving] / main[moving]))


def associated_helix_report(pair: AssociatedPair, rel_tol: float = DEFAULT_REL_TOL,
                            trim: int = 3) -> VerificationReport:
    """General-helix test on beta, robust to rest points of beta.

    beta's tangent is, up to sign, the frame leg X of alpha that ``beta'``
    follows. The ratio is measured on the unsigned field X, so it is the
    ratio of beta on every regular arc up to a sign that flips at rest
    points. No arc-length reparametrization of beta is involved.
    """
    leg = pair.tangent_leg
    if leg is None:
        return _inconclusive("helix", "generic pair has no tangent contract")
    contract = tangent_contract_residual(pair, leg)
    if not contract <= CONTRACT_TOL:
        return _inconclusive("helix", f"beta' not parallel to {leg}", contract=contract)
    fr = pair.alpha.frames
    X = fr.legs()[{"T": 0, "N": 1, "B": 2}[leg]]
    eps = fr.signature.as_tuple()[{"T": 0, "N": 1, "B": 2}[leg]]
    try:
        _, kt, tt = frame_from_tangent(X, pair.s, eps, leg_derivative(pair.alpha, leg))
    except ValueError:
        return _inconclusive("helix", "beta's tangent does not turn")
    rep = is_general_helix(kt, tt, pair.s, rel_tol, trim)
    rep.details["contract"] = contract
    return rep


def check_equivalence_theorem(pair: AssociatedPair, rel_tol: float = DEFAULT_REL_TOL,
                              trim: int = 3) -> VerificationReport:
    """Agreement of three tests for a pair with ``beta' || N``.

    (i) beta is a general helix, (ii) alpha is a slant helix, (iii) alpha is
    a Darboux helix. Passes when all three verdicts agree.
    """
    contract = tangent_contract_residual(pair, "N")
    if not contract <= CONTRACT_TOL:
        return _inconclusive("equivalence", "beta' not parallel to N", contract=contract)
    alpha = pair.alpha
    fr, kappa, tau, s = alpha.frames, alpha.kappa, alpha.tau, alpha.s
    try:
        _, kt, tt = frame_from_tangent(fr.N, s, fr.signature.eN, leg_derivative(alpha, "N"))
    except ValueError:
        return _inconclusive("equivalence", "beta's tangent does not turn")
    parts = [
        is_general_helix(kt, tt, s, rel_tol, trim),
        is_slant_helix(kappa, tau, s, fr.signature, rel_tol, trim),
        is_darboux_helix(fr, kappa, tau, s, None, rel_tol, trim),
    ]
    verdicts = [p.verdict for p in parts]
    details = {p.name: p.to_dict() for p in parts}
    details["contract"] = contract
    labels = "/".join(v.value for v in verdicts)
    if Verdict.INCONCLUSIVE in verdicts:
        return VerificationReport("equivalence", Verdict.INCONCLUSIVE, float("nan"), float("nan"),
                                  details=details, summary=labels)
    agree = len(set(verdicts)) == 1
    return VerificationReport("equivalence", Verdict.PASS if agree else Verdict.FAIL,
                              0.0 if agree else 1.0, 0.0, details=details, summary=labels)


def distance_constancy(pair: AssociatedPair, rel_tol: float = DEFAULT_REL_TOL,
                       trim: int = 3) -> VerificationReport:
    """Check the distance-function claim attached to the pair's family.

    ===========  ==============================================================
    HCA1, HCA2   d constant (``1`` and ``|c| sqrt(1 - m^2)``)
    HCA3, HCA5   d constant exactly when the characterizing condition holds
    SHCA1        same, with the torsion condition on ``g = 1/kappa``
    HCA4         d = ``|nu - s| sqrt|1 - (kappa/tau)^2|``, zero at ``s = nu``
    SHCA2        d = ``sqrt((xi - s)^2 + zeta^2)``, equal to ``|zeta|`` at ``s = xi``
    SHCA3        d = ``|omega - s|``, zero only at ``s = omega``
    ===========  ==============================================================

    Closed-form claims compare ``d`` against the formula, so loosening
    ``rel_tol`` never turns them into failures. The "iff" claims compare a
    constancy verdict with a predicted one and have no such guarantee.
    """
    d, rep = distance_function(pair, rel_tol, trim)
    s = pair.s
    fam = pair.family
    a = pair.coefficients.values
    details = {"family": fam.value, "constant": rep.constant, "spread": rep.spread,
               "allowed": rep.allowed, **rep.conditions}
    witnesses = _extremal_witnesses(s, d)
    if fam in (Family.HCA1, Family.HCA2):
        return VerificationReport("distance", _decide(rep.spread, rep.allowed), rep.spread, rep.allowed,
                                  witnesses, details, f"d {np.median(d):.6f}")
    if fam in (Family.HCA3, Family.HCA5, Family.SHCA1):
        predicted = bool(rep.conditions.get("predicts_constant"))
        agree = predicted == rep.constant
        details["predicted_constant"] = predicted
        return VerificationReport("distance", Verdict.PASS if agree else Verdict.FAIL,
                                  0.0 if agree else 1.0, 0.0, witnesses, details,
                                  f"constant={rep.constant}, predicted={predicted}")
    if fam is Family.HCA4:
        kappa, tau = pair.alpha.kappa, pair.alpha.tau
        model = np.abs(a[:, 0]) * np.sqrt(np.abs(1.0 - (kappa / tau) ** 2))
        point = pair.params.get("nu")
        label = "nu"
    elif fam is Family.SHCA2:
        model = np.sqrt(a[:, 0] ** 2 + a[:, 2] ** 2)
        point = pair.params.get("xi")
        label = "xi"
    elif fam is Family.SHCA3:
        model = np.abs(a[:, 0])
        point = pair.params.get("omega")
        label = "omega"
    else:
        return _constancy_report("distance", d, s, rel_tol, "no family claim", details)
    gap = float(np.max(np.abs(d - model)))
    tol = rel_tol * (1.0 + float(np.max(np.abs(d))))
    if point is not None and s[0] <= point <= s[-1]:
        j = int(np.argmin(np.abs(s - point)))
        details[f"d_at_{label}"] = float(d[j])
    return VerificationReport("distance", _decide(gap, tol), gap, tol, witnesses, details,
                              f"constant={rep.constant}")


__all__ = [
    "Verdict",
    "VerificationReport",
    "associated_helix_report",
    "check_equivalence_theorem",
    "check_frame_field",
    "distance_constancy",
    "estimate_axis",
    "estimate_curvatures",
    "format_reports",
    "is_darboux_helix",
    "is_general_helix",
    "is_slant_helix",
    "overall_verdict",
    "save_reports",
    "tangent_contract_residual",
]
