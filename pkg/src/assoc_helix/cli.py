"""Command-line front end: ``generate``, ``verify`` and ``figure``.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
3 domain outside the representation's validity window, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson

from . import __version__
from ._numerics import derivative
from .associated import AssociatedPair, beta_frenet, hca_construct, shca_construct
from .curve_model import (
    CausalSignature,
    CurvatureProfile,
    CurveType,
    FrenetFrame,
    SampledCurve,
    integrate_frenet,
)
from .lorentz import lorentz_norm
from .position import (
    WINDOW_MESSAGE,
    AngleRule,
    Axis,
    HelixParams,
    make_grid,
    spacelike_slant_helix,
    spacelike_type2_helix,
    timelike_helix,
)
from .verify import (
    Verdict,
    VerificationReport,
    check_frame_field,
    distance_constancy,
    estimate_curvatures,
    format_reports,
    is_darboux_helix,
    is_general_helix,
    is_slant_helix,
    overall_verdict,
    save_reports,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

REFERENCE_FAMILIES = ("frenet", "timelike-helix", "spacelike-type2-helix", "slant-helix")
HCA_FAMILIES = tuple(f"hca{i}" for i in range(1, 6))
SHCA_FAMILIES = tuple(f"shca{i}" for i in range(1, 4))
FAMILIES = REFERENCE_FAMILIES + HCA_FAMILIES + SHCA_FAMILIES

FRAME_COLUMNS = ["T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3", "kappa", "tau"]
N_RELATIVE_TOL = 1e-4     # agreement required when both --n and --m are given

SUITES_FOR = {
    "frenet": ("helix", "slant", "darboux", "frames"),
    "timelike-helix": ("helix", "darboux", "frames"),
    "spacelike-type2-helix": ("helix", "darboux", "frames"),
    "slant-helix": ("slant", "darboux", "frames"),
    **{f: ("helix", "frames", "distance") for f in HCA_FAMILIES + SHCA_FAMILIES},
}


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


# ---------------------------------------------------------------------------
# curvature expressions


_FUNCS = {name: getattr(np, name) for name in
          ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh", "arctan", "abs")}
_CONSTS = {"pi": math.pi, "e": math.e}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def parse_expression(text: str):
    """Compile an arithmetic expression in ``s`` to a vectorized function.

    Only numbers, ``s``, ``pi``, ``e``, the four operations, ``**`` and a few
    numpy functions are accepted.

    >>> parse_expression("2 + sin(s)")(np.array([0.0]))
    array([2.])
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse expression {text!r}") from exc

    def ev(node, s):
        if isinstance(node, ast.Expression):
            return ev(node.body, s)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id == "s":
                return s
            if node.id in _CONSTS:
                return _CONSTS[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left, s), ev(node.right, s))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand, s))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0], s))
        raise UsageError(f"unsupported element in expression {text!r}")

    def f(s):
        s = np.asarray(s, dtype=float)
        return np.broadcast_to(np.asarray(ev(tree, s), dtype=float), s.shape).copy()

    f(np.zeros(1))     # surface unknown names now
    return f


# ---------------------------------------------------------------------------
# curve documents


@dataclass
class CurveDocument:
    metadata: dict
    s: np.ndarray
    points: np.ndarray
    frames: Optional[np.ndarray] = None        # (n, 9): T, N, B
    curvatures: Optional[np.ndarray] = None    # (n, 2): kappa, tau

    def signature(self) -> Optional[CausalSignature]:
        sig = self.metadata.get("signature")
        return CausalSignature(*sig) if sig else None

    def frame_field(self) -> Optional[FrenetFrame]:
        if self.frames is None or self.signature() is None:
            return None
        f = self.frames
        return FrenetFrame(f[:, 0:3], f[:, 3:6], f[:, 6:9], self.signature())

    def curve(self) -> SampledCurve:
        return SampledCurve(self.s, self.points)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(doc: CurveDocument, path: str):
    cols = ["s", "x1", "x2", "x3"]
    blocks = [doc.s[:, None], doc.points]
    if doc.frames is not None:
        cols += FRAME_COLUMNS
        blocks += [doc.frames, doc.curvatures]
    table = np.hstack(blocks)
    lines = ["# metadata " + json.dumps(doc.metadata, sort_keys=True), ",".join(cols)]
    lines += [",".join(_fmt(v) for v in row) for row in table]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(doc: CurveDocument, path: str):
    body = {
        "metadata": doc.metadata,
        "samples": [[float(si), *map(float, p)] for si, p in zip(doc.s, doc.points)],
    }
    if doc.frames is not None:
        body["frames"] = doc.frames.tolist()
        body["curvatures"] = doc.curvatures.tolist()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(body, sort_keys=True, allow_nan=False) + "\n")


def read_document(path: str) -> CurveDocument:
    """Parse a CSV or JSON curve document; raises ``UsageError`` on malformed input."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        if text.lstrip().startswith("{"):
            return _parse_json(text)
        return _parse_csv(text)
    except UsageError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from exc


def _parse_json(text: str) -> CurveDocument:
    body = json.loads(text)
    samples = np.asarray(body["samples"], dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 4:
        raise UsageError("samples must be rows of (s, x1, x2, x3)")
    frames = curv = None
    if "frames" in body:
        frames = np.asarray(body["frames"], dtype=float)
        curv = np.asarray(body["curvatures"], dtype=float)
    return _checked(CurveDocument(body["metadata"], samples[:, 0], samples[:, 1:], frames, curv))


def _parse_csv(text: str) -> CurveDocument:
    lines = text.split("\n")
    if not lines or not lines[0].startswith("# metadata "):
        raise UsageError("missing metadata line")
    metadata = json.loads(lines[0][len("# metadata "):])
    header = lines[1].split(",")
    rows = [ln for ln in lines[2:] if ln]
    if not text.endswith("\n"):
        raise UsageError("truncated document: missing final newline")
    expected = metadata.get("rows")
    if expected is not None and len(rows) != expected:
        raise UsageError(f"truncated document: {len(rows)} of {expected} rows")
    data = np.array([[float(v) for v in ln.split(",")] for ln in rows], dtype=float)
    if data.ndim != 2 or data.shape[1] != len(header):
        raise UsageError("row width does not match header")
    idx = {name: i for i, name in enumerate(header)}
    for name in ("s", "x1", "x2", "x3"):
        if name not in idx:
            raise UsageError(f"missing column {name}")
    frames = curv = None
    if all(c in idx for c in FRAME_COLUMNS):
        frames = data[:, [idx[c] for c in FRAME_COLUMNS[:9]]]
        curv = data[:, [idx["kappa"], idx["tau"]]]
    return _checked(CurveDocument(metadata, data[:, idx["s"]],
                                  data[:, [idx["x1"], idx["x2"], idx["x3"]]], frames, curv))


def _checked(doc: CurveDocument) -> CurveDocument:
    if doc.s.size < 5:
        raise UsageError("document has fewer than 5 samples")
    if not np.all(np.isfinite(doc.points)) or np.any(np.diff(doc.s) <= 0):
        raise UsageError("samples must be finite with increasing s")
    if "family" not in doc.metadata:
        raise UsageError("metadata lacks a family tag")
    return doc


# ---------------------------------------------------------------------------
# building curves from parameters


PARAM_NAMES = ("kappa", "tau", "signature", "n", "m", "axis", "branch", "c", "nu", "c1", "c2",
               "phase", "xi", "zeta", "omega")


def _require(params: dict, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise UsageError("missing parameter(s): " + ", ".join("--" + n for n in missing))


def _resolve_angles(params: dict, default_axis: str, rules: dict) -> tuple:
    """Pick the axis and ``HelixParams`` from ``--axis``, ``--n`` and ``--m``."""
    n, m, axis = params.get("n"), params.get("m"), params.get("axis")
    if n is None and m is None:
        raise UsageError("missing parameter(s): --n or --m")
    candidates = [axis] if axis else list(rules)
    if axis is None and n is not None and m is None:
        candidates = [default_axis]
    for ax in candidates:
        rule = rules[ax]
        try:
            if m is not None:
                hp = HelixParams.from_m(m, rule)
                if n is not None and abs(hp.n - n) > N_RELATIVE_TOL * abs(hp.n):
                    continue
            else:
                hp = HelixParams.from_n(n, rule)
        except ValueError:
            continue
        return Axis(ax), hp
    raise UsageError(f"no representation accepts n={n}, m={m}"
                     + (f" with a {axis} axis" if axis else ""))


def _signature_arg(name: str) -> CausalSignature:
    table = {"timelike": CurveType.TIMELIKE, "type1": CurveType.SPACELIKE_TYPE1,
             "type2": CurveType.SPACELIKE_TYPE2}
    if name not in table:
        raise UsageError(f"--signature must be one of {sorted(table)}")
    return CausalSignature.for_type(table[name])


def build(family: str, params: dict, domain, step: float):
    """Reference curve or associated pair for a family. Deterministic in its inputs.

    Returns
    -------
    curve : SampledCurve
        The curve to store.
    pair : AssociatedPair or None
    resolved : dict
        Parameters after defaults and derivations, stored as metadata.
    """
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if step <= 0:
        raise UsageError("--step must be positive")
    s = make_grid(domain, step)
    resolved = {k: v for k, v in params.items() if v is not None}

    if family == "frenet":
        _require(params, "kappa", "tau", "signature")
        sig = _signature_arg(params["signature"])
        prof = CurvatureProfile(parse_expression(params["kappa"]), parse_expression(params["tau"]),
                                sig, (s[0], s[-1]))
        try:
            prof.check()
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
        curve = integrate_frenet(prof, step=float(s[1] - s[0]))
        return curve, None, resolved

    _require(params, "kappa")
    kappa = parse_expression(params["kappa"])
    try:
        if family in ("timelike-helix", "hca1", "hca2"):
            axis, hp = _resolve_angles(params, "spacelike", {"spacelike": AngleRule.SINH,
                                                              "timelike": AngleRule.COSH})
            ref = timelike_helix(kappa, hp, s, axis)
        elif family in ("spacelike-type2-helix", "hca3", "hca4", "hca5"):
            axis, hp = _resolve_angles(params, "spacelike", {"spacelike": AngleRule.COSH,
                                                              "timelike": AngleRule.SINH})
            ref = spacelike_type2_helix(kappa, hp, s, axis)
        else:
            axis, hp = _resolve_angles(params, "spacelike", {"spacelike": AngleRule.SINH,
                                                              "timelike": AngleRule.COSH})
            branch = int(params.get("branch") or 1)
            ref = spacelike_slant_helix(kappa, hp, s, axis, branch)
            resolved["branch"] = branch
    except ValueError as exc:
        if WINDOW_MESSAGE in str(exc) or "curvature" in str(exc):
            raise DomainError(str(exc)) from exc
        raise UsageError(str(exc)) from exc
    resolved.update(axis=axis.value, n=hp.n, m=hp.m)
    if family in REFERENCE_FAMILIES:
        return ref, None, resolved

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            pair = _associate(family, ref, params)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return pair.beta, pair, resolved


def _associate(family: str, ref: SampledCurve, params: dict) -> AssociatedPair:
    g = params.get
    if family == "hca1":
        return hca_construct(ref, 1, phase=g("phase") or 0.0)
    if family == "hca2":
        _require(params, "c")
        if params["c"] == 0:
            raise UsageError("c must be non-zero (c = 0 gives beta = alpha)")
        return hca_construct(ref, 2, c=params["c"])
    if family == "hca3":
        return hca_construct(ref, 3)
    if family == "hca4":
        _require(params, "nu")
        return hca_construct(ref, 4, nu=params["nu"])
    if family == "hca5":
        return hca_construct(ref, 5, c1=g("c1") or 0.0, c2=g("c2") or 0.0)
    if family == "shca1":
        return shca_construct(ref, 1, c=g("c") or 0.0)
    if family == "shca2":
        _require(params, "xi")
        return shca_construct(ref, 2, xi=params["xi"], zeta=g("zeta") or 0.0)
    _require(params, "omega")
    return shca_construct(ref, 3, omega=params["omega"])


def make_document(family, params, domain, step) -> CurveDocument:
    curve, pair, resolved = build(family, params, domain, step)
    frames = curv = None
    signature = curve.signature
    if pair is None:
        fr, kappa, tau = curve.frames, curve.kappa, curve.tau
    else:
        try:
            fr, kappa, tau, _ = beta_frenet(pair)
            signature = fr.signature
        except ValueError as exc:
            print(f"warning: {exc}; frames omitted", file=sys.stderr)
            fr = None
    if fr is not None:
        frames = np.hstack([fr.T, fr.N, fr.B])
        curv = np.stack([kappa, tau], axis=-1)
    metadata = {
        "family": family,
        "params": resolved,
        "domain": [float(domain[0]), float(domain[1])],
        "step": float(step),
        "signature": list(signature.as_tuple()) if signature is not None else None,
        "parameter": "arc length" if pair is None else "arc length of the reference curve",
        "rows": int(curve.s.size),
        "tool": f"assoc-helix {__version__}",
    }
    return CurveDocument(metadata, curve.s, curve.points, frames, curv)


# ---------------------------------------------------------------------------
# verification suites


def _doc_curvatures(doc: CurveDocument):
    """Frames, curvatures and arc length of a document's curve.

    Stored frames and curvatures are used when present; otherwise they are
    estimated from the samples after arc-length reparametrization.
    """
    fr = doc.frame_field()
    if fr is None:
        return estimate_curvatures(doc.curve())
    if doc.metadata.get("parameter") == "arc length":
        arc = doc.s
    else:
        speed = lorentz_norm(derivative(doc.points, doc.s))
        arc = cumulative_simpson(speed, x=doc.s, initial=0.0)
    return fr, doc.curvatures[:, 0], doc.curvatures[:, 1], arc


def run_suite(doc: CurveDocument, suite: str, rel_tol: float, frame_tol: float):
    family = doc.metadata["family"]
    names = SUITES_FOR.get(family, ("helix", "frames")) if suite == "all" else (suite,)
    reports = []
    cache = {}

    def curvatures():
        if "c" not in cache:
            cache["c"] = _doc_curvatures(doc)
        return cache["c"]

    for name in names:
        try:
            if name == "helix":
                _, k, t, arc = curvatures()
                reports.append(is_general_helix(k, t, arc, rel_tol))
            elif name == "slant":
                fr, k, t, arc = curvatures()
                reports.append(is_slant_helix(k, t, arc, fr.signature, rel_tol))
            elif name == "darboux":
                fr, k, t, arc = curvatures()
                reports.append(is_darboux_helix(fr, k, t, arc, None, rel_tol))
            elif name == "frames":
                fr, _, _, arc = curvatures()
                reports.append(check_frame_field(fr, tol=frame_tol, s=doc.s))
            elif name == "distance":
                reports.append(_distance_report(doc, rel_tol))
            else:
                raise UsageError(f"unknown suite {name!r}")
        except ValueError as exc:
            reports.append(VerificationReport(name, Verdict.INCONCLUSIVE, float("nan"), float("nan"),
                                              details={"reason": str(exc)}, summary=str(exc)))
    return reports


def _distance_report(doc: CurveDocument, rel_tol: float) -> VerificationReport:
    md = doc.metadata
    family = md["family"]
    if family not in HCA_FAMILIES + SHCA_FAMILIES:
        raise ValueError("distance suite needs an associated-curve document")
    _, pair, _ = build(family, md["params"], md["domain"], md["step"])
    if pair.beta.points.shape != doc.points.shape:
        mismatch = float("inf")
    else:
        mismatch = float(np.max(np.abs(pair.beta.points - doc.points)))
    scale = 1.0 + float(np.max(np.abs(doc.points)))
    if not mismatch <= 1e-12 * scale:
        return VerificationReport("distance", Verdict.FAIL, mismatch, 1e-12 * scale,
                                  details={"reason": "samples do not match the stored parameters"},
                                  summary="samples do not match the stored parameters")
    rep = distance_constancy(pair, rel_tol)
    rep.details["regeneration_mismatch"] = mismatch
    return rep


def _parse_tol(items) -> tuple:
    rel, frame = 1e-4, 1e-6
    for item in items or []:
        key, _, value = item.partition("=")
        try:
            v = float(value)
        except ValueError as exc:
            raise UsageError(f"bad --tol entry {item!r}") from exc
        if key == "rel":
            rel = v
        elif key == "frame":
            frame = v
        else:
            raise UsageError(f"unknown tolerance {key!r}; use rel= or frame=")
    return rel, frame


# ---------------------------------------------------------------------------
# figures


@dataclass(frozen=True)
class FigureSpec:
    title: str
    curves: tuple     # (label, family, params, domain)


SQRT3 = math.sqrt(3.0)
FIG1_PARAMS = {"kappa": "6", "n": SQRT3 / 3, "axis": "spacelike"}
FIG2_PARAMS = {"kappa": "1", "n": 2 * SQRT3 / 3, "m": 2.0, "axis": "timelike"}
FIG2_DOMAIN = (-0.45, 0.45)

FIGURES = {
    "fig1": FigureSpec("timelike helix and HCA helices of types 1 and 2 (n = sqrt(3)/3, kappa = 6, c = 1)", (
        ("helix alpha", "timelike-helix", FIG1_PARAMS, (0.0, 1.0)),
        ("HCA type 1", "hca1", FIG1_PARAMS, (0.0, 1.0)),
        ("HCA type 2", "hca2", {**FIG1_PARAMS, "c": 1.0}, (0.0, 1.0)),
    )),
    "fig2": FigureSpec("spacelike slant helix and SHCA helix of type 1 (n = 2sqrt(3)/3, m = 2, kappa = 1)", (
        ("slant helix alpha", "slant-helix", FIG2_PARAMS, FIG2_DOMAIN),
        ("SHCA type 1", "shca1", {**FIG2_PARAMS, "c": 0.0}, FIG2_DOMAIN),
    )),
    "fig3": FigureSpec("SHCA helices of types 2 and 3 (n = 2sqrt(3)/3, m = 2, kappa = 1)", (
        ("SHCA type 2", "shca2", {**FIG2_PARAMS, "xi": 0.0, "zeta": 0.3}, FIG2_DOMAIN),
        ("SHCA type 3", "shca3", {**FIG2_PARAMS, "omega": 0.0}, FIG2_DOMAIN),
    )),
}

PANEL = 320
MARGIN = 30
MAX_VERTICES = 800


def render_svg(which: str, plane: str = "23", step: float = 1e-3) -> str:
    """Orthographic projections of a figure's curves, one labeled panel per curve."""
    figure = FIGURES[which]
    axes = [int(c) - 1 for c in plane]
    if len(axes) != 2 or sorted(set(axes)) != sorted(axes) or not all(0 <= a <= 2 for a in axes):
        raise UsageError("--plane must be one of 12, 13, 23")
    width = PANEL * len(figure.curves)
    height = PANEL + 40
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{figure.title}</title>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for i, (label, family, params, domain) in enumerate(figure.curves):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            curve, _, _ = build(family, params, domain, step)
        pts = curve.points[:, axes]
        stride = max(1, int(math.ceil(len(pts) / MAX_VERTICES)))
        pts = np.vstack([pts[::stride], pts[-1:]])
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = float(max(hi - lo)) or 1.0
        scale = (PANEL - 2 * MARGIN) / span
        x0 = i * PANEL + MARGIN
        centre = (lo + hi) / 2
        xs = x0 + (PANEL - 2 * MARGIN) / 2 + (pts[:, 0] - centre[0]) * scale
        ys = MARGIN + (PANEL - 2 * MARGIN) / 2 - (pts[:, 1] - centre[1]) * scale
        left, right = i * PANEL + MARGIN / 2, (i + 1) * PANEL - MARGIN / 2
        bottom = PANEL - MARGIN / 2
        out.append(f'<g id="panel{i + 1}">')
        out.append(f'<line x1="{left:.3f}" y1="{bottom:.3f}" x2="{right:.3f}" y2="{bottom:.3f}" '
                   'stroke="gray" stroke-width="1"/>')
        out.append(f'<line x1="{left:.3f}" y1="{bottom:.3f}" x2="{left:.3f}" y2="{MARGIN / 2:.3f}" '
                   'stroke="gray" stroke-width="1"/>')
        out.append(f'<text x="{right:.3f}" y="{bottom + 14:.3f}" font-size="11" text-anchor="end">'
                   f'x{axes[0] + 1}</text>')
        out.append(f'<text x="{left + 4:.3f}" y="{MARGIN / 2 + 10:.3f}" font-size="11">x{axes[1] + 1}</text>')
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="black" stroke-width="1.2" points="{coords}">'
                   f'<title>{label}</title></polyline>')
        out.append(f'<text x="{i * PANEL + PANEL / 2:.3f}" y="{PANEL + 24:.3f}" font-size="13" '
                   f'text-anchor="middle">{label}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# argument handling


def _domain(text: str):
    try:
        a, b = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("domain must look like a:b") from exc
    if not b > a:
        raise argparse.ArgumentTypeError("domain must satisfy a < b")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="assoc-helix", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"assoc-helix {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a curve and write it to CSV or JSON")
    gen.add_argument("family", help="one of: " + ", ".join(FAMILIES))
    gen.add_argument("--out", required=True)
    gen.add_argument("--format", choices=("csv", "json"), default="csv")
    gen.add_argument("--step", type=float, default=1e-3)
    gen.add_argument("--domain", type=_domain, default=(0.0, 1.0))
    gen.add_argument("--kappa", help="curvature: number or expression in s")
    gen.add_argument("--tau", help="torsion expression (frenet family)")
    gen.add_argument("--signature", help="timelike, type1 or type2 (frenet family)")
    gen.add_argument("--axis", choices=("spacelike", "timelike"))
    gen.add_argument("--branch", type=int, choices=(1, -1))
    for name in ("n", "m", "c", "nu", "c1", "c2", "phase", "xi", "zeta", "omega"):
        gen.add_argument(f"--{name}", type=float)

    ver = sub.add_parser("verify", help="run verification suites on a curve document")
    ver.add_argument("--in", dest="path", required=True)
    ver.add_argument("--suite", choices=("helix", "slant", "darboux", "frames", "distance", "all"),
                     default="all")
    ver.add_argument("--tol", action="append", metavar="KEY=VALUE", help="rel=1e-4 or frame=1e-6")
    ver.add_argument("--json", dest="json_out", help="also write the reports as JSON")

    fig = sub.add_parser("figure", help="render a figure's curve set as SVG")
    fig.add_argument("which", choices=sorted(FIGURES))
    fig.add_argument("--out", required=True)
    fig.add_argument("--plane", default="23", choices=("12", "13", "23"))
    return parser


def cmd_generate(args) -> int:
    params = {name: getattr(args, name) for name in PARAM_NAMES}
    doc = make_document(args.family, params, args.domain, args.step)
    (write_csv if args.format == "csv" else write_json)(doc, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    rel, frame = _parse_tol(args.tol)
    doc = read_document(args.path)
    reports = run_suite(doc, args.suite, rel, frame)
    print(format_reports(reports))
    if args.json_out:
        save_reports(reports, args.json_out)
    verdict = overall_verdict(reports)
    return {Verdict.PASS: EXIT_OK, Verdict.FAIL: EXIT_FAIL, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[verdict]


def cmd_figure(args) -> int:
    svg = render_svg(args.which, args.plane)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def _glue_negative_values(argv):
    """Let ``--domain -0.45:0.45`` through argparse, which reads ``-0.45:0.45`` as an option."""
    out = []
    it = iter(argv)
    for item in it:
        if item == "--domain":
            value = next(it, None)
            out.append(item if value is None else f"--domain={value}")
        else:
            out.append(item)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"generate": cmd_generate, "verify": cmd_verify, "figure": cmd_figure}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
