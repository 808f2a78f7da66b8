import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assoc_helix.associated import (
    CoefficientTriple, Family, associated_curve, beta_frenet, degenerate_case3, distance_function,
    hca_construct, shca_construct, shca_frame, transferred_frame,
)
from assoc_helix.curve_model import (
    SPACELIKE_TYPE1, SPACELIKE_TYPE2, TIMELIKE, CurvatureProfile, integrate_frenet,
)
from assoc_helix.lorentz import lorentz_norm, minkowski_inner
from assoc_helix.verify import Verdict, associated_helix_report, check_frame_field, tangent_contract_residual

from conftest import SQRT3


def profile_curve(kappa, tau, sig, domain=(0.0, 1.0)):
    return integrate_frenet(CurvatureProfile(kappa, tau, sig, domain))


@pytest.fixture(scope="module")
def non_helix_timelike():
    return profile_curve(lambda s: 1 + 0 * s, lambda s: s, TIMELIKE)


@pytest.fixture(scope="module")
def non_helix_type2():
    return profile_curve(lambda s: 2 + np.sin(s), lambda s: (1 + s) * (2 + np.sin(s)), SPACELIKE_TYPE2)


@pytest.fixture(scope="module")
def non_slant_type1():
    return profile_curve(lambda s: 1 + 0 * s, lambda s: s**2, SPACELIKE_TYPE1)


class TestAssociatedCurve:

    def test_zero_coefficients_give_alpha(self, fig1_helix):
        pair = associated_curve(fig1_helix, CoefficientTriple.zero(len(fig1_helix)))
        assert np.array_equal(pair.beta.points, fig1_helix.points)

    def test_constant_normal_offset(self, fig1_helix):
        lam = 0.3
        vals = np.zeros((len(fig1_helix), 3))
        vals[:, 1] = lam
        pair = associated_curve(fig1_helix, CoefficientTriple.from_samples(vals, fig1_helix.s))
        assert np.allclose(pair.beta.points - fig1_helix.points, lam * fig1_helix.frames.N, atol=1e-12)

    def test_domain_mismatch(self, fig1_helix):
        with pytest.raises(ValueError, match="domain"):
            associated_curve(fig1_helix, CoefficientTriple.zero(len(fig1_helix) - 1))

    def test_type1_velocity_has_no_normal_parts(self, fig1_helix, quiet):
        pair = hca_construct(fig1_helix, 1)
        assert np.max(np.abs(pair.F[:, 1:])) <= 1e-6

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.floats(-2, 2), min_size=9, max_size=9))
    def test_velocity_matches_frame_combination(self, type2_helix, c):
        s = type2_helix.s
        c = np.reshape(c, (3, 3))
        vals = np.stack([c[i, 0] + c[i, 1] * s + c[i, 2] * s**2 for i in range(3)], axis=-1)
        ders = np.stack([c[i, 1] + 2 * c[i, 2] * s for i in range(3)], axis=-1)
        pair = associated_curve(type2_helix, CoefficientTriple(vals, ders))
        scale = 1 + np.abs(pair.F).max()
        assert pair.velocity_residual() <= 1e-7 * scale


class TestHcaConstruct:

    def test_type1_start_point(self, fig1_helix, quiet):
        pair = hca_construct(fig1_helix, 1)
        assert np.allclose(fig1_helix.points[0], [0, 2 / 9, 0], atol=1e-12)
        assert np.allclose(pair.beta.points[0], [1 / SQRT3, 2 / 9, 2 / SQRT3], atol=1e-12)

    def test_type2_offset(self, fig1_helix):
        c = 1.0
        pair = hca_construct(fig1_helix, 2, c=c)
        fr = fig1_helix.frames
        ratio = fig1_helix.tau / fig1_helix.kappa
        expected = c * ratio[:, None] * fr.T + c * fr.B
        assert np.allclose(pair.beta.points - fig1_helix.points, expected, atol=1e-12)
        d, _ = distance_function(pair)
        assert np.allclose(d, SQRT3 / 2, atol=1e-9)

    def test_type5_constant_curvature(self):
        kappa = 1.5
        alpha = profile_curve(lambda s: kappa + 0 * s, lambda s: 2.0 + 0 * s, SPACELIKE_TYPE2)
        # antiderivative constants of sin(theta) and cos(theta) at the left end, theta(0) = 0
        pair = hca_construct(alpha, 5, integral_constants=(-1 / kappa, 0.0))
        a = pair.coefficients.values
        assert np.max(np.abs(a[:, 0])) <= 1e-9
        assert np.max(np.abs(a[:, 1] - 1 / kappa)) <= 1e-9
        d, rep = distance_function(pair)
        assert rep.constant and rep.conditions["predicts_constant"]

    def test_type2_needs_nonzero_c(self, fig1_helix):
        with pytest.raises(ValueError, match="degenerate"):
            hca_construct(fig1_helix, 2, c=0.0)

    def test_helix_precondition(self, non_helix_timelike):
        with pytest.raises(ValueError, match="not a general helix"):
            hca_construct(non_helix_timelike, 1)

    def test_wrong_causal_type(self, fig1_helix, fig2_slant):
        with pytest.raises(ValueError, match="reference curve"):
            hca_construct(fig1_helix, 3)
        with pytest.raises(ValueError, match="reference curve"):
            hca_construct(fig2_slant, 1)

    def test_vanishing_torsion(self):
        alpha = profile_curve(lambda s: 1 + 0 * s, lambda s: 0 * s, SPACELIKE_TYPE2)
        for kind in (3, 4):
            with pytest.raises(ValueError, match="torsion vanishes"):
                hca_construct(alpha, kind, nu=0.5)

    def test_type4_needs_nu(self, type2_helix):
        with pytest.raises(ValueError, match="nu"):
            hca_construct(type2_helix, 4)

    def test_warns_when_beta_stops(self, fig1_helix):
        with pytest.warns(RuntimeWarning, match="F1 vanishes"):
            hca_construct(fig1_helix, 1)

    @pytest.mark.parametrize("kind, kwargs, leg", [
        (1, {"phase": math.pi}, "T"),
        (2, {"c": 1.0}, "T"),
    ])
    def test_timelike_contracts(self, fig1_helix, kind, kwargs, leg):
        assert tangent_contract_residual(hca_construct(fig1_helix, kind, **kwargs), leg) <= 1e-5

    @pytest.mark.parametrize("kind, kwargs", [(3, {}), (4, {"nu": 0.5}), (5, {"c1": 0.5})])
    def test_binormal_contracts_and_helix_transfer(self, type2_helix, kind, kwargs, quiet):
        pair = hca_construct(type2_helix, kind, **kwargs)
        assert tangent_contract_residual(pair, "B") <= 1e-5
        assert associated_helix_report(pair).verdict is Verdict.PASS

    def test_type3_on_non_helix_is_not_helix(self, non_helix_type2, quiet):
        pair = hca_construct(non_helix_type2, 3, require_helix=False)
        assert tangent_contract_residual(pair, "B") <= 1e-5
        assert associated_helix_report(pair).verdict is Verdict.FAIL

    def test_type1_on_non_helix_is_not_helix(self, non_helix_timelike, quiet):
        pair = hca_construct(non_helix_timelike, 1, require_helix=False)
        assert associated_helix_report(pair).verdict is Verdict.FAIL

    def test_degenerate_case(self, fig1_helix):
        pair = degenerate_case3(fig1_helix)
        assert pair.family is Family.GENERIC
        assert np.array_equal(pair.beta.points, fig1_helix.points)


class TestShcaConstruct:

    def test_type3_velocity_factor(self, fig2_slant):
        omega = 0.7
        pair = shca_construct(fig2_slant, 3, omega=omega)
        s = fig2_slant.s
        assert np.allclose(pair.F[:, 1], (omega - s) * fig2_slant.kappa, atol=1e-12)
        assert np.max(np.abs(pair.F[:, [0, 2]])) <= 1e-12

    def test_type2_without_offset_is_type3(self, fig2_slant, quiet):
        a = shca_construct(fig2_slant, 2, xi=0.2, zeta=0.0).beta.points
        b = shca_construct(fig2_slant, 3, omega=0.2).beta.points
        assert np.array_equal(a, b)

    def test_type1_residuals(self, fig2_slant, quiet):
        pair = shca_construct(fig2_slant, 1)
        comps = pair.frame_components(pair.fd_velocity())[2:-2]
        assert np.max(np.abs(comps[:, [0, 2]])) <= 1e-5

    def test_warns_on_non_slant_reference(self, non_slant_type1):
        with pytest.warns(RuntimeWarning, match="slant-helix test"):
            shca_construct(non_slant_type1, 3, omega=2.0)

    def test_type1_on_non_slant_is_not_helix(self, non_slant_type1, quiet):
        pair = shca_construct(non_slant_type1, 1, c=1.0)
        assert tangent_contract_residual(pair, "N") <= 1e-5
        assert associated_helix_report(pair).verdict is Verdict.FAIL

    def test_wrong_causal_type(self, fig1_helix):
        with pytest.raises(ValueError, match="reference curve"):
            shca_construct(fig1_helix, 3, omega=0.0)

    @pytest.mark.parametrize("kind, kwargs", [(2, {}), (3, {})])
    def test_missing_constants(self, fig2_slant, kind, kwargs):
        with pytest.raises(ValueError, match="needs"):
            shca_construct(fig2_slant, kind, **kwargs)


class TestShcaFrame:

    def test_type1_reference(self, fig2_slant):
        a = fig2_slant
        fr = shca_frame(a.frames, a.kappa, a.tau)
        r = np.sqrt(a.kappa**2 + a.tau**2)[:, None]
        assert np.allclose(fr.T, a.frames.N)
        assert np.allclose(fr.N, (a.kappa[:, None] * a.frames.T + a.tau[:, None] * a.frames.B) / r)
        assert check_frame_field(fr).verdict is Verdict.PASS

    def test_zero_torsion(self, non_slant_type1):
        a = non_slant_type1
        fr = shca_frame(a.frames[:1], a.kappa[:1], 0 * a.tau[:1])
        eT, eN, eB = a.frames.signature.as_tuple()
        assert np.allclose(fr.N, eB * a.frames.T[:1])
        assert np.allclose(fr.B, eN * a.frames.B[:1])

    def test_lightlike_darboux_vector(self, fig1_helix):
        with pytest.raises(ValueError, match="lightlike"):
            shca_frame(fig1_helix.frames, fig1_helix.kappa, fig1_helix.kappa)

    def test_tangent_follows_finite_differences(self, fig2_slant, quiet):
        pair = shca_construct(fig2_slant, 1, c=-0.5 * math.sqrt(1 - 0.9**2))
        T = transferred_frame(pair).T
        v = pair.fd_velocity()
        u = v / lorentz_norm(v)[:, None]
        moving = np.abs(pair.F[:, 1]) > 1e-3
        assert np.max(np.abs(u - T)[moving][2:-2]) <= 1e-4

    def test_binormal_is_unit(self, fig2_slant):
        fr = shca_frame(fig2_slant.frames, fig2_slant.kappa, fig2_slant.tau)
        assert np.max(np.abs(minkowski_inner(fr.B, fr.B) - fr.signature.eB)) <= 1e-6


class TestBetaFrenet:

    def test_rest_point_is_reported(self, fig1_helix, quiet):
        with pytest.raises(ValueError, match="comes to rest"):
            beta_frenet(hca_construct(fig1_helix, 1))

    def test_type2_helix_ratio(self, fig1_helix):
        frames, kappa, tau, arc = beta_frenet(hca_construct(fig1_helix, 2, c=1.0))
        assert np.allclose(tau / kappa, tau[0] / kappa[0], rtol=1e-6)
        assert np.all(np.diff(arc) > 0)


class TestDistance:

    def test_type1(self, fig1_helix, quiet):
        d, rep = distance_function(hca_construct(fig1_helix, 1))
        assert np.allclose(d, 1.0, atol=1e-9)
        assert rep.constant

    def test_shca3(self, fig2_slant):
        omega = 0.7
        d, rep = distance_function(shca_construct(fig2_slant, 3, omega=omega))
        assert np.allclose(d, np.abs(omega - fig2_slant.s), atol=1e-9)
        assert not rep.constant

    def test_type3_condition(self, type2_helix):
        d, rep = distance_function(hca_construct(type2_helix, 3))
        assert rep.conditions["predicts_constant"] == rep.constant

    def test_constant_curvature_type3(self):
        alpha = profile_curve(lambda s: 1.5 + 0 * s, lambda s: 2.0 + 0 * s, SPACELIKE_TYPE2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            d, rep = distance_function(hca_construct(alpha, 3))
        assert rep.conditions["kappa_constant"] and rep.constant
