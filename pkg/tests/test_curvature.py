"""Curvature routes against frozen references and finite-difference geometry."""
import math

import pytest

from thermogeom import (
    Chart,
    ConstantCv,
    SingularState,
    StatePoint,
    FlatnessClass,
    curvature_report,
    negativity_test,
    parse_expression,
    ruppeiner_direct_curvature,
    ruppeiner_from_weinhold,
    weinhold_metric,
    zero_curvature_classify,
)
from thermogeom.curvature import (
    HessianMetricField,
    berthelot_printed_closed_form,
    riemann_ricci,
    scalar_curvature_constant_cv,
)
from thermogeom.expressions import ScaledExp, ShiftedPower, ZeroFunction

from conftest import PARAMS
from fd_oracles import (
    fd_scalar_curvature,
    sphere_metric,
    vdw_entropy_hessian_fn,
    weinhold_entry_fn,
)


def sv(s, v):
    return StatePoint(Chart.ENTROPY_VOLUME, s, v)


def tv(t, v):
    return StatePoint(Chart.TEMPERATURE_VOLUME, t, v)


# Curvature and determinant frozen from high-precision evaluation at
# a=3/2, b=1/5, r=2, cv=5/2.
VDW_CURVATURE_TABLE = [
    (2.5, 1.4, 6.763182031760986756521, 0.07965467185509448257411),
    (3.0, 2.5, 3.345755284537767372851, 0.01797201530753231627606),
    (2.2, 0.9, 2.674660715897425968914, 0.5750626536004184156144),
]

BERTHELOT_CURVATURE_TABLE = [
    (8 / 3, 1.4, 0.02247113904401274800309),
    (2.5, 4.5, 0.009936429828852882390065),
]

BERTHELOT_PRINTED_TABLE = [
    (8 / 3, 1.4, 0.02372008738804134900852),
    (2.5, 4.5, -0.001247900489424535323571),
]


def test_fd_oracle_normalization_on_sphere():
    # the oracle itself must carry the textbook convention before it can
    # arbitrate between analytic routes
    r = 2.0
    got = fd_scalar_curvature(sphere_metric(r), 1.1, 0.7)
    assert got == pytest.approx(2.0 / (r * r), rel=1e-6)


class TestFrozenReferences:
    @pytest.mark.parametrize("s,v,r_ref,det_ref", VDW_CURVATURE_TABLE)
    def test_vdw_all_routes(self, vdw_model, s, v, r_ref, det_ref):
        rep = curvature_report(vdw_model, sv(s, v))
        assert rep.r_tensorial == pytest.approx(r_ref, rel=1e-12)
        assert rep.r_closed2d == pytest.approx(r_ref, rel=1e-12)
        assert rep.r_elementary == pytest.approx(r_ref, rel=1e-12)
        assert rep.r_model_closed == pytest.approx(r_ref, rel=1e-12)
        assert weinhold_metric(vdw_model, sv(s, v)).det == pytest.approx(
            det_ref, rel=1e-13)

    @pytest.mark.parametrize("t,v,r_ref", BERTHELOT_CURVATURE_TABLE)
    def test_berthelot_true_value(self, berthelot_model, t, v, r_ref):
        rep = curvature_report(berthelot_model, tv(t, v))
        assert rep.r_closed2d == pytest.approx(r_ref, rel=1e-12)
        assert rep.r_model_closed == pytest.approx(r_ref, rel=1e-12)

    @pytest.mark.parametrize("t,v,r_printed", BERTHELOT_PRINTED_TABLE)
    def test_berthelot_published_form_preserved(self, berthelot_model, t, v,
                                                r_printed):
        # the verbatim published polynomial disagrees with every computed
        # route; its value is kept for the record and flagged
        assert berthelot_printed_closed_form(
            berthelot_model, t, v) == pytest.approx(r_printed, rel=1e-12)
        rep = curvature_report(berthelot_model, tv(t, v))
        assert rep.discrepancy

    def test_no_discrepancy_for_vdw(self, vdw_model):
        assert not curvature_report(vdw_model, sv(2.5, 1.4)).discrepancy


class TestRouteAgreement:
    @pytest.mark.parametrize("fixture,window", [
        ("ideal_model", (0.5, 2.5, 0.6, 4.0)),
        ("vdw_model", (2.0, 3.2, 0.8, 1.3)),
        ("berthelot_model", (2.0, 3.0, 1.2, 4.0)),
    ])
    def test_pairwise_residual_small(self, request, rng, fixture, window):
        model = request.getfixturevalue(fixture)
        s_lo, s_hi, v_lo, v_hi = window
        done = 0
        while done < 25:
            s = rng.uniform(s_lo, s_hi)
            v = rng.uniform(v_lo, v_hi)
            try:
                rep = curvature_report(model, sv(s, v))
            except SingularState:
                continue
            assert rep.max_pairwise_residual < 1e-10
            done += 1

    @pytest.mark.parametrize("s,v", [(2.5, 1.4), (2.2, 0.9)])
    def test_vdw_tensorial_confirmed_by_fd(self, vdw_model, s, v):
        fd = fd_scalar_curvature(weinhold_entry_fn(vdw_model), s, v)
        rep = curvature_report(vdw_model, sv(s, v))
        assert rep.r_tensorial == pytest.approx(fd, rel=5e-6)

    def test_berthelot_tensorial_confirmed_by_fd(self, berthelot_model):
        st_ = berthelot_model.derivative_stack(tv(8 / 3, 1.4))
        fd = fd_scalar_curvature(weinhold_entry_fn(berthelot_model),
                                 st_.s, st_.v)
        rep = curvature_report(berthelot_model, tv(8 / 3, 1.4))
        assert rep.r_tensorial == pytest.approx(fd, rel=5e-5, abs=1e-7)


class TestIdealFlatness:
    def test_flat_on_grid_every_route(self, ideal_model):
        for i in range(12):
            for j in range(12):
                s = 1.0 + 2.0 * i / 11
                v = 1.0 + 3.0 * j / 11
                rep = curvature_report(ideal_model, sv(s, v))
                for route in ("r_tensorial", "r_closed2d", "r_elementary",
                              "r_model_closed"):
                    assert abs(getattr(rep, route)) < 1e-10, route


class TestConstantCvClosedForm:
    @pytest.mark.parametrize("s,v,r_ref,det_ref", VDW_CURVATURE_TABLE)
    def test_structural_equals_log_compressibility(self, vdw_model, s, v,
                                                   r_ref, det_ref):
        out = scalar_curvature_constant_cv(vdw_model, sv(s, v))
        assert out.residual < 1e-12 * max(1.0, abs(out.r_structural))
        assert out.r_structural == pytest.approx(r_ref, rel=1e-12)
        assert out.r_log_compressibility == pytest.approx(r_ref, rel=1e-12)


class TestCurvatureSign:
    def negative_curvature_model(self):
        # mirror-image interaction: the volume part enters with opposite sign
        return ConstantCv(parse_expression("(V-0.2)^-0.8"),
                          parse_expression("-0.6/V"), cv=2.5)

    def test_negative_example_exists(self):
        model = self.negative_curvature_model()
        rep = curvature_report(model, sv(2.5, 1.4))
        assert rep.r_closed2d < 0.0

    @pytest.mark.parametrize("s,v", [(2.5, 1.4), (2.1, 1.0), (2.9, 2.0)])
    def test_predicate_tracks_sign(self, vdw_model, s, v):
        neg = self.negative_curvature_model()
        for model in (vdw_model, neg):
            rep = curvature_report(model, sv(s, v))
            assert negativity_test(model, sv(s, v)) == (rep.r_closed2d < 0.0)

    def test_predicate_false_on_flat_model(self, ideal_model):
        assert negativity_test(ideal_model, sv(1.5, 2.0)) is False


class TestFlatnessClassifier:
    def test_ideal_is_affine_interaction(self, ideal_model):
        assert zero_curvature_classify(ideal_model) is FlatnessClass.AFFINE_F2

    def test_exponential_heat_kernel_family(self):
        model = ConstantCv(ScaledExp(0.7, -0.4),
                           parse_expression("0.3*V^2"), cv=2.0)
        assert zero_curvature_classify(model) is FlatnessClass.EXPONENTIAL_F1
        for v in (1.0, 2.0, 3.5):
            rep = curvature_report(model, sv(1.2, v))
            assert abs(rep.r_closed2d) < 1e-9

    def test_vdw_not_flat(self, vdw_model):
        assert zero_curvature_classify(vdw_model) is FlatnessClass.NON_FLAT

    def test_vanishing_leading_function_degenerate(self):
        model = ConstantCv(ZeroFunction(), None, cv=2.0)
        assert (zero_curvature_classify(model)
                is FlatnessClass.DEGENERATE_F1_ZERO)


class TestEntropyRepresentation:
    @pytest.mark.parametrize("s,v", [(2.5, 1.4), (3.0, 2.5)])
    def test_direct_curvature_against_analytic_hessian(self, vdw_model, s, v):
        st_ = vdw_model.derivative_stack(sv(s, v))
        raw = vdw_entropy_hessian_fn(PARAMS)

        def entropy_metric(u, v_):
            s_uu, s_uv, s_vv = raw(u, v_)
            return -s_uu, -s_uv, -s_vv

        fd = fd_scalar_curvature(entropy_metric, st_.u, st_.v)
        direct = ruppeiner_direct_curvature(vdw_model, sv(s, v))
        assert direct == pytest.approx(fd, rel=5e-6)

    @pytest.mark.parametrize("s,v", [(2.5, 1.4), (3.0, 2.5), (2.2, 0.9)])
    def test_conformal_rescaling_route(self, vdw_model, s, v):
        direct = ruppeiner_direct_curvature(vdw_model, sv(s, v))
        analytic = ruppeiner_from_weinhold(vdw_model, sv(s, v))
        fd = ruppeiner_from_weinhold(vdw_model, sv(s, v), scheme="fd")
        assert analytic == pytest.approx(direct, rel=1e-10)
        assert fd == pytest.approx(direct, rel=1e-5)


class TestRiemannConsistency:
    def test_scalar_from_full_tensor(self, vdw_model):
        state = sv(2.5, 1.4)
        m = weinhold_metric(vdw_model, state)
        field = HessianMetricField.from_metric(m)
        rr = riemann_ricci(field)
        # two-dimensional identity: R = 2 R_1212 / det
        r1212 = rr.riemann[0][1][0][1]
        lowered = m.e11 * r1212 + m.e12 * rr.riemann[1][1][0][1]
        rep = curvature_report(vdw_model, state)
        assert 2.0 * lowered / m.det == pytest.approx(
            rep.r_closed2d, rel=1e-10)

    def test_ricci_symmetric(self, vdw_model):
        field = HessianMetricField.from_metric(
            weinhold_metric(vdw_model, sv(2.2, 0.9)))
        rr = riemann_ricci(field)
        assert rr.ricci[0][1] == pytest.approx(rr.ricci[1][0], rel=1e-12)


class TestLocusBlowUp:
    def test_inverse_square_distance_scaling(self, vdw_model):
        from thermogeom.critical_locus import locus_entropy
        v = 1.2
        s_star = locus_entropy(vdw_model, v)
        r_values = {}
        for d in (1e-3, 1e-4):
            rep = curvature_report(vdw_model, sv(s_star + d, v))
            r_values[d] = abs(rep.r_closed2d)
        # |R| ~ d**-2: one decade in closer distance, two decades in magnitude
        ratio = r_values[1e-4] / r_values[1e-3]
        assert ratio == pytest.approx(100.0, rel=0.05)
