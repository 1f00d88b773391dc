"""Christoffel symbols and geodesic integration on the energy metric."""
import math

import pytest

from thermogeom import (
    Chart,
    ChristoffelSet,
    ConstantCv,
    DomainError,
    GeodesicState,
    SingularState,
    StatePoint,
    TerminationReason,
    integrate_geodesic,
)
from thermogeom.curvature import HessianMetricField, christoffel as christoffel_array
from thermogeom.eos_models import CoefficientPartials, Coefficients
from thermogeom.expressions import ShiftedPower
from thermogeom.geodesics import (
    LOCUS_GUARD_BAND,
    christoffel_elementary,
    christoffel_from_stack,
    metric_speed,
)
from thermogeom.metric_core import degeneracy_scale, weinhold_metric
from thermogeom.critical_locus import locus_entropy

from fd_oracles import fd_christoffels, second_derivative, weinhold_entry_fn


def sv(s, v):
    return StatePoint(Chart.ENTROPY_VOLUME, s, v)


SYMBOL_FIELDS = ("g111", "g112", "g122", "g211", "g212", "g222")


def from_array(arr):
    return ChristoffelSet(
        g111=arr[0][0][0], g112=arr[0][0][1], g122=arr[0][1][1],
        g211=arr[1][0][0], g212=arr[1][0][1], g222=arr[1][1][1], aux={})


class TestChristoffelRoutes:
    @pytest.mark.parametrize("fixture,state", [
        ("ideal_model", (1.4, 1.8)),
        ("vdw_model", (2.5, 1.4)),
        ("berthelot_model", (2.4, 2.2)),
    ])
    def test_three_routes_agree(self, request, fixture, state):
        model = request.getfixturevalue(fixture)
        s, v = state
        stack = model.derivative_stack(sv(s, v))
        by_stack = christoffel_from_stack(stack)
        by_coeffs = christoffel_elementary(
            model.coefficients(sv(s, v)),
            model.coefficient_partials(sv(s, v)), v)
        by_field = from_array(christoffel_array(
            HessianMetricField.from_metric(weinhold_metric(model, sv(s, v)))))
        for name in SYMBOL_FIELDS:
            ref = getattr(by_stack, name)
            assert getattr(by_coeffs, name) == pytest.approx(
                ref, rel=1e-11, abs=1e-13), name
            assert getattr(by_field, name) == pytest.approx(
                ref, rel=1e-11, abs=1e-13), name

    @pytest.mark.parametrize("fixture,state", [
        ("vdw_model", (2.5, 1.4)),
        ("berthelot_model", (2.4, 2.2)),
    ])
    def test_confirmed_by_finite_differences(self, request, fixture, state):
        model = request.getfixturevalue(fixture)
        s, v = state
        stack = model.derivative_stack(sv(s, v))
        analytic = christoffel_from_stack(stack)
        fd = from_array(fd_christoffels(weinhold_entry_fn(model), s, v))
        for name in SYMBOL_FIELDS:
            assert getattr(fd, name) == pytest.approx(
                getattr(analytic, name), rel=1e-5, abs=1e-7), name

    def test_constant_cv_exact_entries(self, vdw_model, params):
        ce = christoffel_elementary(
            vdw_model.coefficients(sv(2.5, 1.4)),
            vdw_model.coefficient_partials(sv(2.5, 1.4)), 1.4)
        assert ce.g111 == 1.0 / (2.0 * params.cv0)
        assert ce.g211 == 0.0

    def test_constant_cv_aux_structure(self, vdw_model):
        state = sv(2.5, 1.4)
        coeffs = vdw_model.coefficients(state)
        ce = christoffel_elementary(
            coeffs, vdw_model.coefficient_partials(state), 1.4)
        assert ce.aux["J"] == 1.0
        assert ce.aux["D"] == pytest.approx(coeffs.alpha / coeffs.k,
                                            rel=1e-13)

    def test_degenerate_coefficients_rejected(self):
        zero_partials = CoefficientPartials(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        bad = Coefficients(t=1.0, p=1.0, cv=2.0, cp=3.0, alpha=0.5, k=0.0)
        with pytest.raises(SingularState):
            christoffel_elementary(bad, zero_partials, 1.0)


class TestIntegration:
    def test_zero_velocity_stays_put(self, vdw_model):
        traj = integrate_geodesic(vdw_model,
                                  GeodesicState(2.5, 1.4, 0.0, 0.0), 5.0)
        assert traj.termination is TerminationReason.COMPLETED
        final = traj.final_state
        assert final.s == 2.5 and final.v == 1.4

    @pytest.mark.parametrize("fixture,init", [
        ("ideal_model", GeodesicState(1.5, 2.0, 0.08, -0.05)),
        ("vdw_model", GeodesicState(2.5, 1.4, 0.05, 0.1)),
    ])
    def test_speed_conserved(self, request, fixture, init):
        model = request.getfixturevalue(fixture)
        traj = integrate_geodesic(model, init, 10.0, tol=1e-10)
        assert traj.termination is TerminationReason.COMPLETED
        ref = traj.speeds[0]
        for spd in traj.speeds:
            assert spd == pytest.approx(ref, rel=1e-8)

    def test_initial_speed_is_metric_norm(self, vdw_model):
        init = GeodesicState(2.5, 1.4, 0.05, 0.1)
        traj = integrate_geodesic(vdw_model, init, 1.0)
        stack = vdw_model.derivative_stack(sv(2.5, 1.4))
        assert traj.speeds[0] == pytest.approx(
            metric_speed(stack, 0.05, 0.1), rel=1e-12)

    def test_equation_satisfied_against_fd_symbols(self, vdw_model):
        # differentiate the dense trajectory twice and compare with the
        # geodesic equation built from finite-difference symbols
        init = GeodesicState(2.5, 1.4, 0.05, 0.1)
        traj = integrate_geodesic(vdw_model, init, 2.0, tol=1e-12)
        t_mid = 1.0
        here = traj.at(t_mid)
        gam = fd_christoffels(weinhold_entry_fn(vdw_model), here.s, here.v)
        vel = (here.s_dot, here.v_dot)
        for comp, coord in enumerate(("s", "v")):
            acc = second_derivative(
                lambda t, c=coord: getattr(traj.at(t), c), t_mid, 1e-3)
            quad = sum(gam[comp][i][j] * vel[i] * vel[j]
                       for i in range(2) for j in range(2))
            assert acc == pytest.approx(-quad, rel=1e-5, abs=1e-7), coord

    def test_affine_reparameterization(self, vdw_model):
        base = integrate_geodesic(
            vdw_model, GeodesicState(2.5, 1.4, 0.05, 0.1), 2.0, tol=1e-12)
        fast = integrate_geodesic(
            vdw_model, GeodesicState(2.5, 1.4, 0.10, 0.2), 1.0, tol=1e-12)
        end_base = base.final_state
        end_fast = fast.final_state
        assert end_fast.s == pytest.approx(end_base.s, rel=1e-9)
        assert end_fast.v == pytest.approx(end_base.v, rel=1e-9)
        assert end_fast.s_dot == pytest.approx(2.0 * end_base.s_dot, rel=1e-8)
        assert end_fast.v_dot == pytest.approx(2.0 * end_base.v_dot, rel=1e-8)

    def test_interpolant_matches_nodes(self, vdw_model):
        traj = integrate_geodesic(
            vdw_model, GeodesicState(2.5, 1.4, 0.05, 0.1), 2.0)
        for t, node in zip(traj.times, traj.states):
            here = traj.at(t)
            assert here.s == pytest.approx(node.s, rel=1e-12)
            assert here.v == pytest.approx(node.v, rel=1e-12)

    def test_interpolant_span_enforced(self, vdw_model):
        traj = integrate_geodesic(
            vdw_model, GeodesicState(2.5, 1.4, 0.05, 0.1), 2.0)
        with pytest.raises(ValueError):
            traj.at(2.5)


class TestTermination:
    def test_signature_wall_stops_integration(self, vdw_model):
        # drive entropy downward toward the degeneracy locus at fixed heading
        traj = integrate_geodesic(
            vdw_model, GeodesicState(2.5, 1.2, -0.2, 0.0), 40.0)
        assert traj.termination is TerminationReason.LOCUS_PROXIMITY
        final = traj.final_state
        assert final.t < 40.0
        stack = vdw_model.derivative_stack(sv(final.s, final.v),
                                           check_singular=False)
        rel_det = abs(stack.det) / degeneracy_scale(stack.e11, stack.e12,
                                                    stack.e22)
        assert rel_det == pytest.approx(LOCUS_GUARD_BAND, rel=1e-3)
        s_star = locus_entropy(vdw_model, final.v)
        assert final.s > s_star

    def test_domain_exit_at_volume_floor(self):
        # no covolume wall and determinant positive everywhere: the only
        # obstruction is the v=0 coordinate boundary
        model = ConstantCv(ShiftedPower(1.0, -0.5, -0.8), None, cv=2.0)
        traj = integrate_geodesic(
            model, GeodesicState(1.0, 0.5, 0.0, -0.05), 60.0)
        assert traj.termination is TerminationReason.DOMAIN_EXIT
        assert traj.final_state.v == pytest.approx(0.0, abs=1e-6)

    def test_singular_start_rejected(self, vdw_model):
        v = 1.2
        s_star = locus_entropy(vdw_model, v)
        with pytest.raises(SingularState):
            integrate_geodesic(vdw_model,
                               GeodesicState(s_star, v, 0.1, 0.0), 1.0)

    def test_out_of_domain_start_rejected(self, vdw_model):
        with pytest.raises(DomainError):
            integrate_geodesic(vdw_model,
                               GeodesicState(2.0, 0.1, 0.0, 0.0), 1.0)
