import dataclasses
import math

import numpy as np
import pytest

from deadzonesmc.common.modelcommon import SwitchingKind, FaultFlag, InvalidParameter, SimulationDiverged
from deadzonesmc.controllers import afsmc
from deadzonesmc.deadzone.modeldeadzone import DeadZoneSpec
from deadzonesmc.plants.generic import generic_plant
from deadzonesmc.simulation import engine
from deadzonesmc.simulation.integrate import rk4_step
from deadzonesmc.simulation.metrics import compute_metrics
from deadzonesmc.simulation.modelsimulation import ReferenceSpec
from deadzonesmc.simulation.monitors import monitors
from deadzonesmc.simulation.reference import reference

from .helpers import first_order_config, zero_compensator

FIRST_ORDER_DZ = DeadZoneSpec(delta_l=-0.3, delta_r=0.2, m_l=1.0, m_r=1.0)


def _zero(x):
    return 0.0


def _one(x):
    return 1.0


def first_order_plant():
    return generic_plant(_zero, _one, FIRST_ORDER_DZ)


def test_reference_samples():
    spec = ReferenceSpec(0.5, 0.1)
    r = reference(spec, 0.0, 3)
    assert r[0] == 0.0
    assert r[1] == pytest.approx(0.05)
    t = 7.3
    assert reference(spec, t, 3)[3] == pytest.approx(-0.5 * 0.1 ** 3 * math.cos(0.1 * t))
    assert reference(ReferenceSpec(0.0, 0.1), t, 3) == (0.0, 0.0, 0.0, 0.0)


def test_rk4_step_accuracy():
    def decay(state, u):
        return (-state[0] + u,), False

    state = (1.0,)
    for _ in range(100):
        state, _ = rk4_step(decay, state, 0.0, 0.01)
    assert state[0] == pytest.approx(math.exp(-1.0), rel=1e-9)


def test_scenario_rates_must_be_multiples(case1):
    with pytest.raises(InvalidParameter) as info:
        dataclasses.replace(case1, plant_rate=1000.0)
    assert info.value.field == "plant_rate"
    with pytest.raises(InvalidParameter):
        dataclasses.replace(case1, duration=0.0)
    with pytest.raises(InvalidParameter):
        dataclasses.replace(case1, initial_state=[0.0, 0.0])
    with pytest.raises(InvalidParameter) as info:
        dataclasses.replace(case1, quasi_sliding_factor=-1.0)
    assert info.value.field == "quasi_sliding_factor"


def test_equilibrium_stays_at_rest(case1):
    scenario = dataclasses.replace(
        case1,
        duration=1.0,
        reference=ReferenceSpec(0.0, 0.1),
        compensator=dataclasses.replace(case1.compensator, gamma=0.0),
    )
    trace, metrics = engine.run(scenario)
    assert len(trace) == 400
    assert np.all(trace.state == 0.0)
    assert np.all(trace.u == 0.0)
    assert metrics.rms_error == 0.0


def test_model_estimate_from_scenario(case1, case2):
    est = engine.build_model_estimate(case1)
    assert 1.0 < est.beta < 1.2
    assert est.F((0.1, 0.2, 0.3)) == 0.0
    est2 = engine.build_model_estimate(case2)
    assert est2.bm_hat == pytest.approx(167.7 * 2.0 / 2.2, rel=1e-3)
    assert est2.beta > est.beta


def test_single_rate_matches_hand_loop():
    cfg = first_order_config(kind=SwitchingKind.SATURATION, phi=0.05)
    plant = first_order_plant()
    ref_spec = ReferenceSpec(0.5, 0.5)
    trace = engine.simulate(plant, cfg, zero_compensator(gamma=2.0), ref_spec, 2.0, 100.0, 100.0, [0.1])

    state, comp = (0.1,), zero_compensator(gamma=2.0)
    for k in range(200):
        ref = reference(ref_spec, k * 0.01, 1)
        u, comp, _ = afsmc.step(cfg, comp, state, ref, 0.01)
        assert trace.u[k] == u
        state, _ = rk4_step(plant.derivative, state, u, 0.01)
    assert trace.final_state == state


def test_sign_law_decreases_surrogate_and_meets_sliding_condition():
    cfg = first_order_config(kind=SwitchingKind.SIGN, eta=0.1, delta_bound=0.3)
    trace = engine.simulate(
        first_order_plant(), cfg, zero_compensator(gamma=0.0), ReferenceSpec(0.5, 0.1), 10.0, 400.0, 800.0, [0.2]
    )
    report = monitors(trace)
    assert report.discontinuous
    assert report.boundary_layer_occupancy is None
    assert report.intervals_checked > 0
    assert report.v_increase_events == 0
    assert report.sliding_condition_violations == 0


def test_surrogate_holds_one_gain_across_slope_changes():
    plant = generic_plant(_zero, _one, DeadZoneSpec(delta_l=-0.3, delta_r=0.2, m_l=1.0, m_r=2.0))
    cfg = first_order_config(kind=SwitchingKind.SATURATION, phi=0.05)
    trace = engine.simulate(
        plant, cfg, zero_compensator(gamma=2.0), ReferenceSpec(0.5, 0.5), 2.0, 400.0, 800.0, [0.3]
    )
    assert trace.true_gain.min() == 1.0
    assert trace.true_gain.max() == 2.0
    delta = trace.d_hat_vec - trace.final_d_hat_vec
    bm = trace.true_gain.mean()
    expected = 0.5 * trace.s ** 2 + bm / (2 * 2.0) * np.sum(delta ** 2, axis=1)
    np.testing.assert_allclose(trace.V, expected, rtol=1e-12, atol=1e-15)


def test_smooth_law_stays_in_boundary_layer():
    cfg = first_order_config(kind=SwitchingKind.SATURATION, phi=0.5, eta=0.1, delta_bound=0.3)
    trace = engine.simulate(
        first_order_plant(), cfg, zero_compensator(gamma=1.0), ReferenceSpec(0.5, 0.1), 20.0, 400.0, 800.0, [0.0]
    )
    report = monitors(trace)
    assert report.boundary_layer_occupancy == 1.0
    assert report.region_bounds == pytest.approx([0.5])
    assert report.region_occupancy == [1.0]


def test_compensator_learns_dead_zone_on_first_order_plant():
    cfg = first_order_config(kind=SwitchingKind.SATURATION, phi=0.5, eta=0.1, delta_bound=0.3)
    comp = zero_compensator(gamma=5.0)
    ref = ReferenceSpec(1.0, 0.05)
    adaptive = engine.simulate(first_order_plant(), cfg, comp, ref, 30.0, 400.0, 800.0, [0.0])
    fixed = engine.simulate(first_order_plant(), cfg, zero_compensator(0.0), ref, 30.0, 400.0, 800.0, [0.0])
    a = compute_metrics(adaptive)
    b = compute_metrics(fixed)
    assert a.post_transient_rms_error < b.post_transient_rms_error
    assert a.compensation_rms_last_quarter < a.compensation_rms_first_quarter


def test_divergence_keeps_partial_trace():
    cfg = first_order_config(kind=SwitchingKind.SATURATION)
    plant = generic_plant(lambda x: x[0] * 1e200, _one)
    with pytest.raises(SimulationDiverged) as info:
        engine.simulate(plant, cfg, zero_compensator(), ReferenceSpec(), 1.0, 400.0, 800.0, [1e150])
    trace = info.value.trace
    assert len(trace) == 1
    assert not math.isfinite(trace.final_state[0])


def test_short_trace_gives_empty_report():
    cfg = first_order_config()
    trace = engine.simulate(first_order_plant(), cfg, zero_compensator(), ReferenceSpec(), 0.0025, 400.0, 400.0, [0.0])
    assert len(trace) == 1
    report = monitors(trace)
    assert report.is_empty
    assert report.samples == 1


def test_runs_are_deterministic(case2):
    scenario = dataclasses.replace(case2, duration=2.0)
    first, m1 = engine.run(scenario)
    second, m2 = engine.run(scenario)
    np.testing.assert_array_equal(first.state, second.state)
    np.testing.assert_array_equal(first.u, second.u)
    np.testing.assert_array_equal(first.V, second.V)
    assert m1 == m2


def test_metrics_are_non_negative(case1):
    trace, metrics = engine.run(dataclasses.replace(case1, duration=4.0))
    assert metrics.samples == len(trace) == 1600
    for value in (
        metrics.rms_error,
        metrics.post_transient_rms_error,
        metrics.max_abs_error_post_transient,
        metrics.chattering_index,
        metrics.compensation_rms,
    ):
        assert value >= 0
    assert all(v >= 0 for v in metrics.bound_violations)
    assert metrics.region_bounds == pytest.approx([1 / 64, 0.25, 6.0])


def test_trace_columns_line_up(case1):
    trace, _ = engine.run(dataclasses.replace(case1, duration=1.0))
    np.testing.assert_allclose(trace.err[:, 0], trace.x - trace.xd)
    assert np.all(trace.t == np.arange(400) * 0.0025)
    assert trace.fault.dtype.kind == "i"
    assert np.all((trace.fault & int(FaultFlag.CAVITATION)) == 0)


@pytest.mark.slow
def test_case1_adaptive_beats_fixed(case1_compare):
    assert case1_compare.ok
    afsmc_m = case1_compare.afsmc.metrics
    smc_m = case1_compare.smc.metrics
    assert afsmc_m.post_transient_rms_error < smc_m.post_transient_rms_error
    assert case1_compare.rms_ratio <= 0.5
    assert afsmc_m.compensation_rms_last_quarter < afsmc_m.compensation_rms_first_quarter
    assert case1_compare.afsmc.report.boundary_layer_occupancy == 1.0


@pytest.mark.slow
def test_case1_smooth_law_chatters_less(case1_compare, case1_sign):
    assert case1_sign.ok
    smooth = case1_compare.afsmc.metrics.chattering_index
    assert smooth * 10 <= case1_sign.metrics.chattering_index


@pytest.mark.slow
def test_case2_adaptive_beats_fixed(case2_compare):
    assert case2_compare.ok
    assert case2_compare.afsmc_better
    assert case2_compare.afsmc.metrics.cavitation_faults == 0
    assert case2_compare.smc.metrics.cavitation_faults == 0
    assert case2_compare.afsmc.report.boundary_layer_occupancy == 1.0


@pytest.mark.slow
def test_case1_sign_law_meets_stability_monitors(case1_sign):
    report = case1_sign.report
    assert report.discontinuous
    assert report.intervals_checked > 0
    assert report.v_increase_events == 0
    assert report.sliding_condition_violations == 0
    strict = monitors(case1_sign.trace, dataclasses.replace(case1_sign.scenario, quasi_sliding_factor=0.0))
    assert strict.quasi_sliding_intervals == 0
    assert strict.sliding_condition_violations >= report.sliding_condition_violations
    assert strict.v_increase_events == report.v_increase_events


@pytest.mark.slow
def test_case1_halving_the_plant_step_keeps_rms(case1, case1_compare):
    _, fine = engine.run(dataclasses.replace(case1, plant_rate=1600.0))
    coarse = case1_compare.afsmc.metrics.rms_error
    assert abs(fine.rms_error - coarse) / coarse < 1e-3


@pytest.mark.slow
def test_case1_error_scales_with_boundary_layer(case1_phi_sweep):
    envelopes = []
    for phi, result in zip((0.5, 1.0, 2.0), case1_phi_sweep):
        assert result.ok
        assert result.report.region_bounds == pytest.approx([phi / 64, phi / 4, 6 * phi])
        assert all(share >= 0.99 for share in result.report.region_occupancy)
        envelopes.append(result.metrics.max_abs_error_post_transient / phi)
    assert max(envelopes) <= 2.0 * min(envelopes)
