import math

import numpy as np
import pytest

from deadzonesmc.common.modelcommon import SwitchingKind, ControllerFault, DimensionMismatch, InvalidParameter
from deadzonesmc.controllers import afsmc, fuzzy
from deadzonesmc.controllers.fuzzy import FuzzyCompensator
from deadzonesmc.controllers.modelcontroller import ControllerConfig, ModelEstimate
from deadzonesmc.controllers.sliding import SurfaceSpec, SwitchingFn


def no_drift(x):
    return 0.0


def make_config(bm_hat=2.0, kind=SwitchingKind.SATURATION, f_hat=no_drift, F=no_drift, beta=1.0, **kwargs):
    kwargs.setdefault("eta", 0.1)
    kwargs.setdefault("delta_bound", 0.0)
    return ControllerConfig(
        model=ModelEstimate(f_hat=f_hat, bm_hat=bm_hat, F=F, beta=beta),
        surface=SurfaceSpec.build(3, 8.0),
        switching=SwitchingFn(kind, 1.0),
        **kwargs,
    )


ON_REFERENCE = (0.0, 0.0, 0.0)
REF = (0.0, 0.0, 0.0, 3.0)


def test_equivalent_control_on_reference():
    assert afsmc.equivalent_control(make_config(), ON_REFERENCE, REF) == pytest.approx(1.5)


def test_equivalent_control_exact_cancellation():
    cfg = make_config()
    x, ref = (0.1, -0.2, 0.05), (0.0, 0.0, 0.0, 3.0)

    def cancelling(state):
        err = afsmc.tracking_error(cfg, state, ref)
        return ref[3] - (64.0 * err[1] + 16.0 * err[2])

    cfg = make_config(f_hat=cancelling)
    assert afsmc.equivalent_control(cfg, x, ref) == pytest.approx(0.0, abs=1e-12)


def test_equivalent_control_is_homogeneous_in_gain():
    x, ref = (0.1, -0.2, 0.05), (0.02, 0.0, -0.3, 3.0)
    u1 = afsmc.equivalent_control(make_config(bm_hat=2.0), x, ref)
    u2 = afsmc.equivalent_control(make_config(bm_hat=4.0), x, ref)
    assert u2 == pytest.approx(u1 / 2)


def test_equivalent_control_rejects_non_finite_drift():
    cfg = make_config(f_hat=lambda x: float("nan"))
    with pytest.raises(ControllerFault):
        afsmc.equivalent_control(cfg, ON_REFERENCE, REF)


def test_tracking_error_dimensions():
    with pytest.raises(DimensionMismatch):
        afsmc.tracking_error(make_config(), (0.0, 0.0), REF)
    with pytest.raises(DimensionMismatch):
        afsmc.tracking_error(make_config(), ON_REFERENCE, (0.0, 0.0, 0.0))


def test_robust_gain_floor():
    assert afsmc.robust_gain(make_config(bm_hat=2.0), ON_REFERENCE, 5.0, 0.0) == pytest.approx(0.05)


def test_robust_gain_with_dead_zone_bound():
    bm = 167.7
    cfg = make_config(bm_hat=bm, delta_bound=1.1)
    assert afsmc.robust_gain(cfg, ON_REFERENCE, -4.0, 0.0) == pytest.approx(1.1 + 0.1 / bm)


def test_robust_gain_is_monotone():
    base = dict(bm_hat=2.0, beta=1.5, delta_bound=0.5)
    k = afsmc.robust_gain(make_config(**base), ON_REFERENCE, 1.0, 0.2)
    assert afsmc.robust_gain(make_config(F=lambda x: 0.3, **base), ON_REFERENCE, 1.0, 0.2) > k
    assert afsmc.robust_gain(make_config(**base), ON_REFERENCE, 1.0, -0.4) > k
    assert afsmc.robust_gain(make_config(**base), ON_REFERENCE, -2.0, 0.2) > k
    assert afsmc.robust_gain(make_config(**dict(base, delta_bound=0.9)), ON_REFERENCE, 1.0, 0.2) > k


def test_frozen_gain_replaces_online_gain():
    cfg = make_config(frozen_gain=2.5, delta_bound=1.1)
    assert afsmc.robust_gain(cfg, ON_REFERENCE, 100.0, 3.0) == 2.5


def test_invalid_config():
    with pytest.raises(InvalidParameter):
        make_config(eta=0.0)
    with pytest.raises(InvalidParameter):
        make_config(delta_bound=-1.0)
    with pytest.raises(InvalidParameter):
        ModelEstimate(f_hat=no_drift, bm_hat=1.0, beta=0.5)


def test_control_without_compensator():
    cfg = make_config(compensator_on=False)
    comp = FuzzyCompensator.initial(d_hat_vec=np.full(7, 0.8))
    x = (0.01, 0.0, 0.0)
    u, diag = afsmc.control(cfg, comp, x, REF)
    assert diag.d_hat == 0.0
    assert u == pytest.approx(diag.u_hat - diag.K * max(-1.0, min(1.0, diag.s)))


def test_control_on_surface_is_equivalent_control():
    u, diag = afsmc.control(make_config(), FuzzyCompensator.initial(), ON_REFERENCE, REF)
    assert diag.s == 0.0
    assert u == diag.u_hat


def test_sign_law_off_surface():
    cfg = make_config(kind=SwitchingKind.SIGN, delta_bound=1.1)
    comp = FuzzyCompensator.initial(d_hat_vec=np.full(7, 0.9))
    u, diag = afsmc.control(cfg, comp, (0.01, 0.0, 0.0), REF)
    assert diag.s > 0
    assert diag.d_hat == pytest.approx(0.9)
    assert u == pytest.approx(diag.u_hat + diag.d_hat - diag.K)


def test_step_without_adaptation_keeps_compensator():
    x = (0.01, 0.0, 0.0)
    comp = FuzzyCompensator.initial(gamma=0.0)
    u, comp2, diag = afsmc.step(make_config(), comp, x, REF, 0.0025)
    assert comp2 is comp
    assert u == afsmc.control(make_config(), comp, x, REF)[0]
    comp = FuzzyCompensator.initial(gamma=1.2)
    _, comp2, _ = afsmc.step(make_config(), comp, ON_REFERENCE, REF, 0.0025)
    assert comp2 is comp


def test_step_outputs_before_adapting():
    cfg = make_config()
    x = (0.01, 0.0, 0.0)
    comp = FuzzyCompensator.initial(gamma=1.2)
    u1, comp1, diag = afsmc.step(cfg, comp, x, REF, 0.0025)
    u2, _, _ = afsmc.step(cfg, comp1, x, REF, 0.0025)
    assert u1 == afsmc.control(cfg, comp, x, REF)[0]
    assert u2 != u1
    psi = fuzzy.firing_weights(comp.family, diag.u_hat)
    np.testing.assert_allclose(comp1.d_hat_vec, -1.2 * diag.s * 0.0025 * psi)


def test_from_bounds_geometric_mean():
    est = ModelEstimate.from_bounds(no_drift, 100.0, 150.0, 1.8e-6, 2.2e-6)
    low, high = 100.0 * 1.8e-6, 150.0 * 2.2e-6
    assert est.bm_hat == pytest.approx(math.sqrt(low * high))
    assert est.beta == pytest.approx(math.sqrt(high / low))


def test_from_bounds_with_estimate_keeps_ratio_bounds():
    low, high = 100.0 * 1.8e-6, 150.0 * 2.2e-6
    est = ModelEstimate.from_bounds(no_drift, 100.0, 150.0, 1.8e-6, 2.2e-6, bm_hat=2.0e-4)
    for bm in np.linspace(low, high, 50):
        ratio = est.bm_hat / bm
        assert 1 / est.beta <= ratio * (1 + 1e-12)
        assert ratio <= est.beta * (1 + 1e-12)
