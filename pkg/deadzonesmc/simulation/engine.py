"""Fixed-step multirate closed loop: controller ticks at controller_rate, plant integrated at plant_rate with the
control held between ticks."""
from typing import Optional, Sequence, Tuple
import logging
import math

import numpy as np

from ..common.modelcommon import (
    ControllerFault,
    DegeneratePartitionError,
    DimensionMismatch,
    FaultFlag,
    InvalidParameter,
    SimulationDiverged,
)
from ..controllers import afsmc
from ..controllers.fuzzy import FuzzyCompensator
from ..controllers.modelcontroller import ConstantBound, ControllerConfig, LinearDrift, ModelEstimate
from ..controllers.sliding import SurfaceSpec, SwitchingFn
from ..deadzone import deadzone
from ..plants import hydraulic
from ..plants.hydraulic import HydraulicPlant
from .integrate import hold
from .modelsimulation import Metrics, ReferenceSpec, Scenario, SimTrace
from .reference import reference as reference_sample
from .metrics import compute_metrics

logger = logging.getLogger(__name__)


def build_plant(scenario: Scenario) -> HydraulicPlant:
    return HydraulicPlant(scenario.plant)


def build_model_estimate(scenario: Scenario) -> ModelEstimate:
    p = scenario.plant
    spec = scenario.controller.model
    bounds = scenario.controller.dead_zone_bounds
    p_hat = spec.supply_pressure_estimate if spec.supply_pressure_estimate is not None else p.supply_pressure
    spread = spec.supply_pressure_uncertainty + spec.load_pressure_margin
    kq = hydraulic.flow_gain(p)
    b_min = kq * math.sqrt(p_hat * (1.0 - spread) / p.density)
    b_max = kq * math.sqrt(p_hat * (1.0 + spread) / p.density)
    bm_hat = None
    if spec.valve_gain_estimate is not None:
        bm_hat = kq * spec.valve_gain_estimate * math.sqrt(p_hat / p.density)
    return ModelEstimate.from_bounds(
        f_hat=LinearDrift(hydraulic.a_coeffs(p)),
        b_min=b_min,
        b_max=b_max,
        m_min=bounds.m_min,
        m_max=bounds.m_max,
        F=ConstantBound(spec.drift_bound),
        bm_hat=bm_hat,
    )


def build_config(scenario: Scenario) -> ControllerConfig:
    c = scenario.controller
    return ControllerConfig(
        model=build_model_estimate(scenario),
        surface=SurfaceSpec.build(3, c.bandwidth),
        switching=SwitchingFn(c.switching, c.phi),
        eta=c.eta,
        delta_bound=deadzone.disturbance_bound(c.dead_zone_bounds),
        compensator_on=c.compensator_on,
        frozen_gain=c.frozen_gain,
    )


def build_compensator(scenario: Scenario) -> FuzzyCompensator:
    c = scenario.compensator
    return FuzzyCompensator.initial(c.centers, c.gamma, c.initial_outputs)


def _surrogate(trace: SimTrace, gamma: float, optimal_outputs: Optional[np.ndarray]) -> np.ndarray:
    """V = s^2 / 2 + bm / (2 gamma) |D - D*|^2; D* defaults to the final outputs.

    bm is the true gain averaged over the run and held constant across samples.
    """
    V = 0.5 * trace.s ** 2
    if gamma > 0 and trace.d_hat_vec.shape[1] and len(trace):
        target = trace.final_d_hat_vec if optimal_outputs is None else np.asarray(optimal_outputs, dtype=float)
        delta = trace.d_hat_vec - target
        bm = float(np.mean(trace.true_gain))
        V = V + bm / (2.0 * gamma) * np.einsum("ij,ij->i", delta, delta)
    return V


def simulate(
    plant,
    config: ControllerConfig,
    compensator: Optional[FuzzyCompensator],
    reference: ReferenceSpec,
    duration: float,
    controller_rate: float,
    plant_rate: float,
    initial_state: Sequence[float],
    optimal_outputs: Optional[Sequence[float]] = None,
    name: str = "",
) -> SimTrace:
    """Run the closed loop over any plant exposing `derivative(state, u)`, `true_gain(state, u)` and `dead_zone`.

    Raises SimulationDiverged, carrying the trace up to the offending tick, when the state stops being finite.
    """
    n = config.order
    state = tuple(float(v) for v in initial_state)
    if len(state) != n:
        raise DimensionMismatch(f"controller order is {n}, initial state has {len(state)} entries")
    if not (duration > 0 and controller_rate > 0 and plant_rate > 0):
        raise InvalidParameter("duration", "duration and both rates must be positive")
    substeps = int(round(plant_rate / controller_rate))
    if substeps < 1 or abs(plant_rate / controller_rate - substeps) > 1e-9 * substeps:
        raise InvalidParameter("plant_rate", "must be an integer multiple of the controller rate")
    dt = 1.0 / controller_rate
    h = dt / substeps
    ticks = int(round(duration * controller_rate))
    dz = plant.dead_zone
    rules = len(compensator.family) if compensator is not None else 0

    trace = SimTrace(
        name=name,
        t=np.arange(ticks) * dt,
        state=np.zeros((ticks, n)),
        ref=np.zeros((ticks, n + 1)),
        err=np.zeros((ticks, n)),
        s=np.zeros(ticks),
        u=np.zeros(ticks),
        upsilon=np.zeros(ticks),
        d_hat=np.zeros(ticks),
        d=np.zeros(ticks),
        K=np.zeros(ticks),
        V=np.zeros(ticks),
        fault=np.zeros(ticks, dtype=int),
        d_hat_vec=np.zeros((ticks, rules)),
        true_gain=np.zeros(ticks),
        dt=dt,
        order=n,
        bandwidth=config.surface.bandwidth,
        eta=config.eta,
        phi=config.switching.phi,
        switching=config.switching.kind,
    )
    gamma = compensator.gamma if (compensator is not None and config.compensator_on) else 0.0

    comp = compensator
    for k in range(ticks):
        if not all(math.isfinite(v) for v in state):
            trace = _finish(trace.truncated(k), state, comp, gamma, optimal_outputs)
            raise SimulationDiverged(f"state is not finite at t={k * dt:.4f} s: {state!r}", trace)
        ref = reference_sample(reference, k * dt, n)
        if comp is not None:
            trace.d_hat_vec[k] = comp.d_hat_vec
        try:
            u, comp, diag = afsmc.step(config, comp, state, ref, dt)
        except (ControllerFault, DegeneratePartitionError) as e:
            trace = _finish(trace.truncated(k), state, comp, gamma, optimal_outputs)
            raise SimulationDiverged(f"controller fault at t={k * dt:.4f} s: {e}", trace) from e
        flags = FaultFlag.ADAPTATION_REJECTED if diag.adaptation_rejected else FaultFlag.NONE

        trace.state[k] = state
        trace.ref[k] = ref
        trace.err[k] = diag.err
        trace.s[k] = diag.s
        trace.u[k] = u
        trace.d_hat[k] = diag.d_hat
        trace.K[k] = diag.K
        if dz is not None:
            trace.upsilon[k] = deadzone.apply(dz, u)
            trace.d[k] = deadzone.disturbance(dz, u)
        else:
            trace.upsilon[k] = u
        trace.true_gain[k] = plant.true_gain(state, u)

        state, cavitated = hold(plant.derivative, state, u, h, substeps)
        if cavitated:
            flags |= FaultFlag.CAVITATION
        trace.fault[k] = int(flags)

    if not all(math.isfinite(v) for v in state):
        trace = _finish(trace, state, comp, gamma, optimal_outputs)
        raise SimulationDiverged(f"state is not finite at t={duration:.4f} s: {state!r}", trace)
    return _finish(trace, state, comp, gamma, optimal_outputs)


def _finish(
    trace: SimTrace,
    state: Tuple[float, ...],
    comp: Optional[FuzzyCompensator],
    gamma: float,
    optimal_outputs: Optional[Sequence[float]],
) -> SimTrace:
    trace.final_state = tuple(state)
    trace.final_d_hat_vec = np.array(comp.d_hat_vec) if comp is not None else np.zeros(0)
    trace.V = _surrogate(trace, gamma, optimal_outputs)
    return trace


def run(scenario: Scenario, optimal_outputs: Optional[Sequence[float]] = None) -> Tuple[SimTrace, Metrics]:
    plant = build_plant(scenario)
    config = build_config(scenario)
    comp = build_compensator(scenario)
    if not scenario.controller.dead_zone_bounds.contains(scenario.plant.valve):
        logger.warning(f"{scenario.name}: valve dead-zone lies outside the controller's bounds")
    logger.info(
        f"{scenario.name}: running {scenario.duration} s, controller {scenario.controller_rate} Hz, "
        f"plant {scenario.plant_rate} Hz, bm_hat={config.model.bm_hat:.4g}, beta={config.model.beta:.4g}"
    )
    try:
        trace = simulate(
            plant,
            config,
            comp,
            scenario.reference,
            scenario.duration,
            scenario.controller_rate,
            scenario.plant_rate,
            scenario.initial_state,
            optimal_outputs=optimal_outputs,
            name=scenario.name,
        )
    except SimulationDiverged as e:
        logger.error(f"{scenario.name}: {e}")
        raise
    metrics = compute_metrics(trace, scenario.transient_fraction)
    if metrics.cavitation_faults or metrics.rejected_adaptations:
        logger.warning(
            f"{scenario.name}: {metrics.cavitation_faults} cavitation and "
            f"{metrics.rejected_adaptations} rejected adaptation faults"
        )
    logger.info(f"{scenario.name}: done, post-transient rms error {metrics.post_transient_rms_error:.4g} m")
    return trace, metrics
