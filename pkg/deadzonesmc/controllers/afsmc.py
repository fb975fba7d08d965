"""Adaptive fuzzy sliding mode law

    u = u_hat + d_hat(u_hat) - K * switch(s, phi),   u_hat = bm_hat^-1 (-f_hat + x_d^(n) - c_bar' x~)

with the gain recomputed every tick from the current state and estimates.
"""
from typing import Optional, Sequence, Tuple
import math

from ..common.modelcommon import ControllerFault, DimensionMismatch, StateLike
from .modelcontroller import ControllerConfig, ControlDiagnostics
from .sliding import sliding_variable, sdot_feedback, switch
from . import fuzzy
from .fuzzy import FuzzyCompensator


def tracking_error(cfg: ControllerConfig, x: StateLike, ref: Sequence[float]) -> Tuple[float, ...]:
    n = cfg.order
    if len(x) != n or len(ref) != n + 1:
        raise DimensionMismatch(f"order {n} needs a state of {n} and a reference of {n + 1}, got {len(x)} and {len(ref)}")
    return tuple(x[i] - ref[i] for i in range(n))


def equivalent_control(
    cfg: ControllerConfig, x: StateLike, ref: Sequence[float], err: Optional[Sequence[float]] = None
) -> float:
    if err is None:
        err = tracking_error(cfg, x, ref)
    f_hat = cfg.model.f_hat(x)
    if not math.isfinite(f_hat):
        raise ControllerFault(f"drift estimate is not finite: {f_hat!r}")
    u_hat = (-f_hat + ref[cfg.order] - sdot_feedback(cfg.surface, err)) / cfg.model.bm_hat
    if not math.isfinite(u_hat):
        raise ControllerFault(f"equivalent control is not finite: {u_hat!r}")
    return u_hat


def robust_gain(cfg: ControllerConfig, x: StateLike, u_hat: float, d_hat: float) -> float:
    if cfg.frozen_gain is not None:
        return cfg.frozen_gain
    model = cfg.model
    F = model.F(x)
    if not (math.isfinite(F) and F >= 0):
        raise ControllerFault(f"drift bound must be finite and >= 0, got {F!r}")
    return (
        model.beta / model.bm_hat * (cfg.eta + F)
        + cfg.delta_bound
        + abs(d_hat)
        + (model.beta - 1.0) * abs(u_hat)
    )


def control(
    cfg: ControllerConfig, comp: Optional[FuzzyCompensator], x: StateLike, ref: Sequence[float]
) -> Tuple[float, ControlDiagnostics]:
    err = tracking_error(cfg, x, ref)
    s = sliding_variable(cfg.surface, err)
    u_hat = equivalent_control(cfg, x, ref, err)
    psi = None
    d_hat = 0.0
    if cfg.compensator_on and comp is not None:
        psi = fuzzy.firing_weights(comp.family, u_hat)
        d_hat = fuzzy.estimate(comp, u_hat, psi)
    K = robust_gain(cfg, x, u_hat, d_hat)
    u = u_hat + d_hat - K * switch(cfg.switching, s)
    return u, ControlDiagnostics(s=s, u_hat=u_hat, d_hat=d_hat, K=K, err=err, psi=psi)


def step(
    cfg: ControllerConfig, comp: Optional[FuzzyCompensator], x: StateLike, ref: Sequence[float], dt: float
) -> Tuple[float, Optional[FuzzyCompensator], ControlDiagnostics]:
    """One controller tick: the output uses the outputs from before this tick's adaptation."""
    u, diag = control(cfg, comp, x, ref)
    if cfg.compensator_on and comp is not None:
        updated = fuzzy.adapt(comp, diag.s, diag.u_hat, dt, psi=diag.psi)
        if updated.faults != comp.faults:
            diag = diag._replace(adaptation_rejected=True)
        comp = updated
    return u, comp, diag
