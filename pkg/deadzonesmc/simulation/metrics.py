import numpy as np

from ..common.modelcommon import FaultFlag
from ..controllers.sliding import SurfaceSpec, convergence_region
from .modelsimulation import Metrics, SimTrace


def _rms(values: np.ndarray) -> float:
    if values.size == 0:
        return 0.0
    return float(np.sqrt(np.mean(np.square(values))))


def post_transient_mask(trace: SimTrace, transient_fraction: float) -> np.ndarray:
    return trace.t >= transient_fraction * trace.duration


def region_bounds(trace: SimTrace):
    return convergence_region(SurfaceSpec.build(trace.order, trace.bandwidth), trace.phi)


def compute_metrics(trace: SimTrace, transient_fraction: float = 0.1) -> Metrics:
    n = len(trace)
    bounds = region_bounds(trace)
    if n == 0:
        return Metrics(
            samples=0,
            rms_error=0.0,
            post_transient_rms_error=0.0,
            max_abs_error_post_transient=0.0,
            chattering_index=0.0,
            compensation_rms=0.0,
            compensation_rms_first_quarter=0.0,
            compensation_rms_last_quarter=0.0,
            bound_violations=[0] * trace.order,
            region_bounds=bounds,
            cavitation_faults=0,
            rejected_adaptations=0,
            final_x=float(trace.final_state[0]) if trace.final_state else 0.0,
        )

    post = post_transient_mask(trace, transient_fraction)
    e = trace.err[:, 0]
    e_post = e[post]
    compensation = trace.d_hat - trace.d
    quarter = n // 4
    violations = [int(np.count_nonzero(np.abs(trace.err[post, i]) > bounds[i])) for i in range(trace.order)]
    return Metrics(
        samples=n,
        rms_error=_rms(e),
        post_transient_rms_error=_rms(e_post),
        max_abs_error_post_transient=float(np.max(np.abs(e_post))) if e_post.size else 0.0,
        chattering_index=float(np.sum(np.abs(np.diff(trace.u)))),
        compensation_rms=_rms(compensation),
        compensation_rms_first_quarter=_rms(compensation[:quarter]),
        compensation_rms_last_quarter=_rms(compensation[n - quarter :]),
        bound_violations=violations,
        region_bounds=list(bounds),
        cavitation_faults=int(np.count_nonzero(trace.fault & int(FaultFlag.CAVITATION))),
        rejected_adaptations=int(np.count_nonzero(trace.fault & int(FaultFlag.ADAPTATION_REJECTED))),
        final_x=float(trace.final_state[0]) if trace.final_state else float(trace.state[-1, 0]),
    )
