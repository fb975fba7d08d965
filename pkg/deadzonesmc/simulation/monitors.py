"""Runtime checks of the closed-loop stability claims on a finished trace.

Only intervals over which s keeps its sign are judged for the surrogate decrease and the sliding condition:
an interval that crosses the surface is sampled chattering, not reaching. The sliding condition is further skipped
while both samples lie in the quasi-sliding band that a zero-order held switching term sustains.
"""
from typing import Optional

import numpy as np

from ..common.modelcommon import SwitchingKind
from .metrics import post_transient_mask, region_bounds
from .modelsimulation import MonitorReport, Scenario, SimTrace

DEFAULT_V_TOLERANCE = 1e-9
DEFAULT_QUASI_SLIDING_FACTOR = 2.0
DEFAULT_TRANSIENT_FRACTION = 0.1


def monitors(trace: SimTrace, scenario: Optional[Scenario] = None) -> MonitorReport:
    tolerance = scenario.v_tolerance if scenario is not None else DEFAULT_V_TOLERANCE
    transient = scenario.transient_fraction if scenario is not None else DEFAULT_TRANSIENT_FRACTION
    factor = scenario.quasi_sliding_factor if scenario is not None else DEFAULT_QUASI_SLIDING_FACTOR
    discontinuous = trace.switching is SwitchingKind.SIGN
    n = len(trace)
    if n < 2:
        return MonitorReport(samples=n, discontinuous=discontinuous)

    s0, s1 = trace.s[:-1], trace.s[1:]
    same_sign = s0 * s1 > 0
    v_increase = np.diff(trace.V) > tolerance
    reach_rate = 0.5 * (s1 ** 2 - s0 ** 2) / trace.dt
    sliding_violation = reach_rate > -trace.eta * np.minimum(np.abs(s0), np.abs(s1))
    # One held control sample moves s by up to 2 K bm dt, so sampled switching cannot keep the rate inside this band
    band = factor * trace.K[:-1] * trace.true_gain[:-1] * trace.dt
    in_band = np.maximum(np.abs(s0), np.abs(s1)) <= band

    post = post_transient_mask(trace, transient)
    bounds = region_bounds(trace)
    occupancy = []
    for i, bound in enumerate(bounds):
        inside = np.abs(trace.err[post, i]) <= bound
        occupancy.append(float(np.mean(inside)) if inside.size else 1.0)
    layer = None
    if not discontinuous:
        s_post = np.abs(trace.s[post])
        layer = float(np.mean(s_post <= trace.phi)) if s_post.size else 1.0

    return MonitorReport(
        samples=n,
        discontinuous=discontinuous,
        intervals_checked=int(np.count_nonzero(same_sign)),
        v_increase_events=int(np.count_nonzero(same_sign & v_increase)),
        sliding_condition_violations=int(np.count_nonzero(same_sign & ~in_band & sliding_violation)),
        quasi_sliding_intervals=int(np.count_nonzero(same_sign & in_band)),
        boundary_layer_occupancy=layer,
        region_bounds=list(bounds),
        region_occupancy=occupancy,
    )
