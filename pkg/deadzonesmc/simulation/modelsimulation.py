from typing import List, Optional, Tuple
from dataclasses import dataclass, field, replace
import math

import numpy as np
import dataclasses_json

from ..common.modelcommon import SwitchingKind, InvalidParameter
from ..controllers.fuzzy import DEFAULT_CENTERS
from ..deadzone.modeldeadzone import DeadZoneBounds
from ..plants.modelplant import HydraulicParams


def _positive(name: str, value: float):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
        raise InvalidParameter(name, f"must be a positive finite number, got {value!r}")


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class ReferenceSpec(object):
    """x_d(t) = amplitude * sin(frequency * t), frequency in rad/s."""

    amplitude: float = 0.5
    frequency: float = 0.1

    def __post_init__(self):
        if not math.isfinite(self.amplitude):
            raise InvalidParameter("amplitude", f"must be finite, got {self.amplitude!r}")
        if not (math.isfinite(self.frequency) and self.frequency >= 0):
            raise InvalidParameter("frequency", f"must be finite and >= 0, got {self.frequency!r}")


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class ModelEstimateSpec(object):
    """How the controller's gain estimate and bounds are derived from the plant parameters.

    The supply pressure seen by the controller ranges over P_hat (1 +/- (uncertainty + margin)), where the margin
    covers the load-pressure term under the flow radical. Without a valve gain estimate the gain estimate is the
    geometric mean of the bounds.
    """

    valve_gain_estimate: Optional[float] = None
    supply_pressure_estimate: Optional[float] = None
    supply_pressure_uncertainty: float = 0.0
    load_pressure_margin: float = 0.025
    drift_bound: float = 0.0

    def __post_init__(self):
        if self.valve_gain_estimate is not None:
            _positive("valve_gain_estimate", self.valve_gain_estimate)
        if self.supply_pressure_estimate is not None:
            _positive("supply_pressure_estimate", self.supply_pressure_estimate)
        spread = self.supply_pressure_uncertainty + self.load_pressure_margin
        if not (self.supply_pressure_uncertainty >= 0 and self.load_pressure_margin >= 0 and spread < 1):
            raise InvalidParameter(
                "supply_pressure_uncertainty", "uncertainty and load margin must be >= 0 and sum to less than 1"
            )
        if not (math.isfinite(self.drift_bound) and self.drift_bound >= 0):
            raise InvalidParameter("drift_bound", f"must be finite and >= 0, got {self.drift_bound!r}")


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class ControllerSpec(object):
    dead_zone_bounds: DeadZoneBounds
    model: ModelEstimateSpec = field(default_factory=ModelEstimateSpec)
    bandwidth: float = 8.0
    eta: float = 0.1
    switching: SwitchingKind = SwitchingKind.SATURATION
    phi: float = 1.0
    compensator_on: bool = True
    frozen_gain: Optional[float] = None

    def __post_init__(self):
        _positive("bandwidth", self.bandwidth)
        _positive("eta", self.eta)
        _positive("phi", self.phi)
        if self.frozen_gain is not None:
            _positive("frozen_gain", self.frozen_gain)


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class CompensatorSpec(object):
    centers: List[float] = field(default_factory=lambda: list(DEFAULT_CENTERS))
    initial_outputs: Optional[List[float]] = None
    gamma: float = 1.2

    def __post_init__(self):
        if not self.centers:
            raise InvalidParameter("centers", "at least one membership center is required")
        if any(b <= a for a, b in zip(self.centers, self.centers[1:])):
            raise InvalidParameter("centers", f"centers must be strictly increasing, got {self.centers!r}")
        if self.initial_outputs is not None and len(self.initial_outputs) != len(self.centers):
            raise InvalidParameter(
                "initial_outputs", f"expected {len(self.centers)} values, got {len(self.initial_outputs)}"
            )
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise InvalidParameter("gamma", f"adaptation rate must be >= 0, got {self.gamma!r}")


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class Scenario(object):
    name: str
    plant: HydraulicParams
    controller: ControllerSpec
    compensator: CompensatorSpec = field(default_factory=CompensatorSpec)
    reference: ReferenceSpec = field(default_factory=ReferenceSpec)
    duration: float = 120.0  # s
    controller_rate: float = 400.0  # Hz
    plant_rate: float = 800.0  # Hz
    initial_state: List[float] = field(default_factory=lambda: [0.0, 0.0, 0.0])
    # Leading share of the run excluded from post-transient metrics
    transient_fraction: float = 0.1
    # Surrogate increases below this are integration noise
    v_tolerance: float = 1e-9
    # Half-width of the quasi-sliding band in units of K bm dt; intervals inside it skip the sliding condition
    quasi_sliding_factor: float = 2.0

    def __post_init__(self):
        self.validate()

    @property
    def substeps(self) -> int:
        return int(round(self.plant_rate / self.controller_rate))

    def validate(self):
        if not self.name:
            raise InvalidParameter("name", "scenario name must not be empty")
        _positive("duration", self.duration)
        _positive("controller_rate", self.controller_rate)
        _positive("plant_rate", self.plant_rate)
        ratio = self.plant_rate / self.controller_rate
        if round(ratio) < 1 or abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise InvalidParameter(
                "plant_rate", f"must be an integer multiple of the controller rate, got {self.plant_rate!r}"
            )
        if len(self.initial_state) != 3 or not all(math.isfinite(v) for v in self.initial_state):
            raise InvalidParameter("initial_state", f"expected three finite values, got {self.initial_state!r}")
        if not 0 <= self.transient_fraction < 1:
            raise InvalidParameter("transient_fraction", f"must lie in [0, 1), got {self.transient_fraction!r}")
        if not (math.isfinite(self.v_tolerance) and self.v_tolerance >= 0):
            raise InvalidParameter("v_tolerance", f"must be finite and >= 0, got {self.v_tolerance!r}")
        if not (math.isfinite(self.quasi_sliding_factor) and self.quasi_sliding_factor >= 0):
            raise InvalidParameter(
                "quasi_sliding_factor", f"must be finite and >= 0, got {self.quasi_sliding_factor!r}"
            )


@dataclass
class SimTrace(object):
    """Closed-loop history sampled at every controller tick.

    Row k holds the state at t_k, the reference and the control computed from it, and the adjustable outputs that
    control used. `fault` holds FaultFlag bits for the interval [t_k, t_k+1).
    """

    name: str
    t: np.ndarray
    state: np.ndarray  # (N, n)
    ref: np.ndarray  # (N, n + 1)
    err: np.ndarray  # (N, n)
    s: np.ndarray
    u: np.ndarray
    upsilon: np.ndarray
    d_hat: np.ndarray
    d: np.ndarray
    K: np.ndarray
    V: np.ndarray
    fault: np.ndarray
    d_hat_vec: np.ndarray  # (N, rules)
    true_gain: np.ndarray
    dt: float
    order: int
    bandwidth: float
    eta: float
    phi: float
    switching: SwitchingKind
    final_state: Tuple[float, ...] = ()
    final_d_hat_vec: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.t)

    @property
    def x(self) -> np.ndarray:
        return self.state[:, 0]

    @property
    def xd(self) -> np.ndarray:
        return self.ref[:, 0]

    @property
    def duration(self) -> float:
        return len(self) * self.dt

    def truncated(self, k: int) -> "SimTrace":
        return replace(
            self,
            **{
                name: getattr(self, name)[:k]
                for name in (
                    "t", "state", "ref", "err", "s", "u", "upsilon", "d_hat", "d", "K", "V", "fault", "d_hat_vec",
                    "true_gain",
                )
            },
        )


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass
class Metrics(object):
    samples: int
    rms_error: float  # m
    post_transient_rms_error: float  # m
    max_abs_error_post_transient: float  # m
    # Total variation of u over the run (V)
    chattering_index: float
    compensation_rms: float  # V
    compensation_rms_first_quarter: float
    compensation_rms_last_quarter: float
    # Post-transient samples outside the convergence region, one count per derivative
    bound_violations: List[int]
    region_bounds: List[float]
    cavitation_faults: int
    rejected_adaptations: int
    final_x: float


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass
class MonitorReport(object):
    samples: int
    discontinuous: bool = False
    intervals_checked: int = 0
    v_increase_events: int = 0
    sliding_condition_violations: int = 0
    # Same-sign intervals inside the quasi-sliding band, exempt from the sliding condition
    quasi_sliding_intervals: int = 0
    # Post-transient share of samples with |s| <= phi, smooth laws only
    boundary_layer_occupancy: Optional[float] = None
    region_bounds: List[float] = field(default_factory=list)
    region_occupancy: List[float] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.intervals_checked == 0 and not self.region_occupancy
