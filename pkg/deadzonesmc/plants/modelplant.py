from typing import NamedTuple
from dataclasses import dataclass, fields
import math
import dataclasses_json

from ..common.modelcommon import InvalidParameter
from ..deadzone.modeldeadzone import DeadZoneSpec


class PlantState(NamedTuple):
    x: float
    x_dot: float
    x_ddot: float


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class HydraulicParams(object):
    """Four-way proportional valve driving a symmetric cylinder with a mass-spring-damper load (SI units)."""

    supply_pressure: float  # Pa
    density: float  # kg/m^3
    discharge_coefficient: float
    orifice_gradient: float  # m
    piston_area: float  # m^2
    leakage_coefficient: float  # m^3/(s Pa)
    bulk_modulus: float  # Pa
    total_volume: float  # m^3
    total_mass: float  # kg
    damping: float  # N s/m
    spring_rate: float  # N/m
    valve: DeadZoneSpec  # breaks in V, slopes are the valve gains in m/V
    # P_s(x) = P_s (1 + supply_pressure_modulation * sin(x))
    supply_pressure_modulation: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            if f.name in ("valve", "supply_pressure_modulation"):
                continue
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise InvalidParameter(f.name, f"must be a positive finite number, got {value!r}")
        if not isinstance(self.valve, DeadZoneSpec):
            raise InvalidParameter("valve", "valve must be a dead-zone specification")
        if not 0 <= self.supply_pressure_modulation < 1:
            raise InvalidParameter(
                "supply_pressure_modulation", f"must lie in [0, 1), got {self.supply_pressure_modulation!r}"
            )


DEFAULT_VALVE = DeadZoneSpec(delta_l=-1.1, delta_r=0.9, m_l=1.8e-6, m_r=2.2e-6)

DEFAULT_PARAMS = HydraulicParams(
    supply_pressure=7e6,
    density=850.0,
    discharge_coefficient=0.6,
    orifice_gradient=2.5e-2,
    piston_area=3e-4,
    leakage_coefficient=2e-12,
    bulk_modulus=700e6,
    total_volume=6e-5,
    total_mass=250.0,
    damping=100.0,
    spring_rate=75.0,
    valve=DEFAULT_VALVE,
)
