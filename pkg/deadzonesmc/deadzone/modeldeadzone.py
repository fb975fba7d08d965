from dataclasses import dataclass
import math
import dataclasses_json

from ..common.modelcommon import InvalidParameter


def _check_finite(obj):
    for name, value in obj.__dict__.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
            raise InvalidParameter(name, f"must be a finite number, got {value!r}")


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class DeadZoneSpec(object):
    """Non-symmetric dead-zone: zero output on (delta_l, delta_r), slopes m_l and m_r outside.

    For the valve of the hydraulic case the slopes are the valve gains in m/V.
    """

    delta_l: float
    delta_r: float
    m_l: float
    m_r: float

    def __post_init__(self):
        _check_finite(self)
        if not self.delta_l < 0:
            raise InvalidParameter("delta_l", f"left break must be negative, got {self.delta_l!r}")
        if not self.delta_r > 0:
            raise InvalidParameter("delta_r", f"right break must be positive, got {self.delta_r!r}")
        if not self.m_l > 0:
            raise InvalidParameter("m_l", f"left slope must be positive, got {self.m_l!r}")
        if not self.m_r > 0:
            raise InvalidParameter("m_r", f"right slope must be positive, got {self.m_r!r}")


@dataclasses_json.dataclass_json(letter_case=dataclasses_json.LetterCase.CAMEL)
@dataclass(frozen=True)
class DeadZoneBounds(object):
    """Known bounds on the unknown dead-zone parameters."""

    delta_l_min: float
    delta_l_max: float
    delta_r_min: float
    delta_r_max: float
    m_l_min: float
    m_l_max: float
    m_r_min: float
    m_r_max: float

    def __post_init__(self):
        _check_finite(self)
        if not self.delta_l_min <= self.delta_l_max < 0:
            raise InvalidParameter("delta_l_min", "requires delta_l_min <= delta_l_max < 0")
        if not 0 < self.delta_r_min <= self.delta_r_max:
            raise InvalidParameter("delta_r_min", "requires 0 < delta_r_min <= delta_r_max")
        if not 0 < self.m_l_min <= self.m_l_max:
            raise InvalidParameter("m_l_min", "requires 0 < m_l_min <= m_l_max")
        if not 0 < self.m_r_min <= self.m_r_max:
            raise InvalidParameter("m_r_min", "requires 0 < m_r_min <= m_r_max")

    @property
    def m_min(self) -> float:
        return min(self.m_l_min, self.m_r_min)

    @property
    def m_max(self) -> float:
        return max(self.m_l_max, self.m_r_max)

    def contains(self, spec: DeadZoneSpec) -> bool:
        return (
            self.delta_l_min <= spec.delta_l <= self.delta_l_max
            and self.delta_r_min <= spec.delta_r <= self.delta_r_max
            and self.m_l_min <= spec.m_l <= self.m_l_max
            and self.m_r_min <= spec.m_r <= self.m_r_max
        )

