from typing import Sequence
import enum

from .utils import OrderedEnum

StateLike = Sequence[float]


# Declared from discontinuous to smoothest
class SwitchingKind(OrderedEnum):
    SIGN = "SIGN"
    SATURATION = "SATURATION"
    HYPERBOLIC_TANGENT = "HYPERBOLIC_TANGENT"


class FaultFlag(enum.IntFlag):
    NONE = 0
    CAVITATION = 1
    ADAPTATION_REJECTED = 2


class DeadZoneSMCError(Exception):
    pass


class InvalidParameter(DeadZoneSMCError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class InvalidOrderError(InvalidParameter):
    pass


class ConfigError(DeadZoneSMCError, ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


class DimensionMismatch(DeadZoneSMCError, ValueError):
    pass


class DegeneratePartitionError(DeadZoneSMCError):
    pass


class ControllerFault(DeadZoneSMCError):
    pass


class CavitationError(DeadZoneSMCError):
    def __init__(self, radicand: float):
        super().__init__(f"negative radicand in the valve flow term: {radicand!r}")
        self.radicand = radicand


class SimulationDiverged(DeadZoneSMCError):
    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace
