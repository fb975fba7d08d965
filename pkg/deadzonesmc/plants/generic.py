from typing import Callable, Optional, Tuple

from ..common.modelcommon import StateLike
from ..deadzone import deadzone
from ..deadzone.modeldeadzone import DeadZoneSpec


class GenericPlant(object):
    """Chain of integrators x^(n) = f(x) + b(x) Y(u); with no dead-zone Y(u) = u."""

    def __init__(
        self,
        f: Callable[[StateLike], float],
        b: Callable[[StateLike], float],
        dead_zone: Optional[DeadZoneSpec] = None,
    ):
        self.f = f
        self.b = b
        self.dead_zone = dead_zone

    def actuate(self, u: float) -> float:
        if self.dead_zone is None:
            return u
        return deadzone.apply(self.dead_zone, u)

    def true_gain(self, state: StateLike, u: float) -> float:
        m = 1.0 if self.dead_zone is None else deadzone.slope(self.dead_zone, u)
        return self.b(state) * m

    def derivative(self, state: StateLike, u: float) -> Tuple[Tuple[float, ...], bool]:
        return tuple(state[1:]) + (self.f(state) + self.b(state) * self.actuate(u),), False


def generic_plant(
    f: Callable[[StateLike], float], b: Callable[[StateLike], float], dz: Optional[DeadZoneSpec] = None
) -> GenericPlant:
    return GenericPlant(f, b, dz)
