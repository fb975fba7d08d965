"""Dead-zone input nonlinearity and its slope/disturbance decomposition.

    apply(u) == slope(u) * (u - disturbance(u))

holds exactly: on the linear branches the disturbance is the break point, inside the band it is `u` itself.
"""
from .modeldeadzone import DeadZoneSpec, DeadZoneBounds


def apply(spec: DeadZoneSpec, u: float) -> float:
    if u <= spec.delta_l:
        return spec.m_l * (u - spec.delta_l)
    if u >= spec.delta_r:
        return spec.m_r * (u - spec.delta_r)
    return 0.0


def slope(spec: DeadZoneSpec, u: float) -> float:
    # u == 0 takes the left slope
    return spec.m_l if u <= 0 else spec.m_r


def disturbance(spec: DeadZoneSpec, u: float) -> float:
    if u <= spec.delta_l:
        return spec.delta_l
    if u >= spec.delta_r:
        return spec.delta_r
    return u


def disturbance_bound(bounds: DeadZoneBounds) -> float:
    return max(-bounds.delta_l_min, bounds.delta_r_max)
