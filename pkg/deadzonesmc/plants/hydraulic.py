"""Electro-hydraulic servo model

    x''' = -a' x + b(x, u) u - b(x, u) d(u)

where b(x, u) carries the valve slope m(u) and the orifice flow radical, and d(u) is the valve dead-zone term.
"""
from typing import Tuple
import math

from ..common.modelcommon import CavitationError, StateLike
from ..deadzone import deadzone
from .modelplant import HydraulicParams, PlantState


def a_coeffs(p: HydraulicParams) -> Tuple[float, float, float]:
    vm = p.total_volume * p.total_mass
    a0 = 4 * p.bulk_modulus * p.leakage_coefficient * p.spring_rate / vm
    a1 = (
        p.spring_rate / p.total_mass
        + 4 * p.bulk_modulus * p.piston_area ** 2 / vm
        + 4 * p.bulk_modulus * p.leakage_coefficient * p.damping / vm
    )
    a2 = p.damping / p.total_mass + 4 * p.bulk_modulus * p.leakage_coefficient / p.total_volume
    return a0, a1, a2


def flow_gain(p: HydraulicParams) -> float:
    """The part of b(x, u) in front of m * sqrt(.): 4 beta_e A_p C_d w / (V_t M_t)."""
    return 4 * p.bulk_modulus * p.piston_area / (p.total_volume * p.total_mass) * p.discharge_coefficient * p.orifice_gradient


def supply_pressure_at(p: HydraulicParams, x: float) -> float:
    if p.supply_pressure_modulation:
        return p.supply_pressure * (1.0 + p.supply_pressure_modulation * math.sin(x))
    return p.supply_pressure


def load_pressure(p: HydraulicParams, state: StateLike) -> float:
    x, x_dot, x_ddot = state
    return (p.total_mass * x_ddot + p.damping * x_dot + p.spring_rate * x) / p.piston_area


def _sgn(u: float) -> float:
    if u > 0:
        return 1.0
    if u < 0:
        return -1.0
    return 0.0


def radicand(p: HydraulicParams, state: StateLike, u: float) -> float:
    return (supply_pressure_at(p, state[0]) - _sgn(u) * load_pressure(p, state)) / p.density


def input_gain(p: HydraulicParams, state: StateLike, u: float) -> float:
    r = radicand(p, state, u)
    if r < 0:
        raise CavitationError(r)
    return flow_gain(p) * deadzone.slope(p.valve, u) * math.sqrt(r)


def derivative(p: HydraulicParams, state: StateLike, u: float) -> Tuple[PlantState, bool]:
    """State derivative; the radicand is clamped at zero and the second element flags the clamp."""
    r = radicand(p, state, u)
    clamped = r < 0
    if clamped:
        r = 0.0
    a0, a1, a2 = a_coeffs(p)
    x, x_dot, x_ddot = state
    b = flow_gain(p) * deadzone.slope(p.valve, u) * math.sqrt(r)
    jerk = -(a0 * x + a1 * x_dot + a2 * x_ddot) + b * u - b * deadzone.disturbance(p.valve, u)
    return PlantState(x_dot, x_ddot, jerk), clamped


class HydraulicPlant(object):
    """Simulation truth model with the parameter arithmetic hoisted out of the integration loop."""

    def __init__(self, params: HydraulicParams):
        self.params = params
        self.dead_zone = params.valve
        self.a = a_coeffs(params)
        self._kq = flow_gain(params)
        self._ps = params.supply_pressure
        self._eps = params.supply_pressure_modulation
        self._inv_rho = 1.0 / params.density
        self._m = params.total_mass / params.piston_area
        self._b = params.damping / params.piston_area
        self._k = params.spring_rate / params.piston_area

    def _radicand(self, state: StateLike, u: float) -> float:
        x, x_dot, x_ddot = state
        ps = self._ps * (1.0 + self._eps * math.sin(x)) if self._eps else self._ps
        if u > 0:
            ps -= self._m * x_ddot + self._b * x_dot + self._k * x
        elif u < 0:
            ps += self._m * x_ddot + self._b * x_dot + self._k * x
        return ps * self._inv_rho

    def true_gain(self, state: StateLike, u: float) -> float:
        r = self._radicand(state, u)
        return self._kq * deadzone.slope(self.dead_zone, u) * math.sqrt(max(r, 0.0))

    def derivative(self, state: StateLike, u: float) -> Tuple[Tuple[float, float, float], bool]:
        x, x_dot, x_ddot = state
        a0, a1, a2 = self.a
        drift = -(a0 * x + a1 * x_dot + a2 * x_ddot)
        dz = self.dead_zone
        if dz.delta_l < u < dz.delta_r:
            # u - d(u) vanishes inside the band
            clamped = self._radicand(state, u) < 0
            return (x_dot, x_ddot, drift), clamped
        r = self._radicand(state, u)
        clamped = r < 0
        b = self._kq * deadzone.slope(dz, u) * math.sqrt(0.0 if clamped else r)
        return (x_dot, x_ddot, drift + b * (u - deadzone.disturbance(dz, u))), clamped
