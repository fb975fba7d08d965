"""Classical fourth-order Runge-Kutta over float tuples with the input held constant across the step."""
from typing import Callable, Tuple

Derivative = Callable[[Tuple[float, ...], float], Tuple[Tuple[float, ...], bool]]


def rk4_step(f: Derivative, state: Tuple[float, ...], u: float, h: float) -> Tuple[Tuple[float, ...], bool]:
    """One step of size h; the flag is set if any stage raised a plant fault."""
    k1, f1 = f(state, u)
    k2, f2 = f(tuple(x + 0.5 * h * k for x, k in zip(state, k1)), u)
    k3, f3 = f(tuple(x + 0.5 * h * k for x, k in zip(state, k2)), u)
    k4, f4 = f(tuple(x + h * k for x, k in zip(state, k3)), u)
    nxt = tuple(x + h / 6.0 * (a + 2.0 * b + 2.0 * c + d) for x, a, b, c, d in zip(state, k1, k2, k3, k4))
    return nxt, f1 or f2 or f3 or f4


def hold(f: Derivative, state: Tuple[float, ...], u: float, h: float, steps: int) -> Tuple[Tuple[float, ...], bool]:
    """Advance `steps` RK4 steps with u held (zero-order hold between controller ticks)."""
    fault = False
    for _ in range(steps):
        state, flagged = rk4_step(f, state, u, h)
        fault = fault or flagged
    return state, fault
