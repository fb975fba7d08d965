from typing import Tuple
import math

from .modelsimulation import ReferenceSpec


def reference(spec: ReferenceSpec, t: float, n: int) -> Tuple[float, ...]:
    """(x_d, x_d', ..., x_d^(n)) for x_d = A sin(w t).

    The k-th derivative is A w^k sin(w t + k pi / 2); the quarter-turn phases are taken exactly.
    """
    a, w = spec.amplitude, spec.frequency
    sn, cs = math.sin(w * t), math.cos(w * t)
    cycle = (sn, cs, -sn, -cs)
    return tuple(a * w ** k * cycle[k % 4] for k in range(n + 1))
