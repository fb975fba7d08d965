from typing import Callable, NamedTuple, Optional, Tuple
from dataclasses import dataclass
import math

import numpy as np

from ..common.modelcommon import InvalidParameter, StateLike
from .sliding import SurfaceSpec, SwitchingFn

StateFunction = Callable[[StateLike], float]


def _zero(x: StateLike) -> float:
    return 0.0


class LinearDrift(object):
    """f_hat(x) = -a . x"""

    def __init__(self, a: Tuple[float, ...]):
        self.a = tuple(float(v) for v in a)

    def __call__(self, x: StateLike) -> float:
        return -sum(ai * xi for ai, xi in zip(self.a, x))


class ConstantBound(object):
    def __init__(self, value: float):
        if not (math.isfinite(value) and value >= 0):
            raise InvalidParameter("drift_bound", f"drift bound must be finite and >= 0, got {value!r}")
        self.value = float(value)

    def __call__(self, x: StateLike) -> float:
        return self.value


@dataclass(frozen=True)
class ModelEstimate(object):
    """What the controller knows about x^(n) = f(x) + b(x) m(u) [u - d(u)].

    f_hat: nominal drift; F: bound on |f_hat - f|; bm_hat: gain estimate; beta: beta^-1 <= bm_hat / bm <= beta.
    """

    f_hat: StateFunction
    bm_hat: float
    F: StateFunction = _zero
    beta: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.bm_hat) and self.bm_hat > 0):
            raise InvalidParameter("bm_hat", f"gain estimate must be positive, got {self.bm_hat!r}")
        if not (math.isfinite(self.beta) and self.beta >= 1):
            raise InvalidParameter("beta", f"gain uncertainty ratio must be >= 1, got {self.beta!r}")

    @classmethod
    def from_bounds(
        cls,
        f_hat: StateFunction,
        b_min: float,
        b_max: float,
        m_min: float,
        m_max: float,
        F: StateFunction = _zero,
        bm_hat: Optional[float] = None,
    ) -> "ModelEstimate":
        if not (0 < b_min <= b_max and 0 < m_min <= m_max):
            raise InvalidParameter("b_min", "requires 0 < b_min <= b_max and 0 < m_min <= m_max")
        low, high = b_min * m_min, b_max * m_max
        if bm_hat is None:
            bm_hat = math.sqrt(high * low)
            beta = math.sqrt(high / low)
        else:
            beta = max(high / bm_hat, bm_hat / low, 1.0)
        return cls(f_hat=f_hat, bm_hat=bm_hat, F=F, beta=beta)


@dataclass(frozen=True)
class ControllerConfig(object):
    model: ModelEstimate
    surface: SurfaceSpec
    switching: SwitchingFn
    eta: float
    delta_bound: float
    compensator_on: bool = True
    # Replaces the per-tick gain with a constant when set
    frozen_gain: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.eta) and self.eta > 0):
            raise InvalidParameter("eta", f"reaching margin must be positive, got {self.eta!r}")
        if not (math.isfinite(self.delta_bound) and self.delta_bound >= 0):
            raise InvalidParameter("delta_bound", f"dead-zone bound must be >= 0, got {self.delta_bound!r}")
        if self.frozen_gain is not None and not (math.isfinite(self.frozen_gain) and self.frozen_gain > 0):
            raise InvalidParameter("frozen_gain", f"frozen gain must be positive, got {self.frozen_gain!r}")

    @property
    def order(self) -> int:
        return self.surface.n


class ControlDiagnostics(NamedTuple):
    s: float
    u_hat: float
    d_hat: float
    K: float
    err: Tuple[float, ...]
    psi: Optional[np.ndarray] = None
    adaptation_rejected: bool = False
