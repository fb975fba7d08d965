"""Sliding surface s = (d/dt + lambda)^(n-1) x~ and the switching functions used across it."""
from typing import List, Sequence, Tuple
from dataclasses import dataclass, field
import math

from scipy.special import comb

from ..common.modelcommon import SwitchingKind, InvalidOrderError, InvalidParameter, DimensionMismatch


def binomial_coeffs(n: int) -> List[int]:
    """Row n-1 of Pascal's triangle, [C(n-1, 0), ..., C(n-1, n-1)]."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidOrderError("n", f"system order must be an integer >= 1, got {n!r}")
    return [int(comb(n - 1, i, exact=True)) for i in range(n)]


@dataclass(frozen=True)
class SurfaceSpec(object):
    """Coefficients are indexed by derivative order: c[i] multiplies the i-th derivative of the tracking error."""

    n: int
    bandwidth: float
    c: Tuple[float, ...] = field(init=False, repr=False)
    c_bar: Tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        binomials = binomial_coeffs(self.n)
        if not (isinstance(self.bandwidth, (int, float)) and math.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise InvalidParameter("bandwidth", f"surface bandwidth must be positive, got {self.bandwidth!r}")
        lam = float(self.bandwidth)
        c = tuple(binomials[i] * lam ** (self.n - 1 - i) for i in range(self.n))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c_bar", (0.0,) + c[:-1])

    @classmethod
    def build(cls, n: int, bandwidth: float) -> "SurfaceSpec":
        return cls(n=n, bandwidth=bandwidth)


@dataclass(frozen=True)
class SwitchingFn(object):
    kind: SwitchingKind = SwitchingKind.SATURATION
    phi: float = 1.0

    def __post_init__(self):
        if not isinstance(self.kind, SwitchingKind):
            object.__setattr__(self, "kind", SwitchingKind.from_string(str(self.kind)))
        if not (math.isfinite(self.phi) and self.phi > 0):
            raise InvalidParameter("phi", f"boundary layer thickness must be positive, got {self.phi!r}")

    @property
    def smooth(self) -> bool:
        return self.kind > SwitchingKind.SIGN


def _check_dimension(spec: SurfaceSpec, err: Sequence[float]):
    if len(err) != spec.n:
        raise DimensionMismatch(f"error vector has {len(err)} entries, surface order is {spec.n}")


def sliding_variable(spec: SurfaceSpec, err: Sequence[float]) -> float:
    _check_dimension(spec, err)
    return sum(ci * ei for ci, ei in zip(spec.c, err))


def sdot_feedback(spec: SurfaceSpec, err: Sequence[float]) -> float:
    """The c_bar' x~ part of ds/dt, so that ds/dt = x~^(n) + sdot_feedback(err)."""
    _check_dimension(spec, err)
    return sum(ci * ei for ci, ei in zip(spec.c_bar, err))


def switch(fn: SwitchingFn, s: float) -> float:
    if fn.kind is SwitchingKind.SIGN:
        if s > 0:
            return 1.0
        if s < 0:
            return -1.0
        return 0.0
    if fn.kind is SwitchingKind.SATURATION:
        return max(-1.0, min(1.0, s / fn.phi))
    return math.tanh(s / fn.phi)


def zeta_sequence(n: int) -> List[float]:
    zeta = [1.0]
    for i in range(1, n):
        zeta.append(1.0 + sum(comb(i, j, exact=True) * zeta[j] for j in range(i)))
    return zeta[:n]


def convergence_region(spec: SurfaceSpec, phi: float) -> List[float]:
    """Per-derivative bounds |x~^(i)| <= zeta_i * lambda^(i-n+1) * phi reached with a boundary layer of width phi."""
    if not phi > 0:
        raise InvalidParameter("phi", f"boundary layer thickness must be positive, got {phi!r}")
    zeta = zeta_sequence(spec.n)
    lam = float(spec.bandwidth)
    return [zeta[i] * lam ** (i - spec.n + 1) * phi for i in range(spec.n)]
