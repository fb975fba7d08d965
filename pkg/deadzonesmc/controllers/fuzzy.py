"""Zero-order TSK estimator of the dead-zone disturbance d(u).

Rules read "if u_hat is U_r then d_hat = D_r". Interior sets are triangles whose feet sit on the neighbouring
centers, the two outer sets are shoulders that stay at full membership beyond the outermost centers, so the
normalized firing vector is a partition of unity everywhere and the estimate is piecewise linear in u_hat.
"""
from typing import Optional, Sequence, Tuple
from dataclasses import dataclass, field, replace
import math

import numpy as np
import skfuzzy as fuzz

from ..common.utils import OrderedEnum
from ..common.modelcommon import InvalidParameter, DegeneratePartitionError

DEFAULT_CENTERS = (-0.5, -0.1, -0.05, 0.0, 0.05, 0.1, 0.5)


class MembershipShape(OrderedEnum):
    TRIANGULAR = "TRIANGULAR"
    TRAPEZOIDAL_SHOULDER = "TRAPEZOIDAL_SHOULDER"


@dataclass(frozen=True)
class MembershipFamily(object):
    centers: Tuple[float, ...]
    _universe: np.ndarray = field(init=False, repr=False, compare=False)
    _curves: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        centers = tuple(float(c) for c in self.centers)
        if not centers:
            raise InvalidParameter("centers", "at least one membership center is required")
        if not all(math.isfinite(c) for c in centers):
            raise InvalidParameter("centers", f"centers must be finite, got {centers!r}")
        if any(b <= a for a, b in zip(centers, centers[1:])):
            raise InvalidParameter("centers", f"centers must be strictly increasing, got {centers!r}")
        object.__setattr__(self, "centers", centers)
        # Every curve is linear between neighbouring centers, so the centers are a sufficient universe
        universe = np.asarray(centers)
        object.__setattr__(self, "_universe", universe)
        object.__setattr__(self, "_curves", _curves(centers, universe))

    def __len__(self):
        return len(self.centers)

    @property
    def shapes(self) -> Tuple[MembershipShape, ...]:
        n = len(self.centers)
        return tuple(
            MembershipShape.TRAPEZOIDAL_SHOULDER if r in (0, n - 1) else MembershipShape.TRIANGULAR for r in range(n)
        )

    @property
    def interval(self) -> Tuple[float, float]:
        return self.centers[0], self.centers[-1]


def firing_strengths(family: MembershipFamily, u_hat: float) -> np.ndarray:
    """Raw membership degrees w_r(u_hat) in [0, 1]; shoulders extrapolate flat past the outer centers."""
    return np.array(
        [fuzz.interp_membership(family._universe, curve, u_hat, zero_outside_x=False) for curve in family._curves]
    )


def firing_weights(family: MembershipFamily, u_hat: float) -> np.ndarray:
    """Normalized firing vector Psi(u_hat), psi_r = w_r / sum(w)."""
    w = firing_strengths(family, u_hat)
    total = w.sum()
    if not total > 0:
        raise DegeneratePartitionError(f"no rule fires at u_hat={u_hat!r}")
    return w / total


def _curves(centers: Tuple[float, ...], universe: np.ndarray) -> np.ndarray:
    lo = min(float(universe.min()), centers[0])
    hi = max(float(universe.max()), centers[-1])
    if len(centers) == 1:
        return np.ones((1, universe.size))
    last = len(centers) - 1
    rows = []
    for r in range(last + 1):
        if 0 < r < last:
            rows.append(fuzz.trimf(universe, [centers[r - 1], centers[r], centers[r + 1]]))
        elif r == 0:
            rows.append(fuzz.trapmf(universe, [lo, lo, centers[0], centers[1]]))
        else:
            rows.append(fuzz.trapmf(universe, [centers[-2], centers[-1], hi, hi]))
    return np.vstack(rows)


def sample(family: MembershipFamily, universe: Sequence[float]) -> np.ndarray:
    """Membership curves of every rule over `universe`, one row per rule."""
    return _curves(family.centers, np.asarray(universe, dtype=float))


@dataclass(frozen=True)
class FuzzyCompensator(object):
    family: MembershipFamily
    d_hat_vec: np.ndarray = field(compare=False)
    gamma: float = 1.2
    faults: int = 0

    def __post_init__(self):
        d_hat_vec = np.array(self.d_hat_vec, dtype=float)
        if d_hat_vec.shape != (len(self.family),):
            raise InvalidParameter(
                "d_hat_vec", f"expected {len(self.family)} adjustable outputs, got shape {d_hat_vec.shape}"
            )
        if not np.all(np.isfinite(d_hat_vec)):
            raise InvalidParameter("d_hat_vec", "adjustable outputs must be finite")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise InvalidParameter("gamma", f"adaptation rate must be >= 0, got {self.gamma!r}")
        d_hat_vec.setflags(write=False)
        object.__setattr__(self, "d_hat_vec", d_hat_vec)

    @classmethod
    def initial(
        cls, centers: Sequence[float] = DEFAULT_CENTERS, gamma: float = 1.2, d_hat_vec: Optional[Sequence[float]] = None
    ) -> "FuzzyCompensator":
        family = MembershipFamily(tuple(centers))
        if d_hat_vec is None:
            d_hat_vec = np.zeros(len(family))
        return cls(family=family, d_hat_vec=d_hat_vec, gamma=gamma)


def estimate(comp: FuzzyCompensator, u_hat: float, psi: Optional[np.ndarray] = None) -> float:
    if psi is None:
        psi = firing_weights(comp.family, u_hat)
    return float(comp.d_hat_vec @ psi)


def adapt(
    comp: FuzzyCompensator, s: float, u_hat: float, dt: float, psi: Optional[np.ndarray] = None
) -> FuzzyCompensator:
    """One explicit Euler step of dD/dt = -gamma * s * Psi(u_hat)."""
    if not dt > 0:
        raise InvalidParameter("dt", f"adaptation step must be positive, got {dt!r}")
    if not (math.isfinite(s) and math.isfinite(u_hat)):
        return replace(comp, faults=comp.faults + 1)
    if comp.gamma == 0 or s == 0:
        return comp
    if psi is None:
        psi = firing_weights(comp.family, u_hat)
    return replace(comp, d_hat_vec=comp.d_hat_vec - (comp.gamma * s * dt) * psi)
