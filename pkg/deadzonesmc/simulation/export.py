from typing import Mapping, Sequence
import dataclasses
import logging
import os

import numpy as np

from ..common import utils
from ..controllers import fuzzy
from ..controllers.fuzzy import MembershipFamily
from .modelsimulation import Metrics, MonitorReport, SimTrace

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("t", "x", "xd", "err", "s", "u", "upsilon", "dhat", "d", "K", "V", "fault")


def _write_table(filename: str, header: Sequence[str], data: np.ndarray, fmt):
    with utils.atomic_write(filename) as f:
        np.savetxt(f, data.reshape(-1, len(header)), delimiter=",", header=",".join(header), comments="", fmt=fmt)


def write_trace(trace: SimTrace, filename: str):
    data = np.column_stack(
        [
            trace.t,
            trace.x,
            trace.xd,
            trace.err[:, 0],
            trace.s,
            trace.u,
            trace.upsilon,
            trace.d_hat,
            trace.d,
            trace.K,
            trace.V,
            trace.fault,
        ]
    )
    _write_table(filename, TRACE_COLUMNS, data, ["%.10g"] * (len(TRACE_COLUMNS) - 1) + ["%d"])


def write_adaptation(trace: SimTrace, filename: str):
    """Adjustable outputs and the true gain per sample, enough to recompute the surrogate offline."""
    rules = trace.d_hat_vec.shape[1]
    header = ["t", "true_gain"] + [f"dhat{r}" for r in range(rules)]
    data = np.column_stack([trace.t, trace.true_gain, trace.d_hat_vec])
    _write_table(filename, header, data, "%.10g")


def write_memberships(family: MembershipFamily, filename: str, lo: float = -1.0, hi: float = 1.0, points: int = 401):
    universe = np.linspace(lo, hi, points)
    curves = fuzzy.sample(family, universe)
    header = ["u"] + [f"mu{r}" for r in range(len(family))]
    _write_table(filename, header, np.column_stack([universe, curves.T]), "%.10g")


def write_metrics(metrics: Metrics, filename: str):
    utils.save_key_values(dataclasses.asdict(metrics), filename)


def write_monitors(report: MonitorReport, filename: str):
    values = dataclasses.asdict(report)
    if values["boundary_layer_occupancy"] is None:
        values["boundary_layer_occupancy"] = "n/a"
    utils.save_key_values(values, filename)


def write_key_values(values: Mapping[str, object], filename: str):
    utils.save_key_values(values, filename)


def run_directory(root: str, name: str) -> str:
    directory = os.path.join(root, name)
    os.makedirs(directory, exist_ok=True)
    return directory
