"""Independent scenarios in parallel: each run owns its plant, controller and compensator, nothing is shared."""
from typing import Iterable, List, NamedTuple, Optional, Sequence
from concurrent.futures import ProcessPoolExecutor
import dataclasses
import logging
import math
import os

from ..common.modelcommon import SimulationDiverged
from . import engine, export
from .metrics import compute_metrics
from .modelsimulation import Metrics, MonitorReport, Scenario, SimTrace
from .monitors import monitors
from .scenario import save_scenario, with_override

logger = logging.getLogger(__name__)


class RunResult(NamedTuple):
    scenario: Scenario
    trace: Optional[SimTrace]
    metrics: Optional[Metrics]
    report: Optional[MonitorReport]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class CompareResult(NamedTuple):
    afsmc: RunResult
    smc: RunResult
    rms_ratio: float

    @property
    def ok(self) -> bool:
        return self.afsmc.ok and self.smc.ok

    @property
    def afsmc_better(self) -> bool:
        return self.afsmc.metrics.post_transient_rms_error < self.smc.metrics.post_transient_rms_error


def execute(scenario: Scenario) -> RunResult:
    try:
        trace, metrics = engine.run(scenario)
    except SimulationDiverged as e:
        # The partial trace still goes to disk
        trace = e.trace
        metrics = compute_metrics(trace, scenario.transient_fraction) if trace is not None else None
        report = monitors(trace, scenario) if trace is not None else None
        return RunResult(scenario, trace, metrics, report, str(e))
    return RunResult(scenario, trace, metrics, monitors(trace, scenario))


def run_batch(scenarios: Iterable[Scenario], workers: int = 1) -> List[RunResult]:
    scenarios = list(scenarios)
    if workers <= 1 or len(scenarios) <= 1:
        return [execute(s) for s in scenarios]
    with ProcessPoolExecutor(max_workers=min(workers, len(scenarios))) as pool:
        return list(pool.map(execute, scenarios))


def smc_counterpart(scenario: Scenario) -> Scenario:
    return dataclasses.replace(
        scenario,
        name=f"{scenario.name}-smc",
        compensator=dataclasses.replace(scenario.compensator, gamma=0.0),
    )


def rms_ratio(afsmc: Metrics, smc: Metrics) -> float:
    a, b = afsmc.post_transient_rms_error, smc.post_transient_rms_error
    if a == b:
        return 1.0
    if b == 0:
        return math.inf
    return a / b


def run_compare(scenario: Scenario, workers: int = 1) -> CompareResult:
    """The scenario as configured next to the same scenario with adaptation switched off."""
    afsmc, smc = run_batch([scenario, smc_counterpart(scenario)], workers)
    ratio = rms_ratio(afsmc.metrics, smc.metrics) if afsmc.ok and smc.ok else math.nan
    return CompareResult(afsmc, smc, ratio)


def sweep_scenarios(scenario: Scenario, key: str, values: Sequence) -> List[Scenario]:
    scenarios = []
    for value in values:
        swept = with_override(scenario, key, value)
        scenarios.append(dataclasses.replace(swept, name=f"{scenario.name}-{key}={value}"))
    return scenarios


def run_sweep(scenario: Scenario, key: str, values: Sequence, workers: int = 1) -> List[RunResult]:
    return run_batch(sweep_scenarios(scenario, key, values), workers)


def write_result(result: RunResult, root: str) -> str:
    directory = export.run_directory(root, result.scenario.name)
    save_scenario(result.scenario, os.path.join(directory, "scenario.json"))
    export.write_memberships(engine.build_compensator(result.scenario).family, os.path.join(directory, "memberships.csv"))
    if result.trace is not None:
        export.write_trace(result.trace, os.path.join(directory, "trace.csv"))
        export.write_adaptation(result.trace, os.path.join(directory, "adaptation.csv"))
    if result.metrics is not None:
        export.write_metrics(result.metrics, os.path.join(directory, "metrics.txt"))
    if result.report is not None:
        export.write_monitors(result.report, os.path.join(directory, "monitors.txt"))
    if result.error is not None:
        export.write_key_values({"error": result.error}, os.path.join(directory, "error.txt"))
    logger.debug(f"wrote {result.scenario.name} to {directory}")
    return directory
