import argparse
import dataclasses
import logging
import os
import sys

from ..common import utils
from ..common.modelcommon import ConfigError
from ..controllers.sliding import SurfaceSpec, convergence_region
from . import batch
from .scenario import load_scenario, parse_value

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUN_FAULT = 1
EXIT_CONFIG_ERROR = 2

OUTPUT_DIR_ENV = "DEADZONESMC_OUTPUT_DIR"


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="scenario JSON file or preset name (case1, case2)")
    common.add_argument("--out", help=f"output directory (default ${OUTPUT_DIR_ENV} or ./runs)")
    common.add_argument("--duration", type=float, help="override the scenario duration in seconds")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="deadzonesmc", description="Adaptive fuzzy sliding mode simulations")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="simulate one scenario")
    compare = sub.add_parser("compare", parents=[common], help="adaptive run against the same run with gamma=0")
    compare.add_argument("--workers", type=int, default=2)
    sweep = sub.add_parser("sweep", parents=[common], help="one run per value of a scenario key")
    sweep.add_argument("--param", required=True, help="dotted scenario key, e.g. controller.phi")
    sweep.add_argument("--values", required=True, help="comma separated values")
    sweep.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    return parser


def _print_metrics(prefix: str, result: batch.RunResult):
    m = result.metrics
    if m is None:
        return
    print(f"{prefix}rms_error = {m.post_transient_rms_error:.6g}")
    print(f"{prefix}max_abs_error = {m.max_abs_error_post_transient:.6g}")
    print(f"{prefix}chattering_index = {m.chattering_index:.6g}")
    print(f"{prefix}compensation_rms = {m.compensation_rms:.6g}")
    print(f"{prefix}cavitation_faults = {m.cavitation_faults}")


def _run(scenario, out: str) -> int:
    (result,) = batch.run_batch([scenario])
    directory = batch.write_result(result, out)
    _print_metrics("", result)
    print(f"output = {directory}")
    if not result.ok:
        print(f"ERROR: {result.error}")
        return EXIT_RUN_FAULT
    return EXIT_OK


def _compare(scenario, out: str, workers: int) -> int:
    result = batch.run_compare(scenario, workers)
    for run in (result.afsmc, result.smc):
        batch.write_result(run, out)
    verdict = {"rms_ratio": result.rms_ratio}
    for label, run in (("afsmc", result.afsmc), ("smc", result.smc)):
        if run.metrics is not None:
            for key, value in dataclasses.asdict(run.metrics).items():
                verdict[f"{label}_{key}"] = value
    if result.ok:
        verdict["afsmc_rms < smc_rms"] = str(result.afsmc_better).lower()
    utils.save_key_values(verdict, os.path.join(out, f"{scenario.name}-comparison.txt"))

    _print_metrics("afsmc_", result.afsmc)
    _print_metrics("smc_", result.smc)
    if not result.ok:
        for run in (result.afsmc, result.smc):
            if not run.ok:
                print(f"ERROR: {run.scenario.name}: {run.error}")
        return EXIT_RUN_FAULT
    print(f"rms_ratio = {result.rms_ratio:.6g}")
    print(f"afsmc_rms < smc_rms: {str(result.afsmc_better).lower()}")
    return EXIT_OK


def _sweep(scenario, out: str, param: str, values, workers: int) -> int:
    results = batch.run_sweep(scenario, param, values, workers)
    rows = []
    status = EXIT_OK
    for value, result in zip(values, results):
        batch.write_result(result, out)
        c = result.scenario.controller
        bounds = convergence_region(SurfaceSpec.build(3, c.bandwidth), c.phi)
        row = {"value": value, "ok": result.ok}
        if result.metrics is not None:
            row.update(
                rms_error=result.metrics.post_transient_rms_error,
                max_abs_error=result.metrics.max_abs_error_post_transient,
                chattering_index=result.metrics.chattering_index,
                compensation_rms=result.metrics.compensation_rms,
                bound_violations=result.metrics.bound_violations,
            )
        row["region_bounds"] = bounds
        rows.append(row)
        print(", ".join(f"{k}={v}" for k, v in row.items()))
        if not result.ok:
            print(f"ERROR: {result.scenario.name}: {result.error}")
            status = EXIT_RUN_FAULT
    utils.save_json(rows, os.path.join(out, f"{scenario.name}-sweep.json"))
    return status


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s %(name)s: %(message)s"
    )
    out = args.out or os.environ.get(OUTPUT_DIR_ENV) or "runs"
    try:
        scenario = load_scenario(args.scenario)
        if args.duration is not None:
            scenario = dataclasses.replace(scenario, duration=args.duration)
        if args.command == "sweep":
            values = [parse_value(v.strip()) for v in args.values.split(",") if v.strip()]
            if not values:
                raise ConfigError("--values", "at least one value is required")
            # Surfaces a bad key or value before any run starts
            for value in values:
                batch.with_override(scenario, args.param, value)
        os.makedirs(out, exist_ok=True)
    except ConfigError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except OSError as e:
        print(f"ERROR: cannot use output directory {out}: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ValueError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    if args.command == "run":
        return _run(scenario, out)
    if args.command == "compare":
        return _compare(scenario, out, args.workers)
    return _sweep(scenario, out, args.param, values, args.workers)


if __name__ == "__main__":
    sys.exit(main())
