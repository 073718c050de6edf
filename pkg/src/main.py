"""
Main entry point - command-line driver for the k-sample homogeneity test.

    khomog test data.csv --kernel gmd --method bootstrap --bootstrap-B 999 --seed 1
    khomog subsample-test data.csv --kernel gmd --subsample-n 30 --subsample-L 20 --adaptive
    khomog subsample-test data.csv --kernel spearman --grid --format csv
    khomog simulate --config design.toml --format csv

Exit codes: 0 ran (whatever the decision), 2 input error, 3 computational
refusal, 4 degenerate result.
"""

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Optional, Sequence, Union

from .cli import emit_report, ingest_csv, load_experiment_design
from .config import constants, settings
from .errors import (
    CalibrationError,
    ComplexityGuardError,
    DegenerateVarianceError,
    HomogeneityError,
    InputError,
)
from .kernels import kernel_by_name
from .models import BootstrapResult, Dataset, SubsampleResult, TestResult
from .services.estimation import estimate_groups
from .services.resampling import (
    BootstrapConfig,
    SubsampleConfig,
    ResamplingGrid,
    adaptive_n_tilde,
    bootstrap_from_estimates,
    resampling_grid,
    run_subsample_test,
)
from .services.simulation import ExperimentResult, run_level_experiment, run_power_experiment
from .services.testing import statistic_from_estimates, validate_alpha
from .stat_types import Command, ExitCode, KernelName, ReportFormat, TestMethod
from .utils import fresh_seed, get_logger, set_level, setup_logger, validate_seed

logger = get_logger(__name__)

Result = Union[TestResult, BootstrapResult, SubsampleResult, ExperimentResult, ResamplingGrid]


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per Command"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit seed (default: KHOMOG_SEED or fresh entropy)")
    common.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.JSON.value)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: KHOMOG_THREADS)")
    common.add_argument("--output", type=Path, default=None, help="write the report here instead of stdout")
    common.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    testing = argparse.ArgumentParser(add_help=False)
    testing.add_argument("input", type=Path, help="CSV file with header group,v1[,v2]")
    testing.add_argument("--kernel", choices=[k.value for k in KernelName], default=KernelName.GMD.value)
    testing.add_argument("--alpha", type=float, default=constants.DEFAULT_ALPHA)
    testing.add_argument("--method", choices=[m.value for m in TestMethod], default=TestMethod.ASYMPTOTIC.value)
    testing.add_argument("--bootstrap-B", type=int, default=constants.DEFAULT_BOOTSTRAP_B)

    parser = argparse.ArgumentParser(prog="khomog", description="Nonparametric k-sample homogeneity test")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser(Command.TEST.value, parents=[common, testing], help="test the full dataset")

    subsample = commands.add_parser(
        Command.SUBSAMPLE_TEST.value, parents=[common, testing], help="test balanced random subsamples"
    )
    subsample.add_argument("--subsample-n", type=int, default=None, help="observations kept per group")
    subsample.add_argument("--subsample-L", type=int, default=constants.DEFAULT_SUBSAMPLE_L, help="number of draws")
    subsample.add_argument("--adaptive", action="store_true", help="increase n_tilde until the decision stabilizes")
    subsample.add_argument(
        "--schedule",
        type=_int_list,
        default=constants.DEFAULT_N_TILDE_SCHEDULE,
        help="comma-separated n_tilde values for --adaptive",
    )
    subsample.add_argument("--grid", action="store_true", help="report p_adj over every (n_tilde, L) pair")
    subsample.add_argument(
        "--grid-L", type=_int_list, default=constants.DEFAULT_GRID_L, help="comma-separated L values for --grid"
    )
    subsample.add_argument(
        "--grid-n",
        type=_int_list,
        default=constants.DEFAULT_GRID_N_TILDE,
        help="comma-separated n_tilde values for --grid",
    )

    simulate = commands.add_parser(Command.SIMULATE.value, parents=[common], help="run a Monte Carlo experiment")
    simulate.add_argument("--config", type=Path, required=True, help="TOML experiment design")
    simulate.add_argument("--replications", type=int, default=None, help="override J")

    return parser


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return validate_seed(seed)
    if settings.DEFAULT_SEED is not None:
        return validate_seed(settings.DEFAULT_SEED)
    seed = fresh_seed()
    logger.info(f"No seed given, using fresh seed {seed}")
    return seed


def _dataset_warnings(dataset: Dataset, method: TestMethod) -> list[str]:
    warnings = []
    ratio = dataset.imbalance_ratio
    if ratio > settings.IMBALANCE_RATIO:
        warnings.append(
            f"group sizes are not comparable: max n_i / min n_i = {ratio:.3g} exceeds "
            f"{settings.IMBALANCE_RATIO:g}; consider subsample-test"
        )
    if method == TestMethod.ASYMPTOTIC and dataset.k < constants.BOOTSTRAP_HINT_K:
        warnings.append(
            f"k={dataset.k} < {constants.BOOTSTRAP_HINT_K}: the bootstrap (--method bootstrap) "
            f"is better calibrated for small k"
        )
    for warning in warnings:
        logger.warning(warning)
    return warnings


def run_test_command(args: argparse.Namespace, seed: int, threads: int) -> Result:
    """`test`: asymptotic or standard linear bootstrap on the whole dataset"""
    kernel = kernel_by_name(args.kernel)
    alpha = validate_alpha(args.alpha)
    method = TestMethod(args.method)
    dataset = ingest_csv(args.input, kernel)
    warnings = _dataset_warnings(dataset, method)

    estimates = estimate_groups(kernel, dataset, threads=threads)
    asymptotic = statistic_from_estimates(estimates, alpha, seed=seed)
    asymptotic.warnings.extend(warnings)

    if method == TestMethod.ASYMPTOTIC or asymptotic.degenerate:
        return dataclasses.replace(asymptotic, method=method)

    config = BootstrapConfig(B=args.bootstrap_B, seed=seed, threads=threads)
    errors = config.validate()
    if errors:
        raise InputError(f"Invalid bootstrap options: {errors}")
    result = bootstrap_from_estimates(estimates, config, alpha)
    result.test_result.warnings.extend(warnings)
    return result


def run_subsample_command(args: argparse.Namespace, seed: int, threads: int) -> Result:
    """`subsample-test`: L balanced draws, fixed or adaptive n_tilde, or the full (n_tilde, L) grid"""
    kernel = kernel_by_name(args.kernel)
    alpha = validate_alpha(args.alpha)
    dataset = ingest_csv(args.input, kernel)
    if args.grid and args.adaptive:
        raise InputError("--grid and --adaptive cannot be combined")
    if args.subsample_n is None and not (args.adaptive or args.grid):
        raise InputError("subsample-test needs --subsample-n, --adaptive or --grid")

    inner = TestMethod(args.method)
    if args.grid:
        return resampling_grid(
            dataset,
            kernel,
            L_grid=args.grid_L,
            n_tilde_grid=args.grid_n,
            seed=seed,
            alpha=alpha,
            inner=inner,
            bootstrap=BootstrapConfig(B=args.bootstrap_B) if inner == TestMethod.BOOTSTRAP else None,
            threads=threads,
        )

    config = SubsampleConfig(
        n_tilde=args.subsample_n if args.subsample_n is not None else args.schedule[0],
        L=args.subsample_L,
        seed=seed,
        inner=inner,
        bootstrap=BootstrapConfig(B=args.bootstrap_B) if inner == TestMethod.BOOTSTRAP else None,
        threads=threads,
        schedule=tuple(args.schedule),
    )
    if config.L > constants.MAX_SUBSAMPLE_L:
        logger.warning(f"L={config.L} exceeds the recommended maximum of {constants.MAX_SUBSAMPLE_L}")

    if args.adaptive:
        return adaptive_n_tilde(dataset, kernel, config, alpha)
    return run_subsample_test(dataset, kernel, config, alpha)


def run_simulate_command(args: argparse.Namespace, seed: Optional[int], threads: int) -> Result:
    """`simulate`: level or power experiment from a TOML design"""
    design = load_experiment_design(args.config)
    overrides = {"threads": threads}
    if seed is not None:
        overrides["seed"] = seed
    if args.replications is not None:
        overrides["replications"] = args.replications
    design = dataclasses.replace(design, **overrides)
    if design.is_null:
        return run_level_experiment(design)
    return run_power_experiment(design)


def _is_degenerate(result: Result) -> bool:
    if isinstance(result, TestResult):
        return result.degenerate
    if isinstance(result, BootstrapResult):
        return result.test_result.degenerate
    return False


def _write(report: bytes, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.buffer.write(report)
        sys.stdout.buffer.flush()
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_bytes(report)
        logger.info(f"Report written to {output}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    setup_logger(name="khomog", level=settings.LOG_LEVEL, log_file=settings.LOG_FILE)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.OK if e.code == 0 else ExitCode.INPUT_ERROR

    if args.log_level:
        set_level(args.log_level)

    config_errors = settings.validate()
    if config_errors:
        for error in config_errors:
            logger.error(f"  - {error}")
        return ExitCode.INPUT_ERROR

    command = Command(args.command)
    threads = args.threads if args.threads is not None else settings.THREADS
    try:
        if threads < 1:
            raise InputError(f"--threads must be >= 1, got {threads}")
        if command == Command.SIMULATE:
            seed = validate_seed(args.seed) if args.seed is not None else None
            result = run_simulate_command(args, seed, threads)
        else:
            seed = _resolve_seed(args.seed)
            runner = run_test_command if command == Command.TEST else run_subsample_command
            result = runner(args, seed, threads)
    except (ComplexityGuardError, CalibrationError) as e:
        logger.error(f"Refused: {e}")
        return ExitCode.COMPUTATIONAL_REFUSAL
    except DegenerateVarianceError as e:
        logger.error(f"Degenerate: {e} {e.diagnostics}")
        return ExitCode.DEGENERATE
    except (InputError, ValueError) as e:
        logger.error(f"Input error: {e}")
        return ExitCode.INPUT_ERROR
    except HomogeneityError as e:
        logger.error(f"Failed: {e}")
        return ExitCode.INPUT_ERROR

    _write(emit_report(result, ReportFormat(args.format)), args.output)
    if _is_degenerate(result):
        return ExitCode.DEGENERATE
    return ExitCode.OK


if __name__ == "__main__":
    sys.exit(main())
