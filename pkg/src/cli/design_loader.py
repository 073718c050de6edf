"""
TOML experiment designs.

    name = "gmd-level"
    kernel = "gmd"
    k = 500
    n0 = 10
    replications = 2000
    alpha_levels = [0.05, 0.10]
    methods = ["asymptotic", "bootstrap"]
    seed = 7

    [population]            # family, scale, df, rho, target_param
    family = "normal"

    [contamination]         # optional; turns the run into a power experiment
    pi = 0.4
    theta_alt = 1.5
    theta_null = 1.0

theta_null defaults to 1.0 (unit GMD), or 0.0 (independence) for bivariate_normal.
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Union

from ..config import constants
from ..errors import ConfigurationError, InputError
from ..kernels import kernel_by_name
from ..models import ContaminationDesign, ExperimentDesign, PopulationSpec
from ..stat_types import Family, TestMethod

_TOP_LEVEL = {"name", "kernel", "k", "n0", "replications", "alpha_levels", "methods", "seed", "threads",
              "population", "contamination"}
_POPULATION = {"family", "scale", "df", "rho", "target_param"}
_CONTAMINATION = {"pi", "theta_alt", "theta_null"}


def _default_theta_null(family: Family) -> float:
    return 0.0 if family == Family.BIVARIATE_NORMAL else 1.0


def _check_keys(section: str, table: dict[str, Any], allowed: set[str]) -> list[str]:
    return [f"unknown key {section}{key!r}" for key in sorted(set(table) - allowed)]


def design_from_mapping(data: dict[str, Any]) -> ExperimentDesign:
    """
    Build an ExperimentDesign from parsed TOML.

    Raises:
        ConfigurationError: unknown keys or invalid values
    """
    population_table = data.get("population", {})
    contamination_table = data.get("contamination")
    errors = _check_keys("", data, _TOP_LEVEL) + _check_keys("population.", population_table, _POPULATION)
    if contamination_table is not None:
        errors += _check_keys("contamination.", contamination_table, _CONTAMINATION)
    for required in ("kernel", "k", "n0"):
        if required not in data:
            errors.append(f"missing key {required!r}")
    if "family" not in population_table:
        errors.append("missing key 'population.family'")
    if errors:
        raise ConfigurationError("experiment", errors)

    try:
        population = PopulationSpec(
            family=Family(population_table["family"]),
            scale=float(population_table.get("scale", 1.0)),
            df=population_table.get("df"),
            rho=population_table.get("rho"),
            target_param=population_table.get("target_param"),
        )
        k, n0 = int(data["k"]), int(data["n0"])
        scenario = population
        base = None
        if contamination_table is not None:
            scenario = ContaminationDesign(
                pi=float(contamination_table["pi"]),
                theta_alt=float(contamination_table["theta_alt"]),
                theta_null=float(contamination_table.get("theta_null", _default_theta_null(population.family))),
                k=k,
                n0=n0,
            )
            base = population
        design = ExperimentDesign(
            scenario=scenario,
            kernel=kernel_by_name(data["kernel"]),
            k=k,
            n0=n0,
            replications=int(data.get("replications", constants.DEFAULT_REPLICATIONS)),
            alpha_levels=tuple(float(a) for a in data.get("alpha_levels", constants.DEFAULT_ALPHA_LEVELS)),
            methods=tuple(TestMethod(m) for m in data.get("methods", ("asymptotic", "bootstrap"))),
            seed=int(data.get("seed", 0)),
            base=base,
            threads=int(data.get("threads", 1)),
            name=str(data.get("name", "experiment")),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise ConfigurationError("experiment", [str(e)]) from e

    errors = design.validate()
    if errors:
        raise ConfigurationError("experiment", errors)
    return design


def load_experiment_design(path: Union[str, Path]) -> ExperimentDesign:
    """
    Read an ExperimentDesign from a TOML file.

    Args:
        path: TOML file

    Returns:
        Validated ExperimentDesign
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"Design file not found: {path}")
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise InputError(f"{path} is not valid TOML: {e}") from e
    return design_from_mapping(data)
