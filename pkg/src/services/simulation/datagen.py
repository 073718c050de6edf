"""
Data generators for the level and power experiments.

GMD-scaled families are rescaled to a population Gini mean difference of 1,
so a contaminated group's GMD is exactly its theta. Bivariate normal groups
hit a target Spearman's rho through a calibrated Pearson correlation.
"""

import math
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate, optimize, stats

from ...config import constants
from ...errors import CalibrationError, InputError
from ...kernels import spearman_kernel
from ...models import ContaminationDesign, Dataset, PopulationSpec
from ...stat_types import Family
from ...utils import get_logger

logger = get_logger(__name__)

_GMD_FAMILIES = (Family.NORMAL, Family.CHI_SQUARED, Family.STUDENT_T, Family.SCALED_MIXTURE)
_CORRELATION_EDGE = 1.0 - 1e-12

# Mixture components, each rescaled to unit GMD
MIXTURE_COMPONENTS = (
    PopulationSpec.normal(),
    PopulationSpec.chi_squared(df=3),
    PopulationSpec.student_t(df=5),
)


def _distribution(family: Family, df: Optional[float]):
    if family == Family.NORMAL:
        return stats.norm()
    if family == Family.CHI_SQUARED:
        return stats.chi2(df)
    if family == Family.STUDENT_T:
        if df is None or df <= 1:
            raise InputError(f"t({df}) has no finite Gini mean difference")
        return stats.t(df)
    raise InputError(f"No scalar distribution for family {family.value}")


@lru_cache(maxsize=None)
def population_gmd(family: Family, df: Optional[float] = None) -> float:
    """
    E|X1 - X2| = 2 * integral of F(x) (1 - F(x)) dx, by quadrature.

    Args:
        family: normal, chi_squared or student_t
        df: Degrees of freedom where applicable

    Returns:
        Population Gini mean difference of the unscaled family
    """
    dist = _distribution(family, df)
    lower = 0.0 if family == Family.CHI_SQUARED else -np.inf
    value, abserr = integrate.quad(lambda x: dist.cdf(x) * dist.sf(x), lower, np.inf, epsabs=1e-13, epsrel=1e-13)
    logger.debug(f"Population GMD of {family.value}({df}) = {2.0 * value!r} (quadrature error {2.0 * abserr:.1e})")
    return 2.0 * value


def gmd_scale_factor(family: Family, df: Optional[float] = None) -> float:
    """
    c such that c * X has population GMD 1.

    Normal uses the closed form sqrt(pi) / 2; chi-squared and t use quadrature.
    """
    if family == Family.NORMAL:
        return math.sqrt(math.pi) / 2.0
    if family in (Family.CHI_SQUARED, Family.STUDENT_T):
        return 1.0 / population_gmd(family, df)
    raise InputError(f"GMD scaling is defined for normal, chi_squared and student_t, not {family.value}")


def mixture_assignment(k: int) -> list[PopulationSpec]:
    """First k // 3 groups normal, next k // 3 chi-squared(3), the rest t(5)"""
    third = k // 3
    normal, chi_sq, student = MIXTURE_COMPONENTS
    return [normal] * third + [chi_sq] * third + [student] * (k - 2 * third)


def _raw_draws(spec: PopulationSpec, rng: np.random.Generator, size: tuple[int, ...]) -> np.ndarray:
    if spec.family == Family.NORMAL:
        return rng.standard_normal(size)
    if spec.family == Family.CHI_SQUARED:
        return rng.chisquare(spec.df, size)
    if spec.family == Family.STUDENT_T:
        return rng.standard_t(spec.df, size)
    raise InputError(f"No scalar sampler for family {spec.family.value}")


def _unit_gmd_groups(spec: PopulationSpec, k: int, n0: int, rng: np.random.Generator) -> np.ndarray:
    """(k, n0) draws with every group at population GMD 1"""
    if spec.family == Family.SCALED_MIXTURE:
        families = mixture_assignment(k)
        data = np.empty((k, n0), dtype=np.float64)
        start = 0
        for component in MIXTURE_COMPONENTS:
            count = sum(1 for f in families if f is component)
            if count:
                block = _raw_draws(component, rng, (count, n0))
                data[start:start + count] = gmd_scale_factor(component.family, component.df) * block
            start += count
        return data
    return gmd_scale_factor(spec.family, spec.df) * _raw_draws(spec, rng, (k, n0))


def _bivariate_groups(rhos: np.ndarray, n0: int, rng: np.random.Generator) -> np.ndarray:
    """(k, n0, 2) standard bivariate normal draws, group i with Pearson rho_i"""
    z = rng.standard_normal((2, rhos.size, n0))
    rho = rhos[:, None]
    second = rho * z[0] + np.sqrt(1.0 - rho * rho) * z[1]
    return np.stack([z[0], second], axis=-1)


def _to_dataset(data: np.ndarray) -> Dataset:
    return Dataset.from_arrays(list(data))


def _pearson_rho(spec: PopulationSpec) -> float:
    if spec.target_param is not None:
        return calibrate_spearman_target(spec.target_param)
    return spec.rho if spec.rho is not None else 0.0


def generate_null_dataset(spec: PopulationSpec, k: int, n0: int, rng: np.random.Generator) -> Dataset:
    """
    k groups of n0 i.i.d. observations from one population.

    Scalar families are drawn unscaled and multiplied by spec.scale; the
    scaled mixture gives each third its own family at unit GMD, then spec.scale.

    Args:
        spec: Population law
        k: Number of groups (>= 2)
        n0: Observations per group
        rng: Stream for the whole dataset

    Returns:
        Dataset with identically parameterized groups
    """
    if k < 2 or n0 < 1:
        raise InputError(f"Need k >= 2 and n0 >= 1, got k={k}, n0={n0}")

    if spec.family == Family.BIVARIATE_NORMAL:
        rhos = np.full(k, _pearson_rho(spec))
        return _to_dataset(_bivariate_groups(rhos, n0, rng))
    if spec.family == Family.SCALED_MIXTURE:
        return _to_dataset(spec.scale * _unit_gmd_groups(spec, k, n0, rng))
    return _to_dataset(spec.scale * _raw_draws(spec, rng, (k, n0)))


def generate_power_dataset(design: ContaminationDesign, base: PopulationSpec, rng: np.random.Generator) -> Dataset:
    """
    Contamination alternative: the first round(pi * k) groups at theta_alt, the rest at theta_null.

    For GMD families, theta is the group's population GMD (unit-GMD draws times theta).
    For bivariate normal, theta is the group's Spearman's rho with standard margins.

    Args:
        design: Contamination design
        base: Population being perturbed
        rng: Stream for the whole dataset

    Returns:
        Dataset whose parameter dispersion is design.D_k
    """
    thetas = np.array(design.thetas, dtype=np.float64)

    if base.family == Family.BIVARIATE_NORMAL:
        if np.any(np.abs(thetas) >= 1.0):
            raise InputError(f"Spearman targets must satisfy |theta| < 1, got {sorted(set(thetas.tolist()))}")
        pearson = {theta: calibrate_spearman_target(theta) for theta in set(thetas.tolist())}
        rhos = np.array([pearson[theta] for theta in thetas.tolist()])
        return _to_dataset(_bivariate_groups(rhos, design.n0, rng))

    if base.family in _GMD_FAMILIES:
        if np.any(thetas <= 0.0):
            raise InputError(f"GMD targets must be positive, got {sorted(set(thetas.tolist()))}")
        unit = _unit_gmd_groups(base, design.k, design.n0, rng)
        return _to_dataset(thetas[:, None] * unit)

    raise InputError(f"Unsupported base family {base.family.value}")


def spearman_kernel_expectation(rho: float) -> float:
    """
    E[h] of the degree-3 Spearman kernel under a standard bivariate normal with Pearson rho.

    Each ordered term has expectation 4P - 1, where P is the orthant probability
    of two standard normals with correlation rho / 2, computed by quadrature;
    the six terms halved give 3 (4P - 1).
    """
    if not (-1.0 < rho < 1.0):
        raise InputError(f"Pearson rho must satisfy |rho| < 1, got {rho}")
    c = rho / 2.0
    slope = c / math.sqrt(1.0 - c * c)
    orthant, _ = integrate.quad(
        lambda u: stats.norm.pdf(u) * stats.norm.cdf(slope * u), 0.0, np.inf, epsabs=1e-14, epsrel=1e-14
    )
    return 3.0 * (4.0 * orthant - 1.0)


def spearman_kernel_expectation_mc(rho: float, n: int, rng: np.random.Generator) -> tuple[float, float]:
    """
    Monte Carlo estimate of the Spearman kernel expectation from n independent triples.

    Returns:
        (mean, standard error)
    """
    if n < 2:
        raise InputError(f"Need at least 2 triples, got {n}")
    points = _bivariate_groups(np.full(n, rho), 3, rng)  # (n, 3, 2)
    values = spearman_kernel().evaluate_batch(points)
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(n))


@lru_cache(maxsize=256)
def calibrate_spearman_target(rho_s_target: float) -> float:
    """
    Pearson rho whose Spearman kernel expectation equals the target.

    Root-finds against the quadrature oracle, bracketing around the classical
    2 sin(pi rho_s / 6) and logging how far the root lies from it.

    Raises:
        CalibrationError: the root-find failed, with the evaluated (rho, residual) pairs
    """
    if not (-1.0 < rho_s_target < 1.0):
        raise InputError(f"Spearman target must satisfy |rho_s| < 1, got {rho_s_target}")
    if rho_s_target == 0.0:
        return 0.0

    trace: list[tuple[float, float]] = []

    def residual(rho: float) -> float:
        value = spearman_kernel_expectation(rho) - rho_s_target
        trace.append((rho, value))
        return value

    classical = 2.0 * math.sin(math.pi * rho_s_target / 6.0)
    low = max(-_CORRELATION_EDGE, classical - 0.05)
    high = min(_CORRELATION_EDGE, classical + 0.05)
    if residual(low) * residual(high) > 0:
        low, high = -_CORRELATION_EDGE, _CORRELATION_EDGE

    try:
        root = optimize.brentq(residual, low, high, xtol=constants.CALIBRATION_XTOL)
    except (ValueError, RuntimeError) as e:
        raise CalibrationError(f"Spearman calibration failed for target {rho_s_target}: {e}", trace) from e

    gap = abs(root - classical)
    if gap > constants.CLASSICAL_AGREEMENT_TOL:
        logger.warning(
            f"Calibrated rho {root:.12f} for rho_s={rho_s_target} differs from 2 sin(pi rho_s / 6) = {classical:.12f}"
        )
    else:
        logger.debug(f"Calibrated rho {root:.12f} for rho_s={rho_s_target} agrees with 2 sin(pi rho_s / 6)")
    return float(root)
