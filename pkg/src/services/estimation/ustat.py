"""
Exact U-statistic estimators of theta_i and theta_i^2.

theta_hat averages h over all size-m subsets. theta_sq_hat averages the
product kernel H over all size-2m subsets, which is the same as averaging
h(S) * h(T) over all ordered pairs (S, T) of disjoint m-subsets:
each 2m-subset splits into C(2m, m) ordered pairs, and every ordered disjoint
pair arises from exactly one 2m-subset. So h is evaluated once per m-subset and
theta_sq_hat reduces to a sum of products over a cached pair table.

All sums use math.fsum, so results do not depend on the order of observations.
"""

import itertools
import math
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from ...config import constants, settings
from ...errors import ComplexityGuardError, DimensionMismatchError, InsufficientSampleError
from ...kernels.base import Kernel
from ...models import Dataset, GroupEstimates, GroupSample
from ...utils import exact_sum, get_logger, log_execution_time, ordered_map

logger = get_logger(__name__)


@lru_cache(maxsize=None)
def subset_index(n: int, m: int) -> np.ndarray:
    """
    All size-m index subsets of range(n) in lexicographic order.

    Returns:
        Read-only (C(n, m), m) integer array
    """
    combos = np.array(list(itertools.combinations(range(n), m)), dtype=np.intp).reshape(-1, m)
    combos.setflags(write=False)
    return combos


def _membership(n: int, m: int) -> np.ndarray:
    """(C(n, m), n) 0/1 matrix: row s marks the indices in subset s"""
    combos = subset_index(n, m)
    members = np.zeros((combos.shape[0], n), dtype=np.int32)
    np.put_along_axis(members, combos, 1, axis=1)
    return members


def product_term_count(n: int, m: int) -> int:
    """Number of h(S) h(T) products behind theta_sq_hat: C(n, 2m) * C(2m, m)"""
    return math.comb(n, 2 * m) * math.comb(2 * m, m)


@lru_cache(maxsize=64)
def disjoint_pairs(n: int, m: int) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """
    Ordered pairs (S, T) of disjoint m-subsets as indices into subset_index(n, m).

    Returns:
        (first, second) index arrays in lexicographic order, or None when the
        table would exceed PAIR_CACHE_LIMIT entries
    """
    if product_term_count(n, m) > constants.PAIR_CACHE_LIMIT:
        return None

    members = _membership(n, m)
    count = members.shape[0]
    block = max(1, constants.BATCH_CELL_LIMIT // max(count, 1))
    firsts, seconds = [], []
    for start in range(0, count, block):
        overlap = members[start:start + block] @ members.T
        rows, cols = np.nonzero(overlap == 0)
        firsts.append(rows + start)
        seconds.append(cols)

    first = np.concatenate(firsts).astype(np.intp)
    second = np.concatenate(seconds).astype(np.intp)
    first.setflags(write=False)
    second.setflags(write=False)
    return first, second


def _streamed_products(values: np.ndarray, n: int, m: int) -> Iterator[float]:
    """Products over disjoint pairs, produced block by block for large n"""
    members = _membership(n, m)
    count = members.shape[0]
    block = max(1, constants.BATCH_CELL_LIMIT // max(count, 1))
    for start in range(0, count, block):
        disjoint = (members[start:start + block] @ members.T) == 0
        products = values[start:start + block, None] * values[None, :]
        yield from products[disjoint].tolist()


def check_complexity(n: int, m: int, budget: Optional[int] = None) -> None:
    """
    Refuse theta_sq_hat enumerations above the budget.

    Raises:
        ComplexityGuardError: pointing at random subsampling as the remedy
    """
    budget = settings.COMPLEXITY_BUDGET if budget is None else budget
    required = product_term_count(n, m)
    if required > budget:
        raise ComplexityGuardError(
            f"theta_sq_hat for n={n}, m={m} needs {required:,} kernel products, "
            f"above the budget of {budget:,}. Draw balanced subsamples instead "
            f"(subsample-test --subsample-n) or raise KHOMOG_COMPLEXITY_BUDGET.",
            required=required,
            budget=budget,
        )


def kernel_values(kernel: Kernel, observations: np.ndarray) -> np.ndarray:
    """
    h evaluated on every size-m subset of the observations.

    Args:
        kernel: Kernel of degree m
        observations: (n, input_dim) array

    Returns:
        (C(n, m),) values in lexicographic subset order
    """
    combos = subset_index(observations.shape[0], kernel.degree)
    return kernel.evaluate_batch(observations[combos])


def _theta_from_values(values: np.ndarray, n: int, m: int) -> float:
    return exact_sum(values.tolist()) / math.comb(n, m)


def _theta_squared_from_values(values: np.ndarray, n: int, m: int) -> float:
    pairs = disjoint_pairs(n, m)
    if pairs is not None:
        first, second = pairs
        total = exact_sum((values[first] * values[second]).tolist())
    else:
        total = exact_sum(_streamed_products(values, n, m))
    return total / product_term_count(n, m)


def estimate_theta(kernel: Kernel, sample: GroupSample) -> float:
    """
    Degree-m U-statistic: average of h over all size-m subsets.

    Args:
        kernel: Kernel h
        sample: Group with n >= m observations

    Returns:
        theta_hat
    """
    sample.validate_for(kernel, minimum=kernel.degree)
    values = kernel_values(kernel, sample.observations)
    return _theta_from_values(values, sample.n, kernel.degree)


def estimate_theta_squared(kernel: Kernel, sample: GroupSample, budget: Optional[int] = None) -> float:
    """
    Unbiased estimator of theta^2: degree-2m U-statistic of the product kernel H.

    Args:
        kernel: Kernel h
        sample: Group with n >= 2m observations
        budget: Maximum kernel products (defaults to settings.COMPLEXITY_BUDGET)

    Returns:
        theta_sq_hat
    """
    sample.validate_for(kernel)
    check_complexity(sample.n, kernel.degree, budget)
    values = kernel_values(kernel, sample.observations)
    return _theta_squared_from_values(values, sample.n, kernel.degree)


def estimate_group(kernel: Kernel, sample: GroupSample, budget: Optional[int] = None) -> GroupEstimates:
    """Both estimators from a single pass of kernel evaluations"""
    sample.validate_for(kernel)
    check_complexity(sample.n, kernel.degree, budget)
    values = kernel_values(kernel, sample.observations)
    return GroupEstimates(
        theta_hat=_theta_from_values(values, sample.n, kernel.degree),
        theta_sq_hat=_theta_squared_from_values(values, sample.n, kernel.degree),
        n=sample.n,
        group_id=sample.group_id,
    )


def _estimate_balanced_block(kernel: Kernel, block: np.ndarray, group_ids: list[str]) -> list[GroupEstimates]:
    """Vectorised estimates for a (b, n, d) stack of equal-size groups"""
    n, m = block.shape[1], kernel.degree
    combos = subset_index(n, m)
    values = kernel.evaluate_batch(block[:, combos])  # (b, C(n, m))
    first, second = disjoint_pairs(n, m)
    products = values[:, first] * values[:, second]

    theta_den = math.comb(n, m)
    sq_den = product_term_count(n, m)
    return [
        GroupEstimates(
            theta_hat=exact_sum(row) / theta_den,
            theta_sq_hat=exact_sum(prod_row) / sq_den,
            n=n,
            group_id=gid,
        )
        for gid, row, prod_row in zip(group_ids, values.tolist(), products.tolist())
    ]


@log_execution_time
def estimate_groups(
    kernel: Kernel,
    dataset: Dataset,
    budget: Optional[int] = None,
    threads: int = 1
) -> list[GroupEstimates]:
    """
    Per-group estimates for a whole dataset, data-parallel by group.

    Balanced datasets are evaluated in vectorised blocks; results are identical
    to estimate_group on each group, whatever the thread count.

    Args:
        kernel: Kernel h
        dataset: Groups with n_i >= 2m
        budget: Maximum kernel products per group
        threads: Worker threads

    Returns:
        GroupEstimates in group order
    """
    dataset.validate_for(kernel)
    check_complexity(max(dataset.sizes), kernel.degree, budget)
    m = kernel.degree

    if dataset.is_balanced and disjoint_pairs(dataset.sizes[0], m) is not None:
        n = dataset.sizes[0]
        stacked = dataset.stacked()
        ids = [group.group_id for group in dataset.groups]
        width = max(math.comb(n, m) * m * dataset.input_dim, product_term_count(n, m), 1)
        block = max(1, constants.BATCH_CELL_LIMIT // width)
        starts = list(range(0, dataset.k, block))
        chunks = ordered_map(
            lambda s: _estimate_balanced_block(kernel, stacked[s:s + block], ids[s:s + block]),
            starts,
            threads,
        )
        return [est for chunk in chunks for est in chunk]

    return ordered_map(lambda group: estimate_group(kernel, group, budget), dataset.groups, threads)


def gmd_fast_path(sample: GroupSample) -> float:
    """
    Gini mean difference U-statistic in O(n log n) from the order statistics:
    2 / (n (n - 1)) * sum_i (2i - 1 - n) x_(i).

    Args:
        sample: Scalar observations, n >= 2

    Returns:
        Same value as estimate_theta with the GMD kernel (to rounding)
    """
    if sample.input_dim != 1:
        raise DimensionMismatchError(f"GMD needs scalar observations, got input_dim={sample.input_dim}")
    n = sample.n
    if n < 2:
        raise InsufficientSampleError(f"GMD needs n >= 2, got n={n}")
    ordered = np.sort(sample.observations[:, 0])
    weights = 2.0 * np.arange(1, n + 1) - 1.0 - n
    return 2.0 * exact_sum((weights * ordered).tolist()) / (n * (n - 1))
