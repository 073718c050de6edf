"""
Brute-force estimators over ordered tuples of distinct indices.
Slow by construction; used to check the combination-based estimators.
"""

import itertools
from typing import Iterator

import numpy as np

from ...config import constants
from ...errors import ComplexityGuardError, InsufficientSampleError
from ...kernels.base import Kernel
from ...models import GroupSample
from ...utils import exact_sum, falling_factorial

_TUPLE_BLOCK = 200_000


def _guard(n: int, length: int, limit: int) -> None:
    if n ** length > limit:
        raise ComplexityGuardError(
            f"Oracle enumeration of n^{length} = {n ** length:,} tuples exceeds the limit of {limit:,}",
            required=n ** length,
            budget=limit,
        )


def _ordered_tuples(n: int, length: int) -> Iterator[np.ndarray]:
    """Ordered tuples of distinct indices, in blocks of at most _TUPLE_BLOCK rows"""
    tuples = itertools.permutations(range(n), length)
    while True:
        block = list(itertools.islice(tuples, _TUPLE_BLOCK))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def estimate_theta_oracle(
    kernel: Kernel,
    sample: GroupSample,
    limit: int = constants.ORACLE_ENUMERATION_LIMIT
) -> float:
    """
    (1 / n(m)) * sum of h over ordered m-tuples of distinct indices.

    Args:
        kernel: Kernel h
        sample: Group with n >= m
        limit: Refuse when n^m exceeds this

    Returns:
        theta_hat
    """
    n, m = sample.n, kernel.degree
    sample.validate_for(kernel, minimum=m)
    _guard(n, m, limit)

    x = sample.observations
    terms = (kernel.evaluate_batch(x[block]).tolist() for block in _ordered_tuples(n, m))
    return exact_sum(itertools.chain.from_iterable(terms)) / falling_factorial(n, m)


def estimate_theta_squared_oracle(
    kernel: Kernel,
    sample: GroupSample,
    limit: int = constants.ORACLE_ENUMERATION_LIMIT
) -> float:
    """
    (1 / n(2m)) * sum of h(x_j1..x_jm) * h(x_jm+1..x_j2m) over ordered 2m-tuples of distinct indices.

    Args:
        kernel: Kernel h
        sample: Group with n >= 2m
        limit: Refuse when n^(2m) exceeds this

    Returns:
        theta_sq_hat
    """
    n, m = sample.n, kernel.degree
    if n < 2 * m:
        raise InsufficientSampleError(f"Group {sample.group_id!r} has n={n}, oracle needs at least {2 * m}")
    sample.validate_for(kernel)
    _guard(n, 2 * m, limit)

    x = sample.observations

    def products(block: np.ndarray) -> list[float]:
        return (kernel.evaluate_batch(x[block[:, :m]]) * kernel.evaluate_batch(x[block[:, m:]])).tolist()

    terms = (products(block) for block in _ordered_tuples(n, 2 * m))
    return exact_sum(itertools.chain.from_iterable(terms)) / falling_factorial(n, 2 * m)
