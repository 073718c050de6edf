"""
Randomized symmetry validator for kernels.
Opt-in: a pass is evidence, not proof.
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

import numpy as np

from ..config import constants
from ..utils import get_logger
from .base import Kernel

logger = get_logger(__name__)


@dataclass
class SymmetryReport:
    """Result of checking a kernel for permutation symmetry"""
    symmetric: bool
    trials: int
    counterexample: Optional[np.ndarray] = None  # First (m, input_dim) tuple that failed
    values: list[float] = field(default_factory=list)  # Kernel values over its permutations


def check_symmetry(
    kernel: Kernel,
    trials: int = constants.SYMMETRY_CHECK_TRIALS,
    rng: Optional[np.random.Generator] = None,
    exact: bool = True,
    rtol: float = 0.0
) -> SymmetryReport:
    """
    Evaluate the kernel on random argument tuples under all m! orderings.

    Args:
        kernel: Kernel to check
        trials: Number of random tuples
        rng: Generator (a fixed-seed one when None)
        exact: Require bit-identical values; otherwise compare with rtol
        rtol: Relative tolerance when exact is False

    Returns:
        SymmetryReport, with the first counterexample if any
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    orders = np.array(list(permutations(range(kernel.degree))))

    # Mix continuous draws with tied values so sgn(0) paths get exercised
    points = rng.standard_normal((trials, kernel.degree, kernel.input_dim))
    tied = rng.random(trials) < 0.2
    points[tied] = np.round(points[tied])

    # (trials, m!, m, d) -> (trials, m!)
    values = kernel.evaluate_batch(points[:, orders, :])
    reference = values[:, :1]
    if exact:
        ok = np.all(values == reference, axis=1)
    else:
        ok = np.all(np.isclose(values, reference, rtol=rtol, atol=0.0), axis=1)

    if np.all(ok):
        logger.debug(f"Kernel {kernel.name} passed symmetry check over {trials} tuples")
        return SymmetryReport(symmetric=True, trials=trials)

    bad = int(np.argmin(ok))
    logger.warning(f"Kernel {kernel.name} is not symmetric: tuple {bad} gives {values[bad].tolist()}")
    return SymmetryReport(
        symmetric=False,
        trials=trials,
        counterexample=points[bad],
        values=values[bad].tolist()
    )
