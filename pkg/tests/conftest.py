"""
Test configuration and fixtures for the entire test suite.
Provides kernels, seeded generators, canned datasets and CSV writers.
"""
import os
import sys
import pytest
import numpy as np

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.kernels import gmd_kernel, spearman_kernel, mean_kernel, variance_kernel, FunctionKernel
from src.models import Dataset, GroupSample, GroupEstimates


# =============================================================================
# KERNELS
# =============================================================================

@pytest.fixture
def gmd():
    """Gini mean difference kernel |x1 - x2|"""
    return gmd_kernel()


@pytest.fixture
def spearman():
    """Degree-3 Spearman kernel on bivariate data"""
    return spearman_kernel()


@pytest.fixture
def mean():
    """Degree-1 identity kernel"""
    return mean_kernel()


@pytest.fixture
def variance():
    """Degree-2 half squared difference kernel"""
    return variance_kernel()


@pytest.fixture(params=["gmd", "spearman", "mean", "variance"])
def any_kernel(request):
    """Every shipped kernel in turn"""
    return {
        "gmd": gmd_kernel,
        "spearman": spearman_kernel,
        "mean": mean_kernel,
        "variance": variance_kernel,
    }[request.param]()


class CountingKernel(FunctionKernel):
    """GMD kernel that counts how many tuples it has evaluated"""

    def __init__(self):
        super().__init__(lambda a, b: abs(a - b), degree=2, input_dim=1, name="counting")
        self.evaluations = 0

    def evaluate_batch(self, points):
        values = super().evaluate_batch(points)
        self.evaluations += int(values.size)
        return values


@pytest.fixture
def counting_kernel():
    """GMD kernel with an evaluation counter"""
    return CountingKernel()


# =============================================================================
# RANDOMNESS
# =============================================================================

@pytest.fixture
def rng():
    """Seeded generator so tests are reproducible"""
    return np.random.default_rng(20240517)


@pytest.fixture
def make_sample(rng):
    """Factory for random GroupSamples matching a kernel's input_dim"""
    def _make(kernel, n):
        shape = (n,) if kernel.input_dim == 1 else (n, kernel.input_dim)
        return GroupSample("g", rng.standard_normal(shape))
    return _make


# =============================================================================
# DATASETS
# =============================================================================

@pytest.fixture
def small_dataset():
    """Three scalar groups of five integer-valued observations"""
    return Dataset.from_arrays([
        [0.0, 1.0, 2.0, 3.0, 4.0],
        [1.0, 1.0, 2.0, 5.0, 8.0],
        [2.0, 0.0, 7.0, 3.0, 3.0],
    ])


@pytest.fixture
def constant_dataset():
    """Four identical constant groups: every GMD estimate is 0"""
    return Dataset.from_arrays([[3.0] * 6 for _ in range(4)])


@pytest.fixture
def null_gmd_dataset(rng):
    """40 standard normal groups of size 8"""
    return Dataset.from_arrays(list(rng.standard_normal((40, 8))))


@pytest.fixture
def unbalanced_dataset(rng):
    """30 normal groups with sizes between 30 and 60"""
    sizes = rng.integers(30, 61, size=30)
    return Dataset.from_arrays([rng.standard_normal(n) for n in sizes])


@pytest.fixture
def two_group_estimates():
    """theta_hat = (0, 2), theta_sq_hat = (0, 4)"""
    return [
        GroupEstimates(theta_hat=0.0, theta_sq_hat=0.0, n=4),
        GroupEstimates(theta_hat=2.0, theta_sq_hat=4.0, n=4),
    ]


# =============================================================================
# FILES
# =============================================================================

@pytest.fixture
def write_csv(tmp_path):
    """Factory writing CSV text to a temporary file and returning its path"""
    def _write(text, name="data.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def scalar_csv(write_csv, rng):
    """Three groups of 8 scalar rows as CSV"""
    lines = ["group,v1"]
    for group in ("a", "b", "c"):
        for value in rng.normal(size=8):
            lines.append(f"{group},{float(value)!r}")
    return write_csv("\n".join(lines) + "\n")


# =============================================================================
# PYTEST CONFIGURATION
# =============================================================================

def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "unit: Unit tests for individual components"
    )
    config.addinivalue_line(
        "markers", "integration: Integration tests for full workflows"
    )
    config.addinivalue_line(
        "markers", "slow: Monte Carlo acceptance runs that take minutes"
    )
