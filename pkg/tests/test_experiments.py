"""
Tests for the Monte Carlo harness and the theory diagnostics.
Classes marked slow reproduce the level and power tables at desk scale.
"""
import math

import pytest
import numpy as np

from src.errors import ConfigurationError, InputError
from src.models import ContaminationDesign, Dataset, ExperimentDesign, PopulationSpec
from src.services.simulation import (
    RejectionRate,
    consistency_sweep,
    decomposition_check,
    null_calibration,
    run_experiment,
    run_level_experiment,
    run_power_experiment,
)
from src.stat_types import TestMethod


def null_design(kernel, k=20, n0=6, replications=30, **overrides):
    return ExperimentDesign(
        scenario=PopulationSpec.normal(), kernel=kernel, k=k, n0=n0,
        replications=replications, seed=123, name="null", **overrides,
    )


def spearman_power_design(spearman, pi=0.5, theta=0.5, k=20, n0=6, replications=200, **overrides):
    return ExperimentDesign(
        scenario=ContaminationDesign(pi=pi, theta_alt=theta, theta_null=0.0, k=k, n0=n0),
        kernel=spearman, k=k, n0=n0, replications=replications, seed=515,
        base=PopulationSpec.bivariate_normal(), methods=(TestMethod.ASYMPTOTIC,), name="spearman-power", **overrides,
    )


def power_design(kernel, pi=0.4, theta=1.5, k=100, n0=10, replications=1000, **overrides):
    return ExperimentDesign(
        scenario=ContaminationDesign(pi=pi, theta_alt=theta, theta_null=1.0, k=k, n0=n0),
        kernel=kernel, k=k, n0=n0, replications=replications, seed=2024,
        base=PopulationSpec.normal(), name="power", **overrides,
    )


@pytest.mark.unit
class TestDecompositionCheck:
    """Test T_k = D_k + T_lin + R_k with known group parameters"""

    def test_random_instances(self, gmd, rng):
        """Test 100 synthetic instances close the identity to 1e-10"""
        for _ in range(100):
            k = int(rng.integers(2, 30))
            n = int(rng.integers(4, 9))
            thetas = rng.uniform(0.5, 2.0, size=k)
            data = rng.normal(size=(k, n)) * thetas[:, None] * math.sqrt(math.pi) / 2
            diagnostics = decomposition_check(Dataset.from_arrays(list(data)), gmd, thetas)
            assert diagnostics.within_tolerance(1e-10)
            assert diagnostics.is_finite

    def test_homogeneous(self, gmd, null_gmd_dataset):
        """Test equal thetas give D_k = 0 and T_k = T_lin + R_k"""
        diagnostics = decomposition_check(null_gmd_dataset, gmd, [2 / math.sqrt(math.pi)] * 40)
        assert diagnostics.D_k_true == 0.0
        assert diagnostics.T_k == pytest.approx(diagnostics.T_lin + diagnostics.R_k, abs=1e-12)

    def test_constant_data(self, gmd, constant_dataset):
        """Test constant groups with theta = 0 make every term 0"""
        diagnostics = decomposition_check(constant_dataset, gmd, [0.0] * 4)
        assert (diagnostics.T_k, diagnostics.D_k_true, diagnostics.T_lin, diagnostics.R_k) == (0.0, 0.0, 0.0, 0.0)
        assert diagnostics.residual == 0.0

    def test_theta_count(self, gmd, constant_dataset):
        """Test one theta per group is required"""
        with pytest.raises(InputError, match="one true theta per group"):
            decomposition_check(constant_dataset, gmd, [0.0, 0.0])


@pytest.mark.unit
class TestRejectionRate:
    """Test a table cell"""

    def test_rate_and_error(self):
        """Test rate = rejections / J and SE = sqrt(p (1 - p) / J)"""
        entry = RejectionRate(TestMethod.ASYMPTOTIC, 0.05, 50, 1000)
        assert entry.rate == 0.05
        assert entry.standard_error == pytest.approx(math.sqrt(0.05 * 0.95 / 1000), rel=1e-12)


@pytest.mark.unit
class TestRunExperiment:
    """Test the harness on small designs"""

    def test_single_replication(self, gmd):
        """Test J = 1 gives rates of exactly 0 or 1"""
        result = run_level_experiment(null_design(gmd, replications=1))
        assert all(entry.rate in (0.0, 1.0) for entry in result.rates)

    def test_table_layout(self, gmd):
        """Test one rate per (method, alpha) and a matching data frame"""
        result = run_level_experiment(null_design(gmd))
        assert len(result.rates) == 4
        assert result.rate(TestMethod.BOOTSTRAP, 0.10).replications == 30
        frame = result.to_frame()
        assert len(frame) == 4
        assert set(frame["method"]) == {"asymptotic", "bootstrap"}
        assert (frame["J"] == 30).all()
        assert result.T_k_values.shape == (30,)
        assert result.bootstrap_replicates.shape == (30,)

    def test_reproducible(self, gmd):
        """Test the same design and seed give identical statistics"""
        first = run_level_experiment(null_design(gmd))
        second = run_level_experiment(null_design(gmd))
        np.testing.assert_array_equal(first.statistics, second.statistics)
        np.testing.assert_array_equal(first.bootstrap_replicates, second.bootstrap_replicates)
        assert first.rates == second.rates

    def test_thread_count_irrelevant(self, gmd):
        """Test 1 and 4 threads give identical tables"""
        single = run_level_experiment(null_design(gmd, threads=1))
        multi = run_level_experiment(null_design(gmd, threads=4))
        np.testing.assert_array_equal(single.statistics, multi.statistics)
        assert single.rates == multi.rates

    def test_methods_paired(self, gmd):
        """Test adding the bootstrap column does not change the datasets"""
        both = run_level_experiment(null_design(gmd))
        asymptotic = run_level_experiment(null_design(gmd, methods=(TestMethod.ASYMPTOTIC,)))
        np.testing.assert_array_equal(both.statistics, asymptotic.statistics)
        assert asymptotic.bootstrap_replicates is None
        assert both.rate(TestMethod.ASYMPTOTIC, 0.05) == asymptotic.rate(TestMethod.ASYMPTOTIC, 0.05)

    def test_level_needs_null(self, gmd):
        """Test a contamination alternative is refused as a level experiment"""
        with pytest.raises(InputError, match="null scenario"):
            run_level_experiment(power_design(gmd, replications=2))

    def test_power_needs_contamination(self, gmd):
        """Test a plain population is refused as a power experiment"""
        with pytest.raises(InputError):
            run_power_experiment(null_design(gmd))

    def test_power_needs_base(self, gmd):
        """Test a contamination design without a base population is refused"""
        design = power_design(gmd, replications=2)
        design.base = None
        with pytest.raises(ConfigurationError, match="base population"):
            run_experiment(design)

    def test_invalid_design(self, gmd):
        """Test J = 0 and n0 < 2m are configuration errors"""
        with pytest.raises(ConfigurationError):
            run_experiment(null_design(gmd, replications=0))
        with pytest.raises(ConfigurationError):
            run_experiment(null_design(gmd, n0=3))

    def test_power_d_k(self, gmd):
        """Test a power result reports the closed-form D_k"""
        result = run_power_experiment(power_design(gmd, k=10, n0=6, replications=3))
        assert result.D_k == pytest.approx(0.06, rel=1e-12)

    def test_spearman_power_end_to_end(self, spearman):
        """Test a bivariate contamination run: D_k = 0.0625 and mean T_k within 4 SE of it"""
        result = run_power_experiment(spearman_power_design(spearman))
        assert result.D_k == pytest.approx(0.0625, rel=1e-12)
        assert result.T_k_values.shape == (200,)
        assert np.all(np.isfinite(result.T_k_values))
        assert abs(result.mean_T_k - 0.0625) <= 4 * result.T_k_standard_error
        assert 0.0 <= result.rate(TestMethod.ASYMPTOTIC, 0.05).rate <= 1.0

    def test_null_calibration_needs_null(self, gmd):
        """Test the KS check refuses alternatives"""
        with pytest.raises(InputError):
            null_calibration(power_design(gmd, replications=2))


@pytest.mark.unit
class TestConsistencySweep:
    """Test |T_k - D_k| shrinking along k"""

    def test_null_medians_decrease(self, gmd):
        """Test medians fall along k = 20, 80, 320 under the null"""
        points = consistency_sweep(gmd, PopulationSpec.normal(), [20, 80, 320], n0=6, replications=100, seed=4)
        medians = [p.median for p in points]
        assert medians[0] > medians[1] > medians[2]
        assert all(p.D_k == 0.0 for p in points)

    def test_contamination_keeps_d_k(self, gmd):
        """Test the contamination D_k stays fixed while the gap shrinks"""
        scenario = ContaminationDesign(pi=0.5, theta_alt=1.5, theta_null=1.0, k=2, n0=6)
        points = consistency_sweep(
            gmd, scenario, [20, 320], n0=6, replications=100, seed=4, base=PopulationSpec.normal()
        )
        assert [p.D_k for p in points] == [0.0625, 0.0625]
        assert points[1].median < points[0].median

    def test_quantiles_reported(self, gmd):
        """Test the requested quantiles are ordered"""
        (point,) = consistency_sweep(gmd, PopulationSpec.normal(), [30], n0=5, replications=50, quantiles=(0.9,))
        assert point.quantiles[0.5] <= point.quantiles[0.9]

    def test_grid_validated(self, gmd):
        """Test a non-increasing grid is refused"""
        with pytest.raises(InputError):
            consistency_sweep(gmd, PopulationSpec.normal(), [80, 20], n0=6)


@pytest.mark.slow
class TestUnbiasedStatistic:
    """Mean of T_k over replications against the closed-form D_k"""

    def test_contamination_mean(self, gmd):
        """Test pi = 0.3, theta = 1.5, k = 100, n0 = 10: mean T_k within 3 SE of 0.0525"""
        design = power_design(gmd, pi=0.3, replications=10_000, methods=(TestMethod.ASYMPTOTIC,), threads=4)
        result = run_power_experiment(design)
        assert result.D_k == pytest.approx(0.0525, rel=1e-12)
        assert abs(result.mean_T_k - 0.0525) <= 3 * result.T_k_standard_error


@pytest.mark.slow
class TestLevelTables:
    """Empirical Type I error at desk scale"""

    def test_gmd_normal(self, gmd):
        """Test N(0, 1), k = 500, n0 = 10, J = 2000: 4.3 +- 1.5 and 5.3 +- 1.5 percent"""
        result = run_level_experiment(null_design(gmd, k=500, n0=10, replications=2000, threads=4))
        assert 100 * result.rate(TestMethod.ASYMPTOTIC, 0.05).rate == pytest.approx(4.3, abs=1.5)
        assert 100 * result.rate(TestMethod.BOOTSTRAP, 0.05).rate == pytest.approx(5.3, abs=1.5)

    def test_spearman_bivariate(self, spearman):
        """Test rho_S = 0, k = 500, n0 = 7, J = 1000: 4.8 +- 2 percent"""
        design = ExperimentDesign(
            scenario=PopulationSpec.bivariate_normal(), kernel=spearman, k=500, n0=7,
            replications=1000, methods=(TestMethod.ASYMPTOTIC,), seed=77, threads=4,
        )
        result = run_level_experiment(design)
        assert 100 * result.rate(TestMethod.ASYMPTOTIC, 0.05).rate == pytest.approx(4.8, abs=2.0)

    def test_null_normality(self, gmd):
        """Test 2000 null statistics at k = 1500, n0 = 5 pass a KS test at the 1% level"""
        calibration = null_calibration(null_design(gmd, k=1500, n0=5, replications=2000, threads=4))
        assert calibration.sample_size == 2000
        assert calibration.passed


@pytest.mark.slow
class TestPowerTables:
    """Empirical power at desk scale"""

    def test_gmd_contamination(self, gmd):
        """Test pi = 0.4, theta = 1.5, k = 100, n0 = 10, J = 1000: 91.4 +- 3.5 percent"""
        result = run_power_experiment(power_design(gmd, methods=(TestMethod.ASYMPTOTIC,), threads=4))
        assert 100 * result.rate(TestMethod.ASYMPTOTIC, 0.05).rate == pytest.approx(91.4, abs=3.5)

    def test_spearman_contamination(self, spearman):
        """Test pi = 0.1, theta = 0.5, k = 200, n0 = 15, J = 1000: 85.7 +- 3.5 percent"""
        design = spearman_power_design(spearman, pi=0.1, k=200, n0=15, replications=1000, threads=4)
        result = run_power_experiment(design)
        assert result.D_k == pytest.approx(0.0225, rel=1e-12)
        assert 100 * result.rate(TestMethod.ASYMPTOTIC, 0.05).rate == pytest.approx(85.7, abs=3.5)
