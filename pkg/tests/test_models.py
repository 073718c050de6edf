"""
Unit tests for the data models.
Tests validation, properties and edge cases.
"""
import pytest
import numpy as np

from src.errors import DimensionMismatchError, InputError, InsufficientGroupsError, InsufficientSampleError
from src.models import (
    BootstrapResult,
    ContaminationDesign,
    Dataset,
    DecisionTraceEntry,
    DecompositionDiagnostics,
    ExperimentDesign,
    GroupEstimates,
    GroupSample,
    PopulationSpec,
    SubsampleResult,
    TestResult,
    contaminated_count,
)
from src.stat_types import TestMethod


def make_result(**overrides):
    fields = dict(
        T_k=0.1, S_lhat=1.0, script_T=0.5, p_value=0.3, k=2,
        estimates=[GroupEstimates(1.0, 1.0, 4), GroupEstimates(2.0, 4.0, 4)],
        method=TestMethod.ASYMPTOTIC, alpha=0.05, rejected=False,
    )
    fields.update(overrides)
    return TestResult(**fields)


@pytest.mark.unit
class TestGroupSample:
    """Test GroupSample model"""

    def test_scalars_become_column(self):
        """Test scalar observations are stored as (n, 1)"""
        sample = GroupSample(3, [1.0, 2.0, 3.0])
        assert sample.observations.shape == (3, 1)
        assert sample.group_id == "3"
        assert (sample.n, sample.input_dim) == (3, 1)

    def test_vectors_kept(self):
        """Test bivariate observations are stored as (n, 2)"""
        sample = GroupSample("g", [[1, 2], [3, 4], [5, 6]])
        assert sample.input_dim == 2
        assert sample.observations.dtype == np.float64

    def test_non_finite_rejected(self):
        """Test NaN values raise"""
        with pytest.raises(InputError, match="NaN or infinite"):
            GroupSample("g", [1.0, float("nan")])

    def test_bad_shape_rejected(self):
        """Test three-dimensional input raises"""
        with pytest.raises(DimensionMismatchError):
            GroupSample("g", np.zeros((2, 2, 2)))

    def test_validate_for_kernel(self, gmd, spearman):
        """Test size and dimension checks against a kernel"""
        sample = GroupSample("g", [1.0, 2.0, 3.0])
        sample.validate_for(gmd, minimum=2)
        with pytest.raises(InsufficientSampleError, match="needs at least 4"):
            sample.validate_for(gmd)
        with pytest.raises(DimensionMismatchError):
            sample.validate_for(spearman)


@pytest.mark.unit
class TestDataset:
    """Test Dataset model"""

    def test_properties(self, small_dataset):
        """Test k, sizes and balance"""
        assert small_dataset.k == 3
        assert small_dataset.sizes == [5, 5, 5]
        assert small_dataset.is_balanced
        assert small_dataset.imbalance_ratio == 1.0
        assert small_dataset.stacked().shape == (3, 5, 1)

    def test_unbalanced(self):
        """Test ratio and refusal to stack"""
        dataset = Dataset.from_arrays([[1.0, 2.0], [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]])
        assert not dataset.is_balanced
        assert dataset.imbalance_ratio == 3.0
        with pytest.raises(InputError):
            dataset.stacked()

    def test_needs_two_groups(self):
        """Test a single group raises"""
        with pytest.raises(InsufficientGroupsError):
            Dataset.from_arrays([[1.0, 2.0]])

    def test_mixed_dimensions(self):
        """Test groups must share the observation dimension"""
        with pytest.raises(DimensionMismatchError):
            Dataset([GroupSample("a", [1.0, 2.0]), GroupSample("b", [[1.0, 2.0]])])

    def test_group_ids(self):
        """Test explicit ids and index defaults"""
        assert [g.group_id for g in Dataset.from_arrays([[1.0], [2.0]]).groups] == ["0", "1"]
        named = Dataset.from_arrays([[1.0], [2.0]], group_ids=["x", "y"])
        assert [g.group_id for g in named.groups] == ["x", "y"]

    def test_permuted(self, small_dataset):
        """Test reordering groups"""
        permuted = small_dataset.permuted([2, 0, 1])
        assert [g.group_id for g in permuted.groups] == ["2", "0", "1"]


@pytest.mark.unit
class TestGroupEstimates:
    """Test GroupEstimates model"""

    def test_non_finite(self):
        """Test infinite estimates raise"""
        with pytest.raises(ValueError, match="theta_hat must be finite"):
            GroupEstimates(float("inf"), 0.0, 4)

    def test_sample_size(self):
        """Test n must be positive"""
        with pytest.raises(ValueError, match="Sample size"):
            GroupEstimates(0.0, 0.0, 0)


@pytest.mark.unit
class TestResults:
    """Test result models"""

    def test_p_value_range(self):
        """Test p outside [0, 1] raises"""
        with pytest.raises(ValueError, match="p-value"):
            make_result(p_value=1.5)

    def test_degenerate_consistency(self):
        """Test a degenerate result cannot carry a statistic or reject"""
        with pytest.raises(ValueError):
            make_result(degenerate=True, script_T=0.3)
        with pytest.raises(ValueError):
            make_result(degenerate=True, script_T=None, rejected=True)

    def test_theta_hats(self):
        """Test theta_hat vector in group order"""
        assert make_result().theta_hats.tolist() == [1.0, 2.0]

    def test_bootstrap_p_value(self):
        """Test a bootstrap p-value of 0 is impossible"""
        with pytest.raises(ValueError):
            BootstrapResult(observed=1.0, replicates=np.zeros(9), p_value=0.0, test_result=make_result(), seed=0)
        result = BootstrapResult(observed=1.0, replicates=np.zeros(9), p_value=0.1, test_result=make_result(), seed=0)
        assert result.B == 9

    def test_subsample_bounds(self):
        """Test p_adj must lie between min p and L min p"""
        kwargs = dict(rejected=False, per_draw_results=[], n_tilde=5, L=2, alpha=0.05, seed=0)
        SubsampleResult(p_values=[0.1, 0.4], p_adj=0.2, **kwargs)
        with pytest.raises(ValueError, match="p_adj"):
            SubsampleResult(p_values=[0.1, 0.4], p_adj=0.05, **kwargs)
        with pytest.raises(ValueError, match="Expected 2"):
            SubsampleResult(p_values=[0.1], p_adj=0.1, **kwargs)

    def test_trace_entry_frozen(self):
        """Test trace entries are immutable"""
        entry = DecisionTraceEntry(10, 0.2, False)
        with pytest.raises(AttributeError):
            entry.rejected = True

    def test_decomposition_tolerance(self):
        """Test the residual check scales with max(1, |T_k|)"""
        small = DecompositionDiagnostics(T_k=0.5, D_k_true=0.1, T_lin=0.3, R_k=0.1, residual=5e-11)
        large = DecompositionDiagnostics(T_k=100.0, D_k_true=50.0, T_lin=40.0, R_k=10.0, residual=5e-9)
        assert small.within_tolerance(1e-10)
        assert large.within_tolerance(1e-10)
        assert not small.within_tolerance(1e-11)


@pytest.mark.unit
class TestDesigns:
    """Test population and experiment designs"""

    def test_population_input_dim(self):
        """Test bivariate populations are 2-dimensional"""
        assert PopulationSpec.normal().input_dim == 1
        assert PopulationSpec.bivariate_normal(0.3).input_dim == 2

    def test_spearman_target_range(self):
        """Test a Spearman target outside (-1, 1) raises"""
        with pytest.raises(ValueError, match="Spearman target"):
            PopulationSpec.bivariate_normal(target_param=1.0)

    def test_contaminated_count_rounds_half_up(self):
        """Test round(pi * k) with halves rounded up"""
        assert contaminated_count(0.25, 10) == 3
        assert contaminated_count(0.05, 10) == 1
        assert contaminated_count(0.04, 10) == 0

    def test_contamination_validation(self):
        """Test pi outside [0, 1] raises"""
        with pytest.raises(ValueError, match="pi"):
            ContaminationDesign(pi=1.5, theta_alt=1.0, theta_null=1.0, k=10, n0=5)

    def test_experiment_validate(self, gmd):
        """Test every invalid field is reported"""
        design = ExperimentDesign(
            scenario=ContaminationDesign(pi=0.4, theta_alt=1.5, theta_null=1.0, k=10, n0=5),
            kernel=gmd, k=20, n0=3, replications=0, alpha_levels=(0.05, 1.0), threads=0,
            base=PopulationSpec.normal(),
        )
        errors = design.validate()
        assert any("replications" in e for e in errors)
        assert any("n0 must be >= 2m" in e for e in errors)
        assert any("alpha" in e for e in errors)
        assert any("threads" in e for e in errors)
        assert any("disagrees" in e for e in errors)

    def test_experiment_null_flag(self, gmd):
        """Test population scenarios are null with D_k = 0"""
        design = ExperimentDesign(scenario=PopulationSpec.normal(), kernel=gmd, k=10, n0=5)
        assert design.is_null
        assert design.D_k == 0.0
        assert design.validate() == []
