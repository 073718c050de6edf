"""
Statistical constants and computational limits.
These numbers appear throughout the app - define once, use everywhere (DRY).
"""

# Test defaults
DEFAULT_ALPHA = 0.05  # One-sided nominal level
DEFAULT_ALPHA_LEVELS = (0.05, 0.10)  # Columns of the simulation tables
BOOTSTRAP_HINT_K = 500  # Below this k the CLI suggests the bootstrap

# Linear bootstrap
DEFAULT_BOOTSTRAP_B = 1000  # Replicates in standard mode
MAX_BOOTSTRAP_REDRAWS = 100  # Redraws of a zero-variance replicate before giving up

# U-statistic enumeration limits
DEFAULT_COMPLEXITY_BUDGET = 10**9  # Max kernel-product terms for theta-squared
ORACLE_ENUMERATION_LIMIT = 10**8  # Max ordered tuples n^(2m) for the oracle
PAIR_CACHE_LIMIT = 2_000_000  # Disjoint-pair index tables cached up to this size
BATCH_CELL_LIMIT = 4_000_000  # Max groups x products materialised at once

# Random subsampling
DEFAULT_SUBSAMPLE_L = 20  # Draws per subsample test
MAX_SUBSAMPLE_L = 30  # Recommended ceiling on draws
DEFAULT_N_TILDE_SCHEDULE = (10, 20, 30, 40, 50)  # Adaptive subsample sizes
DEFAULT_GRID_L = (5, 10, 15, 20, 25, 30, 35, 40)  # Draw counts of the stability grid
DEFAULT_GRID_N_TILDE = DEFAULT_N_TILDE_SCHEDULE  # Subsample sizes of the stability grid

# Sample-size comparability
DEFAULT_IMBALANCE_RATIO = 3.0  # Warn when max n_i / min n_i exceeds this

# Monte Carlo experiments
DEFAULT_REPLICATIONS = 2000  # Desk-scale J
SYMMETRY_CHECK_TRIALS = 1000  # Random tuples tried by the symmetry validator

# Numerical tolerances
GMD_FAST_PATH_RTOL = 1e-12  # Sorted-order GMD vs pair enumeration
DECOMPOSITION_RTOL = 1e-10  # Residual of T_k = D_k + T_lin + R_k
CALIBRATION_XTOL = 1e-12  # Root-find tolerance for Spearman calibration
CLASSICAL_AGREEMENT_TOL = 1e-6  # Calibrated rho vs 2 sin(pi rho_s / 6)

# Reporting
REPORT_SIGNIFICANT_DIGITS = 17  # Enough to round-trip any float64
