"""Configuration settings for pipframe"""
import os

# === PATHS ===
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
REPORTS_DIR = os.path.join(BASE_DIR, 'reports')
SCENARIOS_DIR = os.path.join(BASE_DIR, 'scenarios')

# === REPORTS ===
REPORT_SCHEMA = 'pipframe/1'
REPORT_FORMATS = ('json', 'text', 'both')
DEFAULT_FORMAT = 'both'
TIMINGS_SUFFIX = '.timings.json'

# === RANDOMNESS ===
DEFAULT_SEED = 20240601
DEFAULT_TRIALS = 50

# === TOLERANCES ===
GL_RELATIVE_TOL = 1e-8      # σ_min(S) > tol·‖S‖ means S is in GL(H)
RANK_RELATIVE_TOL = 1e-10   # singular values below tol·σ_max span the kernel
DUALITY_REL_TOL = 0.02      # dual_norm vs norm of the dual descriptor
IDENTITY_TOL = 1e-10        # identities that hold up to roundoff
BOUND_TOL = 1e-12           # uniform bound claims on families

# === CONVEX MINIMIZER ===
INDUCTIVE_MAX_ITER = 500    # cutting-plane rounds before giving up
INDUCTIVE_WARM_ITER = 60    # projected subgradient steps used as warm start
INDUCTIVE_REL_TOL = 1e-3    # relative gap between best value and lower bound
INDUCTIVE_ABS_TOL = 1e-12

# === OPERATOR NORMS ===
NORM_PROBES = 64            # random probes before local maximization
NORM_POLISH_STARTS = 4      # best probes handed to the local optimizer

# === TRUNCATION SWEEPS ===
SWEEP_SIZES = (4, 8, 16, 32, 64, 128)
GROWTH_FACTOR = 10.0        # bounded across a sweep means ratio ≤ this
DECAY_RATES = (0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0)  # D(C_φ) probes n^-s

# === SCALES ===
SCALE_MAX_INDEX = 8
RKHS_PSD_TOL = 1e-10
GAUSSIAN_WIDTH = 1.0

# === CONCURRENCY ===
DEFAULT_JOBS = 1
