"""Default values for laguerre-lab.

This module contains the default numerical settings, tolerances and named
parameter presets. Reals are kept as decimal strings so that they can be
converted at whatever working precision the caller selects.

Attributes:
    DEFAULT_PRECISION_BITS (int): Working precision in bits (~100 digits).
    MIN_PRECISION_BITS (int): Smallest accepted working precision.
    DEFAULT_QUAD_M (int): Default number of Gauss-Laguerre nodes.
    QL_MAX_ITERATIONS (int): Per-eigenvalue iteration cap of the QL solver.
    PRECISION_BUDGET_BASE (int): Base of the recommended precision budget.
    PRECISION_BUDGET_PER_DEGREE (int): Extra bits recommended per degree.
    BREAKDOWN_EXPONENT (float): Breakdown threshold is 10**(-x * bits).
    BETA_GUARD (str): Denominator guard of the two-term beta_n formula.
    FD_STEP (str): Relative finite-difference step in t-space.
    FD_ORDER (int): Central-stencil order in t-space.
    FD_SHRINK (int): Factor the step is shrunk by when a stencil leaves t > 0.
    SCALING_FD_STEP (str): Relative finite-difference step in s-space.
    SCALING_N_LIST (tuple): Default degrees of a scaling sequence.
    SCALING_DEEP_N_LIST (tuple): Degrees used with the deep flag.
    SCALING_SAFETY (int): Multiplier applied to empirical uncertainties.
    SCALING_FLOOR (str): Floor added to empirical tolerances.
    NEWTON_MAX_ITERATIONS (int): Endpoint solver iteration cap.
    NEWTON_DAMPING (str): Step damping factor on domain violation.
    CHEBYSHEV_NODES (int): Chebyshev-Gauss nodes for density integrals.
    LOG_KERNEL_NODES (int): Chebyshev coefficients of the log potential.
    DENSITY_SAMPLES (int): Interior sample points of the density checks.
    SIGN_GUARD (str): Guard on |R_n + R_(n-1)| of the sigma branch choice.
    COMPATIBILITY_TOLERANCE (str): Ladder and recurrence identity tolerance.
    DIFFERENTIAL_TOLERANCE (str): dr, Toda and Riccati tolerance.
    PDE_TOLERANCE (str): PDE and sigma-PDE tolerance.
    COULOMB_TOLERANCE (str): Density check tolerance.
    REPORT_SCHEMA (int): Version of the JSON report layout.
    EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR, EXIT_NUMERIC_ERROR (int):
        Command-line exit codes.
    PRESETS (dict): Named reference parameter sets.
"""

__author__ = "laguerre-lab developers"
__version__ = "0.1.0"
__license__ = "MIT"
__status__ = "Development"
__package__ = "laguerre_lab"
__date__ = "2026-10-17"


DEFAULT_PRECISION_BITS          = 333
MIN_PRECISION_BITS              = 64

DEFAULT_QUAD_M                  = 200
QL_MAX_ITERATIONS               = 60

PRECISION_BUDGET_BASE           = 333
PRECISION_BUDGET_PER_DEGREE     = 20
BREAKDOWN_EXPONENT              = 0.24
BETA_GUARD                      = "1e-10"

FD_STEP                         = "1e-8"
FD_ORDER                        = 4
FD_SHRINK                       = 10

SCALING_FD_STEP                 = "1e-3"
SCALING_N_LIST                  = (8, 16, 32, 64)
SCALING_DEEP_N_LIST             = (8, 16, 32, 64, 128)
SCALING_SAFETY                  = 10
SCALING_FLOOR                   = "1e-8"

NEWTON_MAX_ITERATIONS           = 100
NEWTON_DAMPING                  = "0.5"

CHEBYSHEV_NODES                 = 2000
LOG_KERNEL_NODES                = 600
DENSITY_SAMPLES                 = 5

SIGN_GUARD                      = "1e-20"

COMPATIBILITY_TOLERANCE         = "1e-30"
DIFFERENTIAL_TOLERANCE          = "1e-12"
PDE_TOLERANCE                   = "1e-8"
COULOMB_TOLERANCE               = "1e-15"

REPORT_SCHEMA                   = 1

EXIT_OK                         = 0
EXIT_CHECK_FAILED               = 1
EXIT_CONFIG_ERROR               = 2
EXIT_NUMERIC_ERROR              = 3

PRESETS = {
    "N1": {
        "alpha": "1",
        "deformations": [{"t": "1", "lambda": "1"}],
    },
    "N2": {
        "alpha": "1",
        "deformations": [
            {"t": "0.5", "lambda": "0.7"},
            {"t": "1.5", "lambda": "0.3"},
        ],
    },
    "classical": {
        "alpha": "1",
        "deformations": [{"t": "1", "lambda": "0"}],
    },
}
