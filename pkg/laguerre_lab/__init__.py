#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from laguerre_lab.errors import (
    LabError,
    ParameterError,
    DomainError,
    NumericError,
    EigenSolveError,
    PrecisionExhaustedError,
    IterationBreakdownError,
    DegeneracyError,
    SolverError,
)
from laguerre_lab.defaults import (
    DEFAULT_PRECISION_BITS,
    DEFAULT_QUAD_M,
    PRESETS,
    REPORT_SCHEMA,
)
from laguerre_lab.report import (
    Residual,
    ResidualReport,
    decimal,
)
from laguerre_lab.weights import (
    Deformation,
    WeightParams,
    preset,
    deformation_factor,
    eval_weight,
    eval_potential,
    eval_potential_derivative,
    potential_divided_difference,
)
from laguerre_lab.quadrature import (
    QuadratureRule,
    build_rule,
    rule_for,
    integrate,
    moment,
    deformed_weights,
    moment_refinement,
)
from laguerre_lab.orthopoly import (
    OPTable,
    build_op_table,
    eval_poly,
    hankel_det,
    moment_hankel_det,
    iter_poly_values,
    orthogonality_defect,
    christoffel_darboux_residual,
    sigma_from_table,
)
from laguerre_lab.ladder import (
    AuxTable,
    compute_aux,
    eval_ladder_coeffs,
    direct_ladder_coeffs,
    default_z_samples,
    compatibility_residuals,
    alpha_from_aux,
    auxiliary_identity_residuals,
)
from laguerre_lab.recurrences import (
    DE3_PRINTED,
    DE3_LAMBDA1,
    Recurrence,
    AuxComparison,
    breakdown_threshold,
    quadrature_initial_data,
    iterate_difference_system,
    recurrence_from_aux,
    sigma_from_aux,
    compare_aux,
    sum_rule_residuals,
)
from laguerre_lab.calculus import (
    FDConfig,
    SigmaJet,
    Snapshot,
    TPointEvaluator,
    partial,
    second_partial,
    stencil_weights,
    delta,
    delta2,
    sigma_jet,
    differential_relation_residuals,
    toda_residuals,
    riccati_residuals,
    pde_residual_R,
    sigma_pde_residual,
    lattice_points,
    lattice_residuals,
)
from laguerre_lab.scaling import (
    ScalingSequence,
    Extrapolation,
    ScaledPoint,
    build_scaling_sequence,
    extrapolate_values,
    extrapolate,
    scaled_point,
    scaled_pde_residuals,
    delta_covariance_residual,
)
from laguerre_lab.coulomb import (
    SupportInterval,
    endpoint_residuals,
    solve_endpoints,
    density,
    density_from_integral,
    lagrange_multiplier,
    log_potential,
    check_density,
    integral_identity_residuals,
    density_limit_profile,
)

__version__ = "0.1.0"
