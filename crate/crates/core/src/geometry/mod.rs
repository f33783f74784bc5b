//! Moduli of convexity and smoothness of finite-dimensional Orlicz spaces
//! and fixed points of finite affine isometric actions.

mod action;
mod modulus;

pub use action::{
    fixed_point_search, run_search, scenario, AffineAction, AffineMap, FixedPointResult, Scenario,
    C2_OFFSET, C4_TRANSLATION, MAX_ITERATIONS, SCENARIOS,
};
pub use modulus::{
    convexity_curve, convexity_modulus_estimate, convexity_witness_error, extremal_pair,
    lp_modulus, norm, rao_ren_check, sampled_convexity_floor, smoothness_modulus_estimate, Extremum, ModulusEstimate,
    RaoRenRecord,
};
