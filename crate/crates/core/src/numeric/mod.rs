//! Floating-point side: F₄ series, evaluation of the connection matrices,
//! path transport of the Pfaffian system and local monodromy.

mod eval;
mod integrate;
pub mod mat;
mod monodromy;
mod params;
mod path;
pub mod real;
pub use real::DoubleDouble;
mod series;

pub use eval::{divisor_distances, eval_form, eval_form_rational, CompiledForm, CompiledRf};
pub use integrate::{
    integrate_compiled, integrate_path, integrate_path_with_precision, IntegrationOptions,
    Transport, TransportF64,
};
pub use mat::{Mat4, C64};
pub use monodromy::{
    default_base, expected_exponents, flatness_defect, flatness_loop, loop_path, monodromy,
    monodromy_all, MonodromyOptions, MonodromyResult, DETOUR,
};
pub use params::{parse_rational, NumericParams, ParamError};
pub use path::{Orientation, PathSpec, Piece, Segment};
pub use series::{
    f4_coefficients, f4_jet, f4_series, gauss_2f1, pde_residual, pde_residual_at, sample_grid,
    CompiledOperator, SeriesJet,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("outside the convergence domain: {0}")]
    Domain(String),
    #[error("series term exceeded the magnitude cap")]
    Overflow,
    #[error("pole: divisor {0} vanishes at the evaluation point")]
    Pole(String),
    #[error("path comes within {distance:.3e} of divisor {divisor}")]
    PathTooClose { divisor: String, distance: f64 },
    #[error("invalid path: {0}")]
    Path(String),
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("tolerance not met within {steps} steps")]
    ToleranceNotMet { steps: usize },
    #[error("unsupported precision: {0} bits (at most 106)")]
    Precision(u32),
    #[error("eigenvalue computation failed for {0}")]
    Eigen(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("algebra: {0}")]
    Algebra(String),
    #[error(transparent)]
    Param(#[from] ParamError),
}
