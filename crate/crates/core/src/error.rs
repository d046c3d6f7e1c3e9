use thiserror::Error;

use crate::state::Model;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("density must be positive, got {0}")]
    NonPositiveDensity(f64),

    #[error("gamma = {gamma} is outside the admissible range for {model:?}")]
    GammaOutOfRange { model: Model, gamma: f64 },

    #[error("state outside the domain of definition: {0}")]
    Domain(String),

    #[error("right density {right} does not give an admissible shock from left density {left}")]
    NotAdmissible { left: f64, right: f64 },

    #[error("data is not in the delta-shock regime (requires u_right < u_left)")]
    NotDeltaRegime,

    #[error("density {rho} is on the wrong side of the base density {base} for this branch")]
    Branch { rho: f64, base: f64 },

    #[error("the Riemann-invariant relation forces a negative square root of velocity")]
    NegativeRoot,

    #[error("negative radicand {0} in the shock locus")]
    NegativeRadicand(f64),

    #[error("root finding did not converge: {0}")]
    NoConvergence(String),

    #[error("velocity {0} is negative; the perturbed model needs u >= 0")]
    NegativeVelocity(f64),

    #[error("gamma = {gamma} leaves the two-shock region")]
    RegionMismatch { gamma: f64 },

    #[error("the family-{family} characteristic speed decreases across the rarefaction at gamma = {gamma}; the curve is not genuinely nonlinear here")]
    NonlinearityLost { family: u8, gamma: f64 },

    #[error("malformed wave fan: {0}")]
    Structure(String),

    #[error("intermediate density overflows f64 (ln rho* = {ln_rho_star})")]
    Overflow { ln_rho_star: f64 },

    #[error("model {0:?} does not match the requested solver")]
    ModelMismatch(Model),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numerical blowup at t = {time}")]
    UnstableBlowup { time: f64 },

    #[error("concentration trend failed: {quantity} is not monotone at index {index}")]
    NonMonotone { quantity: &'static str, index: usize },

    #[error("need at least two simulation reports, got {0}")]
    InsufficientReports(usize),
}
