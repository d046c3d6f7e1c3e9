//! Exact Riemann solvers for the Aw-Rascle model, its perturbed variant and
//! pressureless gas dynamics, the delta-shock limits that connect them, and a
//! WENO5 shock-capturing scheme for reproducing the concentration process.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ar;
pub mod conservation;
pub mod error;
pub mod par;
pub mod pgd;
mod root;
pub mod scheme;
pub mod state;
pub mod wave;

pub use ar::{
    ar_classify, ar_convergence_table, ar_eigenvalues, ar_limit_quantities, ar_shock_speed, ar_wave_curve_u,
    solve_ar_riemann, ArConvergenceRow, ArLimitQuantities, ArRegion, ArRegionLabel,
};
pub use error::{Error, Result};
pub use par::{
    par_convergence_table, par_eigenvalues, par_in_region_IV, par_limit_quantities, par_rarefaction_u,
    par_shock_locus_residual, solve_par_riemann, ParConvergenceRow, ParLimitQuantities, ParRegion,
};
pub use pgd::{grh_residual, solve_pgd_riemann, GrhResidual};
pub use state::{Model, PrimState, RiemannData};
pub use wave::{eval_self_similar, DeltaShockProfile, FanWarning, StateSample, Wave, WaveFan, WaveKind};
