//! Conserved variables and fluxes of the three systems.
//!
//! | model | U2                   | F2                    |
//! |-------|----------------------|-----------------------|
//! | AR    | rho u + rho^(g+1)    | rho u^2 + u rho^(g+1) |
//! | PAR   | rho u + rho^g / g    | rho u^2 + u rho^g     |
//! | PGD   | rho u                | rho u^2               |
//!
//! The first component is always `rho` with flux `rho u`.

use crate::state::{Model, PrimState};

pub fn conserved(model: Model, gamma: f64, s: PrimState) -> [f64; 2] {
    let m = s.rho * s.u;
    let q = match model {
        Model::Ar => m + s.rho.powf(gamma + 1.0),
        Model::Par => m + s.rho.powf(gamma) / gamma,
        Model::Pgd => m,
    };
    [s.rho, q]
}

pub fn flux(model: Model, gamma: f64, s: PrimState) -> [f64; 2] {
    let m = s.rho * s.u;
    let f2 = match model {
        Model::Ar => s.u * (m + s.rho.powf(gamma + 1.0)),
        Model::Par => s.u * (m + s.rho.powf(gamma)),
        Model::Pgd => m * s.u,
    };
    [m, f2]
}

/// Recover the primitive state from `(U1, U2)`. `U1` must be positive.
pub fn primitive(model: Model, gamma: f64, u1: f64, u2: f64) -> PrimState {
    let rho = u1;
    let p = match model {
        Model::Ar => rho.powf(gamma + 1.0),
        Model::Par => rho.powf(gamma) / gamma,
        Model::Pgd => 0.0,
    };
    PrimState::new(rho, (u2 - p) / rho)
}

/// Absolute Rankine-Hugoniot residuals `|-s [U_k] + [F_k]|` across a jump.
pub fn rh_residual(model: Model, gamma: f64, left: PrimState, right: PrimState, speed: f64) -> [f64; 2] {
    let (ul, ur) = (conserved(model, gamma, left), conserved(model, gamma, right));
    let (fl, fr) = (flux(model, gamma, left), flux(model, gamma, right));
    [0, 1].map(|k| (-speed * (ur[k] - ul[k]) + (fr[k] - fl[k])).abs())
}

/// Rankine-Hugoniot residuals divided by the magnitude of the terms involved.
pub fn rh_residual_relative(model: Model, gamma: f64, left: PrimState, right: PrimState, speed: f64) -> [f64; 2] {
    let (ul, ur) = (conserved(model, gamma, left), conserved(model, gamma, right));
    let (fl, fr) = (flux(model, gamma, left), flux(model, gamma, right));
    let abs = rh_residual(model, gamma, left, right, speed);
    [0, 1].map(|k| {
        let scale = speed.abs() * (ur[k].abs() + ul[k].abs()) + fr[k].abs() + fl[k].abs();
        abs[k] / scale.max(1.0)
    })
}
