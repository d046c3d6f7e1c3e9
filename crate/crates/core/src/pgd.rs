//! Zero-pressure gas dynamics: `rho_t + (rho u)_x = 0`, `(rho u)_t + (rho u^2)_x = 0`.
//!
//! The only eigenvalue is `u` (double, linearly degenerate), so Riemann
//! solutions are built from contacts, a vacuum when `u_left < u_right`, or a
//! delta-shock when `u_left > u_right`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::state::{Model, PrimState, RiemannData};
use crate::wave::{DeltaShockProfile, Wave, WaveFan, WaveKind};

/// Absolute residuals of the generalized Rankine-Hugoniot system
/// `dx/dt = sigma`, `dw/dt = sigma[rho] - [rho u]`, `d(w sigma)/dt = sigma[rho u] - [rho u^2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrhResidual {
    /// The line moves with the velocity it carries: `|u_delta - sigma|`.
    pub r_position: f64,
    pub r_mass: f64,
    pub r_momentum: f64,
}

impl GrhResidual {
    pub fn max(&self) -> f64 {
        self.r_position.max(self.r_mass).max(self.r_momentum)
    }
}

/// Speed of the delta-shock: density-weighted by `sqrt(rho)`.
pub fn delta_speed(left: PrimState, right: PrimState) -> f64 {
    let (sl, sr) = (left.rho.sqrt(), right.rho.sqrt());
    (sr * right.u + sl * left.u) / (sr + sl)
}

/// Delta-shock profile for `u_left > u_right`. The caller checks the regime.
pub fn delta_profile(data: &RiemannData) -> DeltaShockProfile {
    let (l, r) = (data.left, data.right);
    let sigma = delta_speed(l, r);
    let j = data.jumps();
    DeltaShockProfile {
        sigma,
        w1_rate: (l.rho * r.rho).sqrt() * (l.u - r.u),
        w2_rate: j.momentum_weight_rate(sigma),
        u_delta: sigma,
    }
}

pub fn solve_pgd_riemann(data: &RiemannData) -> Result<WaveFan> {
    data.expect_model(Model::Pgd)?;
    let (l, r) = (data.left, data.right);
    let waves = if l.u < r.u {
        let vl = PrimState::vacuum(l.u);
        let vr = PrimState::vacuum(r.u);
        vec![
            Wave::new(WaveKind::Contact { speed: l.u }, l, vl),
            Wave::new(WaveKind::Vacuum { xi_left: l.u, xi_right: r.u }, vl, vr),
            Wave::new(WaveKind::Contact { speed: r.u }, vr, r),
        ]
    } else if l.u == r.u {
        if l == r {
            Vec::new()
        } else {
            vec![Wave::new(WaveKind::Contact { speed: l.u }, l, r)]
        }
    } else {
        let profile = delta_profile(data);
        vec![Wave::new(WaveKind::DeltaShock { profile }, l, r)]
    };
    WaveFan::new(*data, waves)
}

/// Residuals of the generalized Rankine-Hugoniot relation for `profile`
/// against the jumps of `data`. Weights are linear in time with zero initial
/// value, so `dw/dt = w1_rate` and `d(w sigma)/dt = sigma w1_rate`.
pub fn grh_residual(profile: &DeltaShockProfile, data: &RiemannData) -> GrhResidual {
    let j = data.jumps();
    let s = profile.sigma;
    GrhResidual {
        r_position: (profile.u_delta - s).abs(),
        r_mass: (profile.w1_rate - j.mass_weight_rate(s)).abs(),
        r_momentum: (s * profile.w1_rate - j.momentum_weight_rate(s)).abs(),
    }
}
