use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Primitive state: density and velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimState {
    pub rho: f64,
    pub u: f64,
}

impl PrimState {
    pub const fn new(rho: f64, u: f64) -> Self {
        Self { rho, u }
    }

    /// Zero-density state carrying velocity `u`.
    pub const fn vacuum(u: f64) -> Self {
        Self { rho: 0.0, u }
    }

    pub fn momentum(&self) -> f64 {
        self.rho * self.u
    }

    pub fn is_vacuum(&self) -> bool {
        self.rho == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Aw-Rascle with p(rho) = rho^gamma, 0 < gamma < 1.
    Ar,
    /// Perturbed Aw-Rascle, 1 < gamma < 3.
    Par,
    /// Zero-pressure gas dynamics.
    Pgd,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Ar => "ar",
            Model::Par => "par",
            Model::Pgd => "pgd",
        }
    }

    pub fn gamma_in_range(self, gamma: f64) -> bool {
        match self {
            Model::Ar => gamma > 0.0 && gamma < 1.0,
            Model::Par => gamma > 1.0 && gamma < 3.0,
            Model::Pgd => true,
        }
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ar" => Ok(Model::Ar),
            "par" => Ok(Model::Par),
            "pgd" => Ok(Model::Pgd),
            other => Err(format!("unknown model '{other}' (expected ar, par or pgd)")),
        }
    }
}

/// Two-state Riemann initial data for one of the three models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannData {
    pub left: PrimState,
    pub right: PrimState,
    pub gamma: f64,
    pub model: Model,
}

impl RiemannData {
    /// Validated constructor. `gamma` is ignored for [`Model::Pgd`].
    pub fn new(model: Model, gamma: f64, left: PrimState, right: PrimState) -> Result<Self> {
        for s in [left, right] {
            if !(s.rho > 0.0) || !s.rho.is_finite() {
                return Err(Error::NonPositiveDensity(s.rho));
            }
            if !s.u.is_finite() {
                return Err(Error::Domain(format!("velocity {} is not finite", s.u)));
            }
        }
        if !model.gamma_in_range(gamma) {
            return Err(Error::GammaOutOfRange { model, gamma });
        }
        Ok(Self { left, right, gamma, model })
    }

    pub fn ar(gamma: f64, left: (f64, f64), right: (f64, f64)) -> Result<Self> {
        Self::new(Model::Ar, gamma, left.into(), right.into())
    }

    pub fn par(gamma: f64, left: (f64, f64), right: (f64, f64)) -> Result<Self> {
        Self::new(Model::Par, gamma, left.into(), right.into())
    }

    pub fn pgd(left: (f64, f64), right: (f64, f64)) -> Result<Self> {
        Self::new(Model::Pgd, 1.0, left.into(), right.into())
    }

    /// Same states, different exponent.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.model, gamma, self.left, self.right)
    }

    pub fn with_model(&self, model: Model, gamma: f64) -> Result<Self> {
        Self::new(model, gamma, self.left, self.right)
    }

    pub(crate) fn expect_model(&self, model: Model) -> Result<()> {
        if self.model == model {
            Ok(())
        } else {
            Err(Error::ModelMismatch(self.model))
        }
    }

    /// Jumps `[q] = q_right - q_left` for rho, rho*u and rho*u^2.
    pub fn jumps(&self) -> Jumps {
        let (l, r) = (self.left, self.right);
        Jumps {
            rho: r.rho - l.rho,
            mass_flux: r.rho * r.u - l.rho * l.u,
            momentum_flux: r.rho * r.u * r.u - l.rho * l.u * l.u,
        }
    }
}

impl From<(f64, f64)> for PrimState {
    fn from((rho, u): (f64, f64)) -> Self {
        PrimState::new(rho, u)
    }
}

/// Jumps across the Riemann data used by the delta-shock weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jumps {
    pub rho: f64,
    /// `[rho u]`
    pub mass_flux: f64,
    /// `[rho u^2]`
    pub momentum_flux: f64,
}

impl Jumps {
    /// `sigma [rho] - [rho u]`
    pub fn mass_weight_rate(&self, sigma: f64) -> f64 {
        sigma * self.rho - self.mass_flux
    }

    /// `sigma [rho u] - [rho u^2]`
    pub fn momentum_weight_rate(&self, sigma: f64) -> f64 {
        sigma * self.mass_flux - self.momentum_flux
    }
}
