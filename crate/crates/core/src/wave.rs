//! Wave fans: the self-similar structure of a Riemann solution in `xi = x/t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Model, PrimState, RiemannData};
use crate::{ar, par};

/// Singular part of a delta-shock: the line `x = sigma t` carries
/// `w1(t) = w1_rate t` of density and `w2(t) = w2_rate t` of momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaShockProfile {
    pub sigma: f64,
    pub w1_rate: f64,
    pub w2_rate: f64,
    /// Velocity assigned on the discontinuity itself.
    pub u_delta: f64,
}

impl DeltaShockProfile {
    pub fn w1(&self, t: f64) -> f64 {
        self.w1_rate * t
    }

    pub fn w2(&self, t: f64) -> f64 {
        self.w2_rate * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WaveKind {
    Shock { family: u8, speed: f64 },
    Rarefaction { family: u8, xi_head: f64, xi_tail: f64 },
    Contact { speed: f64 },
    Vacuum { xi_left: f64, xi_right: f64 },
    DeltaShock { profile: DeltaShockProfile },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wave {
    #[serde(flatten)]
    pub kind: WaveKind,
    pub left: PrimState,
    pub right: PrimState,
}

impl Wave {
    pub fn new(kind: WaveKind, left: PrimState, right: PrimState) -> Self {
        Self { kind, left, right }
    }

    /// Leftmost similarity coordinate occupied by the wave.
    pub fn xi_min(&self) -> f64 {
        match self.kind {
            WaveKind::Shock { speed, .. } | WaveKind::Contact { speed } => speed,
            WaveKind::Rarefaction { xi_head, .. } => xi_head,
            WaveKind::Vacuum { xi_left, .. } => xi_left,
            WaveKind::DeltaShock { profile } => profile.sigma,
        }
    }

    pub fn xi_max(&self) -> f64 {
        match self.kind {
            WaveKind::Shock { speed, .. } | WaveKind::Contact { speed } => speed,
            WaveKind::Rarefaction { xi_tail, .. } => xi_tail,
            WaveKind::Vacuum { xi_right, .. } => xi_right,
            WaveKind::DeltaShock { profile } => profile.sigma,
        }
    }

    pub fn is_discontinuity(&self) -> bool {
        matches!(self.kind, WaveKind::Shock { .. } | WaveKind::Contact { .. } | WaveKind::DeltaShock { .. })
    }
}

/// Result of sampling a fan at one `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StateSample {
    State(PrimState),
    /// `xi` sits exactly on a delta-shock; the density there is a Dirac mass.
    OnDeltaShock(DeltaShockProfile),
}

impl StateSample {
    pub fn state(&self) -> Option<PrimState> {
        match *self {
            StateSample::State(s) => Some(s),
            StateSample::OnDeltaShock(_) => None,
        }
    }
}

/// Runtime validity flags raised while building a fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanWarning {
    /// A forward or backward wave curve failed the monotonicity check in rho.
    NonMonotoneCurve { family: u8 },
    /// `xi` is not monotone along a rarefaction, so the fan inversion is ambiguous.
    NonMonotoneRarefaction { family: u8 },
    /// A shock on the solved curve violates its Lax inequalities. Seen for
    /// strong PAR shocks once gamma is well above 1.
    InadmissibleShock { family: u8 },
}

/// Admissibility report for one discontinuity of an exact fan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockCheck {
    pub family: u8,
    pub speed: f64,
    /// Absolute Rankine-Hugoniot residuals for the two conservation laws.
    pub rh: [f64; 2],
    /// The same residuals scaled by the size of the terms they balance.
    pub rh_relative: [f64; 2],
    /// Strict Lax chain for shocks; `lambda_2 = speed` on both sides for contacts.
    pub lax: bool,
}

/// Ordered waves with the constant states between them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveFan {
    data: RiemannData,
    waves: Vec<Wave>,
    states: Vec<PrimState>,
    warnings: Vec<FanWarning>,
}

impl WaveFan {
    pub fn new(data: RiemannData, waves: Vec<Wave>) -> Result<Self> {
        Self::with_warnings(data, waves, Vec::new())
    }

    pub fn with_warnings(data: RiemannData, waves: Vec<Wave>, warnings: Vec<FanWarning>) -> Result<Self> {
        let mut states = Vec::with_capacity(waves.len() + 1);
        states.push(data.left);
        for (i, w) in waves.iter().enumerate() {
            if w.left != *states.last().unwrap() {
                return Err(Error::Structure(format!(
                    "wave {i} starts at {:?}, expected {:?}",
                    w.left,
                    states.last().unwrap()
                )));
            }
            if !(w.xi_min() <= w.xi_max()) {
                return Err(Error::Structure(format!("wave {i} has inverted edges")));
            }
            if i > 0 && waves[i - 1].xi_max() > w.xi_min() {
                return Err(Error::Structure(format!(
                    "wave {i} starts at xi = {} before wave {} ends at {}",
                    w.xi_min(),
                    i - 1,
                    waves[i - 1].xi_max()
                )));
            }
            states.push(w.right);
        }
        if *states.last().unwrap() != data.right {
            return Err(Error::Structure(format!(
                "fan ends at {:?}, expected right state {:?}",
                states.last().unwrap(),
                data.right
            )));
        }
        Ok(Self { data, waves, states, warnings })
    }

    pub fn data(&self) -> &RiemannData {
        &self.data
    }

    pub fn waves(&self) -> &[Wave] {
        &self.waves
    }

    /// Constant states; `states()[i]` lies left of `waves()[i]`.
    pub fn states(&self) -> &[PrimState] {
        &self.states
    }

    pub fn warnings(&self) -> &[FanWarning] {
        &self.warnings
    }

    pub fn delta_profile(&self) -> Option<DeltaShockProfile> {
        self.waves.iter().find_map(|w| match w.kind {
            WaveKind::DeltaShock { profile } => Some(profile),
            _ => None,
        })
    }

    /// Speeds of all shocks, contacts and delta-shocks, left to right.
    pub fn discontinuity_speeds(&self) -> Vec<f64> {
        self.waves.iter().filter(|w| w.is_discontinuity()).map(|w| w.xi_min()).collect()
    }

    /// Sorted list of wave edges.
    pub fn edges(&self) -> Vec<f64> {
        self.waves.iter().flat_map(|w| [w.xi_min(), w.xi_max()]).collect()
    }

    /// Evaluate the self-similar solution at `xi = x/t`.
    ///
    /// A point exactly on a shock or contact returns the state to its right.
    pub fn eval(&self, xi: f64) -> StateSample {
        for (i, w) in self.waves.iter().enumerate() {
            match w.kind {
                WaveKind::Shock { speed, .. } | WaveKind::Contact { speed } => {
                    if xi < speed {
                        return StateSample::State(self.states[i]);
                    }
                }
                WaveKind::DeltaShock { profile } => {
                    if xi < profile.sigma {
                        return StateSample::State(self.states[i]);
                    }
                    if xi == profile.sigma {
                        return StateSample::OnDeltaShock(profile);
                    }
                }
                WaveKind::Vacuum { xi_left, xi_right } => {
                    if xi < xi_left {
                        return StateSample::State(self.states[i]);
                    }
                    if xi <= xi_right {
                        return StateSample::State(PrimState::vacuum(xi));
                    }
                }
                WaveKind::Rarefaction { family, xi_head, xi_tail } => {
                    if xi < xi_head {
                        return StateSample::State(self.states[i]);
                    }
                    if xi <= xi_tail {
                        return StateSample::State(self.rarefaction_interior(w, family, xi));
                    }
                }
            }
        }
        StateSample::State(*self.states.last().unwrap())
    }

    fn rarefaction_interior(&self, w: &Wave, family: u8, xi: f64) -> PrimState {
        match self.data.model {
            Model::Ar => ar::rarefaction_state(w.left, self.data.gamma, xi),
            Model::Par => par::rarefaction_state(w, family, self.data.gamma, xi),
            // PGD has no genuinely nonlinear family.
            Model::Pgd => w.left,
        }
    }
}

/// Free-function form of [`WaveFan::eval`].
pub fn eval_self_similar(fan: &WaveFan, xi: f64) -> StateSample {
    fan.eval(xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_fan_is_constant() {
        let d = RiemannData::pgd((2.0, 3.0), (2.0, 3.0)).unwrap();
        let fan = WaveFan::new(d, vec![]).unwrap();
        for xi in [-1e9, -1.0, 0.0, 3.0, 42.0] {
            assert_eq!(fan.eval(xi), StateSample::State(PrimState::new(2.0, 3.0)));
        }
    }

    #[test]
    fn rejects_disconnected_waves() {
        let d = RiemannData::pgd((1.0, 0.0), (1.0, 1.0)).unwrap();
        let w = Wave::new(WaveKind::Contact { speed: 0.0 }, PrimState::new(1.0, 0.0), PrimState::new(2.0, 0.0));
        assert!(matches!(WaveFan::new(d, vec![w]), Err(Error::Structure(_))));
    }

    #[test]
    fn rejects_unsorted_edges() {
        let d = RiemannData::pgd((1.0, 0.0), (1.0, 0.0)).unwrap();
        let a = PrimState::new(1.0, 0.0);
        let b = PrimState::new(2.0, 0.0);
        let waves =
            vec![Wave::new(WaveKind::Contact { speed: 1.0 }, a, b), Wave::new(WaveKind::Contact { speed: 0.5 }, b, a)];
        assert!(matches!(WaveFan::new(d, waves), Err(Error::Structure(_))));
    }

    #[test]
    fn nonempty_fan_needs_matching_ends() {
        let d = RiemannData::pgd((1.0, 0.0), (3.0, 0.0)).unwrap();
        assert!(WaveFan::new(d, vec![]).is_err());
    }
}
