//! Aw-Rascle model with `p(rho) = rho^gamma`, `0 < gamma < 1`.
//!
//! Family 1 is genuinely nonlinear with `lambda1 = u - gamma rho^gamma`;
//! family 2 is the contact `lambda2 = u`. Both 1-rarefactions and 1-shocks
//! preserve `w = u + rho^gamma`, so the forward 1-curve through a left state
//! is `u = u_l - (rho^gamma - rho_l^gamma)`.
//!
//! As `gamma -> 0` with `u_right < u_left`, the shock and contact merge into a
//! delta-shock moving at `u_right` whose density weight grows like
//! `rho_left (u_left - u_right) t`.

use serde::{Deserialize, Serialize};

use crate::conservation;
use crate::error::{Error, Result};
use crate::state::{Model, PrimState, RiemannData};
use crate::wave::{DeltaShockProfile, ShockCheck, Wave, WaveFan, WaveKind};

/// Exponents used by convergence studies unless the caller supplies a list.
pub const DEFAULT_GAMMAS: [f64; 7] = [0.6, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001];

/// Largest `ln rho` that still fits in an f64.
const LN_MAX: f64 = 709.78;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArRegionLabel {
    /// Shock then contact.
    I,
    /// Rarefaction then contact.
    II,
    /// Rarefaction, vacuum, contact.
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArRegion {
    pub label: ArRegionLabel,
    /// Velocity where the 1-rarefaction curve meets the vacuum: `u_l + rho_l^gamma`.
    pub u_star_tilde: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArLimitQuantities {
    /// Limit of `rho*^gamma`.
    pub a: f64,
    pub sigma: f64,
    pub w1_rate: f64,
    pub w2_rate: f64,
}

impl ArLimitQuantities {
    /// Delta-shock carried on `x = u_right t`.
    pub fn profile(&self) -> DeltaShockProfile {
        DeltaShockProfile { sigma: self.sigma, w1_rate: self.w1_rate, w2_rate: self.w2_rate, u_delta: self.sigma }
    }
}

/// One row of a gamma -> 0 convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArConvergenceRow {
    pub gamma: f64,
    /// `+inf` once `rho*` leaves the f64 range; `ln_rho_star` stays finite.
    pub rho_star: f64,
    pub ln_rho_star: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    /// `rho* (sigma2 - sigma1)`, the mass of the intermediate strip per unit time.
    pub mass_integral: f64,
}

/// Shock-contact intermediate state computed in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockContact {
    pub ln_rho_star: f64,
    pub u_star: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub mass_integral: f64,
}

impl ShockContact {
    pub fn rho_star(&self) -> f64 {
        self.ln_rho_star.exp()
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if Model::Ar.gamma_in_range(gamma) {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange { model: Model::Ar, gamma })
    }
}

pub fn ar_eigenvalues(s: PrimState, gamma: f64) -> Result<(f64, f64)> {
    if !(s.rho > 0.0) {
        return Err(Error::Domain(format!("eigenvalues need rho > 0, got {}", s.rho)));
    }
    Ok((s.u - gamma * s.rho.powf(gamma), s.u))
}

/// Velocity on the 1-wave curve through `left` at density `rho`.
pub fn ar_wave_curve_u(rho: f64, left: PrimState, gamma: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("wave curve needs rho > 0, got {rho}")));
    }
    Ok(left.u - pow_diff(rho, left.rho, gamma))
}

/// `rho^gamma - base^gamma` without cancellation when `rho` is close to `base`.
fn pow_diff(rho: f64, base: f64, gamma: f64) -> f64 {
    base.powf(gamma) * (gamma * (rho / base).ln()).exp_m1()
}

/// Speed of the admissible 1-shock from `left` to density `right_rho > left.rho`.
pub fn ar_shock_speed(left: PrimState, right_rho: f64, gamma: f64) -> Result<f64> {
    if !(right_rho > left.rho) {
        return Err(Error::NotAdmissible { left: left.rho, right: right_rho });
    }
    let x = (right_rho / left.rho).ln();
    let dp = pow_diff(right_rho, left.rho, gamma);
    let u = left.u - dp;
    // rho_l (rho^g - rho_l^g) / (rho - rho_l), written with expm1 for both differences.
    let quotient = left.rho.powf(gamma) * (gamma * x).exp_m1() / x.exp_m1();
    Ok(u - quotient)
}

pub fn ar_classify(data: &RiemannData) -> ArRegion {
    let u_star_tilde = data.left.u + data.left.rho.powf(data.gamma);
    let ur = data.right.u;
    let label = if ur < data.left.u {
        ArRegionLabel::I
    } else if ur < u_star_tilde {
        ArRegionLabel::II
    } else {
        ArRegionLabel::III
    };
    ArRegion { label, u_star_tilde }
}

/// Intermediate state of the shock + contact solution (`u_right < u_left`).
///
/// `rho*^gamma = rho_l^gamma + u_l - u_r`; all quantities that would
/// involve `rho*` directly are rewritten through `rho_l / rho*` so they stay
/// finite when `rho*` overflows.
pub fn shock_contact(data: &RiemannData) -> Result<ShockContact> {
    let (l, r) = (data.left, data.right);
    let du = l.u - r.u;
    if !(du > 0.0) {
        return Err(Error::NotDeltaRegime);
    }
    let g = data.gamma;
    // rho*^g = rho_l^g + du, kept in log1p form so weak shocks on dense states stay resolved.
    let ln_ratio = -(du * l.rho.powf(-g)).ln_1p() / g;
    let ln_rho_star = l.rho.ln() - ln_ratio;
    let ratio = ln_ratio.exp();
    let one_minus = -ln_ratio.exp_m1();
    let gap = if one_minus > 0.0 { du * ratio / one_minus } else { g * l.rho.powf(g) };
    Ok(ShockContact { ln_rho_star, u_star: r.u, sigma1: r.u - gap, sigma2: r.u, mass_integral: l.rho * du / one_minus })
}

pub fn solve_ar_riemann(data: &RiemannData) -> Result<WaveFan> {
    data.expect_model(Model::Ar)?;
    check_gamma(data.gamma)?;
    let (l, r, g) = (data.left, data.right, data.gamma);
    let region = ar_classify(data);
    let waves = match region.label {
        ArRegionLabel::I => {
            let sc = shock_contact(data)?;
            if sc.ln_rho_star > LN_MAX {
                return Err(Error::Overflow { ln_rho_star: sc.ln_rho_star });
            }
            let mid = PrimState::new(sc.rho_star(), r.u);
            vec![
                Wave::new(WaveKind::Shock { family: 1, speed: sc.sigma1 }, l, mid),
                Wave::new(WaveKind::Contact { speed: r.u }, mid, r),
            ]
        }
        ArRegionLabel::II if r.u == l.u => {
            vec![Wave::new(WaveKind::Contact { speed: r.u }, l, r)]
        }
        ArRegionLabel::II => {
            let rho_star = (l.rho.powf(g) - (r.u - l.u)).powf(1.0 / g);
            let mid = PrimState::new(rho_star, r.u);
            let head = ar_eigenvalues(l, g)?.0;
            let tail = r.u - g * rho_star.powf(g);
            vec![
                Wave::new(WaveKind::Rarefaction { family: 1, xi_head: head, xi_tail: tail }, l, mid),
                Wave::new(WaveKind::Contact { speed: r.u }, mid, r),
            ]
        }
        ArRegionLabel::III => {
            let head = ar_eigenvalues(l, g)?.0;
            let v0 = PrimState::vacuum(region.u_star_tilde);
            let v1 = PrimState::vacuum(r.u);
            vec![
                Wave::new(WaveKind::Rarefaction { family: 1, xi_head: head, xi_tail: region.u_star_tilde }, l, v0),
                Wave::new(WaveKind::Vacuum { xi_left: region.u_star_tilde, xi_right: r.u }, v0, v1),
                Wave::new(WaveKind::Contact { speed: r.u }, v1, r),
            ]
        }
    };
    WaveFan::new(*data, waves)
}

/// State inside a 1-rarefaction issued from `left`: `w = u + rho^gamma` is
/// constant and `xi = u - gamma rho^gamma`.
pub fn rarefaction_state(left: PrimState, gamma: f64, xi: f64) -> PrimState {
    let w = left.u + left.rho.powf(gamma);
    let p = ((w - xi) / (1.0 + gamma)).max(0.0);
    let rho = p.powf(1.0 / gamma);
    PrimState::new(rho, xi + gamma * p)
}

/// Limit quantities of the gamma -> 0 delta-shock.
pub fn ar_limit_quantities(data: &RiemannData) -> Result<ArLimitQuantities> {
    let (l, r) = (data.left, data.right);
    if !(r.u < l.u) {
        return Err(Error::NotDeltaRegime);
    }
    let sigma = r.u;
    let j = data.jumps();
    Ok(ArLimitQuantities {
        a: 1.0 + l.u - r.u,
        sigma,
        w1_rate: l.rho * (l.u - r.u),
        w2_rate: j.momentum_weight_rate(sigma),
    })
}

pub fn ar_convergence_table(data: &RiemannData, gammas: &[f64]) -> Result<Vec<ArConvergenceRow>> {
    if !(data.right.u < data.left.u) {
        return Err(Error::NotDeltaRegime);
    }
    gammas
        .iter()
        .map(|&g| {
            check_gamma(g)?;
            let d = data.with_model(Model::Ar, g)?;
            let sc = shock_contact(&d)?;
            Ok(ArConvergenceRow {
                gamma: g,
                rho_star: sc.rho_star(),
                ln_rho_star: sc.ln_rho_star,
                sigma1: sc.sigma1,
                sigma2: sc.sigma2,
                mass_integral: sc.mass_integral,
            })
        })
        .collect()
}

/// Rankine-Hugoniot and Lax checks for every shock and contact of an AR fan.
pub fn shock_checks(fan: &WaveFan) -> Vec<ShockCheck> {
    let g = fan.data().gamma;
    fan.waves()
        .iter()
        .filter(|w| !w.left.is_vacuum() && !w.right.is_vacuum())
        .filter_map(|w| {
            let (family, speed, lax) = match w.kind {
                WaveKind::Shock { family, speed } => {
                    let l1 = |s: PrimState| s.u - g * s.rho.powf(g);
                    (family, speed, l1(w.right) < speed && speed < l1(w.left))
                }
                WaveKind::Contact { speed } => (2, speed, w.left.u == speed && w.right.u == speed),
                _ => return None,
            };
            Some(ShockCheck {
                family,
                speed,
                rh: conservation::rh_residual(Model::Ar, g, w.left, w.right, speed),
                rh_relative: conservation::rh_residual_relative(Model::Ar, g, w.left, w.right, speed),
                lax,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave::StateSample;

    fn standard_ar(g: f64) -> RiemannData {
        RiemannData::ar(g, (3.5, 6.0), (2.0, 4.0)).unwrap()
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(ar_eigenvalues(PrimState::new(1.0, 1.0), 0.5).unwrap(), (0.5, 1.0));
        let (l1, l2) = ar_eigenvalues(PrimState::new(3.5, 6.0), 0.6).unwrap();
        let expected = 6.0 - 0.6 * (0.6 * 3.5f64.ln()).exp();
        assert!((l1 - expected).abs() < 1e-14);
        assert!((l1 - 4.7276).abs() < 1e-4);
        assert_eq!(l2, 6.0);
        let (l1, _) = ar_eigenvalues(PrimState::new(2.0, 4.0), 0.3).unwrap();
        assert!((l1 - (4.0 - 0.3 * 2f64.powf(0.3))).abs() < 1e-15);
        assert!(ar_eigenvalues(PrimState::new(0.0, 1.0), 0.5).is_err());
    }

    #[test]
    fn wave_curve() {
        let left = PrimState::new(3.5, 6.0);
        assert_eq!(ar_wave_curve_u(3.5, left, 0.5).unwrap(), 6.0);
        let rho = (3.5f64.sqrt() + 2.0).powi(2);
        assert!((ar_wave_curve_u(rho, left, 0.5).unwrap() - 4.0).abs() < 1e-13);
        let near_vacuum = ar_wave_curve_u(1e-300, PrimState::new(1.0, 0.0), 0.5).unwrap();
        assert!((near_vacuum - 1.0).abs() < 1e-140);
        assert!(ar_wave_curve_u(0.0, left, 0.5).is_err());
    }

    #[test]
    fn shock_speeds() {
        let left = PrimState::new(3.5, 6.0);
        let rho = (3.5f64.sqrt() + 2.0).powi(2);
        let s = ar_shock_speed(left, rho, 0.5).unwrap();
        assert!((s - (4.0 - 7.0 / (rho - 3.5))).abs() < 1e-13);
        assert!((s - 3.3904).abs() < 1e-4);

        let s = ar_shock_speed(PrimState::new(1.0, 1.0), 4.0, 0.5).unwrap();
        assert!((s + 1.0 / 3.0).abs() < 1e-15);

        let l = PrimState::new(2.0, 1.0);
        let weak = ar_shock_speed(l, 2.0 * (1.0 + 1e-8), 0.4).unwrap();
        assert!((weak - ar_eigenvalues(l, 0.4).unwrap().0).abs() < 1e-4);

        assert!(matches!(ar_shock_speed(l, 1.0, 0.4), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn classification() {
        for g in [0.9, 0.5, 0.01] {
            assert_eq!(ar_classify(&standard_ar(g)).label, ArRegionLabel::I);
        }
        let d = RiemannData::ar(0.5, (1.0, 2.0), (3.0, 2.0)).unwrap();
        assert_eq!(ar_classify(&d).label, ArRegionLabel::II);
        let d = RiemannData::ar(0.5, (1.0, 0.0), (1.0, 2.0)).unwrap();
        let region = ar_classify(&d);
        assert_eq!(region.label, ArRegionLabel::III);
        assert_eq!(region.u_star_tilde, 1.0);
    }

    #[test]
    fn experiment_fan() {
        let fan = solve_ar_riemann(&standard_ar(0.5)).unwrap();
        let rho_star = (3.5f64.sqrt() + 2.0).powi(2);
        let mid = fan.states()[1];
        assert!((mid.rho - rho_star).abs() < 1e-12 * rho_star);
        assert!((mid.rho - 14.9833).abs() < 1e-4);
        assert_eq!(mid.u, 4.0);
        // Substitute back into u_l - u_r = rho*^g - rho_l^g.
        assert!((mid.rho.sqrt() - 3.5f64.sqrt() - 2.0).abs() < 1e-13);
        let speeds = fan.discontinuity_speeds();
        assert!((speeds[0] - 3.3904).abs() < 1e-4);
        assert_eq!(speeds[1], 4.0);
        let checks = shock_checks(&fan);
        assert_eq!(checks.len(), 2);
        for c in checks {
            assert!(c.rh[0] <= 1e-12 && c.rh[1] <= 1e-12, "{c:?}");
            assert!(c.lax);
        }
        match fan.eval(3.9) {
            StateSample::State(s) => assert_eq!(s, mid),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn region_two_fan() {
        let d = RiemannData::ar(0.5, (1.0, 0.0), (1.0, 0.5)).unwrap();
        let fan = solve_ar_riemann(&d).unwrap();
        assert_eq!(fan.waves().len(), 2);
        assert!((fan.states()[1].rho - 0.25).abs() < 1e-15);
        assert!(matches!(fan.waves()[0].kind, WaveKind::Rarefaction { .. }));
        assert!(matches!(fan.waves()[1].kind, WaveKind::Contact { speed } if speed == 0.5));
        // Rarefaction joins its end states continuously.
        let w = fan.waves()[0];
        let head = fan.eval(w.xi_min()).state().unwrap();
        let tail = fan.eval(w.xi_max()).state().unwrap();
        assert!((head.rho - 1.0).abs() < 1e-12 && head.u.abs() < 1e-12);
        assert!((tail.rho - 0.25).abs() < 1e-12 && (tail.u - 0.5).abs() < 1e-12);
    }

    #[test]
    fn equal_states_give_single_contact() {
        let d = RiemannData::ar(0.5, (1.0, 2.0), (1.0, 2.0)).unwrap();
        let fan = solve_ar_riemann(&d).unwrap();
        assert_eq!(fan.waves().len(), 1);
        assert!(matches!(fan.waves()[0].kind, WaveKind::Contact { speed } if speed == 2.0));
    }

    #[test]
    fn vacuum_fan() {
        let d = RiemannData::ar(0.5, (1.0, 0.0), (1.0, 2.0)).unwrap();
        let fan = solve_ar_riemann(&d).unwrap();
        assert_eq!(fan.waves().len(), 3);
        assert_eq!(fan.eval(1.5).state().unwrap(), PrimState::vacuum(1.5));
        let edge = fan.eval(1.0).state().unwrap();
        assert!(edge.rho.abs() < 1e-15);
    }

    #[test]
    fn limit_quantities() {
        let q = ar_limit_quantities(&standard_ar(0.5)).unwrap();
        assert_eq!((q.a, q.sigma, q.w1_rate, q.w2_rate), (3.0, 4.0, 7.0, 42.0));
        let j = standard_ar(0.5).jumps();
        assert_eq!(j.mass_weight_rate(q.sigma), 7.0);

        let d = RiemannData::ar(0.5, (1.0, 1.0), (1.0, 0.0)).unwrap();
        let q = ar_limit_quantities(&d).unwrap();
        assert_eq!((q.a, q.sigma, q.w1_rate, q.w2_rate), (2.0, 0.0, 1.0, 1.0));

        let d = RiemannData::ar(0.5, (1.0, 1.0 + 1e-9), (1.0, 1.0)).unwrap();
        let q = ar_limit_quantities(&d).unwrap();
        assert!((q.a - 1.0).abs() < 1e-8 && q.w1_rate < 1e-8);

        let d = RiemannData::ar(0.5, (1.0, 1.0), (1.0, 1.0)).unwrap();
        assert_eq!(ar_limit_quantities(&d), Err(Error::NotDeltaRegime));
    }

    #[test]
    fn convergence_rows() {
        let rows = ar_convergence_table(&standard_ar(0.5), &[0.6, 0.1]).unwrap();
        let r06 = rows[0];
        assert!(r06.sigma1 < r06.sigma2);
        let bound = 7.0 * r06.rho_star / (r06.rho_star - 3.5);
        assert!(r06.mass_integral > 7.0);
        assert!((r06.mass_integral - bound).abs() < 1e-12 * bound);

        let r01 = rows[1];
        let rho_star = (3.5f64.powf(0.1) + 2.0).powi(10);
        assert!((r01.rho_star - rho_star).abs() < 1e-9 * rho_star);
        assert!((r01.rho_star - 91252.284).abs() < 1e-2);
        assert!((r01.sigma1 - 4.0).abs() < 1e-3);
        assert!((r01.mass_integral - 7.0).abs() < 5e-4);

        let d = RiemannData::ar(0.5, (1.0, 1.0), (2.0, 1.0)).unwrap();
        assert_eq!(ar_convergence_table(&d, &[0.5]), Err(Error::NotDeltaRegime));
    }

    #[test]
    fn overflowing_intermediate_density() {
        let d = standard_ar(0.001);
        assert!(matches!(solve_ar_riemann(&d), Err(Error::Overflow { .. })));
        let sc = shock_contact(&d).unwrap();
        assert!(sc.ln_rho_star > 1000.0);
        assert_eq!(sc.sigma2, 4.0);
        assert!((sc.mass_integral - 7.0).abs() < 1e-12);
    }

    #[test]
    fn weak_shock_on_a_dense_state_keeps_a_finite_speed() {
        // Reference speeds from 50-digit arithmetic.
        let cases = [
            (
                (52796024.10607666, 2.778947901817029e-08),
                (0.11181805560991595, -2.10457598297552e-08),
                0.9474665571642672,
                -19654874.64862309,
            ),
            ((1e12, 1e-9), (1.0, 0.0), 0.5, -499999.99999999977),
        ];
        for (l, r, g, sigma) in cases {
            let d = RiemannData::ar(g, l, r).unwrap();
            let sc = shock_contact(&d).unwrap();
            assert!((sc.sigma1 - sigma).abs() <= 1e-12 * sigma.abs(), "{} vs {sigma}", sc.sigma1);
            assert!(solve_ar_riemann(&d).is_ok());
        }
    }
}
