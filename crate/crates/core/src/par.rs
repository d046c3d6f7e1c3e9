//! Perturbed Aw-Rascle model, `1 < gamma < 3`:
//!
//! ```text
//! rho_t + (rho u)_x = 0
//! (rho u + rho^gamma / gamma)_t + (rho u^2 + u rho^gamma)_x = 0
//! ```
//!
//! Eigenvalues `u -+ sqrt((gamma-1) rho^(gamma-1) u)` are real for `u >= 0`.
//! Rarefactions preserve `sqrt(u) -+ K(rho)` with `K(rho) = sqrt(rho^(gamma-1)/(gamma-1))`.
//!
//! The intermediate state is the intersection of the forward 1-curve `T1`
//! through the left state and the backward 2-curve `T2` through the right
//! state, found by nested bisection. As `gamma -> 1` with `u_right < u_left`
//! the two shocks collapse onto the pressureless delta-shock.

use serde::{Deserialize, Serialize};

use crate::conservation;
use crate::error::{Error, Result};
use crate::pgd;
use crate::root::{bisect, expand_downward, expand_upward, MAX_ITER};
use crate::state::{Model, PrimState, RiemannData};
use crate::wave::{DeltaShockProfile, FanWarning, ShockCheck, Wave, WaveFan, WaveKind};

#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParRegion {
    R1R2,
    S1R2,
    R1S2,
    S1S2,
    R1VacR2,
}

impl ParRegion {
    pub fn name(self) -> &'static str {
        match self {
            ParRegion::R1R2 => "R1R2",
            ParRegion::S1R2 => "S1R2",
            ParRegion::R1S2 => "R1S2",
            ParRegion::S1S2 => "S1S2",
            ParRegion::R1VacR2 => "R1VacR2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParLimitQuantities {
    /// Limit of `(gamma - 1) rho*^gamma u*`.
    pub a: f64,
    pub sigma: f64,
    pub w1_rate: f64,
    pub w2_rate: f64,
}

impl ParLimitQuantities {
    pub fn profile(&self) -> DeltaShockProfile {
        DeltaShockProfile { sigma: self.sigma, w1_rate: self.w1_rate, w2_rate: self.w2_rate, u_delta: self.sigma }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParConvergenceRow {
    pub gamma: f64,
    pub rho_star: f64,
    pub u_star: f64,
    pub sigma1_bar: f64,
    pub sigma2_bar: f64,
    /// `rho* (sigma2 - sigma1)`.
    pub mass_integral: f64,
    /// `(gamma - 1) rho*^gamma u*`, compared against the limit `a`.
    pub a_hat: f64,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if Model::Par.gamma_in_range(gamma) {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange { model: Model::Par, gamma })
    }
}

pub fn par_eigenvalues(s: PrimState, gamma: f64) -> Result<(f64, f64)> {
    if !(s.rho > 0.0) {
        return Err(Error::Domain(format!("eigenvalues need rho > 0, got {}", s.rho)));
    }
    if s.u < 0.0 {
        return Err(Error::Domain(format!("eigenvalues are complex for u = {} < 0", s.u)));
    }
    check_gamma(gamma)?;
    let c = sound(s, gamma);
    Ok((s.u - c, s.u + c))
}

/// `sqrt((gamma-1) rho^(gamma-1) u)`; zero at vacuum.
fn sound(s: PrimState, gamma: f64) -> f64 {
    ((gamma - 1.0) * s.rho.powf(gamma - 1.0) * s.u.max(0.0)).sqrt()
}

fn lambda1(s: PrimState, gamma: f64) -> f64 {
    s.u - sound(s, gamma)
}

fn lambda2(s: PrimState, gamma: f64) -> f64 {
    s.u + sound(s, gamma)
}

/// `K(a) - K(b)` without cancellation when `gamma` is close to 1.
fn k_diff(a: f64, b: f64, gamma: f64) -> f64 {
    let h = 0.5 * (gamma - 1.0);
    if b == 0.0 {
        return a.powf(h) / (gamma - 1.0).sqrt();
    }
    if a == 0.0 {
        return -k_diff(b, a, gamma);
    }
    b.powf(h) * (h * (a.ln() - b.ln())).exp_m1() / (gamma - 1.0).sqrt()
}

/// `a^p - b^p` via expm1.
fn pow_diff(a: f64, b: f64, p: f64) -> f64 {
    b.powf(p) * (p * (a.ln() - b.ln())).exp_m1()
}

/// Velocity on the rarefaction curve of `family` through `left`.
pub fn par_rarefaction_u(rho: f64, left: PrimState, gamma: f64, family: u8) -> Result<f64> {
    check_gamma(gamma)?;
    if left.u < 0.0 {
        return Err(Error::NegativeVelocity(left.u));
    }
    if !(rho >= 0.0) {
        return Err(Error::Domain(format!("density {rho} is negative")));
    }
    let root = match family {
        1 if rho <= left.rho => left.u.sqrt() + k_diff(left.rho, rho, gamma),
        2 if rho >= left.rho => left.u.sqrt() + k_diff(rho, left.rho, gamma),
        1 | 2 => return Err(Error::Branch { rho, base: left.rho }),
        _ => return Err(Error::Domain(format!("family must be 1 or 2, got {family}"))),
    };
    if root < 0.0 {
        return Err(Error::NegativeRoot);
    }
    Ok(root * root)
}

/// Radicand of the shock locus through `left`, evaluated at `(rho, u)`.
fn locus_radicand(left: PrimState, rho: f64, u: f64, gamma: f64) -> f64 {
    let (rl, ul) = (left.rho, left.u);
    let inv = (rho - rl) / (rho * rl);
    let flux_term = rho.powf(gamma) * u - rl.powf(gamma) * ul;
    let pressure_term = (ul - u) * pow_diff(rho, rl, gamma - 1.0);
    ((gamma - 1.0) * inv * flux_term + pressure_term) / gamma
}

/// Signed distance of `cand` from the shock locus through `left`:
/// `(u - u_l) + sqrt(radicand)`, zero exactly on the locus.
pub fn par_shock_locus_residual(left: PrimState, cand: PrimState, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    if cand.u > left.u {
        return Err(Error::Domain(format!("shock locus is defined for u <= u_left, got {} > {}", cand.u, left.u)));
    }
    let r = locus_radicand(left, cand.rho, cand.u, gamma);
    if r < 0.0 {
        return Err(Error::NegativeRadicand(r));
    }
    Ok((cand.u - left.u) + r.sqrt())
}

/// `(B, Q)` such that the shock locus through `left` at density `rho` is
/// `u = u_l + (rho - rho_l)(B -+ sqrt(Q))`.
fn closed_form_terms(left: PrimState, rho: f64, gamma: f64) -> (f64, f64) {
    let (rl, ul) = (left.rho, left.u);
    let d = pow_diff(rho, rl, gamma) / (rho - rl);
    let b = (rho.powf(gamma) - rho * d / gamma) / (2.0 * rho * rl);
    let q = b * b + (1.0 - 1.0 / gamma) * ul * d / (rho * rl);
    (b, q)
}

/// Explicit quadratic-root form of the forward shock curves through `left`.
/// Used to cross-check the bisection path; `rho > rho_l` gives S1, `rho < rho_l` gives S2.
pub fn par_shock_u_closed_form(left: PrimState, rho: f64, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    if rho == left.rho {
        return Ok(left.u);
    }
    let (b, q) = closed_form_terms(left, rho, gamma);
    if q < 0.0 {
        return Err(Error::NegativeRadicand(q));
    }
    let w = if rho > left.rho { b - q.sqrt() } else { b + q.sqrt() };
    Ok(left.u + (rho - left.rho) * w)
}

/// Forward 1-curve through the left state: R1 for `rho <= rho_l`, S1 above.
fn t1(left: PrimState, rho: f64, gamma: f64) -> Result<f64> {
    if rho <= left.rho {
        let s = left.u.sqrt() + k_diff(left.rho, rho, gamma);
        return Ok(s * s);
    }
    let g = |u: f64| (u - left.u).powi(2) - locus_radicand(left, rho, u, gamma);
    let hi = left.u;
    if g(hi) == 0.0 {
        // u_l = 0 puts a root of the quadratic at the bracket end.
        return par_shock_u_closed_form(left, rho, gamma);
    }
    let step = left.u.abs().max(1.0) * 1e-3;
    let lo = expand_downward(g, hi, step, MAX_ITER as u32)?;
    bisect(g, lo, hi, 0.0)
}

/// Backward 2-curve through the right state: the set of `(rho, u)` from which
/// the right state is reached by a 2-wave. S2 for `rho >= rho_r`, R2 below.
fn t2(right: PrimState, rho: f64, gamma: f64) -> Result<f64> {
    if rho < right.rho {
        let s = right.u.sqrt() + k_diff(rho, right.rho, gamma);
        return Ok(s * s.abs());
    }
    if rho == right.rho {
        return Ok(right.u);
    }
    let h = |u: f64| (u - right.u).powi(2) - locus_radicand(PrimState::new(rho, u), right.rho, right.u, gamma);
    let lo = right.u;
    if h(lo) == 0.0 {
        return t2_closed_form(right, rho, gamma);
    }
    let step = right.u.abs().max(1.0) * 1e-3;
    let hi = expand_upward(h, lo, step, MAX_ITER as u32)?;
    bisect(h, lo, hi, 0.0)
}

/// Degenerate-endpoint fallback for [`t2`]: solve the quadratic in `u` directly.
fn t2_closed_form(right: PrimState, rho: f64, gamma: f64) -> Result<f64> {
    // (u - u_r)^2 = radicand is quadratic in u; sample three points to get its coefficients.
    let f = |u: f64| (u - right.u).powi(2) - locus_radicand(PrimState::new(rho, u), right.rho, right.u, gamma);
    let (f0, f1, fm) = (f(right.u), f(right.u + 1.0), f(right.u - 1.0));
    let a = 0.5 * (f1 + fm) - f0;
    let b = 0.5 * (f1 - fm);
    let disc = b * b - 4.0 * a * f0;
    if disc < 0.0 {
        return Err(Error::NegativeRadicand(disc));
    }
    Ok(right.u + (-b + disc.sqrt()) / (2.0 * a))
}

/// Intermediate density and classification, before the fan is assembled.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Intersection {
    Star { rho: f64, u: f64 },
    Vacuum { u_left: f64, u_right: f64 },
}

fn intersect(data: &RiemannData) -> Result<Intersection> {
    let (l, r, g) = (data.left, data.right, data.gamma);
    let phi = |rho: f64| -> Result<f64> { Ok(t1(l, rho, g)? - t2(r, rho, g)?) };
    let rho_m = l.rho.max(r.rho);
    let phi_m = phi(rho_m)?;
    let rho_star = if phi_m > 0.0 {
        let cap = rho_m * 2f64.powi(60);
        let mut lo = rho_m;
        let mut hi = 2.0 * rho_m;
        loop {
            if phi(hi)? <= 0.0 {
                break;
            }
            lo = hi;
            hi *= 2.0;
            if hi > cap {
                return Err(Error::NoConvergence(format!("intermediate density exceeds {cap:e}")));
            }
        }
        bisect_result(phi, lo, hi)?
    } else if phi_m == 0.0 {
        rho_m
    } else {
        let u0 = t1(l, 0.0, g)?;
        let u_r0 = t2(r, 0.0, g)?;
        if u0 - u_r0 <= 0.0 {
            return Ok(Intersection::Vacuum { u_left: u0, u_right: u_r0 });
        }
        let mut hi = rho_m;
        let mut lo = 0.5 * rho_m;
        let mut found = false;
        for _ in 0..2000 {
            if lo == 0.0 {
                break;
            }
            if phi(lo)? > 0.0 {
                found = true;
                break;
            }
            hi = lo;
            lo *= 0.5;
        }
        if !found {
            // Near gamma = 1 the curves close in on each other like rho^((gamma-1)/2), so the
            // crossing can sit below the smallest positive double.
            return Err(Error::NoConvergence(format!(
                "the intermediate density is below the smallest positive double {:e}",
                f64::from_bits(1)
            )));
        }
        bisect_result(phi, lo, hi)?
    };
    Ok(Intersection::Star { rho: rho_star, u: t1(l, rho_star, g)? })
}

/// Bisection on a fallible function; evaluation errors abort the search.
fn bisect_result<F>(f: F, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut err = None;
    let root = bisect(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
        0.0,
    );
    match err {
        Some(e) => Err(e),
        None => root,
    }
}

fn region_of(data: &RiemannData, rho_star: f64) -> ParRegion {
    match (rho_star > data.left.rho, rho_star > data.right.rho) {
        (true, true) => ParRegion::S1S2,
        (true, false) => ParRegion::S1R2,
        (false, true) => ParRegion::R1S2,
        (false, false) => ParRegion::R1R2,
    }
}

pub fn solve_par_riemann(data: &RiemannData) -> Result<(ParRegion, WaveFan)> {
    data.expect_model(Model::Par)?;
    check_gamma(data.gamma)?;
    let (l, r, g) = (data.left, data.right, data.gamma);
    for s in [l, r] {
        if s.u < 0.0 {
            return Err(Error::NegativeVelocity(s.u));
        }
    }
    let mut warnings = Vec::new();
    match intersect(data)? {
        Intersection::Vacuum { u_left, u_right } => {
            let v0 = PrimState::vacuum(u_left);
            let v1 = PrimState::vacuum(u_right);
            let waves = vec![
                Wave::new(WaveKind::Rarefaction { family: 1, xi_head: lambda1(l, g), xi_tail: u_left }, l, v0),
                Wave::new(WaveKind::Vacuum { xi_left: u_left, xi_right: u_right }, v0, v1),
                Wave::new(WaveKind::Rarefaction { family: 2, xi_head: u_right, xi_tail: lambda2(r, g) }, v1, r),
            ];
            for w in &waves {
                rarefaction_warning(w, g, &mut warnings);
            }
            curve_warnings(data, 0.5 * l.rho.min(r.rho), 2.0 * l.rho.max(r.rho), &mut warnings)?;
            check_rarefactions(&waves, g)?;
            Ok((ParRegion::R1VacR2, WaveFan::with_warnings(*data, waves, warnings)?))
        }
        Intersection::Star { rho, u } => {
            let region = region_of(data, rho);
            let mid = if rho == l.rho {
                l
            } else if rho == r.rho {
                r
            } else {
                PrimState::new(rho, u)
            };
            if mid.u < 0.0 {
                return Err(Error::NegativeVelocity(mid.u));
            }
            let mut waves = Vec::with_capacity(2);
            if mid.rho > l.rho {
                let speed = (mid.momentum() - l.momentum()) / (mid.rho - l.rho);
                waves.push(Wave::new(WaveKind::Shock { family: 1, speed }, l, mid));
            } else if mid.rho < l.rho {
                let kind = WaveKind::Rarefaction { family: 1, xi_head: lambda1(l, g), xi_tail: lambda1(mid, g) };
                waves.push(Wave::new(kind, l, mid));
            }
            if mid.rho > r.rho {
                let speed = (r.momentum() - mid.momentum()) / (r.rho - mid.rho);
                waves.push(Wave::new(WaveKind::Shock { family: 2, speed }, mid, r));
            } else if mid.rho < r.rho {
                let kind = WaveKind::Rarefaction { family: 2, xi_head: lambda2(mid, g), xi_tail: lambda2(r, g) };
                waves.push(Wave::new(kind, mid, r));
            }
            for w in &waves {
                rarefaction_warning(w, g, &mut warnings);
                if let WaveKind::Shock { family, speed } = w.kind {
                    if !lax_holds(w, family, speed, g) {
                        warnings.push(FanWarning::InadmissibleShock { family });
                    }
                }
            }
            if !waves.is_empty() {
                let lo = 0.5 * l.rho.min(r.rho).min(rho);
                let hi = 2.0 * l.rho.max(r.rho).max(rho);
                curve_warnings(data, lo, hi, &mut warnings)?;
            }
            check_rarefactions(&waves, g)?;
            Ok((region, WaveFan::with_warnings(*data, waves, warnings)?))
        }
    }
}

const MONOTONE_SAMPLES: usize = 24;

fn log_grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..MONOTONE_SAMPLES).map(move |i| (a + (b - a) * i as f64 / (MONOTONE_SAMPLES - 1) as f64).exp())
}

fn curve_warnings(data: &RiemannData, lo: f64, hi: f64, out: &mut Vec<FanWarning>) -> Result<()> {
    let g = data.gamma;
    let mut prev: Option<(f64, f64)> = None;
    let (mut dec, mut inc) = (true, true);
    // Only the u >= 0 part of each curve is in the domain.
    for rho in log_grid(lo, hi) {
        let v = (t1(data.left, rho, g)?, t2(data.right, rho, g)?);
        if let Some(p) = prev {
            if v.0 >= 0.0 && p.0 >= 0.0 {
                dec &= v.0 < p.0;
            }
            if v.1 >= 0.0 && p.1 >= 0.0 {
                inc &= v.1 > p.1;
            }
        }
        prev = Some(v);
    }
    if !dec {
        out.push(FanWarning::NonMonotoneCurve { family: 1 });
    }
    if !inc {
        out.push(FanWarning::NonMonotoneCurve { family: 2 });
    }
    Ok(())
}

fn rarefaction_warning(w: &Wave, gamma: f64, out: &mut Vec<FanWarning>) {
    let WaveKind::Rarefaction { family, .. } = w.kind else { return };
    let (lo, hi) = rarefaction_bracket(w);
    // Walk from head to tail so xi should increase. Samples cluster at both
    // ends, where a loss of monotonicity first appears, and the first and
    // last steps are tiny one-sided slope probes.
    let n = 2 * MONOTONE_SAMPLES;
    let probe = 1e-7;
    let ts = std::iter::once(0.0)
        .chain(std::iter::once(probe))
        .chain((1..n - 1).map(|i| 0.5 * (1.0 - (std::f64::consts::PI * i as f64 / (n - 1) as f64).cos())))
        .chain([1.0 - probe, 1.0]);
    let mut prev = f64::NEG_INFINITY;
    for t in ts {
        let rho = if family == 1 { hi + (lo - hi) * t } else { lo + (hi - lo) * t };
        let xi = rarefaction_xi(w, family, gamma, rho);
        if !(xi >= prev) {
            out.push(FanWarning::NonMonotoneRarefaction { family });
            return;
        }
        prev = xi;
    }
}

fn rarefaction_bracket(w: &Wave) -> (f64, f64) {
    (w.left.rho.min(w.right.rho), w.left.rho.max(w.right.rho))
}

/// Characteristic speed at density `rho` inside the rarefaction `w`. Family 1
/// is parameterized from its left state, family 2 from its right state, so
/// neither depends on a vacuum end.
fn rarefaction_xi(w: &Wave, family: u8, gamma: f64, rho: f64) -> f64 {
    let s = rarefaction_point(w, family, gamma, rho);
    if family == 1 {
        lambda1(s, gamma)
    } else {
        lambda2(s, gamma)
    }
}

fn rarefaction_point(w: &Wave, family: u8, gamma: f64, rho: f64) -> PrimState {
    let root = if family == 1 {
        w.left.u.sqrt() + k_diff(w.left.rho, rho, gamma)
    } else {
        w.right.u.sqrt() + k_diff(rho, w.right.rho, gamma)
    };
    PrimState::new(rho, root * root.abs())
}

/// State at `xi` inside the PAR rarefaction `w`, by bisection on density.
pub fn rarefaction_state(w: &Wave, family: u8, gamma: f64, xi: f64) -> PrimState {
    let (lo, hi) = rarefaction_bracket(w);
    let f = |rho: f64| rarefaction_xi(w, family, gamma, rho) - xi;
    match bisect(f, lo, hi, 1e-12) {
        Ok(rho) => rarefaction_point(w, family, gamma, rho),
        Err(_) => {
            // xi sits at an edge up to rounding: return the closer end state.
            if f(lo).abs() <= f(hi).abs() {
                rarefaction_point(w, family, gamma, lo)
            } else {
                rarefaction_point(w, family, gamma, hi)
            }
        }
    }
}

/// Whether the right state lies in the two-shock region of the left state.
///
/// Evaluates the explicit criterion `sqrt(Q) -+ B < (u_l - u_r)/|rho_r - rho_l|`
/// with `B`, `Q` taken from the shock locus through the left state at `rho_r`.
#[allow(non_snake_case)]
pub fn par_in_region_IV(data: &RiemannData) -> bool {
    let (l, r, g) = (data.left, data.right, data.gamma);
    if r.rho == l.rho {
        return r.u < l.u;
    }
    let (b, q) = closed_form_terms(l, r.rho, g);
    let drho = r.rho - l.rho;
    let lhs = q.max(0.0).sqrt() - drho.signum() * b;
    lhs < (l.u - r.u) / drho.abs()
}

pub fn par_limit_quantities(data: &RiemannData) -> Result<ParLimitQuantities> {
    let (l, r) = (data.left, data.right);
    if !(r.u < l.u) {
        return Err(Error::NotDeltaRegime);
    }
    let sigma = pgd::delta_speed(l, r);
    let (sl, sr) = (l.rho.sqrt(), r.rho.sqrt());
    let w1_rate = (l.rho * r.rho).sqrt() * (l.u - r.u);
    let a = (w1_rate / (sl + sr)).powi(2);
    Ok(ParLimitQuantities { a, sigma, w1_rate, w2_rate: data.jumps().momentum_weight_rate(sigma) })
}

pub fn par_convergence_table(data: &RiemannData, gammas: &[f64]) -> Result<Vec<ParConvergenceRow>> {
    let (l, r) = (data.left, data.right);
    if !(r.u < l.u) {
        return Err(Error::NotDeltaRegime);
    }
    gammas
        .iter()
        .map(|&g| {
            let d = data.with_model(Model::Par, g)?;
            let (region, fan) = solve_par_riemann(&d)?;
            if region != ParRegion::S1S2 {
                return Err(Error::RegionMismatch { gamma: g });
            }
            let mid = fan.states()[1];
            let speeds = fan.discontinuity_speeds();
            Ok(ParConvergenceRow {
                gamma: g,
                rho_star: mid.rho,
                u_star: mid.u,
                sigma1_bar: speeds[0],
                sigma2_bar: speeds[1],
                mass_integral: mid.rho * (speeds[1] - speeds[0]),
                a_hat: (g - 1.0) * mid.rho.powf(g) * mid.u,
            })
        })
        .collect()
}

/// Rankine-Hugoniot and Lax checks for every shock of a PAR fan.
pub fn shock_checks(fan: &WaveFan) -> Vec<ShockCheck> {
    let g = fan.data().gamma;
    fan.waves()
        .iter()
        .filter_map(|w| {
            let WaveKind::Shock { family, speed } = w.kind else { return None };
            let lax = lax_holds(w, family, speed, g);
            Some(ShockCheck {
                family,
                speed,
                rh: conservation::rh_residual(Model::Par, g, w.left, w.right, speed),
                rh_relative: conservation::rh_residual_relative(Model::Par, g, w.left, w.right, speed),
                lax,
            })
        })
        .collect()
}

/// A rarefaction whose head outruns its tail has no self-similar profile.
fn check_rarefactions(waves: &[Wave], gamma: f64) -> Result<()> {
    for w in waves {
        if let WaveKind::Rarefaction { family, xi_head, xi_tail } = w.kind {
            if xi_head > xi_tail {
                return Err(Error::NonlinearityLost { family, gamma });
            }
        }
    }
    Ok(())
}

fn lax_holds(w: &Wave, family: u8, speed: f64, g: f64) -> bool {
    if family == 1 {
        lambda1(w.right, g) < speed && speed < lambda1(w.left, g)
    } else {
        lambda2(w.right, g) < speed && speed < lambda2(w.left, g)
    }
}

/// Mismatch in the two-shock balance `u_l - u_r = sqrt(rad_1) + sqrt(rad_2)`
/// at the solved intermediate state.
pub fn two_shock_identity_residual(fan: &WaveFan) -> Option<f64> {
    let d = fan.data();
    if fan.waves().len() != 2 {
        return None;
    }
    let mid = fan.states()[1];
    let (l, r, g) = (d.left, d.right, d.gamma);
    let r1 = locus_radicand(l, mid.rho, mid.u, g);
    let r2 = locus_radicand(mid, r.rho, r.u, g);
    Some(((l.u - r.u) - r1.max(0.0).sqrt() - r2.max(0.0).sqrt()).abs())
}
