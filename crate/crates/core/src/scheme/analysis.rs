use serde::Serialize;

use super::{Field, SimReport};
use crate::error::{Error, Result};

/// Cells skipped at each end when sampling the intermediate plateau.
const PLATEAU_MARGIN: f64 = 3.0;

/// Locations of the steepest density increase and steepest decrease, each
/// refined to sub-cell accuracy by a parabola through the neighboring jumps.
pub fn steepest_rise_fall(field: &Field) -> (f64, f64) {
    let rho = &field.u1;
    let jumps: Vec<f64> = rho.windows(2).map(|w| w[1] - w[0]).collect();
    let argmax = |sign: f64| {
        jumps
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if sign * v > acc.1 { (i, sign * v) } else { acc })
            .0
    };
    let locate = |sign: f64| {
        let k = argmax(sign);
        // Interface between cells k and k+1.
        let x = field.grid.x(k) + 0.5 * field.grid.dx();
        let offset = if k > 0 && k + 1 < jumps.len() {
            let (a, b, c) = (sign * jumps[k - 1], sign * jumps[k], sign * jumps[k + 1]);
            let curv = a - 2.0 * b + c;
            if curv < 0.0 {
                (0.5 * (a - c) / curv).clamp(-0.5, 0.5)
            } else {
                0.0
            }
        } else {
            0.0
        };
        x + offset * field.grid.dx()
    };
    (locate(1.0), locate(-1.0))
}

/// Median density strictly between two discontinuities, three cells in from each.
pub fn plateau_density(field: &Field, left: f64, right: f64) -> Option<f64> {
    let dx = field.grid.dx();
    let (lo, hi) = (left + PLATEAU_MARGIN * dx, right - PLATEAU_MARGIN * dx);
    let mut v: Vec<f64> = (0..field.grid.n_cells)
        .filter(|&i| {
            let x = field.grid.x(i);
            x > lo && x < hi
        })
        .map(|i| field.u1[i])
        .collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len();
    Some(if m % 2 == 1 { v[m / 2] } else { 0.5 * (v[m / 2 - 1] + v[m / 2]) })
}

/// `sum (rho_i - rho0(x_i)) dx` over cells within `half_cells` cells of `x0`, where
/// `rho0` is the initial step translated to `x0`.
pub fn window_mass(field: &Field, x0: f64, rho_left: f64, rho_right: f64, half_cells: f64) -> f64 {
    let dx = field.grid.dx();
    (0..field.grid.n_cells)
        .filter_map(|i| {
            let x = field.grid.x(i);
            if (x - x0).abs() > half_cells * dx {
                return None;
            }
            let base = if x < x0 { rho_left } else { rho_right };
            Some((field.u1[i] - base) * dx)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationSummary {
    pub gammas: Vec<f64>,
    pub peak_densities: Vec<f64>,
    pub jump_separations: Vec<f64>,
    pub masses_in_window: Vec<Option<f64>>,
    /// `w1_rate t` of the limiting delta-shock, for comparison with the last window mass.
    pub limit_mass: Option<f64>,
}

/// Check that a sequence of runs at decreasing distance from the limit
/// concentrates: peak density strictly increases and the two discontinuities
/// strictly approach each other.
pub fn detect_delta_concentration(reports: &[SimReport]) -> Result<ConcentrationSummary> {
    if reports.len() < 2 {
        return Err(Error::InsufficientReports(reports.len()));
    }
    let summary = ConcentrationSummary {
        gammas: reports.iter().map(|r| r.data.gamma).collect(),
        peak_densities: reports.iter().map(|r| r.peak_density).collect(),
        jump_separations: reports.iter().map(|r| r.jump_separation()).collect(),
        masses_in_window: reports.iter().map(|r| r.mass_in_window).collect(),
        limit_mass: reports.last().and_then(|r| r.limit_mass),
    };
    for i in 1..reports.len() {
        if !(summary.peak_densities[i] > summary.peak_densities[i - 1]) {
            return Err(Error::NonMonotone { quantity: "peak_density", index: i });
        }
        if !(summary.jump_separations[i] < summary.jump_separations[i - 1]) {
            return Err(Error::NonMonotone { quantity: "jump_separation", index: i });
        }
    }
    Ok(summary)
}
