//! Finite-difference WENO5 scheme with global Lax-Friedrichs flux splitting
//! and SSP-RK3 time stepping for the AR and PAR systems in conservative form.

mod analysis;
mod weno;

use serde::Serialize;

use crate::conservation;
use crate::error::{Error, Result};
use crate::pgd;
use crate::state::{Model, PrimState, RiemannData};

pub use analysis::{
    detect_delta_concentration, plateau_density, steepest_rise_fall, window_mass, ConcentrationSummary,
};
pub use weno::weno5_reconstruct;

pub const DENSITY_FLOOR: f64 = 1e-12;
pub const DEFAULT_CFL: f64 = 0.4;
const GHOSTS: usize = 3;
/// Half-width, in cells, of the window used to collect the concentrated mass.
pub const WINDOW_HALF_CELLS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if n_cells < 11 {
            return Err(Error::InvalidGrid(format!("need at least 11 cells, got {n_cells}")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::InvalidGrid(format!("bad domain [{x_min}, {x_max}]")));
        }
        Ok(Self { x_min, x_max, n_cells })
    }

    /// The experiments' grid: 400 cells on `[-4, 4]`.
    pub fn standard() -> Self {
        Self { x_min: -4.0, x_max: 4.0, n_cells: 400 }
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    /// Cell center `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.x(i)).collect()
    }
}

pub fn conserved_from_primitive(s: PrimState, model: Model, gamma: f64) -> Result<(f64, f64)> {
    if !(s.rho > 0.0) {
        return Err(Error::NonPositiveDensity(s.rho));
    }
    let [a, b] = conservation::conserved(model, gamma, s);
    Ok((a, b))
}

/// Inverse of [`conserved_from_primitive`]; densities below [`DENSITY_FLOOR`] are raised to it.
pub fn primitive_from_conserved(u1: f64, u2: f64, model: Model, gamma: f64) -> PrimState {
    conservation::primitive(model, gamma, u1.max(DENSITY_FLOOR), u2)
}

/// Conserved variables on a grid at time `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Field {
    pub grid: Grid,
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
    pub t: f64,
    pub model: Model,
    pub gamma: f64,
}

impl Field {
    /// Riemann initial data: left state for `x < 0`, right state otherwise.
    pub fn from_riemann(data: &RiemannData, grid: Grid) -> Result<Self> {
        let n = grid.n_cells;
        let (mut u1, mut u2) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for i in 0..n {
            let s = if grid.x(i) < 0.0 { data.left } else { data.right };
            let (a, b) = conserved_from_primitive(s, data.model, data.gamma)?;
            u1.push(a);
            u2.push(b);
        }
        Ok(Self { grid, u1, u2, t: 0.0, model: data.model, gamma: data.gamma })
    }

    pub fn primitive(&self, i: usize) -> PrimState {
        primitive_from_conserved(self.u1[i], self.u2[i], self.model, self.gamma)
    }

    pub fn density(&self) -> &[f64] {
        &self.u1
    }

    pub fn velocity(&self) -> Vec<f64> {
        (0..self.u1.len()).map(|i| self.primitive(i).u).collect()
    }

    /// `sum rho dx`.
    pub fn mass(&self) -> f64 {
        self.u1.iter().sum::<f64>() * self.grid.dx()
    }

    fn with_states(&self, u: &[[f64; 2]], t: f64) -> Self {
        Self {
            grid: self.grid,
            u1: u.iter().map(|v| v[0]).collect(),
            u2: u.iter().map(|v| v[1]).collect(),
            t,
            model: self.model,
            gamma: self.gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOptions {
    pub cfl: f64,
    /// Extra output times in `(0, t_end]`; the step is shortened to land on them.
    pub snapshot_times: Vec<f64>,
    pub max_steps: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self { cfl: DEFAULT_CFL, snapshot_times: Vec::new(), max_steps: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub data: RiemannData,
    pub final_field: Field,
    pub snapshots: Vec<Field>,
    pub peak_density: f64,
    pub peak_location: f64,
    /// Where the limiting delta-shock would sit at the final time.
    pub predicted_delta_location: Option<f64>,
    /// Excess of `rho` over the step initial profile within five cells of the predicted location.
    pub mass_in_window: Option<f64>,
    /// `w1_rate t` of the limiting delta-shock.
    pub limit_mass: Option<f64>,
    /// `|M(t) - M(0) - boundary inflow| / M(0)`.
    pub total_mass_drift: f64,
    pub floor_hits: usize,
    pub steps: usize,
    /// Locations of the steepest density increase and decrease.
    pub rise_location: f64,
    pub fall_location: f64,
    pub plateau_density: Option<f64>,
}

impl SimReport {
    pub fn jump_separation(&self) -> f64 {
        self.fall_location - self.rise_location
    }
}

pub fn run_simulation(data: &RiemannData, grid: Grid, t_end: f64, cfl: f64) -> Result<SimReport> {
    run_simulation_with(data, grid, t_end, &SimOptions { cfl, ..SimOptions::default() })
}

pub fn run_simulation_with(data: &RiemannData, grid: Grid, t_end: f64, opts: &SimOptions) -> Result<SimReport> {
    if data.model == Model::Pgd {
        return Err(Error::InvalidParameter("the scheme supports the ar and par models".into()));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_end must be positive, got {t_end}")));
    }
    if !(opts.cfl > 0.0 && opts.cfl < 1.0) {
        return Err(Error::InvalidParameter(format!("cfl must lie in (0, 1), got {}", opts.cfl)));
    }
    let field0 = Field::from_riemann(data, grid)?;
    let physics = Physics::System { model: data.model, gamma: data.gamma };
    let mut stepper = Stepper::new(physics, grid, Boundary::Outflow);

    let mut stops: Vec<f64> = opts.snapshot_times.iter().copied().filter(|&t| t > 0.0 && t < t_end).collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    stops.push(t_end);

    let mut snapshots = Vec::new();
    if opts.snapshot_times.contains(&0.0) {
        snapshots.push(field0.clone());
    }

    let mut u: Vec<[f64; 2]> = field0.u1.iter().zip(&field0.u2).map(|(&a, &b)| [a, b]).collect();
    let m0 = field0.mass();
    let mut inflow = 0.0;
    let mut t = 0.0;
    let mut steps = 0;
    for &stop in &stops {
        while t < stop {
            if steps >= opts.max_steps {
                return Err(Error::UnstableBlowup { time: t });
            }
            let alpha = stepper.max_speed(&u);
            if !alpha.is_finite() {
                return Err(Error::UnstableBlowup { time: t });
            }
            let mut dt = opts.cfl * grid.dx() / alpha.max(1e-300);
            let landing = t + dt >= stop;
            if landing {
                dt = stop - t;
            }
            inflow += stepper.ssp_rk3(&mut u, dt);
            t = if landing { stop } else { t + dt };
            steps += 1;
            if !stepper.all_finite(&u) {
                return Err(Error::UnstableBlowup { time: t });
            }
        }
        if stop < t_end || opts.snapshot_times.contains(&t_end) {
            snapshots.push(field0.with_states(&u, t));
        }
    }

    let field = field0.with_states(&u, t);
    let drift = (field.mass() - m0 - inflow).abs() / m0;
    Ok(build_report(data, field, snapshots, drift, stepper.floor_hits, steps))
}

fn build_report(
    data: &RiemannData,
    field: Field,
    snapshots: Vec<Field>,
    drift: f64,
    floor_hits: usize,
    steps: usize,
) -> SimReport {
    let (l, r) = (data.left, data.right);
    let (peak_i, peak_density) =
        field
            .u1
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let t = field.t;
    let (predicted, limit_mass) = if r.u < l.u {
        let (speed, w1) = match data.model {
            Model::Ar => (r.u, l.rho * (l.u - r.u)),
            _ => (pgd::delta_speed(l, r), (l.rho * r.rho).sqrt() * (l.u - r.u)),
        };
        (Some(speed * t), Some(w1 * t))
    } else {
        (None, None)
    };
    let mass_in_window = predicted.map(|x| window_mass(&field, x, l.rho, r.rho, WINDOW_HALF_CELLS));
    let (rise, fall) = steepest_rise_fall(&field);
    let plateau = plateau_density(&field, rise, fall);
    SimReport {
        data: *data,
        peak_location: field.grid.x(peak_i),
        peak_density,
        predicted_delta_location: predicted,
        mass_in_window,
        limit_mass,
        total_mass_drift: drift,
        floor_hits,
        steps,
        rise_location: rise,
        fall_location: fall,
        plateau_density: plateau,
        final_field: field,
        snapshots,
    }
}

#[derive(Debug, Clone, Copy)]
enum Physics {
    System {
        model: Model,
        gamma: f64,
    },
    /// Both components advected at a fixed speed; used to test the stepper.
    #[cfg_attr(not(test), allow(dead_code))]
    Advection {
        speed: f64,
    },
}

impl Physics {
    fn flux(&self, v: [f64; 2]) -> [f64; 2] {
        match *self {
            Physics::System { model, gamma } => {
                conservation::flux(model, gamma, primitive_from_conserved(v[0], v[1], model, gamma))
            }
            Physics::Advection { speed } => [speed * v[0], speed * v[1]],
        }
    }

    fn spectral_radius(&self, v: [f64; 2]) -> f64 {
        match *self {
            Physics::System { model, gamma } => {
                let s = primitive_from_conserved(v[0], v[1], model, gamma);
                match model {
                    Model::Ar => s.u.abs().max((s.u - gamma * s.rho.powf(gamma)).abs()),
                    Model::Par => s.u.abs() + ((gamma - 1.0) * s.rho.powf(gamma - 1.0) * s.u.abs()).sqrt(),
                    Model::Pgd => s.u.abs(),
                }
            }
            Physics::Advection { speed } => speed.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Boundary {
    Outflow,
    #[cfg_attr(not(test), allow(dead_code))]
    Periodic,
}

struct Stepper {
    physics: Physics,
    dx: f64,
    n: usize,
    boundary: Boundary,
    ext: Vec<[f64; 2]>,
    fp: Vec<[f64; 2]>,
    fm: Vec<[f64; 2]>,
    hat: Vec<[f64; 2]>,
    rhs: Vec<[f64; 2]>,
    stage: Vec<[f64; 2]>,
    floor_hits: usize,
}

impl Stepper {
    fn new(physics: Physics, grid: Grid, boundary: Boundary) -> Self {
        let n = grid.n_cells;
        let m = n + 2 * GHOSTS;
        Self {
            physics,
            dx: grid.dx(),
            n,
            boundary,
            ext: vec![[0.0; 2]; m],
            fp: vec![[0.0; 2]; m],
            fm: vec![[0.0; 2]; m],
            hat: vec![[0.0; 2]; n + 1],
            rhs: vec![[0.0; 2]; n],
            stage: vec![[0.0; 2]; n],
            floor_hits: 0,
        }
    }

    fn max_speed(&self, u: &[[f64; 2]]) -> f64 {
        u.iter().map(|&v| self.physics.spectral_radius(v)).fold(0.0, f64::max)
    }

    fn fill_ghosts(&mut self, u: &[[f64; 2]]) {
        let n = self.n;
        self.ext[GHOSTS..GHOSTS + n].copy_from_slice(u);
        for g in 0..GHOSTS {
            let (left, right) = match self.boundary {
                Boundary::Outflow => (u[0], u[n - 1]),
                Boundary::Periodic => (u[n - GHOSTS + g], u[g]),
            };
            self.ext[g] = left;
            self.ext[GHOSTS + n + g] = right;
        }
    }

    /// Writes `-dF/dx` into `self.rhs` and returns the net mass inflow rate
    /// through the two boundaries.
    fn evaluate(&mut self, u: &[[f64; 2]]) -> f64 {
        self.fill_ghosts(u);
        let alpha = self.ext.iter().map(|&v| self.physics.spectral_radius(v)).fold(0.0, f64::max);
        for (j, &v) in self.ext.iter().enumerate() {
            let f = self.physics.flux(v);
            for k in 0..2 {
                self.fp[j][k] = 0.5 * (f[k] + alpha * v[k]);
                self.fm[j][k] = 0.5 * (f[k] - alpha * v[k]);
            }
        }
        // Interface h between cells j and j+1 of the extended array, j = GHOSTS-1 ..= GHOSTS+n-1.
        for h in 0..=self.n {
            let j = GHOSTS - 1 + h;
            for k in 0..2 {
                let plus = weno5_reconstruct([
                    self.fp[j - 2][k],
                    self.fp[j - 1][k],
                    self.fp[j][k],
                    self.fp[j + 1][k],
                    self.fp[j + 2][k],
                ]);
                let minus = weno5_reconstruct([
                    self.fm[j + 3][k],
                    self.fm[j + 2][k],
                    self.fm[j + 1][k],
                    self.fm[j][k],
                    self.fm[j - 1][k],
                ]);
                self.hat[h][k] = plus + minus;
            }
        }
        for i in 0..self.n {
            for k in 0..2 {
                self.rhs[i][k] = -(self.hat[i + 1][k] - self.hat[i][k]) / self.dx;
            }
        }
        self.hat[0][0] - self.hat[self.n][0]
    }

    fn apply_floor(&mut self, u: &mut [[f64; 2]]) {
        if matches!(self.physics, Physics::Advection { .. }) {
            return;
        }
        for v in u.iter_mut() {
            if v[0] < DENSITY_FLOOR {
                v[0] = DENSITY_FLOOR;
                self.floor_hits += 1;
            }
        }
    }

    /// One SSP-RK3 step in place; returns the mass that entered through the boundaries.
    fn ssp_rk3(&mut self, u: &mut [[f64; 2]], dt: f64) -> f64 {
        let b0 = self.evaluate(u);
        let mut stage = std::mem::take(&mut self.stage);
        for i in 0..self.n {
            for k in 0..2 {
                stage[i][k] = u[i][k] + dt * self.rhs[i][k];
            }
        }
        self.apply_floor(&mut stage);

        let b1 = self.evaluate(&stage);
        for i in 0..self.n {
            for k in 0..2 {
                stage[i][k] = 0.75 * u[i][k] + 0.25 * (stage[i][k] + dt * self.rhs[i][k]);
            }
        }
        self.apply_floor(&mut stage);

        let b2 = self.evaluate(&stage);
        for i in 0..self.n {
            for k in 0..2 {
                u[i][k] = (u[i][k] + 2.0 * (stage[i][k] + dt * self.rhs[i][k])) / 3.0;
            }
        }
        self.apply_floor(u);
        self.stage = stage;
        dt * (b0 / 6.0 + b1 / 6.0 + 2.0 * b2 / 3.0)
    }

    fn all_finite(&self, u: &[[f64; 2]]) -> bool {
        u.iter().all(|v| {
            v[0].is_finite()
                && v[1].is_finite()
                && match self.physics {
                    Physics::System { model, gamma } => {
                        primitive_from_conserved(v[0], v[1], model, gamma).u.is_finite()
                    }
                    Physics::Advection { .. } => true,
                }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn conversion_examples() {
        let (a, b) = conserved_from_primitive(PrimState::new(1.0, 1.0), Model::Ar, 0.5).unwrap();
        assert_eq!((a, b), (1.0, 2.0));
        assert_eq!(primitive_from_conserved(a, b, Model::Ar, 0.5), PrimState::new(1.0, 1.0));
        let (a, b) = conserved_from_primitive(PrimState::new(2.0, 3.0), Model::Par, 2.0).unwrap();
        assert_eq!((a, b), (2.0, 8.0));
        let (_, b) = conserved_from_primitive(PrimState::new(3.5, 6.0), Model::Ar, 0.6).unwrap();
        assert!((b - (21.0 + 3.5f64.powf(1.6))).abs() < 1e-13);
        assert!(conserved_from_primitive(PrimState::new(0.0, 1.0), Model::Ar, 0.5).is_err());
        assert_eq!(primitive_from_conserved(-1.0, 0.0, Model::Par, 2.0).rho, DENSITY_FLOOR);
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(-4.0, 4.0, 4).is_err());
        assert!(Grid::new(1.0, 1.0, 100).is_err());
        let g = Grid::standard();
        assert_eq!(g.dx(), 0.02);
        assert_eq!(g.x(0), -3.99);
    }

    #[test]
    fn constant_state_is_preserved() {
        let d = RiemannData::ar(0.6, (2.0, 3.0), (2.0, 3.0)).unwrap();
        let grid = Grid::new(-1.0, 1.0, 50).unwrap();
        let r = run_simulation(&d, grid, 0.2, 0.4).unwrap();
        let f0 = Field::from_riemann(&d, grid).unwrap();
        for i in 0..50 {
            assert!((r.final_field.u1[i] - f0.u1[i]).abs() <= 1e-12);
            assert!((r.final_field.u2[i] - f0.u2[i]).abs() <= 1e-12);
        }
        assert!(r.total_mass_drift <= 1e-13);
    }

    #[test]
    fn rejects_bad_parameters() {
        let d = RiemannData::ar(0.6, (2.0, 3.0), (2.0, 3.0)).unwrap();
        let g = Grid::standard();
        assert!(run_simulation(&d, g, 0.0, 0.4).is_err());
        assert!(run_simulation(&d, g, 0.1, 1.2).is_err());
        let p = RiemannData::pgd((1.0, 1.0), (1.0, 0.0)).unwrap();
        assert!(run_simulation(&p, g, 0.1, 0.4).is_err());
    }

    #[test]
    fn snapshots_land_on_requested_times() {
        let d = RiemannData::ar(0.6, (3.5, 6.0), (2.0, 4.0)).unwrap();
        let opts = SimOptions { snapshot_times: vec![0.0, 0.05, 0.1], ..SimOptions::default() };
        let r = run_simulation_with(&d, Grid::new(-1.0, 1.0, 60).unwrap(), 0.1, &opts).unwrap();
        let times: Vec<f64> = r.snapshots.iter().map(|f| f.t).collect();
        assert_eq!(times, vec![0.0, 0.05, 0.1]);
        assert_eq!(r.final_field.t, 0.1);
    }

    #[test]
    fn advection_converges_at_third_order_or_better() {
        let err = |n: usize| {
            let grid = Grid::new(0.0, 2.0 * PI, n).unwrap();
            let mut st = Stepper::new(Physics::Advection { speed: 1.0 }, grid, Boundary::Periodic);
            let dx = grid.dx();
            let avg = |a: f64| ((a - 0.5 * dx).cos() - (a + 0.5 * dx).cos()) / dx;
            let mut u: Vec<[f64; 2]> = grid.centers().iter().map(|&x| [avg(x); 2]).collect();
            let t_end = 1.0;
            let steps = (t_end / (0.5 * dx)).ceil() as usize;
            let dt = t_end / steps as f64;
            for _ in 0..steps {
                st.ssp_rk3(&mut u, dt);
            }
            grid.centers().iter().zip(&u).map(|(&x, v)| (v[0] - avg(x - t_end)).abs()).fold(0.0, f64::max)
        };
        let (e1, e2) = (err(40), err(80));
        let order = (e1 / e2).log2();
        assert!(order >= 3.0, "order {order} ({e1:e}, {e2:e})");
    }
}
