use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use deltashock::scheme::{run_simulation_with, Field, Grid, SimOptions, SimReport};
use deltashock::wave::ShockCheck;
use deltashock::{
    ar, ar_classify, ar_convergence_table, ar_limit_quantities, grh_residual, par, par_convergence_table,
    par_limit_quantities, solve_ar_riemann, solve_par_riemann, solve_pgd_riemann, DeltaShockProfile, FanWarning,
    GrhResidual, Model, PrimState, RiemannData, StateSample, Wave, WaveFan,
};
use serde::Serialize;

use crate::config::{ExperimentConfig, PartialConfig};
use crate::output::{fmt_f64, save_json, Table};
use crate::CliError;

/// Exact solution with the model-specific region label.
pub fn exact_fan(d: &RiemannData) -> Result<(Option<String>, WaveFan), deltashock::Error> {
    match d.model {
        Model::Ar => {
            let region = ar_classify(d);
            Ok((Some(format!("{:?}", region.label)), solve_ar_riemann(d)?))
        }
        Model::Par => {
            let (region, fan) = solve_par_riemann(d)?;
            Ok((Some(region.name().to_string()), fan))
        }
        Model::Pgd => Ok((None, solve_pgd_riemann(d)?)),
    }
}

fn shock_checks(fan: &WaveFan) -> Vec<ShockCheck> {
    match fan.data().model {
        Model::Ar => ar::shock_checks(fan),
        Model::Par => par::shock_checks(fan),
        Model::Pgd => Vec::new(),
    }
}

fn single(cfg: &ExperimentConfig, what: &str) -> Result<RiemannData, CliError> {
    match cfg.problems.as_slice() {
        [d] => Ok(*d),
        _ => Err(CliError::Config(format!("{what} takes a single gamma, got {}", cfg.problems.len()))),
    }
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))
}

#[derive(Serialize)]
struct WavesDoc<'a> {
    model: Model,
    gamma: f64,
    left: PrimState,
    right: PrimState,
    region: Option<String>,
    waves: &'a [Wave],
    states: &'a [PrimState],
    discontinuity_speeds: Vec<f64>,
    delta: Option<DeltaShockProfile>,
    grh_residual: Option<GrhResidual>,
    shock_checks: Vec<ShockCheck>,
    warnings: &'a [FanWarning],
}

/// `xi` samples covering every wave with a margin, with each delta-shock
/// speed inserted exactly so the marker row lands on it.
fn profile_table(fan: &WaveFan, samples: usize) -> Table {
    let edges = fan.edges();
    let (lo, hi) = match (edges.first(), edges.last()) {
        (Some(&a), Some(&b)) => {
            let pad = (0.25 * (b - a)).max(1.0);
            (a - pad, b + pad)
        }
        _ => (-1.0, 1.0),
    };
    let mut xs: Vec<f64> = (0..samples).map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64).collect();
    let deltas: Vec<f64> = fan.delta_profile().map(|p| p.sigma).into_iter().collect();
    xs.extend(&deltas);
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut t = Table::new(&["xi", "rho", "u", "delta"]);
    for xi in xs {
        match fan.eval(xi) {
            StateSample::State(s) => t.push(vec![xi, s.rho, s.u, 0.0]),
            StateSample::OnDeltaShock(p) => t.push(vec![xi, f64::INFINITY, p.u_delta, 1.0]),
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub files: Vec<PathBuf>,
}

pub fn solve(cfg: &ExperimentConfig) -> Result<Written, CliError> {
    let d = single(cfg, "solve")?;
    let (region, fan) = exact_fan(&d)?;
    prepare_dir(&cfg.out)?;
    let delta = fan.delta_profile();
    let doc = WavesDoc {
        model: d.model,
        gamma: d.gamma,
        left: d.left,
        right: d.right,
        region,
        waves: fan.waves(),
        states: fan.states(),
        discontinuity_speeds: fan.discontinuity_speeds(),
        delta,
        grh_residual: delta.map(|p| grh_residual(&p, &d)),
        shock_checks: shock_checks(&fan),
        warnings: fan.warnings(),
    };
    let waves = cfg.out.join("waves.json");
    save_json(&waves, &doc)?;
    let profile = profile_table(&fan, cfg.samples).save(&cfg.out, "profile", cfg.format)?;
    Ok(Written { files: vec![waves, profile] })
}

/// Convergence table led by a row holding the closed-form limit itself
/// (gamma at its limiting value, gaps zero).
pub fn limit_table(cfg: &ExperimentConfig) -> Result<Table, CliError> {
    let d = cfg.problems[0];
    let gammas = cfg.gammas();
    match d.model {
        Model::Ar => {
            let q = ar_limit_quantities(&d)?;
            let rows = ar_convergence_table(&d, &gammas)?;
            let mut t = Table::new(&[
                "gamma",
                "ln_rho_star",
                "rho_star",
                "sigma1",
                "sigma2",
                "mass_integral",
                "sigma1_gap",
                "sigma2_gap",
                "mass_gap",
            ]);
            let inf = f64::INFINITY;
            t.push(vec![0.0, inf, inf, q.sigma, q.sigma, q.w1_rate, 0.0, 0.0, 0.0]);
            for r in rows {
                t.push(vec![
                    r.gamma,
                    r.ln_rho_star,
                    r.rho_star,
                    r.sigma1,
                    r.sigma2,
                    r.mass_integral,
                    r.sigma1 - q.sigma,
                    r.sigma2 - q.sigma,
                    r.mass_integral - q.w1_rate,
                ]);
            }
            Ok(t)
        }
        Model::Par => {
            let q = par_limit_quantities(&d)?;
            let rows = par_convergence_table(&d, &gammas)?;
            let mut t = Table::new(&[
                "gamma",
                "rho_star",
                "u_star",
                "sigma1",
                "sigma2",
                "mass_integral",
                "a_hat",
                "sigma1_gap",
                "sigma2_gap",
                "mass_gap",
                "a_gap",
            ]);
            t.push(vec![1.0, f64::INFINITY, q.sigma, q.sigma, q.sigma, q.w1_rate, q.a, 0.0, 0.0, 0.0, 0.0]);
            for r in rows {
                t.push(vec![
                    r.gamma,
                    r.rho_star,
                    r.u_star,
                    r.sigma1_bar,
                    r.sigma2_bar,
                    r.mass_integral,
                    r.a_hat,
                    r.sigma1_bar - q.sigma,
                    r.sigma2_bar - q.sigma,
                    r.mass_integral - q.w1_rate,
                    r.a_hat - q.a,
                ]);
            }
            Ok(t)
        }
        Model::Pgd => Err(CliError::Config("limit needs model ar or par".into())),
    }
}

pub fn limit(cfg: &ExperimentConfig) -> Result<Written, CliError> {
    let t = limit_table(cfg)?;
    prepare_dir(&cfg.out)?;
    Ok(Written { files: vec![t.save(&cfg.out, "limit", cfg.format)?] })
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothError {
    pub max_relative: f64,
    pub at: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactComparison {
    pub region: Option<String>,
    pub discontinuities: Vec<f64>,
    pub rho_star: Option<f64>,
    pub rise_error: Option<f64>,
    pub fall_error: Option<f64>,
    pub plateau_relative_error: Option<f64>,
    /// Density error over cells more than five cells from every wave edge.
    pub smooth_region: Option<SmoothError>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Self { name: name.into(), value, limit, pass: value <= limit }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub model: Model,
    pub gamma: f64,
    pub left: PrimState,
    pub right: PrimState,
    pub t_end: f64,
    pub cells: usize,
    pub dx: f64,
    pub cfl: f64,
    pub blowup_time: Option<f64>,
    pub steps: Option<usize>,
    pub peak_density: Option<f64>,
    pub peak_location: Option<f64>,
    pub rise_location: Option<f64>,
    pub fall_location: Option<f64>,
    pub plateau_density: Option<f64>,
    pub predicted_delta_location: Option<f64>,
    pub mass_in_window: Option<f64>,
    pub limit_mass: Option<f64>,
    pub total_mass_drift: Option<f64>,
    pub floor_hits: Option<usize>,
    pub snapshots: Vec<String>,
    pub exact: Option<ExactComparison>,
    pub exact_unavailable: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl RunReport {
    fn skeleton(d: &RiemannData, cfg: &ExperimentConfig) -> Self {
        Self {
            model: d.model,
            gamma: d.gamma,
            left: d.left,
            right: d.right,
            t_end: cfg.t_end,
            cells: cfg.grid.n_cells,
            dx: cfg.grid.dx(),
            cfl: cfg.cfl,
            blowup_time: None,
            steps: None,
            peak_density: None,
            peak_location: None,
            rise_location: None,
            fall_location: None,
            plateau_density: None,
            predicted_delta_location: None,
            mass_in_window: None,
            limit_mass: None,
            total_mass_drift: None,
            floor_hits: None,
            snapshots: Vec::new(),
            exact: None,
            exact_unavailable: None,
            checks: Vec::new(),
        }
    }

    fn fill(&mut self, r: &SimReport) {
        self.steps = Some(r.steps);
        self.peak_density = Some(r.peak_density);
        self.peak_location = Some(r.peak_location);
        self.rise_location = Some(r.rise_location);
        self.fall_location = Some(r.fall_location);
        self.plateau_density = r.plateau_density;
        self.predicted_delta_location = r.predicted_delta_location;
        self.mass_in_window = r.mass_in_window;
        self.limit_mass = r.limit_mass;
        self.total_mass_drift = Some(r.total_mass_drift);
        self.floor_hits = Some(r.floor_hits);
    }
}

pub fn compare_with_exact(r: &SimReport, region: Option<String>, fan: &WaveFan) -> ExactComparison {
    let t = r.final_field.t;
    let discontinuities: Vec<f64> = fan.discontinuity_speeds().iter().map(|s| s * t).collect();
    let two_jumps = discontinuities.len() == 2 && fan.waves().len() == 2;
    let rho_star = (fan.states().len() == 3).then(|| fan.states()[1].rho);
    let plateau_relative_error = match (rho_star, r.plateau_density) {
        (Some(e), Some(p)) if two_jumps => Some((p - e).abs() / e),
        _ => None,
    };
    ExactComparison {
        region,
        rise_error: two_jumps.then(|| (r.rise_location - discontinuities[0]).abs()),
        fall_error: two_jumps.then(|| (r.fall_location - discontinuities[1]).abs()),
        discontinuities,
        rho_star,
        plateau_relative_error,
        smooth_region: smooth_error(&r.final_field, fan),
    }
}

pub fn smooth_error(f: &Field, fan: &WaveFan) -> Option<SmoothError> {
    let dx = f.grid.dx();
    let edges: Vec<f64> = fan.edges().iter().map(|e| e * f.t).collect();
    let mut worst: Option<SmoothError> = None;
    for (i, x) in f.grid.centers().into_iter().enumerate() {
        if edges.iter().any(|e| (x - e).abs() <= 5.0 * dx) {
            continue;
        }
        let Some(exact) = fan.eval(x / f.t).state() else { continue };
        if exact.rho <= 0.0 {
            continue;
        }
        let err = (f.u1[i] - exact.rho).abs() / exact.rho;
        if worst.as_ref().is_none_or(|w| err > w.max_relative) {
            worst = Some(SmoothError { max_relative: err, at: x });
        }
    }
    worst
}

fn field_table(f: &Field) -> Table {
    let mut t = Table::new(&["x", "rho", "u"]);
    let u = f.velocity();
    for (i, x) in f.grid.centers().into_iter().enumerate() {
        t.push(vec![x, f.u1[i], u[i]]);
    }
    t
}

fn exact_table(grid: &Grid, fan: &WaveFan, t_end: f64) -> Table {
    let mut t = Table::new(&["x", "rho", "u"]);
    for x in grid.centers() {
        match fan.eval(x / t_end) {
            StateSample::State(s) => t.push(vec![x, s.rho, s.u]),
            StateSample::OnDeltaShock(p) => t.push(vec![x, f64::INFINITY, p.u_delta]),
        }
    }
    t
}

struct Simulated {
    report: RunReport,
    sim: Option<SimReport>,
    fan: Option<WaveFan>,
    files: Vec<PathBuf>,
}

fn simulate_inner(d: &RiemannData, cfg: &ExperimentConfig) -> Result<Simulated, CliError> {
    if d.model == Model::Pgd {
        return Err(CliError::Config("simulate needs model ar or par".into()));
    }
    prepare_dir(&cfg.out)?;
    let mut report = RunReport::skeleton(d, cfg);
    let mut files = Vec::new();
    let opts = SimOptions { cfl: cfg.cfl, snapshot_times: cfg.snapshots.clone(), ..SimOptions::default() };
    let sim = match run_simulation_with(d, cfg.grid, cfg.t_end, &opts) {
        Ok(s) => s,
        Err(deltashock::Error::UnstableBlowup { time }) => {
            report.blowup_time = Some(time);
            let path = cfg.out.join("report.json");
            save_json(&path, &report)?;
            return Err(CliError::Blowup { time });
        }
        Err(e) => return Err(e.into()),
    };
    report.fill(&sim);
    let mut fields: Vec<&Field> = sim.snapshots.iter().collect();
    if !fields.iter().any(|f| f.t == sim.final_field.t) {
        fields.push(&sim.final_field);
    }
    for f in fields {
        let stem = format!("snapshot_t{}", fmt_f64(f.t));
        let path = field_table(f).save(&cfg.out, &stem, cfg.format)?;
        report.snapshots.push(path.file_name().unwrap().to_string_lossy().into_owned());
        files.push(path);
    }
    let fan = match exact_fan(d) {
        Ok((region, fan)) => {
            report.exact = Some(compare_with_exact(&sim, region, &fan));
            Some(fan)
        }
        Err(e) => {
            report.exact_unavailable = Some(e.to_string());
            None
        }
    };
    Ok(Simulated { report, sim: Some(sim), fan, files })
}

pub fn simulate(cfg: &ExperimentConfig) -> Result<Written, CliError> {
    let d = single(cfg, "simulate")?;
    let mut s = simulate_inner(&d, cfg)?;
    let path = cfg.out.join("report.json");
    save_json(&path, &s.report)?;
    s.files.push(path);
    Ok(Written { files: s.files })
}

/// The bundled reference experiments. `fig5-alt` repeats `fig5` with
/// gamma = 0.01 instead of 0.001.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Fig3,
    Fig4,
    Fig5,
    Fig5Alt,
    Fig6,
    Fig7,
    Fig8,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Fig3,
        Experiment::Fig4,
        Experiment::Fig5,
        Experiment::Fig5Alt,
        Experiment::Fig6,
        Experiment::Fig7,
        Experiment::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fig3 => "fig3",
            Experiment::Fig4 => "fig4",
            Experiment::Fig5 => "fig5",
            Experiment::Fig5Alt => "fig5-alt",
            Experiment::Fig6 => "fig6",
            Experiment::Fig7 => "fig7",
            Experiment::Fig8 => "fig8",
        }
    }

    pub fn data(self) -> RiemannData {
        let (model, gamma) = match self {
            Experiment::Fig3 => (Model::Ar, 0.6),
            Experiment::Fig4 => (Model::Ar, 0.3),
            Experiment::Fig5 => (Model::Ar, 0.001),
            Experiment::Fig5Alt => (Model::Ar, 0.01),
            Experiment::Fig6 => (Model::Par, 1.4),
            Experiment::Fig7 => (Model::Par, 1.04),
            Experiment::Fig8 => (Model::Par, 1.001),
        };
        match model {
            Model::Ar => RiemannData::ar(gamma, (3.5, 6.0), (2.0, 4.0)),
            _ => RiemannData::par(gamma, (3.0, 4.0), (2.5, 2.0)),
        }
        .expect("registry data is valid")
    }

    /// Last figure of each sequence, where the concentration is compared
    /// against the limiting delta mass.
    fn is_smallest_gamma(self) -> bool {
        matches!(self, Experiment::Fig5 | Experiment::Fig5Alt | Experiment::Fig8)
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Experiment::ALL.into_iter().find(|e| e.name() == s.trim()).ok_or_else(|| {
            let names: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
            CliError::Config(format!("unknown experiment '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

pub const POSITION_TOLERANCE_CELLS: f64 = 3.0;
pub const PLATEAU_TOLERANCE: f64 = 0.05;
pub const MASS_DRIFT_TOLERANCE: f64 = 1e-8;
pub const WINDOW_MASS_TOLERANCE: f64 = 0.25;

pub fn experiment_config(e: Experiment, overrides: PartialConfig) -> Result<ExperimentConfig, CliError> {
    let d = e.data();
    let base = PartialConfig {
        model: Some(d.model),
        gammas: Some(vec![d.gamma]),
        left: Some((d.left.rho, d.left.u)),
        right: Some((d.right.rho, d.right.u)),
        ..PartialConfig::default()
    };
    base.overlay(PartialConfig { model: None, gammas: None, left: None, right: None, ..overrides }).resolve()
}

pub fn reproduce(e: Experiment, cfg: &ExperimentConfig) -> Result<Written, CliError> {
    let d = cfg.problems[0];
    let Simulated { mut report, sim, fan, mut files } = simulate_inner(&d, cfg)?;
    let sim = sim.expect("simulation ran");
    if let Some(fan) = &fan {
        let path = exact_table(&cfg.grid, fan, cfg.t_end).save(
            &cfg.out,
            &format!("exact_t{}", fmt_f64(cfg.t_end)),
            cfg.format,
        )?;
        files.push(path);
    }
    let tol = POSITION_TOLERANCE_CELLS * cfg.grid.dx();
    if let Some(x) = &report.exact {
        if let (Some(rise), Some(fall)) = (x.rise_error, x.fall_error) {
            report.checks.push(Check::at_most("first_discontinuity_position", rise, tol));
            report.checks.push(Check::at_most("second_discontinuity_position", fall, tol));
        }
        if let Some(p) = x.plateau_relative_error {
            report.checks.push(Check::at_most("plateau_density_relative", p, PLATEAU_TOLERANCE));
        }
    }
    report.checks.push(Check::at_most("total_mass_drift", sim.total_mass_drift, MASS_DRIFT_TOLERANCE));
    if e.is_smallest_gamma() {
        if let (Some(m), Some(l)) = (sim.mass_in_window, sim.limit_mass) {
            report.checks.push(Check::at_most("window_mass_relative", (m - l).abs() / l, WINDOW_MASS_TOLERANCE));
        }
    }
    let path = cfg.out.join("report.json");
    save_json(&path, &report)?;
    files.push(path);
    Ok(Written { files })
}
