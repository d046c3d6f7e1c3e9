use deltashock::scheme::{detect_delta_concentration, run_simulation, Grid, SimReport};
use deltashock::{solve_ar_riemann, solve_par_riemann, Error, RiemannData, WaveFan};

const T_END: f64 = 0.4;

fn par_data(gamma: f64) -> RiemannData {
    RiemannData::par(gamma, (3.0, 4.0), (2.5, 2.0)).unwrap()
}

fn ar_data(gamma: f64) -> RiemannData {
    RiemannData::ar(gamma, (3.5, 6.0), (2.0, 4.0)).unwrap()
}

fn run(d: &RiemannData) -> SimReport {
    run_simulation(d, Grid::standard(), T_END, 0.4).unwrap()
}

/// Worst relative density error over cells more than five cells from every wave edge.
fn worst_smooth_error(report: &SimReport, fan: &WaveFan) -> (f64, f64) {
    let f = &report.final_field;
    let dx = f.grid.dx();
    let edges: Vec<f64> = fan.edges().iter().map(|e| e * T_END).collect();
    let mut worst = (0.0, 0.0);
    for (i, x) in f.grid.centers().into_iter().enumerate() {
        if edges.iter().any(|e| (x - e).abs() <= 5.0 * dx) {
            continue;
        }
        let exact = fan.eval(x / T_END).state().unwrap().rho;
        let err = (f.u1[i] - exact).abs() / exact;
        if err > worst.0 {
            worst = (err, x);
        }
    }
    worst
}

#[test]
fn par_two_shocks_land_on_the_exact_positions() {
    let d = par_data(1.4);
    let r = run(&d);
    let (_, fan) = solve_par_riemann(&d).unwrap();
    let s = fan.discontinuity_speeds();
    let tol = 3.0 * Grid::standard().dx();
    assert!((r.rise_location - s[0] * T_END).abs() <= tol, "{} vs {}", r.rise_location, s[0] * T_END);
    assert!((r.fall_location - s[1] * T_END).abs() <= tol, "{} vs {}", r.fall_location, s[1] * T_END);
    let rho_star = fan.states()[1].rho;
    let plateau = r.plateau_density.unwrap();
    assert!((plateau - rho_star).abs() <= 0.05 * rho_star, "{plateau} vs {rho_star}");
}

#[test]
fn par_agrees_with_the_exact_solution_away_from_jumps() {
    let d = par_data(1.4);
    let r = run(&d);
    let (_, fan) = solve_par_riemann(&d).unwrap();
    let (err, x) = worst_smooth_error(&r, &fan);
    assert!(err <= 0.02, "{err} at x = {x}");
}

#[test]
fn runs_conserve_mass_without_touching_the_floor() {
    for d in [par_data(1.4), par_data(1.04), ar_data(0.6), ar_data(0.3)] {
        let r = run(&d);
        assert!(r.total_mass_drift <= 1e-8, "{:?}: drift {}", d, r.total_mass_drift);
        assert_eq!(r.floor_hits, 0, "{d:?}");
    }
}

#[test]
fn ar_plateau_matches_the_exact_intermediate_density() {
    let d = ar_data(0.6);
    let r = run(&d);
    let rho_star = solve_ar_riemann(&d).unwrap().states()[1].rho;
    let plateau = r.plateau_density.unwrap();
    assert!((plateau - rho_star).abs() <= 0.05 * rho_star, "{plateau} vs {rho_star}");
}

#[test]
fn par_concentrates_as_gamma_decreases() {
    let reports: Vec<_> = [1.4, 1.04].map(|g| run(&par_data(g))).into();
    let summary = detect_delta_concentration(&reports).unwrap();
    assert!(summary.peak_densities[1] > summary.peak_densities[0]);
    assert!(summary.jump_separations[1] < summary.jump_separations[0]);
    let limit = summary.limit_mass.unwrap();
    let m = summary.masses_in_window[1].unwrap();
    assert!((m - limit).abs() <= 0.25 * limit, "{m} vs {limit}");
}

#[test]
fn ar_peaks_grow_and_jumps_close_in() {
    let reports: Vec<_> = [0.6, 0.3, 0.1].map(|g| run(&ar_data(g))).into();
    let summary = detect_delta_concentration(&reports).unwrap();
    assert_eq!(summary.gammas, vec![0.6, 0.3, 0.1]);
    assert!((summary.limit_mass.unwrap() - 2.8).abs() < 1e-12);
}

#[test]
fn concentration_needs_two_reports() {
    let r = run(&par_data(1.4));
    assert!(matches!(detect_delta_concentration(&[r]), Err(Error::InsufficientReports { .. })));
}
