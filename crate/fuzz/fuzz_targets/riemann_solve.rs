#![no_main]

//! Exact solvers on arbitrary data: a model byte, then gamma and the two
//! states as little-endian f64. Solvers may refuse but must not panic, and
//! any fan they return must evaluate everywhere.

use deltashock::{solve_ar_riemann, solve_par_riemann, solve_pgd_riemann, Model, PrimState, RiemannData};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&tag, rest)) = data.split_first() else { return };
    let v: Vec<f64> = rest.chunks_exact(8).take(5).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    let [gamma, rl, ul, rr, ur] = v[..] else { return };
    let model = [Model::Ar, Model::Par, Model::Pgd][tag as usize % 3];
    let Ok(d) = RiemannData::new(model, gamma, PrimState::new(rl, ul), PrimState::new(rr, ur)) else { return };
    let fan = match model {
        Model::Ar => solve_ar_riemann(&d),
        Model::Par => solve_par_riemann(&d).map(|(_, f)| f),
        Model::Pgd => solve_pgd_riemann(&d),
    };
    let Ok(fan) = fan else { return };
    let edges = fan.edges();
    assert!(edges.windows(2).all(|w| w[0] <= w[1]));
    for &e in &edges {
        for xi in [e - 1.0, e, e + 1.0] {
            let _ = fan.eval(xi);
        }
    }
});
