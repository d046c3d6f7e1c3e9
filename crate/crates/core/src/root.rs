//! Derivative-free scalar root bracketing and bisection.

use crate::error::{Error, Result};

pub(crate) const MAX_ITER: usize = 200;

/// Bisection on `[a, b]` where `f(a)` and `f(b)` have opposite signs.
///
/// Stops when the bracket is narrower than `rtol` relative to its midpoint,
/// when the midpoint can no longer be represented between the ends, or when
/// `f` hits zero exactly.
pub(crate) fn bisect<F>(mut f: F, mut a: f64, mut b: f64, rtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoConvergence(format!("no sign change on [{a}, {b}]: f = ({fa}, {fb})")));
    }
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) || (b - a).abs() <= rtol * m.abs() {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if !fm.is_finite() {
            return Err(Error::NoConvergence(format!("f({m}) = {fm}")));
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Expand `hi` geometrically (in distance from `lo`) until `sign(f(hi)) != sign(f(lo))`.
pub(crate) fn expand_upward<F>(mut f: F, lo: f64, first_step: f64, max_doublings: u32) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let flo = f(lo);
    let mut step = first_step;
    for _ in 0..max_doublings {
        let hi = lo + step;
        let fhi = f(hi);
        if fhi.is_nan() {
            break;
        }
        if fhi == 0.0 || fhi.signum() != flo.signum() {
            return Ok(hi);
        }
        step *= 2.0;
    }
    Err(Error::NoConvergence(format!("could not bracket a root above {lo}")))
}

/// Mirror of [`expand_upward`] towards smaller arguments.
pub(crate) fn expand_downward<F>(mut f: F, hi: f64, first_step: f64, max_doublings: u32) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    expand_upward(|x| f(-x), -hi, first_step, max_doublings).map(|x| -x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 0.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 4.0 * f64::EPSILON);
    }

    #[test]
    fn reports_missing_sign_change() {
        assert!(matches!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12), Err(Error::NoConvergence(_))));
    }

    #[test]
    fn expands_both_ways() {
        let hi = expand_upward(|x| x - 100.0, 0.0, 1.0, 60).unwrap();
        assert!(hi >= 100.0);
        let lo = expand_downward(|x| x + 100.0, 0.0, 1.0, 60).unwrap();
        assert!(lo <= -100.0);
    }
}
