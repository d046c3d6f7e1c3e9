/// Linear weights of the three candidate stencils.
const LINEAR: [f64; 3] = [0.1, 0.6, 0.3];
const EPS: f64 = 1e-6;

/// Fifth-order WENO-JS value at `i + 1/2` from `f[i-2..=i+2]`, biased to the left.
///
/// For the right-biased value at `i + 1/2` pass `f[i+3], f[i+2], ..., f[i-1]`.
pub fn weno5_reconstruct(v: [f64; 5]) -> f64 {
    let [a, b, c, d, e] = v;
    let q = [(2.0 * a - 7.0 * b + 11.0 * c) / 6.0, (-b + 5.0 * c + 2.0 * d) / 6.0, (2.0 * c + 5.0 * d - e) / 6.0];
    let beta = [
        13.0 / 12.0 * (a - 2.0 * b + c).powi(2) + 0.25 * (a - 4.0 * b + 3.0 * c).powi(2),
        13.0 / 12.0 * (b - 2.0 * c + d).powi(2) + 0.25 * (b - d).powi(2),
        13.0 / 12.0 * (c - 2.0 * d + e).powi(2) + 0.25 * (3.0 * c - 4.0 * d + e).powi(2),
    ];
    let alpha = [0, 1, 2].map(|k| LINEAR[k] / (EPS + beta[k]).powi(2));
    let sum = alpha[0] + alpha[1] + alpha[2];
    (alpha[0] * q[0] + alpha[1] * q[1] + alpha[2] * q[2]) / sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_and_linear_are_exact() {
        assert_eq!(weno5_reconstruct([3.25; 5]), 3.25);
        assert!((weno5_reconstruct([0.0, 1.0, 2.0, 3.0, 4.0]) - 2.5).abs() < 1e-14);
    }

    #[test]
    fn picks_smooth_side_of_a_jump() {
        let r = weno5_reconstruct([1.0, 1.0, 1.0, 0.0, 0.0]);
        assert!((r - 1.0).abs() < 1e-6, "{r}");
    }

    #[test]
    fn fifth_order_on_sine() {
        // Inputs are exact cell averages; the target is the point value at the interface.
        let err = |n: usize| {
            let dx = 2.0 * PI / n as f64;
            let avg = |j: i64| {
                let (a, b) = (j as f64 * dx, (j + 1) as f64 * dx);
                (a.cos() - b.cos()) / dx
            };
            (0..n as i64)
                .map(|i| {
                    let v = [avg(i - 2), avg(i - 1), avg(i), avg(i + 1), avg(i + 2)];
                    (weno5_reconstruct(v) - ((i + 1) as f64 * dx).sin()).abs()
                })
                .fold(0.0, f64::max)
        };
        let e: Vec<f64> = [40, 80, 160].iter().map(|&n| err(n)).collect();
        let slope = fitted_slope(&[40.0, 80.0, 160.0], &e);
        assert!(slope >= 4.5, "slope {slope}, errors {e:?}");
    }

    /// Least-squares slope of `-log(err)` against `log(n)`.
    fn fitted_slope(n: &[f64], e: &[f64]) -> f64 {
        let x: Vec<f64> = n.iter().map(|v| v.ln()).collect();
        let y: Vec<f64> = e.iter().map(|v| -v.ln()).collect();
        let m = x.len() as f64;
        let (mx, my) = (x.iter().sum::<f64>() / m, y.iter().sum::<f64>() / m);
        let num: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let den: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        num / den
    }
}
