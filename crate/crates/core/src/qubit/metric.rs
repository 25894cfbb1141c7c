//! Spectral evaluation of a monotone metric on tangent vectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::MonotoneFunction;
use crate::nlevel::Spectrum;

use super::mc_function;

const TOL: f64 = 1e-10;

fn check_tangent(spectrum: &Spectrum, m: &DMatrix<Complex64>) -> Result<()> {
    let n = spectrum.dim();
    if m.nrows() != n {
        return Err(Error::DimensionMismatch(m.nrows(), n));
    }
    if m.ncols() != n {
        return Err(Error::DimensionMismatch(m.ncols(), n));
    }
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let trace = m.trace();
    if trace.norm() > TOL * scale {
        return Err(Error::NotTraceless(trace.norm()));
    }
    let deviation = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if deviation > TOL * scale {
        return Err(Error::NotSelfAdjoint(deviation));
    }
    Ok(())
}

/// `K_D(X, Y) = Σ_ij conj(X_ij) Y_ij c(λ_i, λ_j)` with `X`, `Y` written in
/// the eigenbasis of `D`.
///
/// With this normalization a qubit on the z-axis at Bloch radius `r` and the
/// radial tangent `σ_z / 2` give `1 / (1 - r²)`, the radial component of the
/// Bloch-ball metric, so no extra constant is applied.
pub fn metric_eval(
    spectrum: &Spectrum,
    x: &DMatrix<Complex64>,
    y: &DMatrix<Complex64>,
    f: &MonotoneFunction,
) -> Result<f64> {
    check_tangent(spectrum, x)?;
    check_tangent(spectrum, y)?;
    let lambda = spectrum.eigenvalues();
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, &li) in lambda.iter().enumerate() {
        for (j, &lj) in lambda.iter().enumerate() {
            sum += x[(i, j)].conj() * y[(i, j)] * mc_function(f, li, lj)?;
        }
    }
    Ok(sum.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::catalog;
    use crate::qubit::metric_tensor;
    use approx::assert_relative_eq;

    fn real(n: usize, entries: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_row_iterator(n, n, entries.iter().map(|&v| Complex64::new(v, 0.0)))
    }

    #[test]
    fn maximally_mixed_qubit() {
        let d = Spectrum::new(vec![0.5, 0.5]).unwrap();
        let x = real(2, &[1.0, 0.0, 0.0, -1.0]);
        let k = metric_eval(&d, &x, &x, &catalog("sld").unwrap()).unwrap();
        assert_relative_eq!(k, 4.0, epsilon = 1e-14);
    }

    #[test]
    fn radial_direction_reproduces_bloch_metric() {
        let sld = catalog("sld").unwrap();
        let km = catalog("kubo_mori").unwrap();
        for &r in &[0.2, 0.6, 0.9] {
            let d = Spectrum::new(vec![(1.0 + r) / 2.0, (1.0 - r) / 2.0]).unwrap();
            let x = real(2, &[0.5, 0.0, 0.0, -0.5]);
            for f in [&sld, &km] {
                let k = metric_eval(&d, &x, &x, f).unwrap();
                assert_relative_eq!(k, metric_tensor(f, r).unwrap().g_rr, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn angular_direction_reproduces_bloch_metric() {
        // rotating the Bloch vector (0, 0, r) towards x: dD = (r/2) σ_x dθ
        let f = catalog("log_sqrt").unwrap();
        let r = 0.45;
        let d = Spectrum::new(vec![(1.0 + r) / 2.0, (1.0 - r) / 2.0]).unwrap();
        let x = real(2, &[0.0, r / 2.0, r / 2.0, 0.0]);
        let k = metric_eval(&d, &x, &x, &f).unwrap();
        assert_relative_eq!(k, metric_tensor(&f, r).unwrap().g_angular, max_relative = 1e-12);
    }

    #[test]
    fn input_validation() {
        let d = Spectrum::new(vec![0.5, 0.5]).unwrap();
        let f = catalog("sld").unwrap();
        let not_traceless = real(2, &[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(metric_eval(&d, &not_traceless, &not_traceless, &f), Err(Error::NotTraceless(_))));
        let wrong = real(3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(metric_eval(&d, &wrong, &wrong, &f), Err(Error::DimensionMismatch(3, 2))));
        let mut skew = real(2, &[0.0; 4]);
        skew[(0, 1)] = Complex64::new(0.0, 1.0);
        skew[(1, 0)] = Complex64::new(0.0, 1.0);
        assert!(matches!(metric_eval(&d, &skew, &skew, &f), Err(Error::NotSelfAdjoint(_))));
    }
}
