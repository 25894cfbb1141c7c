//! Scalar curvature of `n`-level states from the spectrum alone, together
//! with the majorization order and scans for monotonicity of the curvature.
//!
//! The curvature is `Σ h(x, y, z) − Σ h(x, x, x) + (n²−1)(n²−2)/4` over
//! eigenvalues with multiplicity, where `h = h₁ − h₂/2 + 2h₃ − h₄` is built
//! from the Morozova-Chentsov function `c`. Coincident arguments are routed
//! to closed-form limits.

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::function::MonotoneFunction;

/// Eigenvalues of an `n`-level density matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

pub const SPECTRUM_TOLERANCE: f64 = 1e-12;
/// Relative gap below which two eigenvalues are treated as equal.
pub const COINCIDENCE: f64 = 1e-6;

impl Spectrum {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(eigenvalues, SPECTRUM_TOLERANCE)
    }

    /// Validates positivity and normalization to within `tol`; the values are
    /// never rescaled.
    pub fn with_tolerance(eigenvalues: Vec<f64>, tol: f64) -> Result<Self> {
        if eigenvalues.len() < 2 {
            return Err(Error::InvalidSpectrum(format!(
                "need at least two eigenvalues, got {}",
                eigenvalues.len()
            )));
        }
        if let Some(bad) = eigenvalues.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
            return Err(Error::InvalidSpectrum(format!("eigenvalue {bad} is not positive")));
        }
        let sum: f64 = eigenvalues.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidSpectrum(format!("eigenvalues sum to {sum}, not 1")));
        }
        Ok(Self { eigenvalues })
    }

    /// Uniform spectrum of the maximally mixed state.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Qubit spectrum `((1+a)/2, (1-a)/2)`.
    pub fn qubit(a: f64) -> Result<Self> {
        Self::new(vec![(1.0 + a) / 2.0, (1.0 - a) / 2.0])
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn sorted_descending(&self) -> Vec<f64> {
        let mut v = self.eigenvalues.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

impl std::str::FromStr for Spectrum {
    type Err = Error;

    /// Comma-separated eigenvalues; the sum must be 1 within `1e-9`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidSpectrum(format!("`{}`: {e}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_tolerance(values, 1e-9)
    }
}

fn coincide(a: f64, b: f64) -> bool {
    (a - b).abs() <= COINCIDENCE * a.max(b)
}

/// Closure over `f` providing `c`, `∂₁ log c` and the mixed log-derivative.
struct Kernel<'a> {
    f: &'a MonotoneFunction,
}

impl Kernel<'_> {
    fn c(&self, x: f64, y: f64) -> f64 {
        1.0 / (y * self.f.value(x / y))
    }

    /// `∂₁ log c(x, y) = -f'(x/y) / (y f(x/y))`.
    fn dlog(&self, x: f64, y: f64) -> f64 {
        let (v, d1, _) = self.f.triple(x / y);
        -d1 / (y * v)
    }

    fn h1(&self, x: f64, y: f64, z: f64) -> f64 {
        let (cxz, cyz) = (self.c(x, z), self.c(y, z));
        (self.c(x, y) - z * cxz * cyz) / ((x - z) * (y - z) * cxz * cyz)
    }

    /// `h₁(x, y, x)`, also equal to `h₁(y, x, x)`.
    fn h1_pair(&self, x: f64, y: f64) -> f64 {
        -0.5 * (1.0 + 2.0 * x * self.dlog(x, y)) / (x - y)
    }

    fn h2(&self, x: f64, y: f64, z: f64) -> f64 {
        let (cxz, cyz) = (self.c(x, z), self.c(y, z));
        (cxz - cyz).powi(2) / ((x - y).powi(2) * self.c(x, y) * cxz * cyz)
    }

    /// `h₂(x, x, z)`.
    fn h2_pair(&self, x: f64, z: f64) -> f64 {
        x * self.dlog(x, z).powi(2)
    }

    fn h3(&self, x: f64, y: f64, z: f64) -> f64 {
        z / (x - y) * (self.dlog(z, x) - self.dlog(z, y))
    }

    /// `h₃(x, x, z) = z ∂₁∂₂ log c(z, x)`.
    fn h3_pair(&self, x: f64, z: f64) -> f64 {
        let (v, d1, d2) = self.f.triple(z / x);
        let q = d1 / v;
        z * q / (x * x) + z * z * (d2 / v - q * q) / x.powi(3)
    }

    fn h4(&self, x: f64, y: f64, z: f64) -> f64 {
        z * self.dlog(z, x) * self.dlog(z, y)
    }

    /// All four functions coincide in pairs at `x = y = z`.
    fn h_triple(&self, x: f64) -> f64 {
        let (_, _, f2) = self.f.triple(1.0);
        let h13 = (f2 + 0.25) / x;
        let h24 = 0.25 / x;
        h13 - 0.5 * h24 + 2.0 * h13 - h24
    }

    fn h(&self, x: f64, y: f64, z: f64) -> f64 {
        let (xy, xz, yz) = (coincide(x, y), coincide(x, z), coincide(y, z));
        if [xy, xz, yz].iter().filter(|b| **b).count() >= 2 {
            return self.h_triple((x + y + z) / 3.0);
        }
        let h1 = if xz {
            self.h1_pair((x + z) / 2.0, y)
        } else if yz {
            self.h1_pair((y + z) / 2.0, x)
        } else {
            self.h1(x, y, z)
        };
        let (h2, h3) = if xy {
            let m = (x + y) / 2.0;
            (self.h2_pair(m, z), self.h3_pair(m, z))
        } else {
            (self.h2(x, y, z), self.h3(x, y, z))
        };
        h1 - 0.5 * h2 + 2.0 * h3 - self.h4(x, y, z)
    }
}

/// `h(x, y, z) = h₁ − h₂/2 + 2h₃ − h₄`, with limits at coincident arguments.
pub fn h_value(f: &MonotoneFunction, x: f64, y: f64, z: f64) -> Result<f64> {
    require_positive(x)?;
    require_positive(y)?;
    require_positive(z)?;
    let v = Kernel { f }.h(x, y, z);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Limit(format!("h({x}, {y}, {z}) evaluated to {v}")))
    }
}

/// The four constituent functions `[h₁, h₂, h₃, h₄]` at distinct arguments.
pub fn h_components(f: &MonotoneFunction, x: f64, y: f64, z: f64) -> Result<[f64; 4]> {
    require_positive(x)?;
    require_positive(y)?;
    require_positive(z)?;
    if x == y || x == z || y == z {
        return Err(Error::Limit("h components need distinct arguments".into()));
    }
    let k = Kernel { f };
    Ok([k.h1(x, y, z), k.h2(x, y, z), k.h3(x, y, z), k.h4(x, y, z)])
}

/// Scalar curvature of a state with spectrum `s`.
pub fn scalar_curvature(f: &MonotoneFunction, s: &Spectrum) -> Result<f64> {
    let k = Kernel { f };
    let lambda = s.eigenvalues();
    let n = lambda.len();
    let mut sum = 0.0;
    // terms with i = j = k cancel against the subtracted diagonal sum
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i == j && j == l {
                    continue;
                }
                sum += k.h(lambda[i], lambda[j], lambda[l]);
            }
        }
    }
    let n2 = (n * n) as f64;
    let r = sum + 0.25 * (n2 - 1.0) * (n2 - 2.0);
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Limit(format!("scalar curvature evaluated to {r}")))
    }
}

/// Whether `a` is more mixed than `b`: every partial sum of the decreasingly
/// ordered eigenvalues of `a` is at most the corresponding one of `b`.
pub fn is_more_mixed(a: &Spectrum, b: &Spectrum) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let (sa, sb) = (a.sorted_descending(), b.sorted_descending());
    let (mut pa, mut pb) = (0.0, 0.0);
    for (x, y) in sa.iter().zip(&sb) {
        pa += x;
        pb += y;
        if pa > pb + 1e-14 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A pair `(D₁, D₂)` with `D₁` more mixed but of lower curvature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub more_mixed: Spectrum,
    pub less_mixed: Spectrum,
    pub r_more_mixed: f64,
    pub r_less_mixed: f64,
}

/// Pairs where `r(D₁) < r(D₂) − tol` although `D₁` is more mixed than `D₂`.
pub fn monotonicity_scan(
    f: &MonotoneFunction,
    pairs: &[(Spectrum, Spectrum)],
    tol: f64,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (index, (d1, d2)) in pairs.iter().enumerate() {
        if !is_more_mixed(d1, d2)? {
            return Err(Error::UnorderedPair(index));
        }
        let r1 = scalar_curvature(f, d1)?;
        let r2 = scalar_curvature(f, d2)?;
        if r1 < r2 - tol {
            out.push(Violation {
                index,
                more_mixed: d1.clone(),
                less_mixed: d2.clone(),
                r_more_mixed: r1,
                r_less_mixed: r2,
            });
        }
    }
    Ok(out)
}

/// Consecutive qubit pairs along increasing `a`, e.g. `a ∈ {0, 0.1, …, 0.9}`.
pub fn qubit_chain(a_values: &[f64]) -> Result<Vec<(Spectrum, Spectrum)>> {
    a_values
        .windows(2)
        .map(|w| Ok((Spectrum::qubit(w[0])?, Spectrum::qubit(w[1])?)))
        .collect()
}

/// The default desk-scale grid `a ∈ {0, 0.1, …, 0.9}`.
pub fn default_qubit_grid() -> Vec<f64> {
    (0..10).map(|i| i as f64 / 10.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{catalog, CatalogEntry};
    use crate::numeric::richardson;
    use crate::qubit::curvature_closed_form;
    use approx::assert_relative_eq;

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![0.5, 0.5]).is_ok());
        assert!(Spectrum::new(vec![0.5, 0.6]).is_err());
        assert!(Spectrum::new(vec![1.0, 0.0]).is_err());
        assert!(Spectrum::new(vec![1.0]).is_err());
        assert!("0.2, 0.3,0.5".parse::<Spectrum>().is_ok());
        assert!("0.2,0.3,0.5000001".parse::<Spectrum>().is_err());
        assert!("0.2,x".parse::<Spectrum>().is_err());
    }

    #[test]
    fn distinct_arguments_match_extrapolated_limit() {
        let f = catalog("sld").unwrap();
        let direct = h_value(&f, 0.5, 0.3, 0.2).unwrap();
        let [h1, h2, h3, h4] = h_components(&f, 0.5, 0.3, 0.2).unwrap();
        assert_relative_eq!(direct, h1 - 0.5 * h2 + 2.0 * h3 - h4, max_relative = 1e-14);
    }

    #[test]
    fn pair_limits_match_extrapolation() {
        for entry in CatalogEntry::all() {
            let f = MonotoneFunction::from(entry);
            let k = Kernel { f: &f };
            let cases: [(f64, f64, f64); 3] = [(0.4, 0.4, 0.2), (0.4, 0.2, 0.4), (0.2, 0.4, 0.4)];
            for (x, y, z) in cases {
                let limit = h_value(&f, x, y, z).unwrap();
                let one_sided = |e: f64| {
                    if x == y {
                        k.h(x + e, y - e, z)
                    } else if x == z {
                        k.h(x + e, y, z - e)
                    } else {
                        k.h(x, y + e, z - e)
                    }
                };
                // symmetrized so the error expansion is even in e
                let probe = |e: f64| 0.5 * (one_sided(e) + one_sided(-e));
                let extrapolated = richardson(probe, 1e-3, 3);
                assert!(
                    (limit - extrapolated).abs() < 1e-7 * limit.abs().max(1.0),
                    "{entry:?} ({x},{y},{z}): {limit} vs {extrapolated}"
                );
            }
        }
    }

    #[test]
    fn triple_limit_matches_extrapolation() {
        for entry in CatalogEntry::all() {
            let f = MonotoneFunction::from(entry);
            let k = Kernel { f: &f };
            let x = 0.3;
            let probe = |e: f64| k.h(x + e, x - 0.6 * e, x + 0.3 * e) + k.h(x - e, x + 0.6 * e, x - 0.3 * e);
            let extrapolated = 0.5 * richardson(probe, 2e-3, 3);
            let limit = h_value(&f, x, x, x).unwrap();
            assert!((limit - extrapolated).abs() < 1e-6 * limit.abs().max(1.0), "{entry:?}");
        }
    }

    #[test]
    fn h1_exchange_symmetry() {
        let f = catalog("kubo_mori").unwrap();
        let k = Kernel { f: &f };
        let e = 1e-5;
        let yxx = 0.5 * (k.h1(0.25, 0.6 + e, 0.6 - e) + k.h1(0.25, 0.6 - e, 0.6 + e));
        let xyx = 0.5 * (k.h1(0.6 + e, 0.25, 0.6 - e) + k.h1(0.6 - e, 0.25, 0.6 + e));
        assert_relative_eq!(yxx, xyx, max_relative = 1e-8);
        assert_relative_eq!(k.h1_pair(0.6, 0.25), xyx, max_relative = 1e-8);
    }

    #[test]
    fn two_level_reduction() {
        for entry in CatalogEntry::all() {
            let f = MonotoneFunction::from(entry);
            for i in 1..10 {
                let a = i as f64 / 10.0;
                let r = scalar_curvature(&f, &Spectrum::qubit(a).unwrap()).unwrap();
                let closed = curvature_closed_form(&f, a).unwrap();
                assert!((r - closed).abs() < 1e-6 * closed.abs().max(1.0), "{entry:?} a={a}: {r} vs {closed}");
            }
        }
    }

    #[test]
    fn degenerate_spectra_are_continuous() {
        let f = catalog("smallest").unwrap();
        let exact = scalar_curvature(&f, &Spectrum::new(vec![0.4, 0.4, 0.2]).unwrap()).unwrap();
        let eps = 1e-7;
        let near = scalar_curvature(&f, &Spectrum::new(vec![0.4 + eps, 0.4 - eps, 0.2]).unwrap()).unwrap();
        assert!((exact - near).abs() < 1e-4 * exact.abs());
        let r0 = scalar_curvature(&f, &Spectrum::qubit(0.0).unwrap()).unwrap();
        assert_relative_eq!(r0, -12.0, max_relative = 1e-9);
    }

    #[test]
    fn permutation_invariance() {
        let f = catalog("log_squared").unwrap();
        let a = scalar_curvature(&f, &Spectrum::new(vec![0.5, 0.3, 0.2]).unwrap()).unwrap();
        let b = scalar_curvature(&f, &Spectrum::new(vec![0.2, 0.5, 0.3]).unwrap()).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn majorization_examples() {
        let s = |v: &[f64]| Spectrum::new(v.to_vec()).unwrap();
        assert!(is_more_mixed(&s(&[0.5, 0.5]), &s(&[1.0 - 1e-9, 1e-9])).unwrap());
        assert!(is_more_mixed(&s(&[0.5, 0.3, 0.2]), &s(&[0.5, 0.3, 0.2])).unwrap());
        let (a, b) = (s(&[0.4, 0.4, 0.2]), s(&[0.5, 0.25, 0.25]));
        assert!(!is_more_mixed(&a, &b).unwrap());
        assert!(!is_more_mixed(&b, &a).unwrap());
        assert!(is_more_mixed(&a, &s(&[0.5, 0.5])).is_err());
    }

    #[test]
    fn scans_on_the_qubit_chain() {
        let pairs = qubit_chain(&default_qubit_grid()).unwrap();
        for name in ["kubo_mori", "sld"] {
            let v = monotonicity_scan(&catalog(name).unwrap(), &pairs, 1e-9).unwrap();
            assert!(v.is_empty(), "{name}: {v:?}");
        }
        let reversed: Vec<_> = pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        assert!(matches!(
            monotonicity_scan(&catalog("sld").unwrap(), &reversed, 1e-9),
            Err(Error::UnorderedPair(0))
        ));
    }
}
