//! Normalized symmetric operator monotone functions.
//!
//! A [`MonotoneFunction`] `f` on `(0, ∞)` with `f(1) = 1` and
//! `f(x) = x f(1/x)` determines a monotone metric. Functions come from a
//! fixed catalog, from a symmetric measure, or from a user-supplied closed
//! form. All of them expose derivative jets up to order six.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{require_positive, Error, Result};
use crate::measure::SymmetricMeasure;
use crate::numeric;
use crate::series::Series;

/// Highest derivative order exposed through [`MonotoneFunction::jet`].
pub const MAX_JET_ORDER: usize = 6;

/// Named entries of the function catalog.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CatalogEntry {
    /// `(1+x)/2`, the largest symmetric normalized function (SLD / Bures).
    Sld,
    /// `2x/(1+x)`, the smallest one.
    Smallest,
    /// `(x-1)/log x`.
    KuboMori,
    /// `2(x-1)² / ((1+x) log² x)`.
    LogSquared,
    /// `2(x-1)√x / ((1+x) log x)`.
    LogSqrt,
    /// `2x^(α+1/2) / (1+x^(2α))`, `0 ≤ α ≤ 1/2`.
    Power { alpha: f64 },
    /// `β(1-β)(x-1)² / ((x^β-1)(x^(1-β)-1))`, `0 < |β| < 1`.
    Wyd { beta: f64 },
}

pub const DEFAULT_ALPHA: f64 = 0.25;
pub const DEFAULT_BETA: f64 = 0.5;

impl CatalogEntry {
    /// The seven catalog families, parametrized ones at their defaults.
    pub fn all() -> [CatalogEntry; 7] {
        [
            CatalogEntry::Sld,
            CatalogEntry::Smallest,
            CatalogEntry::KuboMori,
            CatalogEntry::LogSquared,
            CatalogEntry::LogSqrt,
            CatalogEntry::Power { alpha: DEFAULT_ALPHA },
            CatalogEntry::Wyd { beta: DEFAULT_BETA },
        ]
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if (0.0..=0.5).contains(&alpha) {
            Ok(CatalogEntry::Power { alpha })
        } else {
            Err(Error::ParameterOutOfRange { name: "alpha", value: alpha, range: "[0, 1/2]" })
        }
    }

    pub fn wyd(beta: f64) -> Result<Self> {
        if beta.abs() < 1.0 && beta != 0.0 && beta.is_finite() {
            Ok(CatalogEntry::Wyd { beta })
        } else {
            Err(Error::ParameterOutOfRange { name: "beta", value: beta, range: "(-1, 1) \\ {0}" })
        }
    }

    pub fn name(&self) -> String {
        match self {
            CatalogEntry::Sld => "sld".into(),
            CatalogEntry::Smallest => "smallest".into(),
            CatalogEntry::KuboMori => "kubo_mori".into(),
            CatalogEntry::LogSquared => "log_squared".into(),
            CatalogEntry::LogSqrt => "log_sqrt".into(),
            CatalogEntry::Power { alpha } => format!("power:{alpha}"),
            CatalogEntry::Wyd { beta } => format!("wyd:{beta}"),
        }
    }

    fn apply(&self, x: Series) -> Series {
        match *self {
            CatalogEntry::Sld => (x + 1.0) * 0.5,
            CatalogEntry::Smallest => 2.0 * x / (x + 1.0),
            CatalogEntry::KuboMori => x.ln().exprel(),
            CatalogEntry::LogSquared => {
                let g = x.ln().exprel();
                2.0 * g * g / (x + 1.0)
            }
            CatalogEntry::LogSqrt => 2.0 * x.ln().exprel() * x.sqrt() / (x + 1.0),
            CatalogEntry::Power { alpha } => 2.0 * x.powf(alpha + 0.5) / (x.powf(2.0 * alpha) + 1.0),
            CatalogEntry::Wyd { beta } => {
                // (x^b - 1) = b s exprel(b s) with s = log x
                let s = x.ln();
                let g = s.exprel();
                g * g / ((s * beta).exprel() * (s * (1.0 - beta)).exprel())
            }
        }
    }
}

impl FromStr for CatalogEntry {
    type Err = Error;

    /// Parses `name` or `name:param`, e.g. `kubo_mori`, `power:0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => {
                let v: f64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad parameter `{p}` for `{n}`")))?;
                (n.trim(), Some(v))
            }
            None => (s.trim(), None),
        };
        let plain = |entry: CatalogEntry| match param {
            None => Ok(entry),
            Some(_) => Err(Error::Config(format!("`{name}` takes no parameter"))),
        };
        match name.to_ascii_lowercase().as_str() {
            "sld" | "bures" => plain(CatalogEntry::Sld),
            "smallest" | "harmonic" => plain(CatalogEntry::Smallest),
            "kubo_mori" | "bkm" => plain(CatalogEntry::KuboMori),
            "log_squared" => plain(CatalogEntry::LogSquared),
            "log_sqrt" => plain(CatalogEntry::LogSqrt),
            "power" => CatalogEntry::power(param.unwrap_or(DEFAULT_ALPHA)),
            "wyd" => CatalogEntry::wyd(param.unwrap_or(DEFAULT_BETA)),
            _ => Err(Error::UnknownFunction(s.to_string())),
        }
    }
}

type SeriesFn = dyn Fn(Series) -> Series + Send + Sync;
type ValueFn = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Clone)]
enum ClosedFormKind {
    Analytic(Arc<SeriesFn>),
    Sampled(Arc<ValueFn>),
}

/// A user-supplied closed form. Analytic forms are written over [`Series`]
/// and yield exact jets; sampled forms only provide values and get their
/// jets from Richardson-extrapolated central differences.
#[derive(Clone)]
pub struct ClosedForm {
    name: String,
    kind: ClosedFormKind,
}

/// Base step per derivative order for sampled closed forms. Higher orders
/// need larger steps before rounding error dominates.
const FD_STEPS: [f64; MAX_JET_ORDER + 1] = [0.0, 1e-3, 1e-3, 1e-2, 2e-2, 5e-2, 1e-1];
const FD_LEVELS: usize = 3;

impl ClosedForm {
    pub fn analytic<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(Series) -> Series + Send + Sync + 'static,
    {
        Self { name: name.into(), kind: ClosedFormKind::Analytic(Arc::new(f)) }
    }

    pub fn sampled<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), kind: ClosedFormKind::Sampled(Arc::new(f)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn value(&self, x: f64) -> f64 {
        match &self.kind {
            ClosedFormKind::Analytic(f) => f(Series::constant(x, 0)).value(),
            ClosedFormKind::Sampled(f) => f(x),
        }
    }

    fn series(&self, x: f64, order: usize) -> Series {
        match &self.kind {
            ClosedFormKind::Analytic(f) => f(Series::variable(x, order)),
            ClosedFormKind::Sampled(f) => {
                let order = order.min(MAX_JET_ORDER);
                let f = |t: f64| f(t);
                let mut ders = vec![f(x)];
                for (k, base) in FD_STEPS.iter().enumerate().take(order + 1).skip(1) {
                    let h = base.min(x / 4.0);
                    ders.push(numeric::derivative(&f, x, k, h, FD_LEVELS));
                }
                Series::from_derivatives(&ders, order)
            }
        }
    }
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ClosedFormKind::Analytic(_) => "analytic",
            ClosedFormKind::Sampled(_) => "sampled",
        };
        f.debug_struct("ClosedForm").field("name", &self.name).field("kind", &kind).finish()
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Catalog(CatalogEntry),
    Measure(SymmetricMeasure),
    ClosedForm(ClosedForm),
}

#[derive(Clone, Debug)]
pub struct MonotoneFunction {
    source: Source,
}

/// Derivatives `f(x), f'(x), ..., f^(k)(x)` at `base_point`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorJet {
    pub base_point: f64,
    pub coefficients: Vec<f64>,
}

impl TaylorJet {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn derivative(&self, k: usize) -> f64 {
        self.coefficients[k]
    }

    /// Residual of `2f'''(1) + 3f''(1) = 0`; meaningful at base point 1.
    pub fn third_order_residual(&self) -> f64 {
        2.0 * self.coefficients[3] + 3.0 * self.coefficients[2]
    }
}

/// Looks up a catalog function by name (`sld`, `bures`, `smallest`,
/// `kubo_mori`, `log_squared`, `log_sqrt`, `power[:α]`, `wyd[:β]`).
pub fn catalog(name: &str) -> Result<MonotoneFunction> {
    Ok(MonotoneFunction::from(name.parse::<CatalogEntry>()?))
}

pub fn function_from_measure(mu: &SymmetricMeasure) -> MonotoneFunction {
    MonotoneFunction { source: Source::Measure(mu.clone()) }
}

impl From<CatalogEntry> for MonotoneFunction {
    fn from(entry: CatalogEntry) -> Self {
        Self { source: Source::Catalog(entry) }
    }
}

impl MonotoneFunction {
    /// Wraps a closed form after checking normalization, symmetry and
    /// positivity on a log-spaced grid. Operator monotonicity is not checked.
    pub fn closed_form(form: ClosedForm) -> Result<Self> {
        let f = Self { source: Source::ClosedForm(form) };
        f.check_invariants()?;
        Ok(f)
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn name(&self) -> String {
        match &self.source {
            Source::Catalog(c) => c.name(),
            Source::Measure(_) => "measure".into(),
            Source::ClosedForm(c) => c.name().to_string(),
        }
    }

    pub fn measure(&self) -> Option<&SymmetricMeasure> {
        match &self.source {
            Source::Measure(m) => Some(m),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        require_positive(x)?;
        Ok(self.value(x))
    }

    pub fn jet(&self, x: f64, order: usize) -> Result<TaylorJet> {
        require_positive(x)?;
        if order > MAX_JET_ORDER {
            return Err(Error::OrderTooHigh { order, max: MAX_JET_ORDER });
        }
        Ok(TaylorJet { base_point: x, coefficients: self.series(x, order).derivatives() })
    }

    /// `f(x) - x f(1/x)`.
    pub fn symmetry_residual(&self, x: f64) -> Result<f64> {
        require_positive(x)?;
        Ok(self.value(x) - x * self.value(1.0 / x))
    }

    pub(crate) fn value(&self, x: f64) -> f64 {
        match &self.source {
            Source::Catalog(c) => c.apply(Series::constant(x, 0)).value(),
            Source::Measure(m) => m.integrate(|t| x / ((1.0 - t) * x + t)),
            Source::ClosedForm(c) => c.value(x),
        }
    }

    /// Normalized Taylor coefficients at `x` (unchecked).
    pub(crate) fn series(&self, x: f64, order: usize) -> Series {
        match &self.source {
            Source::Catalog(c) => c.apply(Series::variable(x, order)),
            Source::Measure(m) => measure_series(m, x, order),
            Source::ClosedForm(c) => c.series(x, order),
        }
    }

    /// `(f(x), f'(x), f''(x))`.
    pub(crate) fn triple(&self, x: f64) -> (f64, f64, f64) {
        let d = self.series(x, 2).derivatives();
        (d[0], d[1], d[2])
    }

    pub fn check_invariants(&self) -> Result<()> {
        let one = self.value(1.0);
        if !((one - 1.0).abs() <= 1e-12) {
            return Err(Error::Config(format!("{}: f(1) = {one}, expected 1", self.name())));
        }
        for x in numeric::linspace(-6.0, 6.0, 49).into_iter().map(|e| 10f64.powf(e)) {
            let v = self.value(x);
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{}: f({x}) = {v} is not positive", self.name())));
            }
            let res = v - x * self.value(1.0 / x);
            if res.abs() > 1e-10 * v.max(1.0) {
                return Err(Error::Config(format!(
                    "{}: symmetry residual {res} at x = {x}",
                    self.name()
                )));
            }
        }
        Ok(())
    }
}

fn measure_series(m: &SymmetricMeasure, x: f64, order: usize) -> Series {
    const N: usize = MAX_JET_ORDER + 1;
    let order = order.min(MAX_JET_ORDER);
    // normalized coefficients: (-1)^(k+1) t (1-t)^(k-1) / ((1-t)x + t)^(k+1)
    let sums = m.integrate_many::<N, _>(|t| {
        let s = 1.0 - t;
        let d = s * x + t;
        let mut out = [0.0; N];
        out[0] = x / d;
        let mut pow_s = 1.0;
        let mut pow_d = d * d;
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * t * pow_s / pow_d;
            pow_s *= s;
            pow_d *= d;
        }
        out
    });
    Series::from_coefficients(&sums, order)
}

/// `f^(k)(1)` of the function built from `μ`, for `1 ≤ k ≤ 6`:
/// `(-1)^(k+1) k! ∫ t (1-t)^(k-1) dμ`.
pub fn derivatives_at_one(mu: &SymmetricMeasure, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::OutOfDomain { what: "derivative order", value: 0.0, domain: "1..=6 (use jet for k = 0)" });
    }
    if k > MAX_JET_ORDER {
        return Err(Error::OrderTooHigh { order: k, max: MAX_JET_ORDER });
    }
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let fact: f64 = (1..=k).map(|j| j as f64).product();
    Ok(sign * fact * mu.integrate(|t| t * (1.0 - t).powi(k as i32 - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn catalog_values() {
        assert_eq!(catalog("sld").unwrap().eval(1.0).unwrap(), 1.0);
        let small = catalog("smallest").unwrap();
        assert_eq!(small.eval(1.0).unwrap(), 1.0);
        assert!(small.symmetry_residual(3.0).unwrap().abs() < 1e-15);
        let e = std::f64::consts::E;
        assert_relative_eq!(catalog("kubo_mori").unwrap().eval(e).unwrap(), e - 1.0, epsilon = 1e-15);
    }

    #[test]
    fn catalog_parsing() {
        assert_eq!("bures".parse::<CatalogEntry>().unwrap(), CatalogEntry::Sld);
        assert_eq!("power:0.1".parse::<CatalogEntry>().unwrap(), CatalogEntry::Power { alpha: 0.1 });
        assert!(matches!("nope".parse::<CatalogEntry>(), Err(Error::UnknownFunction(_))));
        assert!(matches!("power:0.7".parse::<CatalogEntry>(), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!("wyd:0".parse::<CatalogEntry>(), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!("wyd:1".parse::<CatalogEntry>(), Err(Error::ParameterOutOfRange { .. })));
        assert!("wyd:-0.5".parse::<CatalogEntry>().is_ok());
        assert!("sld:2".parse::<CatalogEntry>().is_err());
    }

    #[test]
    fn jet_examples() {
        let j = catalog("sld").unwrap().jet(1.0, 2).unwrap();
        assert_eq!(j.coefficients, vec![1.0, 0.5, 0.0]);

        let j = catalog("smallest").unwrap().jet(1.0, 4).unwrap();
        for (got, want) in j.coefficients.iter().zip([1.0, 0.5, -0.5, 0.75, -1.5]) {
            assert_relative_eq!(*got, want, epsilon = 1e-14);
        }
        assert!(j.third_order_residual().abs() < 1e-14);

        let j = function_from_measure(&SymmetricMeasure::center()).jet(1.0, 2).unwrap();
        for (got, want) in j.coefficients.iter().zip([1.0, 0.5, -0.5]) {
            assert_relative_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn kubo_mori_second_derivative_at_one() {
        let j = catalog("kubo_mori").unwrap().jet(1.0, 6).unwrap();
        assert_relative_eq!(j.derivative(2), -1.0 / 6.0, epsilon = 1e-14);
        assert!(j.third_order_residual().abs() < 1e-13);
    }

    #[test]
    fn jet_errors() {
        let f = catalog("sld").unwrap();
        assert!(matches!(f.jet(0.0, 2), Err(Error::NonPositiveArgument(_))));
        assert!(matches!(f.jet(1.0, 7), Err(Error::OrderTooHigh { .. })));
        assert!(f.symmetry_residual(-1.0).is_err());
    }

    #[test]
    fn every_catalog_entry_satisfies_invariants() {
        for entry in CatalogEntry::all() {
            MonotoneFunction::from(entry).check_invariants().unwrap();
            let j = MonotoneFunction::from(entry).jet(1.0, 6).unwrap();
            assert_relative_eq!(j.derivative(0), 1.0, epsilon = 1e-12);
            assert_relative_eq!(j.derivative(1), 0.5, epsilon = 1e-12);
            assert!(j.third_order_residual().abs() < 1e-9, "{entry:?}");
        }
        for beta in [-0.9, -0.3, 0.2, 0.95] {
            MonotoneFunction::from(CatalogEntry::wyd(beta).unwrap()).check_invariants().unwrap();
        }
        for alpha in [0.0, 0.1, 0.5] {
            MonotoneFunction::from(CatalogEntry::power(alpha).unwrap()).check_invariants().unwrap();
        }
    }

    #[test]
    fn measure_examples_match_closed_forms() {
        let center = function_from_measure(&SymmetricMeasure::center());
        let ends = function_from_measure(&SymmetricMeasure::endpoints());
        for &x in &[0.01, 0.3, 1.0, 2.5, 40.0] {
            assert_relative_eq!(center.eval(x).unwrap(), 2.0 * x / (1.0 + x), max_relative = 1e-15);
            assert_relative_eq!(ends.eval(x).unwrap(), (1.0 + x) / 2.0, max_relative = 1e-15);
        }
        let p = 0.3;
        let mu = SymmetricMeasure::two_pairs(p, 0.0).unwrap();
        let f = function_from_measure(&mu);
        for &x in &[0.2, 1.7, 9.0] {
            let want = x / 4.0 * (1.0 / ((1.0 - p) * x + p) + 1.0 / (p * x + 1.0 - p) + 1.0 / x + 1.0);
            assert_relative_eq!(f.eval(x).unwrap(), want, max_relative = 1e-14);
        }
    }

    #[test]
    fn derivatives_at_one_examples() {
        let c = SymmetricMeasure::center();
        assert_relative_eq!(derivatives_at_one(&c, 1).unwrap(), 0.5);
        assert_relative_eq!(derivatives_at_one(&c, 2).unwrap(), -0.5);
        assert_eq!(derivatives_at_one(&SymmetricMeasure::endpoints(), 2).unwrap(), 0.0);
        assert!(derivatives_at_one(&c, 0).is_err());
        assert!(derivatives_at_one(&c, 7).is_err());
    }

    #[test]
    fn sampled_closed_form_gets_usable_jets() {
        let f = MonotoneFunction::closed_form(ClosedForm::sampled("harmonic", |x| 2.0 * x / (1.0 + x))).unwrap();
        let exact = catalog("smallest").unwrap();
        for &x in &[0.3, 1.0, 2.0] {
            let got = f.jet(x, 6).unwrap();
            let want = exact.jet(x, 6).unwrap();
            let tol = [1e-15, 1e-9, 1e-8, 1e-6, 1e-5, 1e-4, 1e-3];
            for k in 0..=6 {
                let scale = want.derivative(k).abs().max(1.0);
                assert!(
                    (got.derivative(k) - want.derivative(k)).abs() <= tol[k] * scale,
                    "x={x} k={k}: {} vs {}",
                    got.derivative(k),
                    want.derivative(k)
                );
            }
        }
    }

    #[test]
    fn closed_form_invariants_are_enforced() {
        assert!(MonotoneFunction::closed_form(ClosedForm::sampled("unnormalized", |x| 1.0 + x)).is_err());
        assert!(MonotoneFunction::closed_form(ClosedForm::sampled("asymmetric", |x| x.powf(0.3))).is_err());
        assert!(MonotoneFunction::closed_form(ClosedForm::analytic("sqrt", |x| x.sqrt())).is_ok());
    }
}
