//! Behavior of the qubit curvature at the maximally mixed state.
//!
//! [`series_coefficients`] gives `r(a) = c0 + c2 a² + c4 a⁴ + O(a⁶)` from
//! the derivatives of `f` at 1. For functions built from a measure the same
//! information is carried by the moments of the pushforward of the measure
//! under `t ↦ 4t(1-t)`, and [`classify_origin`] decides between a local
//! minimum and a local maximum by both routes.

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::function::{function_from_measure, ClosedForm, MonotoneFunction};
use crate::measure::{MomentSummary, SymmetricMeasure};
use crate::series::Series;

/// Threshold below which `c2` (or `c4`) counts as zero.
pub const TIE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    LocalMin,
    LocalMax,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecidedBy {
    C2Sign,
    C4Sign,
    MomentCondition,
}

/// Coefficients of `a⁰`, `a²`, `a⁴` in the expansion of `r(a)` at `a = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesExpansion {
    pub c0: f64,
    pub c2: f64,
    pub c4: f64,
}

impl SeriesExpansion {
    /// From `f''(1)`, `f⁽⁴⁾(1)` and `f⁽⁶⁾(1)`.
    pub fn from_derivatives(f2: f64, f4: f64, f6: f64) -> Self {
        Self {
            c0: 6.0 + 36.0 * f2,
            c2: 100.0 / 3.0 * f4 - 140.0 * f2 - 120.0 * f2 * f2,
            c4: 352.0 * f2.powi(3) + 616.0 * f2 * f2 + 1092.0 * f2 - 1288.0 / 3.0 * f4
                + 392.0 / 45.0 * f6
                - 160.0 * f2 * f4,
        }
    }

    pub fn eval(&self, a: f64) -> f64 {
        let a2 = a * a;
        self.c0 + a2 * (self.c2 + a2 * self.c4)
    }
}

pub fn series_coefficients(f: &MonotoneFunction) -> Result<SeriesExpansion> {
    let d = f.jet(1.0, 6)?;
    Ok(SeriesExpansion::from_derivatives(d.derivative(2), d.derivative(4), d.derivative(6)))
}

/// Coefficients of `a⁻², a⁻¹, a⁰, a¹, a²` in the Laurent expansion of one
/// summand of the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Laurent {
    pub inv_a2: f64,
    pub inv_a: f64,
    pub constant: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Laurent {
    fn from_scaled(s: Series) -> Self {
        Self {
            inv_a2: s.coefficient(0),
            inv_a: s.coefficient(1),
            constant: s.coefficient(2),
            a1: s.coefficient(3),
            a2: s.coefficient(4),
        }
    }

    /// Value of the singular part `inv_a2 / a² + inv_a / a`.
    pub fn singular_part(&self, a: f64) -> f64 {
        self.inv_a2 / (a * a) + self.inv_a / a
    }
}

/// Laurent expansions of the five closed-form summands at `a = 0`, obtained
/// by composing the Taylor series of `f` at 1 with `x(a) = (1-a)/(1+a)`.
pub fn laurent_summands(f: &MonotoneFunction) -> Result<[Laurent; 5]> {
    const ORDER: usize = 4;
    let fk = f.series(1.0, ORDER + 2).coefficients().to_vec();
    let d1: Vec<f64> = (0..=ORDER).map(|k| (k + 1) as f64 * fk[k + 1]).collect();
    let d2: Vec<f64> = (0..=ORDER).map(|k| ((k + 1) * (k + 2)) as f64 * fk[k + 2]).collect();

    let a = Series::variable(0.0, ORDER);
    let one = Series::constant(1.0, ORDER);
    let p = one + a;
    let x = (one - a) / p;
    let fv = x.compose(&fk[..=ORDER]);
    let f1 = x.compose(&d1);
    let f2 = x.compose(&d2);
    let p3 = p * p * p;
    let a2 = a * a;

    // each summand multiplied by a²
    let s1 = 14.0 * (a - 1.0) * f1 * f1 * a2 / (p3 * fv * fv);
    let s2 = 2.0 * (a2 + a * 7.0 - 6.0) * f1 * a / (p * p * fv);
    let s3 = 8.0 * (one - a) * f2 * a2 / (p3 * fv);
    let s4 = 2.0 * p * fv;
    let s5 = (3.0 * a2 * a + 5.0 * a2 + 8.0 * a - 4.0) / (2.0 * p);
    Ok([s1, s2, s3, s4, s5].map(Laurent::from_scaled))
}

/// `r(0) = 6 + 72 ∫ (t² - t) dμ`.
pub fn origin_curvature_from_measure(mu: &SymmetricMeasure) -> f64 {
    6.0 + 72.0 * mu.integrate(|t| t * t - t)
}

/// `t_μ = 12 (∫ t(1-t) dμ)² - ∫ t(t-1)(20t² - 40t + 13) dμ`; negative values
/// certify a local minimum at the origin.
pub fn t_functional(mu: &SymmetricMeasure) -> f64 {
    let i1 = mu.integrate(|t| t * (1.0 - t));
    let i2 = mu.integrate(|t| t * (t - 1.0) * (20.0 * t * t - 40.0 * t + 13.0));
    12.0 * i1 * i1 - i2
}

/// What to classify: a measure (both routes) or a bare function (series only).
#[derive(Clone, Copy, Debug)]
pub enum OriginInput<'a> {
    Measure(&'a SymmetricMeasure),
    Function(&'a MonotoneFunction),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub decided_by: DecidedBy,
    pub values: SeriesExpansion,
    pub moment_summary: Option<MomentSummary>,
}

fn sign_verdict(v: f64) -> Option<Verdict> {
    if v > TIE {
        Some(Verdict::LocalMin)
    } else if v < -TIE {
        Some(Verdict::LocalMax)
    } else {
        None
    }
}

fn classify_series(values: SeriesExpansion) -> Classification {
    let (verdict, decided_by) = match sign_verdict(values.c2) {
        Some(v) => (v, DecidedBy::C2Sign),
        None => (sign_verdict(values.c4).unwrap_or(Verdict::Degenerate), DecidedBy::C4Sign),
    };
    Classification { verdict, decided_by, values, moment_summary: None }
}

/// `c2` and `c4` expressed through the moments of the pushforward measure.
///
/// `c2 = 10 (5σ² - m(3 - 2m))`. The `c4` value is the one implied by the
/// series when `c2 = 0`, i.e. `c4 = 14 (2m³ + 5m² + 3m - 7E₃)`.
pub fn moment_coefficients(s: &MomentSummary) -> (f64, f64) {
    let m = s.m;
    let c2 = 10.0 * (5.0 * s.var - m * (3.0 - 2.0 * m));
    let c4 = 14.0 * (2.0 * m.powi(3) + 5.0 * m * m + 3.0 * m - 7.0 * s.e3);
    (c2, c4)
}

fn classify_moments(s: &MomentSummary) -> Verdict {
    let (c2, c4) = moment_coefficients(s);
    sign_verdict(c2)
        .or_else(|| sign_verdict(c4))
        .unwrap_or(Verdict::Degenerate)
}

/// Local behavior of `r` at the maximally mixed state.
///
/// For a measure the verdict comes from the moment condition
/// `m(3 - 2m) < 5σ²` (with the `c4` condition on equality) and is required
/// to agree with the series route on the function built from the measure.
/// A disagreement outside the tie band is reported as
/// [`Error::RouteDisagreement`].
pub fn classify_origin(input: OriginInput<'_>) -> Result<Classification> {
    match input {
        OriginInput::Function(f) => Ok(classify_series(series_coefficients(f)?)),
        OriginInput::Measure(mu) => {
            let summary = mu.pushforward_moments();
            let moment = classify_moments(&summary);
            let series = classify_series(series_coefficients(&function_from_measure(mu))?);
            let (c2, _) = moment_coefficients(&summary);
            let in_tie_band = c2.abs() < 1e3 * TIE;
            if moment != series.verdict && !in_tie_band {
                return Err(Error::RouteDisagreement { moment, series: series.verdict });
            }
            Ok(Classification {
                verdict: moment,
                decided_by: DecidedBy::MomentCondition,
                values: series.values,
                moment_summary: Some(summary),
            })
        }
    }
}

/// `t(p) = p(1-p)(8p² - 8p + 3)` for the one-pair measure `½(δ_p + δ_{1-p})`.
pub fn t_single_pair(p: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::ParameterOutOfRange { name: "p", value: p, range: "[0, 1/2]" });
    }
    Ok(p * (1.0 - p) * (8.0 * p * p - 8.0 * p + 3.0))
}

/// `t(p, q)` for the two-pair measure `¼(δ_p + δ_q + δ_{1-p} + δ_{1-q})`.
pub fn t_double_pair(p: f64, q: f64) -> Result<f64> {
    for (name, v) in [("p", p), ("q", q)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::ParameterOutOfRange { name, value: v, range: "[0, 1]" });
        }
    }
    Ok(-7.0 * (p.powi(4) + q.powi(4)) + 14.0 * (p.powi(3) + q.powi(3))
        - 6.0 * p * q * (p + q - p * q - 1.0)
        - 8.5 * (p * p + q * q)
        + 1.5 * (p + q))
}

/// The same functional in the symmetric variables `u = pq`, `v = p + q`.
pub fn t_uv(u: f64, v: f64) -> f64 {
    -8.0 * u * u + (28.0 * v * v - 48.0 * v + 23.0) * u
        - (7.0 * v.powi(4) - 14.0 * v.powi(3) + 8.5 * v * v - 1.5 * v)
}

/// Root of `t(u, v) = 0` with `0 < u < 1/4`.
pub fn u_of_v(v: f64) -> f64 {
    1.75 * v * v - 3.0 * v + 23.0 / 16.0
        - (560.0 * v.powi(4) - 2240.0 * v.powi(3) + 3320.0 * v * v - 2160.0 * v + 529.0).sqrt() / 16.0
}

/// Left end of the admissible interval for `p`.
pub fn p_min() -> f64 {
    (7.0 - 7f64.sqrt()) / 14.0
}

fn check_p(p: f64) -> Result<()> {
    if p > p_min() && p <= 0.5 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name: "p", value: p, range: "((7 - √7)/14, 1/2]" })
    }
}

fn quartic_radicand(p: f64) -> f64 {
    -640.0 * p.powi(4) + 1280.0 * p.powi(3) - 880.0 * p * p + 240.0 * p + 9.0
}

/// Boundary data for the two-pair family at a given `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryCurves {
    /// The range parameter `h(p)` bounding `q < 1/2 - h(p)`.
    pub h_p: f64,
    /// Zero of `q ↦ t(p, q)` on `(0, 1/2)`; `t(p, q) < 0` for `0 < q < q_root`.
    pub q_root: f64,
}

pub fn boundary_curves(p: f64) -> Result<BoundaryCurves> {
    check_p(p)?;
    let s = quartic_radicand(p).sqrt();
    let h_p = (14.0 * p * p - 14.0 * p + 4.0 + s).sqrt() / (2.0 * 7f64.sqrt());
    let q_root = 0.5 - (84.0 * p * p - 84.0 * p + 28.0 + 7.0 * s).sqrt() / 14.0;
    Ok(BoundaryCurves { h_p, q_root })
}

/// Parameters of the two-pair family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilyParams {
    p: f64,
    q: f64,
}

impl FamilyParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        check_p(p)?;
        if !(0.0..0.5).contains(&q) {
            return Err(Error::ParameterOutOfRange { name: "q", value: q, range: "[0, 1/2)" });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `(u, v) = (pq, p + q)`.
    pub fn uv(&self) -> (f64, f64) {
        (self.p * self.q, self.p + self.q)
    }
}

pub fn family_measure(params: FamilyParams) -> Result<SymmetricMeasure> {
    SymmetricMeasure::two_pairs(params.p, params.q)
}

/// Closed form `x/4 Σ 1/(s x + 1 - s)` over `s ∈ {p, 1-p, q, 1-q}`.
pub fn family_function(params: FamilyParams) -> Result<MonotoneFunction> {
    let FamilyParams { p, q } = params;
    let form = ClosedForm::analytic(format!("family(p={p}, q={q})"), move |x: Series| {
        let term = |s: f64| (x * s + (1.0 - s)).recip();
        x * (term(p) + term(1.0 - p) + term(q) + term(1.0 - q)) * 0.25
    });
    MonotoneFunction::closed_form(form)
}

/// `(x/4)(4/(x+1) + 50/(x+49) + 50/(49x+1))`.
pub fn example_local_not_global() -> Result<MonotoneFunction> {
    MonotoneFunction::closed_form(ClosedForm::analytic("example-49", |x: Series| {
        x * 0.25 * (4.0 * (x + 1.0).recip() + 50.0 * (x + 49.0).recip() + 50.0 * (x * 49.0 + 1.0).recip())
    }))
}

/// `250x/(999x+1) + 250x/(x+999) + x/(x+1)`.
pub fn example_three_level() -> Result<MonotoneFunction> {
    MonotoneFunction::closed_form(ClosedForm::analytic("example-999", |x: Series| {
        x * (250.0 * (x * 999.0 + 1.0).recip() + 250.0 * (x + 999.0).recip() + (x + 1.0).recip())
    }))
}

/// Volume of a small geodesic ball of radius `radius` in the
/// `(n² - 1)`-dimensional state space with scalar curvature `scal`.
pub fn geodesic_ball_volume(n: usize, scal: f64, radius: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange { name: "n", value: n as f64, range: "n ≥ 2" });
    }
    if !(radius > 0.0) {
        return Err(Error::NonPositiveArgument(radius));
    }
    let dim = (n * n - 1) as f64;
    let flat = std::f64::consts::PI.powf(dim / 2.0) * radius.powf(dim) / gamma((dim + 2.0) / 2.0);
    Ok(flat * (1.0 - scal * radius * radius / (6.0 * (dim + 2.0))))
}

/// Fisher distance between two Bernoulli distributions.
pub fn classical_fisher_distance(p1: f64, p2: f64) -> Result<f64> {
    for (name, v) in [("p1", p1), ("p2", p2)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::ParameterOutOfRange { name, value: v, range: "[0, 1]" });
        }
    }
    // arccos(√(p1 p2) + √((1-p1)(1-p2))) written as 2 asin(d/2) with d the
    // chord between the square-root vectors, which stays accurate near 0
    let d = (p1.sqrt() - p2.sqrt()).hypot((1.0 - p1).sqrt() - (1.0 - p2).sqrt());
    Ok(2.0 * (d / 2.0).min(1.0).asin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{catalog, derivatives_at_one, CatalogEntry};
    use crate::measure::Atom;
    use crate::numeric::richardson;
    use crate::qubit::curvature_closed_form;
    use approx::assert_relative_eq;

    #[test]
    fn catalog_expansions() {
        let sld = series_coefficients(&catalog("sld").unwrap()).unwrap();
        assert_eq!((sld.c0, sld.c2, sld.c4), (6.0, 0.0, 0.0));
        let small = series_coefficients(&catalog("smallest").unwrap()).unwrap();
        assert_relative_eq!(small.c0, -12.0, epsilon = 1e-12);
        assert_relative_eq!(small.c2, -10.0, epsilon = 1e-11);
    }

    #[test]
    fn coefficients_match_finite_differences() {
        for entry in CatalogEntry::all() {
            let f = MonotoneFunction::from(entry);
            let s = series_coefficients(&f).unwrap();
            let r = |a: f64| curvature_closed_form(&f, a).unwrap();
            // (r(a) - c0)/a² → c2 with O(a²) error
            let c2 = richardson(|a| (r(a) - s.c0) / (a * a), 0.1, 2);
            assert!((c2 - s.c2).abs() < 1e-4 * s.c2.abs().max(1.0), "{entry:?}: {c2} vs {}", s.c2);
            let c4 = richardson(|a| (r(a) - s.c0 - s.c2 * a * a) / a.powi(4), 0.1, 3);
            assert!((c4 - s.c4).abs() < 1e-3 * s.c4.abs().max(1.0), "{entry:?}: {c4} vs {}", s.c4);
        }
    }

    #[test]
    fn summand_expansions() {
        for entry in CatalogEntry::all() {
            let f = MonotoneFunction::from(entry);
            let jet = f.jet(1.0, 4).unwrap();
            let (f2, f4) = (jet.derivative(2), jet.derivative(4));
            let l = laurent_summands(&f).unwrap();
            let expect = [
                [0.0, 0.0, -3.5, 7.0 * (4.0 * f2 + 1.0), -7.0 * (8.0 * f2 * f2 + 4.0 * f2 + 1.0)],
                [0.0, -6.0, 24.0 * f2 + 13.0, -(28.0 * f2 + 12.0), 16.0 * f4 - 48.0 * f2 * f2 - 52.0 * f2 + 12.0],
                [0.0, 0.0, 8.0 * f2, 0.0, 16.0 * f4 - 16.0 * f2 * f2 - 56.0 * f2],
                [2.0, 0.0, 4.0 * f2, 0.0, 4.0 / 3.0 * f4 - 4.0 * f2],
                [-2.0, 6.0, -3.5, 5.0, -5.0],
            ];
            for (got, want) in l.iter().zip(expect) {
                let got = [got.inv_a2, got.inv_a, got.constant, got.a1, got.a2];
                for (g, w) in got.iter().zip(want) {
                    assert!((g - w).abs() < 1e-9 * w.abs().max(1.0), "{entry:?}: {got:?} vs {want:?}");
                }
            }
            let total: f64 = l.iter().map(|s| s.constant).sum();
            assert_relative_eq!(total, 6.0 + 36.0 * f2, epsilon = 1e-10);
            let singular: f64 = l.iter().map(|s| s.singular_part(1e-3)).sum();
            assert!(singular.abs() < 1e-8);
        }
    }

    #[test]
    fn origin_curvature_examples() {
        assert_relative_eq!(origin_curvature_from_measure(&SymmetricMeasure::center()), -12.0);
        assert_relative_eq!(origin_curvature_from_measure(&SymmetricMeasure::endpoints()), 6.0);
        let mu = SymmetricMeasure::two_pairs(0.5, 0.0).unwrap();
        assert_relative_eq!(origin_curvature_from_measure(&mu), -3.0, epsilon = 1e-14);
        for mu in [SymmetricMeasure::uniform(), SymmetricMeasure::two_pairs(0.3, 0.1).unwrap()] {
            let a = origin_curvature_from_measure(&mu);
            let b = 6.0 + 36.0 * derivatives_at_one(&mu, 2).unwrap();
            let c = series_coefficients(&function_from_measure(&mu)).unwrap().c0;
            assert_relative_eq!(a, b, epsilon = 1e-10);
            assert_relative_eq!(a, c, epsilon = 1e-10);
        }
    }

    #[test]
    fn t_functional_examples() {
        for p in [0.1, 0.3, 0.5] {
            let mu = SymmetricMeasure::point_pair(p).unwrap();
            assert_relative_eq!(t_functional(&mu), t_single_pair(p).unwrap(), epsilon = 1e-14);
        }
        assert_relative_eq!(t_double_pair(0.3, 0.3).unwrap(), t_single_pair(0.3).unwrap(), epsilon = 1e-14);
        let mu = SymmetricMeasure::two_pairs(0.45, 0.01).unwrap();
        assert!(t_functional(&mu) < 0.0);
        assert_relative_eq!(t_functional(&mu), t_double_pair(0.45, 0.01).unwrap(), epsilon = 1e-14);
        assert_relative_eq!(t_double_pair(0.4, 0.1).unwrap(), t_uv(0.04, 0.5), epsilon = 1e-12);
    }

    #[test]
    fn single_pair_values() {
        assert_relative_eq!(t_single_pair(0.5).unwrap(), 0.25);
        assert_eq!(t_single_pair(0.0).unwrap(), 0.0);
        assert_relative_eq!(t_single_pair(0.25).unwrap(), 0.28125);
        assert!(t_single_pair(0.6).is_err());
    }

    #[test]
    fn c2_is_minus_forty_t() {
        for (p, q) in [(0.4, 0.1), (0.45, 0.01), (0.2, 0.05)] {
            let mu = SymmetricMeasure::two_pairs(p, q).unwrap();
            let s = series_coefficients(&function_from_measure(&mu)).unwrap();
            assert_relative_eq!(s.c2, -40.0 * t_functional(&mu), epsilon = 1e-10);
            let (c2, _) = moment_coefficients(&mu.pushforward_moments());
            assert_relative_eq!(c2, s.c2, epsilon = 1e-10);
        }
    }

    #[test]
    fn classification_examples() {
        let center = classify_origin(OriginInput::Measure(&SymmetricMeasure::center())).unwrap();
        assert_eq!(center.verdict, Verdict::LocalMax);
        let mu = SymmetricMeasure::two_pairs(0.4, 0.0).unwrap();
        assert_eq!(classify_origin(OriginInput::Measure(&mu)).unwrap().verdict, Verdict::LocalMin);
        let sld = classify_origin(OriginInput::Function(&catalog("sld").unwrap())).unwrap();
        assert_eq!((sld.verdict, sld.decided_by), (Verdict::Degenerate, DecidedBy::C4Sign));
    }

    #[test]
    fn equality_branch_uses_fourth_order() {
        // m = 2/3, σ² = 2/9 puts c2 exactly at zero
        let mu = SymmetricMeasure::from_full(
            &[Atom { t: 0.0, w: 1.0 / 6.0 }, Atom { t: 1.0, w: 1.0 / 6.0 }, Atom { t: 0.5, w: 2.0 / 3.0 }],
            &[],
        )
        .unwrap();
        let s = mu.pushforward_moments();
        let (c2, c4) = moment_coefficients(&s);
        assert!(c2.abs() < 1e-12);
        let series = series_coefficients(&function_from_measure(&mu)).unwrap();
        assert_relative_eq!(c4, series.c4, epsilon = 1e-9);
        let c = classify_origin(OriginInput::Measure(&mu)).unwrap();
        assert_eq!(c.verdict, Verdict::LocalMin);
    }

    #[test]
    fn boundary_root_property() {
        for p in [0.32, 0.35, 0.4, 0.45, 0.5] {
            let b = boundary_curves(p).unwrap();
            assert!(t_double_pair(p, b.q_root).unwrap().abs() < 1e-8);
            assert!(t_double_pair(p, b.q_root * 0.5).unwrap() < 0.0);
            assert!(t_double_pair(p, (b.q_root + 0.5) * 0.5).unwrap() > 0.0);
            assert!((u_of_v(p + b.q_root) - p * b.q_root).abs() < 1e-12);
        }
        assert_relative_eq!(quartic_radicand(0.5), 29.0, epsilon = 1e-12);
        assert!(boundary_curves(0.3).is_err());
        assert!(boundary_curves(p_min() + 1e-9).unwrap().q_root.abs() < 1e-3);
    }

    #[test]
    fn h_range_is_not_contained_in_negative_region() {
        // 1/2 - h(p) exceeds the root q(p); the two coincide when the inner
        // polynomial of h is 12p² - 12p + 4
        for p in [0.35, 0.4, 0.45, 0.5] {
            let b = boundary_curves(p).unwrap();
            assert!(0.5 - b.h_p > b.q_root, "p={p}");
            let s = quartic_radicand(p).sqrt();
            let h = (12.0 * p * p - 12.0 * p + 4.0 + s).sqrt() / (2.0 * 7f64.sqrt());
            assert_relative_eq!(0.5 - h, b.q_root, epsilon = 1e-14);
        }
    }

    #[test]
    fn family_function_matches_measure() {
        for (p, q) in [(0.5, 0.0), (0.4, 0.1), (0.35, 0.01)] {
            let params = FamilyParams::new(p, q).unwrap();
            let f = family_function(params).unwrap();
            let g = function_from_measure(&family_measure(params).unwrap());
            for x in [1e-3, 0.3, 1.0, 2.5, 40.0] {
                assert_relative_eq!(f.eval(x).unwrap(), g.eval(x).unwrap(), max_relative = 1e-12);
            }
            assert_relative_eq!(f.eval(1.0).unwrap(), 1.0, epsilon = 1e-15);
        }
        assert!(FamilyParams::new(0.3, 0.0).is_err());
        assert!(FamilyParams::new(0.4, 0.5).is_err());
    }

    #[test]
    fn q_zero_family_expansion() {
        for p in [0.35, 0.4, 0.45, 0.5] {
            let f = family_function(FamilyParams::new(p, 0.0).unwrap()).unwrap();
            let s = series_coefficients(&f).unwrap();
            let pq = p * (1.0 - p);
            assert_relative_eq!(s.c2, -20.0 * pq * (14.0 * p * p - 14.0 * p + 3.0), epsilon = 1e-9);
            assert_relative_eq!(s.c0, 6.0 - 36.0 * pq, epsilon = 1e-12);
        }
        let f = family_function(FamilyParams::new(0.4, 0.0).unwrap()).unwrap();
        assert_relative_eq!(series_coefficients(&f).unwrap().c2, 1.728, epsilon = 1e-12);
    }

    #[test]
    fn ball_volume_and_distance() {
        use std::f64::consts::PI;
        assert_relative_eq!(geodesic_ball_volume(2, 0.0, 0.3).unwrap(), 4.0 / 3.0 * PI * 0.027, max_relative = 1e-13);
        let v = geodesic_ball_volume(2, 6.0, 0.1).unwrap();
        assert_relative_eq!(v, 4.0 / 3.0 * PI * 1e-3 * (1.0 - 0.06 / 30.0), max_relative = 1e-13);
        assert!(geodesic_ball_volume(3, 1.0, 0.1).unwrap() < geodesic_ball_volume(3, 0.0, 0.1).unwrap());
        assert!(geodesic_ball_volume(2, 0.0, 0.0).is_err());
        assert_eq!(classical_fisher_distance(0.3, 0.3).unwrap(), 0.0);
        assert_relative_eq!(classical_fisher_distance(0.0, 1.0).unwrap(), PI / 2.0);
        assert_relative_eq!(classical_fisher_distance(0.25, 0.75).unwrap(), PI / 6.0, epsilon = 1e-12);
        assert!(classical_fisher_distance(-0.1, 0.5).is_err());
    }
}
