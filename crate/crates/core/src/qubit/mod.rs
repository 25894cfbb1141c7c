//! Scalar curvature of the qubit state space.
//!
//! Three independent routes are provided and cross-checked in tests:
//! the closed form in the Bloch radius `a` ([`curvature_closed_form`]), the
//! combination of the sum-functions `sh_i` of the eigenvalues
//! ([`curvature_via_sums`]), and contraction of the Riemann tensor of the
//! Bloch-ball line element ([`geometry::curvature_geometric`]).

pub mod geometry;
pub mod metric;
pub mod tensor;

pub use geometry::{
    christoffel, curvature_geometric, curvature_geometric_at, metric_tensor, ricci_closed_form,
    riemann_components, BlochMetric, Christoffel, RiemannComponents,
};
pub use metric::metric_eval;

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::extremum::series_coefficients;
use crate::function::MonotoneFunction;
use crate::numeric::richardson;

/// Below this `|a|` the closed form is replaced by its series at the origin.
pub const SERIES_SWITCH: f64 = 1e-3;
/// Eigenvalue gap below which the sh-route extrapolates from `λ ± δ`.
pub const DEGENERATE_GAP: f64 = 1e-6;
pub const DEGENERATE_STEP: f64 = 1e-4;
/// Starting offset for the near-center limit in [`CurvatureSample::compute`].
const CENTER_STEP: f64 = 1e-2;

/// Qubit state with eigenvalues `(1 ± a) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QubitState {
    a: f64,
}

impl QubitState {
    pub fn new(a: f64) -> Result<Self> {
        if a.abs() < 1.0 {
            Ok(Self { a })
        } else {
            Err(Error::OutOfDomain { what: "a", value: a, domain: "(-1, 1)" })
        }
    }

    pub fn from_eigenvalues(l1: f64, l2: f64) -> Result<Self> {
        check_pair(l1, l2)?;
        Self::new(l1 - l2)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        ((1.0 + self.a) / 2.0, (1.0 - self.a) / 2.0)
    }

    /// Bloch radius; the state lies on the z-axis at polar angle 0 or π.
    pub fn radius(&self) -> f64 {
        self.a.abs()
    }
}

/// Morozova-Chentsov function `c(x, y) = 1 / (y f(x/y))`.
pub fn mc_function(f: &MonotoneFunction, x: f64, y: f64) -> Result<f64> {
    require_positive(x)?;
    require_positive(y)?;
    Ok(1.0 / (y * f.value(x / y)))
}

fn check_a(a: f64) -> Result<()> {
    if a.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain { what: "a", value: a, domain: "(-1, 1)" })
    }
}

/// The five summands of the closed form at `a ≠ 0`.
pub fn closed_form_summands(f: &MonotoneFunction, a: f64) -> Result<[f64; 5]> {
    check_a(a)?;
    if a == 0.0 {
        return Err(Error::OutOfDomain { what: "a", value: a, domain: "(-1, 0) ∪ (0, 1)" });
    }
    let x = (1.0 - a) / (1.0 + a);
    let (v, d1, d2) = f.triple(x);
    let p = 1.0 + a;
    Ok([
        14.0 * (a - 1.0) * d1 * d1 / (p.powi(3) * v * v),
        2.0 * (a * a + 7.0 * a - 6.0) * d1 / (p * p * a * v),
        8.0 * (1.0 - a) * d2 / (p.powi(3) * v),
        2.0 * p * v / (a * a),
        (3.0 * a.powi(3) + 5.0 * a * a + 8.0 * a - 4.0) / (2.0 * p * a * a),
    ])
}

/// Scalar curvature `r(a)` of the qubit state with eigenvalues `(1 ± a)/2`.
///
/// For `|a| < 1e-3` the series `c0 + c2 a² + c4 a⁴` is used; the summands
/// carry `2/a²` terms that cancel.
pub fn curvature_closed_form(f: &MonotoneFunction, a: f64) -> Result<f64> {
    check_a(a)?;
    if a.abs() < SERIES_SWITCH {
        return Ok(series_coefficients(f)?.eval(a));
    }
    Ok(closed_form_summands(f, a)?.iter().sum())
}

fn check_pair(l1: f64, l2: f64) -> Result<()> {
    if !(l1 > 0.0 && l2 > 0.0) {
        return Err(Error::InvalidSpectrum(format!("eigenvalues {l1}, {l2} must be positive")));
    }
    if (l1 + l2 - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidSpectrum(format!("eigenvalues {l1} + {l2} do not sum to 1")));
    }
    Ok(())
}

struct PairJets {
    // f, f', f'' at x/y
    u: (f64, f64, f64),
    // f, f', f'' at y/x
    v: (f64, f64, f64),
}

impl PairJets {
    fn new(f: &MonotoneFunction, x: f64, y: f64) -> Self {
        Self { u: f.triple(x / y), v: f.triple(y / x) }
    }
}

/// The sum-functions `sh_1..sh_4` at distinct eigenvalues `x ≠ y`, written
/// in terms of `f`.
pub fn sh_functions(f: &MonotoneFunction, x: f64, y: f64) -> Result<[f64; 4]> {
    require_positive(x)?;
    require_positive(y)?;
    if x == y {
        return Err(Error::OutOfDomain { what: "x - y", value: 0.0, domain: "nonzero" });
    }
    Ok(sh_from_jets(&PairJets::new(f, x, y), x, y))
}

fn sh_from_jets(j: &PairJets, x: f64, y: f64) -> [f64; 4] {
    let (fu, fu1, fu2) = j.u;
    let (fv, fv1, fv2) = j.v;
    let d = x - y;
    let ru = fu1 / fu;
    let rv = fv1 / fv;
    let cross = fu * fv1 / (fv * fv);

    let sh1 = (y * (x + y) / x * fu * fu + y - 3.0 * x + 4.0 * x * d / y * ru) / (d * d);
    let sh2 = x / (y * y) * ru * ru + y.powi(3) / x.powi(4) * cross * cross
        + 2.0 * y * (x + y) / (x * d * d) * fu * fu
        - 8.0 * y / (d * d) * fu
        + 2.0 * (x + y) / (d * d);
    // h3(p,p,q) = q ∂1∂2 log c(q,p) and h3(p,q,p) = -1/(2(p-q)) + p f'(p/q) / ((p-q) q f(p/q));
    // the -1/(2(p-q)) parts cancel in the sum.
    let sh3 = y * rv / (x * x) + y * y / x.powi(3) * (fv2 / fv - rv * rv) + 2.0 * x * ru / (d * y)
        + x * ru / (y * y)
        + x * x / y.powi(3) * (fu2 / fu - ru * ru)
        - 2.0 * y * rv / (d * x);
    let sh4 = x / (y * y) * ru * ru + y.powi(3) / x.powi(4) * cross * cross + ru / y + y / (x * x) * cross;
    [sh1, sh2, sh3, sh4]
}

fn combine_sh(sh: [f64; 4]) -> f64 {
    sh[0] - 0.5 * sh[1] + 2.0 * sh[2] - sh[3] + 1.5
}

/// Scalar curvature from the eigenvalues through `sh_1 - sh_2/2 + 2 sh_3 - sh_4 + 3/2`.
///
/// Nearly degenerate pairs (`|λ1 - λ2| < 1e-6`) are evaluated at
/// `1/2 ± δ` and `1/2 ± δ/2` and Richardson-extrapolated.
pub fn curvature_via_sums(f: &MonotoneFunction, l1: f64, l2: f64) -> Result<f64> {
    check_pair(l1, l2)?;
    if (l1 - l2).abs() < DEGENERATE_GAP {
        let mid = 0.5;
        let at = |delta: f64| {
            let (x, y) = (mid + delta, mid - delta);
            combine_sh(sh_from_jets(&PairJets::new(f, x, y), x, y))
        };
        return Ok(richardson(at, DEGENERATE_STEP, 2));
    }
    Ok(combine_sh(sh_from_jets(&PairJets::new(f, l1, l2), l1, l2)))
}

/// Scalar curvature in the explicit eigenvalue form obtained by expanding
/// the `sh_i` combination (distinct eigenvalues only).
pub fn curvature_eigenvalue_form(f: &MonotoneFunction, x: f64, y: f64) -> Result<f64> {
    check_pair(x, y)?;
    if x == y {
        return Err(Error::OutOfDomain { what: "x - y", value: 0.0, domain: "nonzero" });
    }
    let j = PairJets::new(f, x, y);
    let (fu, fu1, fu2) = j.u;
    let (fv, fv1, _) = j.v;
    let d = x - y;
    let ru = fu1 / fu;
    let rv = fv1 / fv;
    Ok(2.0 * (2.0 * y * fu - 1.0) / (d * d) + 6.0 * (2.0 * x * fu1 - y * fu) / (y * d * fu)
        - 0.5 * x * (8.0 + 3.0 * y) / y.powi(3) * ru * ru
        - 1.5 * y / (x * x) * rv * rv
        + (3.0 + x) * fu1 / (y * y * fu)
        + 2.0 * x * fu2 / (y.powi(3) * fu)
        - fv1 / (x * fv)
        - 2.0 * fu1 * fv1 / (x * x * fv * fv)
        + 1.5)
}

/// Curvature evaluated by all three routes at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub a: f64,
    pub r_closed: f64,
    pub r_sums: f64,
    pub r_geometric: f64,
    pub max_rel_disagreement: f64,
}

/// Relative spread of a set of values (absolute when they are near zero).
pub fn relative_spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = values.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0);
    (max - min) / scale
}

impl CurvatureSample {
    pub fn compute(f: &MonotoneFunction, a: f64) -> Result<Self> {
        let state = QubitState::new(a)?;
        let (l1, l2) = state.eigenvalues();
        let r_closed = curvature_closed_form(f, a)?;
        let rho = state.radius();
        let (r_sums, r_geometric) = if rho < SERIES_SWITCH {
            // Both routes cancel catastrophically near the center, so each is
            // evaluated along rho(h) = sqrt(a^2 + h^2), which is even in h, and
            // extrapolated to h = 0.
            let lifted = |h: f64| (rho * rho + h * h).sqrt();
            let sums = richardson(
                |h| {
                    let r = lifted(h);
                    curvature_via_sums(f, (1.0 + r) / 2.0, (1.0 - r) / 2.0).unwrap_or(f64::NAN)
                },
                CENTER_STEP,
                3,
            );
            let geometric =
                richardson(|h| curvature_geometric(f, lifted(h)).unwrap_or(f64::NAN), CENTER_STEP, 3);
            (sums, geometric)
        } else {
            (curvature_via_sums(f, l1, l2)?, curvature_geometric(f, rho)?)
        };
        let max_rel_disagreement = relative_spread(&[r_closed, r_sums, r_geometric]);
        Ok(Self { a, r_closed, r_sums, r_geometric, max_rel_disagreement })
    }
}
