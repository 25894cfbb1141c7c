//! Acceptance checks shared by `moncurv verify` and the integration tests.
//!
//! Each check returns a [`CheckReport`] with a one-line summary; a failing
//! check carries the measured values so the line is self-explanatory.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremum::{
    boundary_curves, classify_origin, example_three_level, family_function, family_measure,
    laurent_summands, origin_curvature_from_measure, series_coefficients, t_double_pair,
    t_single_pair, FamilyParams, OriginInput, Verdict,
};
use crate::function::{catalog, derivatives_at_one, CatalogEntry, MonotoneFunction};
use crate::measure::{Atom, SymmetricMeasure};
use crate::nlevel::{default_qubit_grid, monotonicity_scan, qubit_chain, scalar_curvature, Spectrum};
use crate::numeric::richardson;
use crate::qubit::{curvature_closed_form, CurvatureSample};

/// The fourteen qubit grid points `±{0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95}`.
pub fn symmetric_grid() -> Vec<f64> {
    let base = [0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95];
    base.iter().flat_map(|&a| [a, -a]).collect()
}

/// Parameter cells of the two-pair family examined by [`family_minimum`].
pub const FAMILY_P: [f64; 4] = [0.35, 0.40, 0.45, 0.50];
pub const FAMILY_Q: [f64; 2] = [0.0, 0.01];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn report(id: u8, title: &'static str, failures: Vec<String>, summary: String) -> CheckReport {
    let passed = failures.is_empty();
    let detail = if passed { summary } else { format!("{summary}; {}", failures.join("; ")) };
    CheckReport { id, title, passed, detail }
}

fn catalog_functions() -> Vec<(String, MonotoneFunction)> {
    CatalogEntry::all()
        .into_iter()
        .map(|e| (e.name(), MonotoneFunction::from(e)))
        .collect()
}

pub fn origin_values() -> Result<CheckReport> {
    let sld = curvature_closed_form(&catalog("sld")?, 0.0)?;
    let smallest = curvature_closed_form(&catalog("smallest")?, 0.0)?;
    let mut failures = Vec::new();
    if (sld - 6.0).abs() > 1e-9 {
        failures.push(format!("sld r(0) = {sld}"));
    }
    if (smallest + 12.0).abs() > 1e-9 {
        failures.push(format!("smallest r(0) = {smallest}"));
    }
    Ok(report(1, "values at the origin", failures, format!("sld {sld:.12}, smallest {smallest:.12}")))
}

pub fn three_route_agreement() -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, f) in catalog_functions() {
        for a in symmetric_grid() {
            let s = CurvatureSample::compute(&f, a)?;
            worst = worst.max(s.max_rel_disagreement);
            if !(s.max_rel_disagreement < 1e-6) {
                failures.push(format!("{name} a={a}: {:.3e}", s.max_rel_disagreement));
            }
        }
    }
    Ok(report(2, "three-route agreement", failures, format!("7 functions x 14 points, worst relative spread {worst:.2e} (tol 1e-6)")))
}

/// `(c0, c2)` estimated from values of `r(a)` alone by Richardson extrapolation
/// at `a ∈ {0.1, 0.05, 0.025}`.
pub fn finite_difference_coefficients(f: &MonotoneFunction) -> Result<(f64, f64)> {
    let r = |a: f64| curvature_closed_form(f, a).unwrap_or(f64::NAN);
    // r is even; averaging both signs exercises the symmetric grid
    let even = |a: f64| 0.5 * (r(a) + r(-a));
    let c0 = richardson(even, 0.1, 3);
    // (r(a) - r(a/2)) / (3a²/4) = c2 + (5/4) c4 a² + ...
    let c2 = richardson(|a| (even(a) - even(a / 2.0)) / (0.75 * a * a), 0.1, 3);
    if c0.is_finite() && c2.is_finite() {
        Ok((c0, c2))
    } else {
        Err(Error::Limit(format!("{}: curvature not finite near the origin", f.name())))
    }
}

pub fn series_verification() -> Result<CheckReport> {
    let mut failures = Vec::new();
    let (mut worst_fd, mut worst_singular): (f64, f64) = (0.0, 0.0);
    for (name, f) in catalog_functions() {
        let s = series_coefficients(&f)?;
        let (c0, c2) = finite_difference_coefficients(&f)?;
        let (e0, e2) = (rel(c0, s.c0), rel(c2, s.c2));
        worst_fd = worst_fd.max(e0).max(e2);
        if !(e0 < 1e-4 && e2 < 1e-4) {
            failures.push(format!("{name}: c0 {c0} vs {}, c2 {c2} vs {}", s.c0, s.c2));
        }
        let singular: f64 = laurent_summands(&f)?.iter().map(|l| l.singular_part(1e-3)).sum();
        worst_singular = worst_singular.max(singular.abs());
        if !(singular.abs() < 1e-8) {
            failures.push(format!("{name}: singular part {singular:.3e} at a=1e-3"));
        }
    }
    Ok(report(
        3,
        "series coefficients",
        failures,
        format!("worst c0/c2 relative error {worst_fd:.2e} (tol 1e-4), worst 1/a + 1/a² sum {worst_singular:.2e} (tol 1e-8)"),
    ))
}

/// Ten reproducible random atomic measures with up to four mirrored pairs,
/// some with a central atom.
pub fn random_atomic_measures(seed: u64) -> Result<Vec<SymmetricMeasure>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10)
        .map(|i| {
            let pairs = rng.gen_range(1..=4);
            let mut atoms: Vec<Atom> = (0..pairs)
                .map(|_| Atom { t: rng.gen_range(0.0..0.5), w: rng.gen_range(0.1..1.0) })
                .collect();
            if i % 3 == 0 {
                atoms.push(Atom { t: 0.5, w: rng.gen_range(0.1..1.0) });
            }
            // half-masses: mirrored pairs count twice, the center once
            let total: f64 = atoms.iter().map(|a| if a.t == 0.5 { a.w } else { 2.0 * a.w }).sum();
            for a in &mut atoms {
                a.w /= total;
            }
            SymmetricMeasure::from_half(&atoms, &[])
        })
        .collect()
}

pub fn moment_identities() -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, mu) in random_atomic_measures(20_240_901)?.iter().enumerate() {
        let s = mu.pushforward_moments();
        let d1 = derivatives_at_one(mu, 1)?;
        if !((d1 - 0.5).abs() < 1e-12) {
            failures.push(format!("measure {i}: f'(1) = {d1}"));
        }
        let checks = [
            (2, -s.m / 2.0),
            (4, -3.0 * s.m + 1.5 * s.e2),
            (6, -90.0 * s.m - 11.25 * s.e3 + 90.0 * s.e2),
        ];
        for (k, want) in checks {
            let got = derivatives_at_one(mu, k)?;
            worst = worst.max((got - want).abs());
            if !((got - want).abs() < 1e-10) {
                failures.push(format!("measure {i}: f^({k})(1) = {got} vs {want}"));
            }
        }
    }
    Ok(report(4, "moment identities", failures, format!("10 random measures, worst deviation {worst:.2e} (tol 1e-10)")))
}

/// Measurements for one `(p, q)` cell of the two-pair family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilyCell {
    pub p: f64,
    pub q: f64,
    pub verdict: Verdict,
    pub t_value: f64,
    pub c2: f64,
    pub q_root: f64,
    pub t_at_root: f64,
}

pub fn family_cell(p: f64, q: f64) -> Result<FamilyCell> {
    let params = FamilyParams::new(p, q)?;
    let c = classify_origin(OriginInput::Measure(&family_measure(params)?))?;
    let b = boundary_curves(p)?;
    Ok(FamilyCell {
        p,
        q,
        verdict: c.verdict,
        t_value: t_double_pair(p, q)?,
        c2: c.values.c2,
        q_root: b.q_root,
        t_at_root: t_double_pair(p, b.q_root)?,
    })
}

pub fn family_minimum() -> Result<CheckReport> {
    let mut failures = Vec::new();
    for p in FAMILY_P {
        for q in FAMILY_Q {
            let cell = family_cell(p, q)?;
            if cell.verdict != Verdict::LocalMin || !(cell.t_value < 0.0) {
                failures.push(format!(
                    "(p,q)=({p},{q}): verdict {:?}, t = {:.6}, c2 = {:.6}, root q(p) = {:.6}",
                    cell.verdict, cell.t_value, cell.c2, cell.q_root
                ));
            }
            if !(cell.t_at_root.abs() < 1e-8) {
                failures.push(format!("p={p}: t(p, q(p)) = {:.3e}", cell.t_at_root));
            }
            if q == 0.0 {
                let pq = p * (1.0 - p);
                let want = -20.0 * pq * (14.0 * p * p - 14.0 * p + 3.0);
                if !((cell.c2 - want).abs() < 1e-9) {
                    failures.push(format!("p={p}: c2 = {} vs {want}", cell.c2));
                }
            }
        }
    }
    Ok(report(5, "two-pair family minimum", failures, "8 cells (p,q)".into()))
}

pub fn single_pair_positivity() -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut smallest = f64::INFINITY;
    for i in 1..=10 {
        let p = i as f64 * 0.05;
        let t = t_single_pair(p)?;
        smallest = smallest.min(t);
        if !(t > 0.0) {
            failures.push(format!("t({p}) = {t}"));
        }
    }
    Ok(report(6, "one-pair positivity", failures, format!("min t(p) on 0.05..0.50 = {smallest:.6}")))
}

pub fn monotonicity_exhibit() -> Result<CheckReport> {
    let pairs = qubit_chain(&default_qubit_grid())?;
    let tol = 1e-9;
    let family = family_function(FamilyParams::new(0.45, 0.0)?)?;
    let fam = monotonicity_scan(&family, &pairs, tol)?;
    let km = monotonicity_scan(&catalog("kubo_mori")?, &pairs, tol)?;
    let sld = monotonicity_scan(&catalog("sld")?, &pairs, tol)?;
    let mut failures = Vec::new();
    if fam.is_empty() {
        failures.push("family p=0.45, q=0 shows no violation".into());
    }
    if !km.is_empty() {
        failures.push(format!("kubo_mori has {} violations", km.len()));
    }
    if !sld.is_empty() {
        failures.push(format!("sld has {} violations", sld.len()));
    }
    Ok(report(
        7,
        "non-monotone curvature",
        failures,
        format!("violations: family {}, kubo_mori {}, sld {}", fam.len(), km.len(), sld.len()),
    ))
}

pub fn spectral_reduction() -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, f) in catalog_functions() {
        for a in symmetric_grid() {
            let r = scalar_curvature(&f, &Spectrum::qubit(a)?)?;
            let closed = curvature_closed_form(&f, a)?;
            let e = rel(r, closed);
            worst = worst.max(e);
            if !(e < 1e-6) {
                failures.push(format!("{name} a={a}: {r} vs {closed}"));
            }
        }
    }
    let constant = 0.25 * 3.0 * 2.0;
    if constant != 1.5 {
        failures.push(format!("n=2 constant {constant}"));
    }
    Ok(report(8, "spectral formula at n=2", failures, format!("worst relative difference {worst:.2e} (tol 1e-6), constant {constant}")))
}

/// Second differences `r(u + δv) - 2r(u) + r(u - δv)` at the uniform
/// three-level spectrum along `(1,-1,0)/√2` and `(1,1,-2)/√6`.
pub fn three_level_second_differences(f: &MonotoneFunction, delta: f64) -> Result<[f64; 2]> {
    let third = 1.0 / 3.0;
    let r0 = scalar_curvature(f, &Spectrum::new(vec![third; 3])?)?;
    let s2 = std::f64::consts::SQRT_2;
    let s6 = 6f64.sqrt();
    let dirs = [[1.0 / s2, -1.0 / s2, 0.0], [1.0 / s6, 1.0 / s6, -2.0 / s6]];
    let mut out = [0.0; 2];
    for (slot, v) in out.iter_mut().zip(dirs) {
        let at = |sign: f64| -> Result<f64> {
            let lambda: Vec<f64> = v.iter().map(|vi| third + sign * delta * vi).collect();
            // renormalize the representation error of 1/3 + ... without changing the point
            let sum: f64 = lambda.iter().sum();
            let lambda = lambda.iter().map(|l| l / sum).collect();
            scalar_curvature(f, &Spectrum::new(lambda)?)
        };
        *slot = at(1.0)? - 2.0 * r0 + at(-1.0)?;
    }
    Ok(out)
}

pub fn three_level_minimum() -> Result<CheckReport> {
    let f = example_three_level()?;
    let coarse = three_level_second_differences(&f, 1e-2)?;
    let fine = three_level_second_differences(&f, 5e-3)?;
    let mut failures = Vec::new();
    if !(coarse[0] > 0.0 && coarse[1] > 0.0) {
        failures.push("second difference not positive at δ=1e-2".into());
    }
    Ok(report(
        9,
        "three-level local minimum",
        failures,
        format!(
            "δ=1e-2: {:.6e}, {:.6e}; δ=5e-3: {:.6e}, {:.6e}",
            coarse[0], coarse[1], fine[0], fine[1]
        ),
    ))
}

/// Values recorded for the `q = 0` family at one `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QZeroRecord {
    pub p: f64,
    /// `6 + 72 ∫ (t² - t) dμ`.
    pub constant_from_measure: f64,
    /// `6 + 36 f''(1)` with `f''(1)` integrated against the measure.
    pub constant_from_moment: f64,
    /// `c0` from the exact jet of the closed-form family function.
    pub constant_from_series: f64,
    /// Reference constant `9/2 - 36 p(1-p)`, kept as an annotation and not asserted.
    pub reference_constant: f64,
    /// Limit of `r(a)` as `a → 1⁻`, extrapolated from the closed form.
    pub edge_limit: f64,
    /// Reference edge value `7/2 + 1/(p(1-p))`, kept as an annotation and not asserted.
    pub reference_edge_limit: f64,
}

pub fn q_zero_record(p: f64) -> Result<QZeroRecord> {
    let params = FamilyParams::new(p, 0.0)?;
    let mu = family_measure(params)?;
    let f = family_function(params)?;
    let pq = p * (1.0 - p);
    // r(1 - ε) is affine in ε to leading order
    let eps = 1e-6;
    let r1 = curvature_closed_form(&f, 1.0 - eps)?;
    let r2 = curvature_closed_form(&f, 1.0 - eps / 2.0)?;
    Ok(QZeroRecord {
        p,
        constant_from_measure: origin_curvature_from_measure(&mu),
        constant_from_moment: 6.0 + 36.0 * derivatives_at_one(&mu, 2)?,
        constant_from_series: series_coefficients(&f)?.c0,
        reference_constant: 4.5 - 36.0 * pq,
        edge_limit: 2.0 * r2 - r1,
        reference_edge_limit: 3.5 + 1.0 / pq,
    })
}

pub fn q_zero_ledger() -> Result<CheckReport> {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for p in FAMILY_P {
        let rec = q_zero_record(p)?;
        let values = [rec.constant_from_measure, rec.constant_from_moment, rec.constant_from_series];
        let spread = crate::qubit::relative_spread(&values) * values[0].abs().max(1.0);
        if !(spread < 1e-9) {
            failures.push(format!("p={p}: constants {values:?}"));
        }
        lines.push(format!(
            "p={p}: r(0)={:.10} (reference {:.4}), r(1-)={:.6} (reference {:.6})",
            rec.constant_from_measure, rec.reference_constant, rec.edge_limit, rec.reference_edge_limit
        ));
    }
    Ok(report(10, "q=0 family constants", failures, lines.join("; ")))
}

/// Runs every acceptance check in order.
pub fn run_all() -> Vec<Result<CheckReport>> {
    vec![
        origin_values(),
        three_route_agreement(),
        series_verification(),
        moment_identities(),
        family_minimum(),
        single_pair_positivity(),
        monotonicity_exhibit(),
        spectral_reduction(),
        three_level_minimum(),
        q_zero_ledger(),
    ]
}
