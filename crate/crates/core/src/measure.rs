//! Symmetric probability measures on `[0, 1]` and their moment functionals.
//!
//! Every normalized symmetric operator monotone function is
//! `f(x) = ∫ x / ((1-t)x + t) dμ(t)` for a unique probability measure `μ`
//! invariant under `t ↦ 1-t`. Measures are stored by their lower half: an
//! atom at `t < 1/2` with weight `w` stands for `w δ_t + w δ_{1-t}`, an atom
//! at exactly `1/2` carries its full weight, and a density bin `[lo, hi]`
//! with `hi ≤ 1/2` is mirrored onto `[1-hi, 1-lo]` with the same mass.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gauss_legendre, gauss_legendre_nodes};

const MASS_TOL: f64 = 1e-12;
const MERGE_TOL: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub t: f64,
    pub w: f64,
}

/// Piecewise-constant density carrying `mass` uniformly on `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityBin {
    pub lo: f64,
    pub hi: f64,
    pub mass: f64,
}

impl DensityBin {
    pub fn density(&self) -> f64 {
        self.mass / (self.hi - self.lo)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMeasure {
    atoms: Vec<Atom>,
    bins: Vec<DensityBin>,
}

/// On-disk measure description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureFile {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default)]
    pub density_bins: Vec<DensityBin>,
    #[serde(default = "default_true")]
    pub auto_mirror: bool,
}

fn default_true() -> bool {
    true
}

fn is_center(t: f64) -> bool {
    (t - 0.5).abs() <= MERGE_TOL
}

impl SymmetricMeasure {
    /// Builds a measure from its lower half; the mirror image is implied.
    pub fn from_half(atoms: &[Atom], bins: &[DensityBin]) -> Result<Self> {
        let mut stored: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            if !(0.0..=0.5).contains(&a.t) || !a.t.is_finite() {
                return Err(Error::InvalidMeasure(format!(
                    "atom location {} outside [0, 1/2] with auto-mirroring",
                    a.t
                )));
            }
            check_weight(a.w)?;
            if a.w == 0.0 {
                continue;
            }
            let t = if is_center(a.t) { 0.5 } else { a.t };
            match stored.iter_mut().find(|s| (s.t - t).abs() <= MERGE_TOL) {
                Some(s) => s.w += a.w,
                None => stored.push(Atom { t, w: a.w }),
            }
        }
        stored.sort_by(|a, b| a.t.total_cmp(&b.t));

        let mut kept = Vec::with_capacity(bins.len());
        for b in bins {
            if !(b.lo.is_finite() && b.hi.is_finite()) || b.lo < 0.0 || b.hi > 0.5 || b.lo >= b.hi {
                return Err(Error::InvalidMeasure(format!(
                    "density bin [{}, {}] must satisfy 0 <= lo < hi <= 1/2",
                    b.lo, b.hi
                )));
            }
            check_weight(b.mass)?;
            if b.mass > 0.0 {
                kept.push(*b);
            }
        }
        kept.sort_by(|a, b| a.lo.total_cmp(&b.lo));

        let measure = Self { atoms: stored, bins: kept };
        let total = measure.total_mass();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!("total mass {total} is not 1")));
        }
        Ok(measure)
    }

    /// Builds a measure from a full description on `[0, 1]`, which must
    /// already be symmetric under `t ↦ 1-t`.
    pub fn from_full(atoms: &[Atom], bins: &[DensityBin]) -> Result<Self> {
        let mut merged: Vec<Atom> = Vec::new();
        for a in atoms {
            if !(0.0..=1.0).contains(&a.t) || !a.t.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom location {} outside [0, 1]", a.t)));
            }
            check_weight(a.w)?;
            if a.w == 0.0 {
                continue;
            }
            match merged.iter_mut().find(|s| (s.t - a.t).abs() <= MERGE_TOL) {
                Some(s) => s.w += a.w,
                None => merged.push(*a),
            }
        }
        let mut half = Vec::new();
        for a in &merged {
            if is_center(a.t) {
                half.push(Atom { t: 0.5, w: a.w });
            } else if a.t < 0.5 {
                let partner = merged
                    .iter()
                    .find(|b| (b.t - (1.0 - a.t)).abs() <= 1e-12)
                    .ok_or_else(|| {
                        Error::InvalidMeasure(format!("atom at {} has no mirror at {}", a.t, 1.0 - a.t))
                    })?;
                if (partner.w - a.w).abs() > MASS_TOL {
                    return Err(Error::InvalidMeasure(format!(
                        "atom weights at {} and {} differ ({} vs {})",
                        a.t, partner.t, a.w, partner.w
                    )));
                }
                half.push(*a);
            } else if !merged.iter().any(|b| (b.t - (1.0 - a.t)).abs() <= 1e-12) {
                return Err(Error::InvalidMeasure(format!(
                    "atom at {} has no mirror at {}",
                    a.t,
                    1.0 - a.t
                )));
            }
        }

        // Split bins at 1/2, then require the upper pieces to mirror the lower.
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for b in bins {
            if b.lo < 0.0 || b.hi > 1.0 || b.lo >= b.hi {
                return Err(Error::InvalidMeasure(format!(
                    "density bin [{}, {}] must satisfy 0 <= lo < hi <= 1",
                    b.lo, b.hi
                )));
            }
            check_weight(b.mass)?;
            let rho = b.density();
            if b.hi <= 0.5 {
                lower.push(*b);
            } else if b.lo >= 0.5 {
                upper.push(*b);
            } else {
                lower.push(DensityBin { lo: b.lo, hi: 0.5, mass: rho * (0.5 - b.lo) });
                upper.push(DensityBin { lo: 0.5, hi: b.hi, mass: rho * (b.hi - 0.5) });
            }
        }
        for b in &lower {
            let found = upper.iter().position(|u| {
                (u.lo - (1.0 - b.hi)).abs() <= 1e-12
                    && (u.hi - (1.0 - b.lo)).abs() <= 1e-12
                    && (u.mass - b.mass).abs() <= MASS_TOL
            });
            match found {
                Some(i) => {
                    upper.swap_remove(i);
                }
                None => {
                    return Err(Error::InvalidMeasure(format!(
                        "density bin [{}, {}] has no mirrored partner",
                        b.lo, b.hi
                    )))
                }
            }
        }
        if let Some(u) = upper.first() {
            return Err(Error::InvalidMeasure(format!(
                "density bin [{}, {}] has no mirrored partner",
                u.lo, u.hi
            )));
        }
        Self::from_half(&half, &lower)
    }

    pub fn from_file(file: &MeasureFile) -> Result<Self> {
        if file.auto_mirror {
            Self::from_half(&file.atoms, &file.density_bins)
        } else {
            Self::from_full(&file.atoms, &file.density_bins)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MeasureFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Canonical half-storage description (round-trips through [`Self::from_file`]).
    pub fn to_file(&self) -> MeasureFile {
        MeasureFile {
            atoms: self.atoms.clone(),
            density_bins: self.bins.clone(),
            auto_mirror: true,
        }
    }

    /// `δ_{1/2}`.
    pub fn center() -> Self {
        Self { atoms: vec![Atom { t: 0.5, w: 1.0 }], bins: Vec::new() }
    }

    /// `½δ_0 + ½δ_1`.
    pub fn endpoints() -> Self {
        Self { atoms: vec![Atom { t: 0.0, w: 0.5 }], bins: Vec::new() }
    }

    /// `½δ_p + ½δ_{1-p}` for `p ∈ [0, 1]`.
    pub fn point_pair(p: f64) -> Result<Self> {
        Self::from_full(&[Atom { t: p, w: 0.5 }, Atom { t: 1.0 - p, w: 0.5 }], &[])
    }

    /// `¼(δ_p + δ_q + δ_{1-p} + δ_{1-q})`.
    pub fn two_pairs(p: f64, q: f64) -> Result<Self> {
        Self::from_full(
            &[
                Atom { t: p, w: 0.25 },
                Atom { t: q, w: 0.25 },
                Atom { t: 1.0 - p, w: 0.25 },
                Atom { t: 1.0 - q, w: 0.25 },
            ],
            &[],
        )
    }

    /// Lebesgue measure on `[0, 1]`.
    pub fn uniform() -> Self {
        Self { atoms: Vec::new(), bins: vec![DensityBin { lo: 0.0, hi: 0.5, mass: 0.5 }] }
    }

    /// Stored lower-half atoms.
    pub fn half_atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Stored lower-half density bins.
    pub fn half_bins(&self) -> &[DensityBin] {
        &self.bins
    }

    pub fn has_density(&self) -> bool {
        !self.bins.is_empty()
    }

    /// All atoms of the full measure on `[0, 1]`.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::with_capacity(2 * self.atoms.len());
        for a in &self.atoms {
            if a.t == 0.5 {
                out.push(*a);
            } else {
                out.push(*a);
                out.push(Atom { t: 1.0 - a.t, w: a.w });
            }
        }
        out.sort_by(|a, b| a.t.total_cmp(&b.t));
        out
    }

    /// All density bins of the full measure on `[0, 1]`.
    pub fn bins(&self) -> Vec<DensityBin> {
        let mut out: Vec<DensityBin> = self
            .bins
            .iter()
            .flat_map(|b| [*b, DensityBin { lo: 1.0 - b.hi, hi: 1.0 - b.lo, mass: b.mass }])
            .collect();
        out.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        out
    }

    pub fn total_mass(&self) -> f64 {
        let atoms: f64 = self
            .atoms
            .iter()
            .map(|a| if a.t == 0.5 { a.w } else { 2.0 * a.w })
            .sum();
        let bins: f64 = self.bins.iter().map(|b| 2.0 * b.mass).sum();
        atoms + bins
    }

    /// `∫ g dμ`; atoms exactly, bins by 16-point Gauss-Legendre on each
    /// bin and its mirror image.
    pub fn integrate<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        let mut sum = 0.0;
        for a in &self.atoms {
            if a.t == 0.5 {
                sum += a.w * g(0.5);
            } else {
                sum += a.w * (g(a.t) + g(1.0 - a.t));
            }
        }
        for b in &self.bins {
            let rho = b.density();
            sum += rho * gauss_legendre(b.lo, b.hi, |t| g(t) + g(1.0 - t));
        }
        sum
    }

    /// Same as [`Self::integrate`] for an integrand producing several values at once.
    pub(crate) fn integrate_many<const N: usize, G: Fn(f64) -> [f64; N]>(&self, g: G) -> [f64; N] {
        let mut sum = [0.0; N];
        let mut add = |w: f64, v: [f64; N]| {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += w * x;
            }
        };
        for a in &self.atoms {
            if a.t == 0.5 {
                add(a.w, g(0.5));
            } else {
                add(a.w, g(a.t));
                add(a.w, g(1.0 - a.t));
            }
        }
        for b in &self.bins {
            let rho = b.density();
            for (t, w) in gauss_legendre_nodes(b.lo, b.hi) {
                add(rho * w, g(t));
                add(rho * w, g(1.0 - t));
            }
        }
        sum
    }

    /// `∫ t dμ`, equal to 1/2 for every symmetric probability measure.
    pub fn mean(&self) -> f64 {
        self.integrate(|t| t)
    }

    /// Image of `2μ` restricted to `[0, 1/2]` under `x = 4t(1-t)`.
    pub fn pushforward(&self) -> Pushforward {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let x = 4.0 * a.t * (1.0 - a.t);
                let mass = if a.t == 0.5 { a.w } else { 2.0 * a.w };
                Atom { t: x, w: mass }
            })
            .collect();
        let pieces = self
            .bins
            .iter()
            .map(|b| PushforwardPiece {
                x_lo: 4.0 * b.lo * (1.0 - b.lo),
                x_hi: 4.0 * b.hi * (1.0 - b.hi),
                rho: b.density(),
            })
            .collect();
        Pushforward { atoms, pieces }
    }

    pub fn pushforward_moments(&self) -> MomentSummary {
        self.pushforward().moments()
    }
}

fn check_weight(w: f64) -> Result<()> {
    if w.is_finite() && w >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMeasure(format!("negative or non-finite weight {w}")))
    }
}

/// One transformed density bin: on `x ∈ [x_lo, x_hi]` the image density is
/// `rho / (2 sqrt(1-x))`, with `rho` the constant density of the source bin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PushforwardPiece {
    pub x_lo: f64,
    pub x_hi: f64,
    pub rho: f64,
}

/// Probability measure `μ'` on `[0, 1]` induced by a symmetric measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Pushforward {
    /// Point masses (`t` holds the location `x`).
    pub atoms: Vec<Atom>,
    pub pieces: Vec<PushforwardPiece>,
}

/// Inverse of `x = 4t(1-t)` on `t ∈ [0, 1/2]`.
pub fn half_preimage(x: f64) -> f64 {
    (1.0 - (1.0 - x).sqrt()) / 2.0
}

impl Pushforward {
    /// Density of the absolutely continuous part at `x ∈ [0, 1)`.
    pub fn density(&self, x: f64) -> f64 {
        self.pieces
            .iter()
            .filter(|p| x >= p.x_lo && x < p.x_hi)
            .map(|p| p.rho / (2.0 * (1.0 - x).sqrt()))
            .sum()
    }

    /// `∫ x^n dμ'`. Density pieces are integrated in `s = sqrt(1-x)`, where
    /// `ρ/(2 sqrt(1-x)) dx = ρ ds` and the integrand is a polynomial.
    pub fn moment(&self, n: i32) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|a| a.w * a.t.powi(n)).sum();
        let pieces: f64 = self
            .pieces
            .iter()
            .map(|p| {
                let s_lo = (1.0 - p.x_hi).max(0.0).sqrt();
                let s_hi = (1.0 - p.x_lo).max(0.0).sqrt();
                p.rho * gauss_legendre(s_lo, s_hi, |s| (1.0 - s * s).powi(n))
            })
            .sum();
        atoms + pieces
    }

    pub fn total_mass(&self) -> f64 {
        self.moment(0)
    }

    pub fn moments(&self) -> MomentSummary {
        let m = self.moment(1);
        let e2 = self.moment(2);
        let e3 = self.moment(3);
        MomentSummary { m, var: e2 - m * m, e2, e3 }
    }
}

/// Expectation, variance and raw moments of the pushforward `μ'`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentSummary {
    pub m: f64,
    pub var: f64,
    pub e2: f64,
    pub e3: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn center_atom_is_stored_once() {
        let m = SymmetricMeasure::from_half(&[Atom { t: 0.5, w: 1.0 }], &[]).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_relative_eq!(m.total_mass(), 1.0);
    }

    #[test]
    fn rejects_negative_weight_without_renormalizing() {
        let err = SymmetricMeasure::from_half(
            &[Atom { t: 0.1, w: 0.75 }, Atom { t: 0.2, w: -0.25 }],
            &[],
        );
        assert!(matches!(err, Err(Error::InvalidMeasure(_))));
    }

    #[test]
    fn rejects_wrong_total_mass() {
        let err = SymmetricMeasure::from_half(&[Atom { t: 0.1, w: 0.4 }], &[]);
        assert!(err.is_err());
    }

    #[test]
    fn full_description_must_be_symmetric() {
        let bad = SymmetricMeasure::from_full(&[Atom { t: 0.2, w: 0.5 }, Atom { t: 0.7, w: 0.5 }], &[]);
        assert!(bad.is_err());
        let good = SymmetricMeasure::from_full(
            &[Atom { t: 0.2, w: 0.5 }, Atom { t: 0.8, w: 0.5 }],
            &[],
        )
        .unwrap();
        assert_eq!(good, SymmetricMeasure::point_pair(0.2).unwrap());
    }

    #[test]
    fn straddling_bin_is_split_at_one_half() {
        let m = SymmetricMeasure::from_full(&[], &[DensityBin { lo: 0.25, hi: 0.75, mass: 1.0 }]).unwrap();
        assert_eq!(m.half_bins().len(), 1);
        assert_relative_eq!(m.half_bins()[0].mass, 0.5);
        assert_relative_eq!(m.mean(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn two_pairs_collapse() {
        let m = SymmetricMeasure::two_pairs(0.5, 0.5).unwrap();
        assert_eq!(m, SymmetricMeasure::center());
        let m = SymmetricMeasure::two_pairs(0.3, 0.3).unwrap();
        assert_eq!(m, SymmetricMeasure::point_pair(0.3).unwrap());
    }

    #[test]
    fn pushforward_examples() {
        let c = SymmetricMeasure::center().pushforward_moments();
        assert_eq!((c.m, c.var, c.e2, c.e3), (1.0, 0.0, 1.0, 1.0));
        let e = SymmetricMeasure::endpoints().pushforward_moments();
        assert_eq!((e.m, e.var), (0.0, 0.0));

        let p = 0.4;
        let m = SymmetricMeasure::from_full(
            &[
                Atom { t: p, w: 0.25 },
                Atom { t: 1.0 - p, w: 0.25 },
                Atom { t: 0.0, w: 0.25 },
                Atom { t: 1.0, w: 0.25 },
            ],
            &[],
        )
        .unwrap();
        let s = m.pushforward_moments();
        assert_relative_eq!(s.m, 0.48, epsilon = 1e-15);
        assert_relative_eq!(s.e2, 0.5 * 0.96 * 0.96, epsilon = 1e-15);
    }

    #[test]
    fn pushforward_is_a_probability_measure() {
        let m = SymmetricMeasure::from_half(
            &[Atom { t: 0.1, w: 0.2 }, Atom { t: 0.5, w: 0.1 }],
            &[DensityBin { lo: 0.0, hi: 0.3, mass: 0.15 }, DensityBin { lo: 0.3, hi: 0.5, mass: 0.1 }],
        )
        .unwrap();
        assert_relative_eq!(m.pushforward().total_mass(), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn lebesgue_density_transform() {
        // Image of Lebesgue measure has density 1/(2 sqrt(1-x)).
        let pf = SymmetricMeasure::uniform().pushforward();
        for &x in &[0.1, 0.5, 0.9] {
            assert_relative_eq!(pf.density(x), 0.5 / (1.0 - x).sqrt(), epsilon = 1e-14);
        }
        // ∫ 4t(1-t) dt = 2/3
        assert_relative_eq!(pf.moment(1), 2.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(half_preimage(0.75), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn measure_file_defaults_to_auto_mirror() {
        let m = SymmetricMeasure::from_json(r#"{"atoms": [{"t": 0.0, "w": 0.5}]}"#).unwrap();
        assert_eq!(m, SymmetricMeasure::endpoints());
        let full = SymmetricMeasure::from_json(
            r#"{"atoms": [{"t": 0.0, "w": 0.5}, {"t": 1.0, "w": 0.5}], "auto_mirror": false}"#,
        )
        .unwrap();
        assert_eq!(full, m);
        let out = serde_json::to_string(&m.to_file()).unwrap();
        assert_eq!(SymmetricMeasure::from_json(&out).unwrap(), m);
    }

    #[test]
    fn auto_mirror_rejects_upper_half_locations() {
        assert!(SymmetricMeasure::from_json(r#"{"atoms": [{"t": 0.7, "w": 0.5}]}"#).is_err());
    }
}
