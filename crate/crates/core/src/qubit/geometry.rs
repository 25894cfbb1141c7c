//! Bloch-ball geometry: metric, Christoffel symbols and curvature tensors in
//! polar coordinates `(r, θ, φ)`.
//!
//! The line element is `ds² = dr²/(1-r²) + r²/((1+r) f(c)) dΩ²` with
//! `c = (1-r)/(1+r)`. Indices below are 1-based in names (`g11`, `R1212`)
//! and 0-based in arrays.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::MonotoneFunction;

use super::tensor::{ricci_from_riemann, scalar_from_ricci, Tensor2, Tensor4};

struct Jet {
    f: f64,
    q: f64,
    f2: f64,
}

impl Jet {
    fn new(f: &MonotoneFunction, r: f64) -> Result<Self> {
        check_radius(r)?;
        let (v, d1, d2) = f.triple((1.0 - r) / (1.0 + r));
        Ok(Self { f: v, q: d1 / v, f2: d2 / v })
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain { what: "r", value: r, domain: "(0, 1)" })
    }
}

fn check_polar(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < std::f64::consts::PI {
        Ok(())
    } else {
        Err(Error::OutOfDomain { what: "theta", value: theta, domain: "(0, π)" })
    }
}

/// Diagonal metric `diag(g_rr, g_ang, g_ang sin²θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlochMetric {
    pub g_rr: f64,
    pub g_angular: f64,
}

impl BlochMetric {
    pub fn components(&self, theta: f64) -> [f64; 3] {
        let s = theta.sin();
        [self.g_rr, self.g_angular, self.g_angular * s * s]
    }

    pub fn matrix(&self, theta: f64) -> Tensor2 {
        let d = self.components(theta);
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            g[i][i] = d[i];
        }
        g
    }
}

pub fn metric_tensor(f: &MonotoneFunction, r: f64) -> Result<BlochMetric> {
    let j = Jet::new(f, r)?;
    Ok(BlochMetric { g_rr: 1.0 / (1.0 - r * r), g_angular: r * r / ((1.0 + r) * j.f) })
}

/// The independent nonzero Christoffel symbols `Γ^m_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Christoffel {
    pub g1_11: f64,
    pub g1_22: f64,
    pub g1_33: f64,
    pub g2_12: f64,
    pub g2_33: f64,
    pub g3_13: f64,
    pub g3_23: f64,
}

impl Christoffel {
    /// All 27 symbols as `Γ[m][i][j]`, symmetric in `i, j`.
    pub fn full(&self) -> [[[f64; 3]; 3]; 3] {
        let mut g = [[[0.0; 3]; 3]; 3];
        let mut set = |m: usize, i: usize, j: usize, v: f64| {
            g[m][i][j] = v;
            g[m][j][i] = v;
        };
        set(0, 0, 0, self.g1_11);
        set(0, 1, 1, self.g1_22);
        set(0, 2, 2, self.g1_33);
        set(1, 0, 1, self.g2_12);
        set(1, 2, 2, self.g2_33);
        set(2, 0, 2, self.g3_13);
        set(2, 1, 2, self.g3_23);
        g
    }
}

pub fn christoffel(f: &MonotoneFunction, r: f64, theta: f64) -> Result<Christoffel> {
    let j = Jet::new(f, r)?;
    check_polar(theta)?;
    let (s, c) = theta.sin_cos();
    let g1_22 = -r * (1.0 - r) / (2.0 * (1.0 + r).powi(2) * j.f)
        * (r * r + 3.0 * r + 2.0 + 2.0 * r * j.q);
    let g2_12 = -j.f / (r * r * (1.0 - r)) * g1_22;
    Ok(Christoffel {
        g1_11: r / (1.0 - r * r),
        g1_22,
        g1_33: s * s * g1_22,
        g2_12,
        g2_33: -s * c,
        g3_13: g2_12,
        g3_23: c / s,
    })
}

/// Independent covariant Riemann components `R_1212`, `R_1313`, `R_2323`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RiemannComponents {
    pub r1212: f64,
    pub r1313: f64,
    pub r2323: f64,
}

impl RiemannComponents {
    /// Full tensor from `R_ijkl = -R_jikl = -R_ijlk = R_klij`.
    pub fn full(&self) -> Tensor4 {
        let mut t = [[[[0.0; 3]; 3]; 3]; 3];
        for (a, b, v) in [(0, 1, self.r1212), (0, 2, self.r1313), (1, 2, self.r2323)] {
            t[a][b][a][b] = v;
            t[b][a][b][a] = v;
            t[a][b][b][a] = -v;
            t[b][a][a][b] = -v;
        }
        t
    }
}

pub fn riemann_components(f: &MonotoneFunction, r: f64, theta: f64) -> Result<RiemannComponents> {
    let j = Jet::new(f, r)?;
    check_polar(theta)?;
    let s2 = theta.sin().powi(2);
    let p = 1.0 + r;
    let m = 1.0 - r;
    let q = j.q;
    let r1212 = -r / (p.powi(4) * (1.0 - r * r) * j.f)
        * (2.0 * r * m * j.f2 - 3.0 * r * m * q * q + p * (3.0 * r - 2.0) * q
            + (r * r + r + 4.0) * p * p / 4.0);
    let r2323 = r * r * m * s2 / (p.powi(4) * j.f * j.f)
        * (r * (r + 2.0) * q + r * r / p * q * q - p.powi(3) / m * j.f
            + p * (2.0 + r).powi(2) / 4.0);
    Ok(RiemannComponents { r1212, r1313: s2 * r1212, r2323 })
}

/// Diagonal Ricci components `[Ric11, Ric22, Ric33]` in closed form.
pub fn ricci_closed_form(f: &MonotoneFunction, r: f64, theta: f64) -> Result<[f64; 3]> {
    let j = Jet::new(f, r)?;
    check_polar(theta)?;
    let s2 = theta.sin().powi(2);
    let p = 1.0 + r;
    let m = 1.0 - r;
    let q = j.q;
    let ric11 = (4.0 * j.f2 - 6.0 * q * q + 2.0 * p * (3.0 * r - 2.0) / (r * m) * q
        + (r * r + r + 4.0) * p * p / (2.0 * r * m))
        / p.powi(4);
    let ric22 = r * r * m / (p.powi(4) * j.f)
        * (2.0 * j.f2 - 4.0 * q * q + p * (r * r + 4.0 * r - 4.0) / (r * m) * q
            + p.powi(4) / (r * r * m) * j.f
            + (r.powi(3) + 2.0 * r * r + 2.0 * r - 2.0) * p * p / (2.0 * r * r * m));
    Ok([ric11, ric22, s2 * ric22])
}

/// Scalar curvature at `(r, θ)` by contracting the Riemann tensor with the
/// inverse metric twice.
pub fn curvature_geometric_at(f: &MonotoneFunction, r: f64, theta: f64) -> Result<f64> {
    let g = metric_tensor(f, r)?.matrix(theta);
    let riemann = riemann_components(f, r, theta)?.full();
    let inv = super::tensor::inverse(&g)?;
    let ric = ricci_from_riemann(&riemann, &inv);
    Ok(scalar_from_ricci(&ric, &inv))
}

/// Scalar curvature at Bloch radius `r`, evaluated on the equator.
pub fn curvature_geometric(f: &MonotoneFunction, r: f64) -> Result<f64> {
    curvature_geometric_at(f, r, std::f64::consts::FRAC_PI_2)
}
