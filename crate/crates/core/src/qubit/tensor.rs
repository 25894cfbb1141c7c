//! Coordinate-generic tensor assembly on a three-dimensional chart.
//!
//! Christoffel symbols are built from a metric field and the Riemann tensor
//! from a Christoffel field, with partial derivatives taken by
//! Richardson-extrapolated central differences. The contractions to Ricci
//! and scalar curvature use the convention `Ric_ij = g^{kl} R_{lijk}`.

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::numeric::derivative;

pub type Tensor2 = [[f64; 3]; 3];
/// `Γ[m][i][j] = Γ^m_ij`.
pub type Tensor3 = [[[f64; 3]; 3]; 3];
pub type Tensor4 = [[[[f64; 3]; 3]; 3]; 3];

const LEVELS: usize = 3;

pub fn inverse(g: &Tensor2) -> Result<Tensor2> {
    let m = Matrix3::from_fn(|i, j| g[i][j]);
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::Limit("metric is singular".into()))?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| inv[(i, j)])))
}

fn shifted(point: [f64; 3], k: usize, t: f64) -> [f64; 3] {
    let mut p = point;
    p[k] = t;
    p
}

/// `Γ^m_ij = ½ g^{ml} (∂_i g_jl + ∂_j g_il - ∂_l g_ij)`.
pub fn christoffel_from_metric<M>(metric: &M, point: [f64; 3], h: f64) -> Result<Tensor3>
where
    M: Fn([f64; 3]) -> Tensor2,
{
    let inv = inverse(&metric(point))?;
    // dg[k][i][j] = ∂_k g_ij
    let dg: Tensor3 = std::array::from_fn(|k| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let comp = |t: f64| metric(shifted(point, k, t))[i][j];
                derivative(&comp, point[k], 1, h, LEVELS)
            })
        })
    });
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                0.5 * (0..3)
                    .map(|l| inv[m][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                    .sum::<f64>()
            })
        })
    }))
}

/// `R_ijkl = g_ln (∂_i Γ^n_jk - ∂_j Γ^n_ik + Γ^m_jk Γ^n_im - Γ^m_ik Γ^n_jm)`.
pub fn riemann_from_christoffel<C>(gamma: &C, g: &Tensor2, point: [f64; 3], h: f64) -> Tensor4
where
    C: Fn([f64; 3]) -> Tensor3,
{
    let gam = gamma(point);
    // dgam[k][n][i][j] = ∂_k Γ^n_ij
    let dgam: Tensor4 = std::array::from_fn(|k| {
        std::array::from_fn(|n| {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let comp = |t: f64| gamma(shifted(point, k, t))[n][i][j];
                    derivative(&comp, point[k], 1, h, LEVELS)
                })
            })
        })
    });
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                std::array::from_fn(|l| {
                    (0..3)
                        .map(|n| {
                            let quad: f64 = (0..3)
                                .map(|m| gam[m][j][k] * gam[n][i][m] - gam[m][i][k] * gam[n][j][m])
                                .sum();
                            g[l][n] * (dgam[i][n][j][k] - dgam[j][n][i][k] + quad)
                        })
                        .sum()
                })
            })
        })
    })
}

/// `Ric_ij = g^{kl} R_{lijk}`.
pub fn ricci_from_riemann(riemann: &Tensor4, inv: &Tensor2) -> Tensor2 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    s += inv[k][l] * riemann[l][i][j][k];
                }
            }
            s
        })
    })
}

/// `Scal = g^{ij} Ric_ji`.
pub fn scalar_from_ricci(ricci: &Tensor2, inv: &Tensor2) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += inv[i][j] * ricci[j][i];
        }
    }
    s
}
