//! Quadrature and finite-difference helpers.

use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

/// Number of Gauss-Legendre nodes used per density bin.
pub const BIN_NODES: usize = 16;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(BIN_NODES).expect("16 nodes is a valid degree"))
}

/// Fixed 16-point Gauss-Legendre integral over `[a, b]`.
pub fn gauss_legendre<F: FnMut(f64) -> f64>(a: f64, b: f64, integrand: F) -> f64 {
    rule().integrate(a, b, integrand)
}

/// Visits the 16 mapped nodes and weights on `[a, b]`.
pub fn gauss_legendre_nodes(a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule()
        .iter()
        .map(move |(x, w)| (mid + half * x, half * w))
}

/// Richardson extrapolation for an estimate with an even error expansion
/// `A(h) = A + c2 h^2 + c4 h^4 + ...`. Uses steps `h, h/2, ..., h/2^(levels-1)`.
pub fn richardson<F: FnMut(f64) -> f64>(mut estimate: F, h: f64, levels: usize) -> f64 {
    assert!(levels >= 1);
    let mut table: Vec<f64> = (0..levels)
        .map(|i| estimate(h / f64::powi(2.0, i as i32)))
        .collect();
    for j in 1..levels {
        let factor = f64::powi(4.0, j as i32);
        for i in 0..(levels - j) {
            table[i] = (factor * table[i + 1] - table[i]) / (factor - 1.0);
        }
    }
    table[0]
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Central difference of order `k` with step `h` (error `O(h^2)`).
pub fn central_difference<F: Fn(f64) -> f64>(f: &F, x: f64, k: usize, h: f64) -> f64 {
    if k == 0 {
        return f(x);
    }
    let half = k as f64 / 2.0;
    let sum: f64 = (0..=k)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k, j) * f(x + (half - j as f64) * h)
        })
        .sum();
    sum / h.powi(k as i32)
}

/// Richardson-extrapolated `k`-th derivative.
pub fn derivative<F: Fn(f64) -> f64>(f: &F, x: f64, k: usize, h: f64, levels: usize) -> f64 {
    richardson(|step| central_difference(f, x, k, step), h, levels)
}

/// Evenly spaced grid including both endpoints, generated by index.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..count)
            .map(|i| {
                let s = i as f64 / (count - 1) as f64;
                min * (1.0 - s) + max * s
            })
            .collect(),
    }
}
