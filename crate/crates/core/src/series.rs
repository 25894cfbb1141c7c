//! Truncated Taylor series arithmetic.
//!
//! A [`Series`] holds the normalized coefficients `u_k = u^(k)(x0) / k!` of a
//! function around some base point, truncated at a fixed order. Arithmetic
//! on series propagates exact derivatives, which is how closed-form catalog
//! functions get their high-order jets and how the expansion of the qubit
//! curvature around the maximally mixed state is computed.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 9;
const LEN: usize = MAX_ORDER + 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series {
    coef: [f64; LEN],
    order: usize,
}

impl Series {
    pub fn constant(value: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "series order {order} > {MAX_ORDER}");
        let mut coef = [0.0; LEN];
        coef[0] = value;
        Self { coef, order }
    }

    /// The identity function expanded around `x0`: `x0 + h`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut s = Self::constant(x0, order);
        if order >= 1 {
            s.coef[1] = 1.0;
        }
        s
    }

    /// Builds a series from normalized coefficients; missing entries are zero.
    pub fn from_coefficients(coefs: &[f64], order: usize) -> Self {
        let mut s = Self::constant(0.0, order);
        for (k, &c) in coefs.iter().enumerate().take(order + 1) {
            s.coef[k] = c;
        }
        s
    }

    /// Builds a series from plain derivatives `f^(k)(x0)`.
    pub fn from_derivatives(ders: &[f64], order: usize) -> Self {
        let mut s = Self::constant(0.0, order);
        let mut fact = 1.0;
        for (k, &d) in ders.iter().enumerate().take(order + 1) {
            if k > 0 {
                fact *= k as f64;
            }
            s.coef[k] = d / fact;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.coef[0]
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        if k <= self.order {
            self.coef[k]
        } else {
            0.0
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coef[..=self.order]
    }

    /// Derivatives `u^(k)(x0)` for `k = 0..=order`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        (0..=self.order)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                self.coef[k] * fact
            })
            .collect()
    }

    /// Same series with order reduced (or padded with zeros).
    pub fn with_order(&self, order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        let mut s = *self;
        for k in (order + 1)..LEN {
            s.coef[k] = 0.0;
        }
        s.order = order;
        s
    }

    /// Evaluates the truncated polynomial at offset `h` from the base point.
    pub fn eval_offset(&self, h: f64) -> f64 {
        self.coef[..=self.order]
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * h + c)
    }

    fn zip(self, rhs: Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::constant(0.0, order);
        for k in 0..=order {
            out.coef[k] = op(self.coef[k], rhs.coef[k]);
        }
        out
    }

    pub fn scale(mut self, s: f64) -> Self {
        for c in &mut self.coef[..=self.order] {
            *c *= s;
        }
        self
    }

    pub fn recip(self) -> Self {
        Self::constant(1.0, self.order) / self
    }

    /// `F(self)` where `fk[k] = F^(k)(self.value()) / k!`.
    pub fn compose(self, fk: &[f64]) -> Self {
        let order = self.order;
        let mut delta = self;
        delta.coef[0] = 0.0;
        let top = order.min(fk.len().saturating_sub(1));
        let mut out = Self::constant(fk[top], order);
        for k in (0..top).rev() {
            out = out * delta;
            out.coef[0] += fk[k];
        }
        out
    }

    pub fn exp(self) -> Self {
        let e = self.coef[0].exp();
        let mut fk = [0.0; LEN];
        let mut fact = 1.0;
        for (k, slot) in fk.iter_mut().enumerate().take(self.order + 1) {
            if k > 0 {
                fact *= k as f64;
            }
            *slot = e / fact;
        }
        self.compose(&fk[..=self.order])
    }

    pub fn ln(self) -> Self {
        let x0 = self.coef[0];
        let mut fk = [0.0; LEN];
        fk[0] = x0.ln();
        for (k, slot) in fk.iter_mut().enumerate().take(self.order + 1).skip(1) {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign / (k as f64 * x0.powi(k as i32));
        }
        self.compose(&fk[..=self.order])
    }

    pub fn powf(self, p: f64) -> Self {
        let x0 = self.coef[0];
        let mut fk = [0.0; LEN];
        // binomial(p, k) * x0^(p - k)
        let mut binom = 1.0;
        for (k, slot) in fk.iter_mut().enumerate().take(self.order + 1) {
            if k > 0 {
                binom *= (p - (k as f64 - 1.0)) / k as f64;
            }
            *slot = binom * x0.powf(p - k as f64);
        }
        self.compose(&fk[..=self.order])
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    /// `(e^u - 1) / u`, regular at `u = 0`.
    pub fn exprel(self) -> Self {
        let s0 = self.coef[0];
        let order = self.order;
        if s0.abs() <= 1.0 {
            // g^(k)(s) = sum_n s^n / (n! (n + k + 1))
            let mut fk = [0.0; LEN];
            let mut kfact = 1.0;
            for (k, slot) in fk.iter_mut().enumerate().take(order + 1) {
                if k > 0 {
                    kfact *= k as f64;
                }
                let mut term = 1.0;
                let mut sum = 0.0;
                for n in 0..60 {
                    if n > 0 {
                        term *= s0 / n as f64;
                    }
                    let add = term / (n + k + 1) as f64;
                    sum += add;
                    if add.abs() < 1e-18 * sum.abs() {
                        break;
                    }
                }
                *slot = sum / kfact;
            }
            self.compose(&fk[..=order])
        } else {
            let mut num = self.exp();
            num.coef[0] = s0.exp_m1();
            num / self
        }
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(-1.0)
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        let order = self.order.min(rhs.order);
        let mut out = Series::constant(0.0, order);
        for k in 0..=order {
            out.coef[k] = (0..=k).map(|j| self.coef[j] * rhs.coef[k - j]).sum();
        }
        out
    }
}

impl Div for Series {
    type Output = Series;
    fn div(self, rhs: Series) -> Series {
        let order = self.order.min(rhs.order);
        let b0 = rhs.coef[0];
        let mut out = Series::constant(0.0, order);
        for k in 0..=order {
            let acc: f64 = (1..=k).map(|j| rhs.coef[j] * out.coef[k - j]).sum();
            out.coef[k] = (self.coef[k] - acc) / b0;
        }
        out
    }
}

impl Add<f64> for Series {
    type Output = Series;
    fn add(mut self, rhs: f64) -> Series {
        self.coef[0] += rhs;
        self
    }
}

impl Sub<f64> for Series {
    type Output = Series;
    fn sub(mut self, rhs: f64) -> Series {
        self.coef[0] -= rhs;
        self
    }
}

impl Mul<f64> for Series {
    type Output = Series;
    fn mul(self, rhs: f64) -> Series {
        self.scale(rhs)
    }
}

impl Div<f64> for Series {
    type Output = Series;
    fn div(self, rhs: f64) -> Series {
        self.scale(1.0 / rhs)
    }
}

impl Add<Series> for f64 {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        rhs + self
    }
}

impl Sub<Series> for f64 {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        -rhs + self
    }
}

impl Mul<Series> for f64 {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        rhs.scale(self)
    }
}

impl Div<Series> for f64 {
    type Output = Series;
    fn div(self, rhs: Series) -> Series {
        rhs.recip().scale(self)
    }
}
