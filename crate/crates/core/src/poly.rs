//! Vector-valued polynomials in one variable, stored in the shifted monomial
//! basis `(t - base)^k`.

use crate::error::{Error, Result};

/// Scalar polynomial coefficients, lowest degree first.
pub(crate) fn mul_scalar_poly(p: &[f64], q: &[f64]) -> Vec<f64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if *a == 0.0 {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub(crate) fn add_assign_scalar_poly(acc: &mut Vec<f64>, p: &[f64], scale: f64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += scale * b;
    }
}

/// `int_0^h sum_k c_k s^k ds`.
pub(crate) fn integrate_scalar_poly(c: &[f64], h: f64) -> f64 {
    c.iter()
        .enumerate()
        .map(|(k, ck)| ck * h.powi(k as i32 + 1) / (k as f64 + 1.0))
        .sum()
}

fn horner(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * s + ck)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VecPolynomial {
    base: f64,
    degree: usize,
    coeffs: Vec<Vec<f64>>,
}

impl VecPolynomial {
    /// `coeffs[j][k]` multiplies `(t - base)^k` in component `j`. Every
    /// component must have the same length `degree + 1`.
    pub fn new(base: f64, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::contract("polynomial needs at least one component"));
        };
        let len = first.len();
        if len == 0 {
            return Err(Error::contract("polynomial needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| c.len() != len) {
            return Err(Error::contract("components have different coefficient counts"));
        }
        Ok(Self {
            base,
            degree: len - 1,
            coeffs,
        })
    }

    pub fn zero(base: f64, dim: usize, degree: usize) -> Self {
        Self {
            base,
            degree,
            coeffs: vec![vec![0.0; degree + 1]; dim],
        }
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    /// Value at `t`.
    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.eval_offset(t - self.base)
    }

    /// Value at `base + s`, without forming `base + s` first.
    pub fn eval_offset(&self, s: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| horner(c, s)).collect()
    }

    /// `int_base^{base + h}` of each component.
    pub fn integrate_offset(&self, h: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| integrate_scalar_poly(c, h)).collect()
    }
}
