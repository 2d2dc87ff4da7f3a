//! Grunwald-Letnikov centered numerical differentiation.

use crate::error::{Error, Result};

/// Step and order budget for the centered stencil.
#[derive(Debug, Clone, Copy)]
pub struct GlConfig {
    step: f64,
    max_order: usize,
}

impl GlConfig {
    pub fn new(step: f64, max_order: usize) -> Result<Self> {
        if !(step > 0.0 && step <= 0.01) {
            return Err(Error::Domain(format!("GL step must be in (0, 0.01], got {step}")));
        }
        if max_order > 8 {
            return Err(Error::Domain(format!("GL max_order must be <= 8, got {max_order}")));
        }
        Ok(Self { step, max_order })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }
}

impl Default for GlConfig {
    fn default() -> Self {
        Self { step: 1e-3, max_order: 8 }
    }
}

/// kth derivative of f at `at` by the centered stencil
/// (1/(2 eps^k)) sum_{j=0}^{k} (-1)^j C(k,j) [(-1)^k f(at + j eps) + f(at - j eps)].
pub fn gl_derivative(f: &dyn Fn(f64) -> f64, at: f64, order: usize, cfg: &GlConfig) -> Result<f64> {
    if order > cfg.max_order {
        return Err(Error::Domain(format!(
            "order {order} exceeds configured max_order {}",
            cfg.max_order
        )));
    }
    if order == 0 {
        let v = f(at);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample(at));
        }
        return Ok(v);
    }
    let eps = cfg.step;
    let sign_k = if order % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = 0.0;
    let mut binom = 1.0; // C(k, j)
    for j in 0..=order {
        let jf = j as f64;
        let plus = f(at + jf * eps);
        let minus = f(at - jf * eps);
        if !plus.is_finite() {
            return Err(Error::NonFiniteSample(at + jf * eps));
        }
        if !minus.is_finite() {
            return Err(Error::NonFiniteSample(at - jf * eps));
        }
        let sign_j = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign_j * binom * (sign_k * plus + minus);
        binom *= (order - j) as f64 / (jf + 1.0);
    }
    Ok(sum / (2.0 * eps.powi(order as i32)))
}
