//! Error function and its inverse.

use super::gamma::gamma_p;
use crate::error::{Error, Result};

/// erf(x) via the regularized incomplete gamma P(1/2, x^2).
pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let p = gamma_p(0.5, x * x).expect("x^2 >= 0");
    if x > 0.0 {
        p
    } else {
        -p
    }
}

/// Inverse error function on (-1, 1): Newton refinement of a rational seed.
pub fn erf_inv(y: f64) -> Result<f64> {
    if !(y.abs() < 1.0) {
        return Err(Error::Domain(format!("erf_inv requires |y| < 1, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let mut z = erf_inv_seed(y);
    // Newton on erf(z) - y; d/dz erf = 2/sqrt(pi) e^{-z^2}
    let c = 2.0 / std::f64::consts::PI.sqrt();
    for _ in 0..6 {
        let r = erf(z) - y;
        let dz = r / (c * (-z * z).exp());
        z -= dz;
        if dz.abs() < 1e-16 * z.abs().max(1e-300) {
            break;
        }
    }
    Ok(z)
}

// Giles (2010) single-precision-grade polynomial seed; Newton does the rest.
fn erf_inv_seed(y: f64) -> f64 {
    let w = -((1.0 - y) * (1.0 + y)).ln();
    if w < 5.0 {
        let w = w - 2.5;
        let mut p = 2.81022636e-08;
        p = 3.43273939e-07 + p * w;
        p = -3.5233877e-06 + p * w;
        p = -4.39150654e-06 + p * w;
        p = 0.00021858087 + p * w;
        p = -0.00125372503 + p * w;
        p = -0.00417768164 + p * w;
        p = 0.246640727 + p * w;
        p = 1.50140941 + p * w;
        p * y
    } else {
        let w = w.sqrt() - 3.0;
        let mut p = -0.000200214257;
        p = 0.000100950558 + p * w;
        p = 0.00134934322 + p * w;
        p = -0.00367342844 + p * w;
        p = 0.00573950773 + p * w;
        p = -0.0076224613 + p * w;
        p = 0.00943887047 + p * w;
        p = 1.00167406 + p * w;
        p = 2.83297682 + p * w;
        p * y
    }
}
