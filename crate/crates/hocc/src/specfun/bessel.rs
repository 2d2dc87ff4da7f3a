//! Modified Bessel function of the first kind, real order nu >= -1.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

const ASYMPTOTIC_SWITCH: f64 = 60.0;

/// I_nu(x) for nu >= -1, x >= 0. Signals overflow above the f64 range.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if nu < -1.0 || x < 0.0 {
        return Err(Error::Domain(format!("bessel_i requires nu >= -1, x >= 0; got nu={nu}, x={x}")));
    }
    let v = bessel_i_scaled(nu, x)? * x.exp();
    if v.is_infinite() {
        return Err(Error::Overflow(format!("I_{nu}({x}) exceeds f64 range")));
    }
    Ok(v)
}

/// Exponentially scaled e^{-x} I_nu(x); stable for large x.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    if nu < -1.0 || x < 0.0 {
        return Err(Error::Domain(format!("bessel_i requires nu >= -1, x >= 0; got nu={nu}, x={x}")));
    }
    // I_{-1} = I_1; I_{-nu} differs from I_nu only for non-integer order,
    // and we only reach here for nu in [-1, 0) otherwise.
    if nu == -1.0 {
        return bessel_i_scaled(1.0, x);
    }
    if x == 0.0 {
        return Ok(match nu {
            0.0 => 1.0,
            v if v > 0.0 => 0.0,
            _ => f64::INFINITY, // (x/2)^nu blows up for nu in (-1, 0)
        });
    }
    let switch = ASYMPTOTIC_SWITCH.max(nu * nu);
    if x < switch {
        Ok(series_i(nu, x) * (-x).exp())
    } else {
        Ok(asymptotic_i_scaled(nu, x))
    }
}

/// ln( I_nu(w) / w^nu ), finite at w -> 0. Used by the kappa-mu / eta-mu densities.
pub fn ln_bessel_ratio(nu: f64, w: f64) -> Result<f64> {
    if w < 0.0 {
        return Err(Error::Domain(format!("ln_bessel_ratio requires w >= 0, got {w}")));
    }
    if w < 1e-8 {
        // I_nu(w)/w^nu -> 1 / (2^nu Gamma(nu+1))
        return Ok(-nu * std::f64::consts::LN_2 - ln_gamma(nu + 1.0)?);
    }
    let s = bessel_i_scaled(nu, w)?;
    Ok(s.ln() + w - nu * w.ln())
}

fn series_i(nu: f64, x: f64) -> f64 {
    let q = x * x / 4.0;
    let ln_t0 = nu * (x / 2.0).ln() - ln_gamma(nu + 1.0).expect("nu + 1 > 0");
    let mut term = ln_t0.exp();
    let mut sum = term;
    for k in 0..2000 {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

// Abramowitz & Stegun 9.7.1: e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu)/x^k
fn asymptotic_i_scaled(nu: f64, x: f64) -> f64 {
    let mu4 = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..40 {
        let kf = k as f64;
        let factor = -(mu4 - (2.0 * kf - 1.0).powi(2)) / (8.0 * x * kf);
        term *= factor;
        if term.abs() > prev {
            break; // divergent tail of the asymptotic series
        }
        prev = term.abs();
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}
