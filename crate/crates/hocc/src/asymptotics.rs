//! High- and low-SNR asymptotes of the higher-order capacity statistics and
//! the finite-SNR capacity gap.

use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::snr::MeanSnr;
use crate::statistics::{mu_coeffs, mu_hat, AuxCoefficients};

/// Provenance of a capacity-statistic value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
    HighAsymptote,
    LowAsymptote,
    Jensen,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "mc",
            Method::HighAsymptote => "high",
            Method::LowAsymptote => "low",
            Method::Jensen => "jensen",
        }
    }
}

/// E[log^n(1+gamma)] estimate in nats^n with an error figure
/// (quadrature tolerance or Monte Carlo standard error; 0 for closed forms).
#[derive(Debug, Clone, Copy)]
pub struct HoccResult {
    pub value: f64,
    pub err: f64,
    pub method: Method,
}

/// High-SNR asymptote of the nth capacity statistic:
/// log^n(mean) + sum_{k=0}^{n} C(n,k) mu_k log^{n-k}(mean).
pub fn hocc_high(
    model: &FadingModel,
    n: usize,
    mean: MeanSnr,
    coeffs: &AuxCoefficients,
) -> Result<HoccResult> {
    if n == 0 {
        return Err(Error::Domain("statistic order must be >= 1".into()));
    }
    if coeffs.max_order() < n {
        return Err(Error::InsufficientCoefficients { needed: n + 1, have: coeffs.max_order() + 1 });
    }
    if coeffs.model() != model {
        return Err(Error::Domain("coefficients were built for a different model".into()));
    }
    let l = mean.linear().ln();
    let mut value = l.powi(n as i32);
    let mut binom = 1.0;
    for k in 0..=n {
        value += binom * coeffs.get(k)? * l.powi((n - k) as i32);
        binom *= (n - k) as f64 / (k as f64 + 1.0);
    }
    Ok(HoccResult { value, err: 0.0, method: Method::HighAsymptote })
}

/// High-SNR average channel capacity: ln(mean) + mu_1.
pub fn acc_high(model: &FadingModel, mean: MeanSnr) -> Result<HoccResult> {
    let coeffs = mu_coeffs(model, 1)?;
    hocc_high(model, 1, mean, &coeffs)
}

/// Low-SNR upper bound: mu_hat_n mean^n.
pub fn hocc_low(model: &FadingModel, n: usize, mean: MeanSnr) -> Result<HoccResult> {
    if n == 0 {
        return Err(Error::Domain("statistic order must be >= 1".into()));
    }
    let value = mu_hat(model, n)? * mean.linear().powi(n as i32);
    Ok(HoccResult { value, err: 0.0, method: Method::LowAsymptote })
}

/// Jensen lower bound log^n(mean): the deterministic-channel asymptote.
pub fn jensen_high(n: usize, mean: MeanSnr) -> HoccResult {
    HoccResult { value: mean.linear().ln().powi(n as i32), err: 0.0, method: Method::Jensen }
}

/// Log-domain gap ln(jensen / high-asymptote) at the given mean SNR.
/// Constant only for n = 1 in the vertical-offset sense; see vertical_offset.
pub fn capacity_gap(model: &FadingModel, n: usize, mean: MeanSnr) -> Result<f64> {
    let coeffs = mu_coeffs(model, n)?;
    let high = hocc_high(model, n, mean, &coeffs)?.value;
    let jensen = jensen_high(n, mean).value;
    if high <= 0.0 || jensen <= 0.0 {
        return Err(Error::Domain(format!(
            "gap undefined: jensen={jensen}, high={high} at {} dB",
            mean.db()
        )));
    }
    Ok((jensen / high).ln())
}

/// Mean-independent vertical ACC offset to the deterministic channel: -mu_1.
pub fn vertical_offset(model: &FadingModel) -> Result<f64> {
    let coeffs = mu_coeffs(model, 1)?;
    Ok(-coeffs.get(1)?)
}
