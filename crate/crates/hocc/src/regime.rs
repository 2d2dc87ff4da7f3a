//! SNR-regime diagnostics: the psi high-SNR measure, high-SNR onset solver,
//! the Delta measure, and the Pareto-optimal low-SNR boundary.

use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::oracle::{hocc_quadrature, QuadratureConfig};
use crate::snr::MeanSnr;
use crate::specfun::erf_inv;

/// Lower end of the universal boundary bracket (one-sided Gaussian infimum).
pub const BOUNDARY_INFIMUM: f64 = 0.64117587677;
/// Upper end of the universal boundary bracket (deterministic supremum e - 1).
pub const BOUNDARY_SUPREMUM: f64 = 1.71828182846;

/// Default outage threshold for the high-SNR onset solve.
pub const DEFAULT_GAMMA_TH: f64 = 8.0;

/// psi(gamma_th; mean) = P/(1-P); +inf once the outage probability reaches 1.
pub fn psi_measure(model: &FadingModel, gamma_th: f64, mean: MeanSnr) -> Result<f64> {
    let p = model.cdf(gamma_th, mean)?;
    if p >= 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(p / (1.0 - p))
}

/// Mean SNR where the outage probability at gamma_th equals target_p.
pub fn high_onset(model: &FadingModel, gamma_th: f64, target_p: f64) -> Result<MeanSnr> {
    if !(gamma_th > 0.0) || !(target_p > 0.0 && target_p < 1.0) {
        return Err(Error::Domain(format!(
            "need gamma_th > 0 and target_p in (0,1); got {gamma_th}, {target_p}"
        )));
    }
    if *model == FadingModel::OneSidedGaussian {
        // erf(sqrt(gamma_th/(2 mean))) = p inverts in closed form
        let z = erf_inv(target_p)?;
        return MeanSnr::from_linear(0.5 * gamma_th / (z * z));
    }
    // P is decreasing in the mean for these scale families
    let (mut lo, mut hi) = (1e-4, 1e6);
    let p_at = |gbar: f64| -> Result<f64> {
        model.cdf(gamma_th, MeanSnr::from_linear(gbar)?)
    };
    if p_at(lo)? < target_p || p_at(hi)? > target_p {
        return Err(Error::BracketFailure(format!(
            "outage probability does not cross {target_p} on [1e-4, 1e6] for {model}"
        )));
    }
    while (hi - lo) / lo > 1e-9 {
        let mid = (lo * hi).sqrt();
        if p_at(mid)? > target_p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    MeanSnr::from_linear((lo * hi).sqrt())
}

/// Delta(n; mean) = C(n; mean)/C(1; mean) - 1; negative in the low-SNR
/// regime, positive in the high-SNR regime.
pub fn delta_measure(
    model: &FadingModel,
    n: usize,
    mean: MeanSnr,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("delta measure needs order >= 2".into()));
    }
    let cn = hocc_quadrature(model, n, mean, cfg)?.value;
    let c1 = hocc_quadrature(model, 1, mean, cfg)?.value;
    if c1 <= 0.0 {
        return Err(Error::Domain(format!("vanishing first-order capacity at {} dB", mean.db())));
    }
    Ok(cn / c1 - 1.0)
}

/// Weighted sum of squared Delta measures over orders 1..4 (the order-1 term
/// is identically zero, so orders 2..4 carry the weight).
pub fn boundary_objective(
    model: &FadingModel,
    weights: &[f64; 4],
    mean: MeanSnr,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let c1 = hocc_quadrature(model, 1, mean, cfg)?.value;
    if c1 <= 0.0 {
        return Err(Error::Domain(format!("vanishing first-order capacity at {} dB", mean.db())));
    }
    let mut obj = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        let n = i + 1;
        let d = if n == 1 {
            0.0
        } else {
            hocc_quadrature(model, n, mean, cfg)?.value / c1 - 1.0
        };
        obj += w * d * d;
    }
    Ok(obj)
}

fn validate_weights(weights: &[f64; 4]) -> Result<()> {
    if weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::Domain(format!("weights must be positive, got {weights:?}")));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("weights must sum to 1, got {sum}")));
    }
    Ok(())
}

/// Pareto-optimal low-SNR boundary: the minimizer of the weighted objective
/// over mean SNR in [0.3, 2.5], by a 64-point log-grid scan refined with
/// golden-section search.
pub fn low_boundary(
    model: &FadingModel,
    weights: &[f64; 4],
    cfg: &QuadratureConfig,
) -> Result<MeanSnr> {
    validate_weights(weights)?;
    let (lo, hi) = (0.3f64, 2.5f64);
    let points = 64;
    let obj = |g: f64| -> Result<f64> {
        boundary_objective(model, weights, MeanSnr::from_linear(g)?, cfg)
    };
    let mut best = (lo, f64::INFINITY);
    let mut lowest = f64::INFINITY;
    let mut highest = f64::NEG_INFINITY;
    let mut grid = Vec::with_capacity(points);
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let g = lo * (hi / lo).powf(t);
        let v = obj(g)?;
        lowest = lowest.min(v);
        highest = highest.max(v);
        if v < best.1 {
            best = (g, v);
        }
        grid.push(g);
    }
    if highest - lowest < 1e-10 {
        return Err(Error::NonConvergence(
            "boundary objective is flat across the scan bracket".into(),
        ));
    }
    let idx = grid.iter().position(|&g| g == best.0).unwrap();
    let mut a = if idx == 0 { lo } else { grid[idx - 1] };
    let mut b = if idx + 1 == points { hi } else { grid[idx + 1] };
    // golden-section refinement on the bracketing neighbors
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = obj(x1)?;
    let mut f2 = obj(x2)?;
    while b - a > 1e-9 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = obj(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = obj(x2)?;
        }
    }
    MeanSnr::from_linear(0.5 * (a + b))
}

/// Root of ln(1 + gamma) = 1: the universal supremum e - 1, by bisection.
pub fn supremum_boundary() -> MeanSnr {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid.ln_1p() < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    MeanSnr::from_linear(0.5 * (lo + hi)).expect("bracket is positive")
}

/// Regime diagnostics bundle for reporting.
#[derive(Debug, Clone)]
pub struct RegimeReport {
    pub model: FadingModel,
    pub high_onset_snr: MeanSnr,
    pub low_boundary_snr: MeanSnr,
    pub weights: [f64; 4],
    /// (mean SNR dB, psi measure) at the default threshold.
    pub psi_curve: Vec<(f64, f64)>,
    /// (mean SNR linear, weighted objective) over the boundary scan bracket.
    pub delta_curve: Vec<(f64, f64)>,
}

pub fn regime_report(
    model: &FadingModel,
    weights: &[f64; 4],
    cfg: &QuadratureConfig,
) -> Result<RegimeReport> {
    validate_weights(weights)?;
    let high = high_onset(model, DEFAULT_GAMMA_TH, 0.5)?;
    let low = low_boundary(model, weights, cfg)?;
    let mut psi_curve = Vec::new();
    for i in 0..=40 {
        let db = -10.0 + i as f64;
        let v = psi_measure(model, DEFAULT_GAMMA_TH, MeanSnr::from_db(db)?)?;
        psi_curve.push((db, v));
    }
    let mut delta_curve = Vec::new();
    for i in 0..64 {
        let t = i as f64 / 63.0;
        let g = 0.3 * (2.5f64 / 0.3).powf(t);
        let v = boundary_objective(model, weights, MeanSnr::from_linear(g)?, cfg)?;
        delta_curve.push((g, v));
    }
    Ok(RegimeReport {
        model: *model,
        high_onset_snr: high,
        low_boundary_snr: low,
        weights: *weights,
        psi_curve,
        delta_curve,
    })
}
