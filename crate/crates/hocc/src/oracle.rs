//! Exact-HOCC references: adaptive quadrature of the defining integral and
//! seeded Monte Carlo estimation.

use rayon::prelude::*;

use crate::asymptotics::{HoccResult, Method};
use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::snr::MeanSnr;
use crate::specfun::{adaptive_quadrature, semi_infinite_quadrature};

/// Tolerances for the capacity-statistic quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureConfig {
    pub fn new(rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-4) {
            return Err(Error::Domain(format!("rel_tol must be in (0, 1e-4], got {rel_tol}")));
        }
        Ok(Self { rel_tol, max_subdivisions })
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-8, max_subdivisions: 2000 }
    }
}

/// Sample budget and seeding for the Monte Carlo estimator.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    pub batch: usize,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        if samples < 10_000 {
            return Err(Error::Domain(format!("MC needs >= 10^4 samples, got {samples}")));
        }
        Ok(Self { samples, seed, batch: 65_536 })
    }
}

impl Default for McConfig {
    fn default() -> Self {
        Self { samples: 1_000_000, seed: 0, batch: 65_536 }
    }
}

/// E[log^n(1+gamma)] by adaptive quadrature of log^n(1+gamma) p(gamma).
pub fn hocc_quadrature(
    model: &FadingModel,
    n: usize,
    mean: MeanSnr,
    cfg: &QuadratureConfig,
) -> Result<HoccResult> {
    if n == 0 {
        return Err(Error::Domain("statistic order must be >= 1".into()));
    }
    model.validate()?;
    if *model == FadingModel::Awgn {
        let value = mean.linear().ln_1p().powi(n as i32);
        return Ok(HoccResult { value, err: 0.0, method: Method::Quadrature });
    }
    let gbar = mean.linear();
    let f = |g: f64| g.ln_1p().powi(n as i32) * model.pdf(g, mean).unwrap_or(f64::NAN);
    let mut value = 0.0;
    let mut err = 0.0;

    // head [0, gbar/100] under u = sqrt(gamma) so fractional density
    // exponents stay bounded
    let head_hi = gbar / 100.0;
    let fu = |u: f64| 2.0 * u * f(u * u);
    let head = adaptive_quadrature(&fu, 0.0, head_hi.sqrt(), cfg.rel_tol, cfg.max_subdivisions)?;
    value += head.value;
    err += head.err;

    for (lo, hi) in [(gbar / 100.0, gbar), (gbar, 100.0 * gbar)] {
        let q = adaptive_quadrature(&f, lo, hi, cfg.rel_tol, cfg.max_subdivisions)?;
        value += q.value;
        err += q.err;
    }
    let tail = semi_infinite_quadrature(&f, 100.0 * gbar, cfg.rel_tol, cfg.max_subdivisions)?;
    value += tail.value;
    err += tail.err;
    Ok(HoccResult { value, err, method: Method::Quadrature })
}

// Deterministic per-batch sub-seed: splitmix64 over (seed, batch index).
fn batch_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sample mean of log^n(1+gamma) with its standard error. Batches evaluate
/// concurrently; per-batch sub-seeds make the result schedule-independent.
pub fn hocc_monte_carlo(
    model: &FadingModel,
    n: usize,
    mean: MeanSnr,
    cfg: &McConfig,
) -> Result<HoccResult> {
    if n == 0 {
        return Err(Error::Domain("statistic order must be >= 1".into()));
    }
    if cfg.samples < 10_000 {
        return Err(Error::Domain(format!("MC needs >= 10^4 samples, got {}", cfg.samples)));
    }
    model.validate()?;
    let batch = cfg.batch.max(1);
    let batches = cfg.samples.div_ceil(batch);
    let sums: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let count = batch.min(cfg.samples - b * batch);
            let xs = model.sample(mean, count, batch_seed(cfg.seed, b as u64))?;
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            for x in xs {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::NonFiniteSample(x));
                }
                let v = x.ln_1p().powi(n as i32);
                s1 += v;
                s2 += v * v;
            }
            Ok((s1, s2))
        })
        .collect::<Result<_>>()?;
    let total = cfg.samples as f64;
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let m1 = s1 / total;
    let var = (s2 / total - m1 * m1).max(0.0);
    Ok(HoccResult { value: m1, err: (var / total).sqrt(), method: Method::MonteCarlo })
}
