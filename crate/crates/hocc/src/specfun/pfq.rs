//! Generalized hypergeometric series pFq and its mixed higher-order
//! derivatives with respect to parameters and argument.

use super::bell::complete_bell;
use super::gamma::polygamma;
use crate::error::{Error, Result};

/// Truncation control for hypergeometric and related series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    rel_tol: f64,
    max_terms: usize,
}

impl SeriesConfig {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
            return Err(Error::Domain(format!("rel_tol must be in (0, 1e-6], got {rel_tol}")));
        }
        if max_terms < 200 {
            return Err(Error::Domain(format!("max_terms must be >= 200, got {max_terms}")));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-15, max_terms: 10_000 }
    }
}

/// pFq(a; b; x) by direct series summation.
pub fn pfq(a: &[f64], b: &[f64], x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let m = vec![0usize; a.len()];
    let n = vec![0usize; b.len()];
    hod_pfq(a, b, x, &m, &n, 0, cfg)
}

/// Mixed derivative d^{m_i}/da_i^{m_i} d^{n_j}/db_j^{n_j} d^k/dx^k pFq(a; b; x).
///
/// Each series term is differentiated analytically:
/// d^m/da^m (a)_j = (a)_j B_m(L_1..L_m) with L_r = psi_{r-1}(a+j) - psi_{r-1}(a),
/// d^n/db^n 1/(b)_j = B_n(-M_1..-M_n)/(b)_j, and the a = 0 limit
/// d^m/da^m (a)_j|_0 = m (j-1)! B_{m-1}(psi_{r-1}(j) - psi_{r-1}(1)) for j >= 1.
/// Argument derivatives shift the power: d^k/dx^k x^j = j!/(j-k)! x^{j-k}.
pub fn hod_pfq(
    a: &[f64],
    b: &[f64],
    x: f64,
    m: &[usize],
    n: &[usize],
    k: usize,
    cfg: &SeriesConfig,
) -> Result<f64> {
    if m.len() != a.len() || n.len() != b.len() {
        return Err(Error::Domain(
            "derivative order vectors must match parameter vectors in length".into(),
        ));
    }
    for &bi in b {
        if bi <= 0.0 && bi == bi.floor() {
            return Err(Error::Pole(bi));
        }
    }
    let (p, q) = (a.len(), b.len());
    if p > q + 1 || (p == q + 1 && x.abs() >= 1.0) {
        return Err(Error::Divergence { p, q, x });
    }
    for (&ai, &mi) in a.iter().zip(m) {
        if mi > 0 && ai < 0.0 {
            return Err(Error::Unsupported(format!(
                "parameter derivative at negative upper parameter {ai}"
            )));
        }
    }
    let total: usize = m.iter().sum::<usize>() + n.iter().sum::<usize>() + k;
    if total > 6 {
        return Err(Error::Domain(format!("total derivative order {total} exceeds 6")));
    }

    // u carries prod (a_i)_j / prod (b_i)_j / j! times x^{j-k} once j >= k,
    // with every differentiated a_i = 0 replaced by (1)_j = j! so the running
    // product stays finite.
    let mut u = 1.0f64;
    let mut sum = 0.0f64;
    let mut flat = 0usize;
    for j in 0..cfg.max_terms {
        if j >= k {
            let mut term = u;
            // d^k/dx^k x^j = j!/(j-k)! x^{j-k}
            for i in 0..k {
                term *= (j - i) as f64;
            }
            for (&ai, &mi) in a.iter().zip(m) {
                if mi > 0 {
                    term *= upper_deriv_factor(ai, mi, j)?;
                }
            }
            for (&bi, &ni) in b.iter().zip(n) {
                if ni > 0 {
                    term *= lower_deriv_factor(bi, ni, j)?;
                }
            }
            sum += term;
            if term.abs() <= cfg.rel_tol * sum.abs().max(f64::MIN_POSITIVE) && j > k + 2 {
                flat += 1;
                // correction factors can vanish at isolated j; require a run
                if flat >= 3 {
                    return Ok(sum);
                }
            } else {
                flat = 0;
            }
        }
        let jf = j as f64;
        let mut ratio = 1.0 / (jf + 1.0);
        for (&ai, &mi) in a.iter().zip(m) {
            ratio *= if mi > 0 && ai == 0.0 { 1.0 + jf } else { ai + jf };
        }
        for &bi in b {
            ratio /= bi + jf;
        }
        u *= ratio;
        if j >= k {
            u *= x;
        }
        if u == 0.0 {
            return Ok(sum); // terminating series or x = 0
        }
    }
    Err(Error::NonConvergence(format!("hod_pfq series, {} terms", cfg.max_terms)))
}

// d^m/da^m (a)_j divided by the factor carried in the running product:
// (a)_j for a > 0, or (1)_j = j! for the a = 0 limit.
fn upper_deriv_factor(a: f64, m: usize, j: usize) -> Result<f64> {
    if a == 0.0 {
        if j == 0 {
            return Ok(0.0); // (a)_0 = 1 is constant in a
        }
        // m (j-1)! B_{m-1}(...) relative to the carried j! gives m/j B_{m-1}
        let jf = j as f64;
        let g: Vec<f64> = (0..m - 1)
            .map(|r| Ok(polygamma(r, jf)? - polygamma(r, 1.0)?))
            .collect::<Result<_>>()?;
        Ok(m as f64 / jf * complete_bell(&g))
    } else {
        if j == 0 {
            return Ok(0.0); // derivative of the constant (a)_0 = 1
        }
        let g: Vec<f64> = (0..m)
            .map(|r| Ok(polygamma(r, a + j as f64)? - polygamma(r, a)?))
            .collect::<Result<_>>()?;
        Ok(complete_bell(&g))
    }
}

// d^n/db^n [1/(b)_j] times (b)_j.
fn lower_deriv_factor(b: f64, n: usize, j: usize) -> Result<f64> {
    if j == 0 {
        return Ok(0.0);
    }
    let g: Vec<f64> = (0..n)
        .map(|r| Ok(-(polygamma(r, b + j as f64)? - polygamma(r, b)?)))
        .collect::<Result<_>>()?;
    Ok(complete_bell(&g))
}
