//! Higher-order amount of fading AF_n and the auxiliary coefficients
//! mu_k / mu_hat_n that drive every asymptote.

use crate::error::{Error, Result};
use crate::fading::{FadingModel, KAPPA_DB};
use crate::specfun::{
    complete_bell, gl_derivative, hod_pfq, ln_gamma, phi_n, polygamma, GlConfig, SeriesConfig,
};

/// How a coefficient set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMethod {
    ClosedForm,
    GlNumeric,
}

/// mu_0..mu_K, the derivatives of n -> AF_n at n = 0.
#[derive(Debug, Clone)]
pub struct AuxCoefficients {
    model: FadingModel,
    method: CoeffMethod,
    values: Vec<f64>,
}

impl AuxCoefficients {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Result<f64> {
        self.values
            .get(k)
            .copied()
            .ok_or(Error::InsufficientCoefficients { needed: k + 1, have: self.values.len() })
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn method(&self) -> CoeffMethod {
        self.method
    }

    pub fn model(&self) -> &FadingModel {
        &self.model
    }
}

/// nth-order amount of fading AF_n = E[gamma^n]/E[gamma]^n - 1.
/// Mean-independent: every model in scope is a scale family.
pub fn aof(model: &FadingModel, n: f64) -> Result<f64> {
    Ok(model.normalized_moment(n)? - 1.0)
}

/// mu_hat_n = AF_n + 1 = E[gamma^n]/mean^n; the low-SNR bound coefficient.
pub fn mu_hat(model: &FadingModel, n: usize) -> Result<f64> {
    model.normalized_moment(n as f64)
}

/// mu_k for k = 0..K by the centered stencil applied to n -> AF_n.
pub fn mu_coeffs_gl(model: &FadingModel, max_order: usize, cfg: &GlConfig) -> Result<AuxCoefficients> {
    let f = |n: f64| aof(model, n).unwrap_or(f64::NAN);
    let values = (0..=max_order)
        .map(|k| gl_derivative(&f, 0.0, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(AuxCoefficients { model: *model, method: CoeffMethod::GlNumeric, values })
}

/// Closed-form mu_k from the Leibniz expansion of each model's AF_n.
/// EtaMu and the deterministic channel have no closed form here.
pub fn mu_coeffs_closed(model: &FadingModel, max_order: usize) -> Result<AuxCoefficients> {
    model.validate()?;
    let values = (0..=max_order)
        .map(|k| mu_closed(model, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(AuxCoefficients { model: *model, method: CoeffMethod::ClosedForm, values })
}

/// Closed form when available, otherwise the GL stencil with default step.
pub fn mu_coeffs(model: &FadingModel, max_order: usize) -> Result<AuxCoefficients> {
    match mu_coeffs_closed(model, max_order) {
        Err(Error::Unsupported(_)) => mu_coeffs_gl(model, max_order, &GlConfig::default()),
        other => other,
    }
}

fn mu_closed(model: &FadingModel, k: usize) -> Result<f64> {
    let delta = if k == 0 { 1.0 } else { 0.0 };
    match *model {
        FadingModel::GeneralizedNakagami { m, xi } => gn_mu(m, xi, k),
        FadingModel::Nakagami { m } => gn_mu(m, 1.0, k),
        FadingModel::Rayleigh => gn_mu(1.0, 1.0, k),
        FadingModel::Weibull { xi } => gn_mu(1.0, xi, k),
        FadingModel::OneSidedGaussian => gn_mu(0.5, 1.0, k),
        FadingModel::Lognormal { sigma_db } => {
            // AF_n + 1 = exp(s n^2) exp(-s n), s = sigma^2/(2 kappa^2)
            let s = sigma_db * sigma_db / (2.0 * KAPPA_DB * KAPPA_DB);
            let mut sum = 0.0;
            let mut binom = 1.0;
            for j in 0..=k {
                sum += binom * (-s).powi(j as i32) * phi_n(k - j, 0.0, s, 0.0);
                binom *= (k - j) as f64 / (j as f64 + 1.0);
            }
            Ok(sum - delta)
        }
        FadingModel::Egk { m, xi, m_s, xi_s } => {
            // AF_n + 1 = Gamma(m+n/xi) Gamma(m_s+n/xi_s) (beta beta_s)^{-n}
            //            / (Gamma(m) Gamma(m_s))
            let ln_bb = (ln_gamma(m + 1.0 / xi)? - ln_gamma(m)?)
                + (ln_gamma(m_s + 1.0 / xi_s)? - ln_gamma(m_s)?);
            let mut sum = 0.0;
            for (i, j, l, mult) in compositions3(k) {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                sum += mult
                    * sign
                    * psi_over_gamma(i, m, 1.0 / xi)?
                    * psi_over_gamma(j, m_s, 1.0 / xi_s)?
                    * ln_bb.powi(l as i32);
            }
            Ok(sum - delta)
        }
        FadingModel::KappaMu { kappa, mu } => {
            // AF_n + 1 = Gamma(mu+n) (mu(1+kappa))^{-n} 1F1(-n; mu; -kappa mu)
            //            / Gamma(mu)
            let ln_c = (mu * (1.0 + kappa)).ln();
            let cfg = SeriesConfig::default();
            let mut sum = 0.0;
            for (i, j, l, mult) in compositions3(k) {
                let sign = if (j + l) % 2 == 0 { 1.0 } else { -1.0 };
                let hod = hod_pfq(&[0.0], &[mu], -kappa * mu, &[l], &[0], 0, &cfg)?;
                sum += mult * sign * psi_over_gamma(i, mu, 1.0)? * ln_c.powi(j as i32) * hod;
            }
            Ok(sum - delta)
        }
        FadingModel::EtaMu { .. } => Err(Error::Unsupported(
            "no closed-form mu coefficients for the eta-mu model; use the GL stencil".into(),
        )),
        FadingModel::Awgn => Err(Error::Unsupported(
            "no closed-form mu coefficients for the deterministic channel".into(),
        )),
    }
}

// mu_k of the generalized-Nakagami family:
// sum_j (-1)^j C(k,j) Psi_(k-j)(m, 1/xi, 0) ln^j(beta) / Gamma(m) - delta_k0
fn gn_mu(m: f64, xi: f64, k: usize) -> Result<f64> {
    let ln_beta = ln_gamma(m + 1.0 / xi)? - ln_gamma(m)?;
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * psi_over_gamma(k - j, m, 1.0 / xi)? * ln_beta.powi(j as i32);
        binom *= (k - j) as f64 / (j as f64 + 1.0);
    }
    Ok(sum - if k == 0 { 1.0 } else { 0.0 })
}

// Psi_(n)(a, b, 0)/Gamma(a) = b^n B_n(psi_0(a), ..., psi_{n-1}(a)).
// The Gamma factor cancels against the 1/Gamma(a) normalization of every
// closed-form mu_k, so it is never materialized (Gamma(a) overflows for
// large shape parameters even though mu_k itself stays moderate).
fn psi_over_gamma(n: usize, a: f64, b: f64) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    let g: Vec<f64> = (0..n).map(|i| polygamma(i, a)).collect::<Result<_>>()?;
    Ok(b.powi(n as i32) * complete_bell(&g))
}

// (i, j, l, k!/(i! j! l!)) over all i + j + l = k, lexicographic in (i, j).
fn compositions3(k: usize) -> Vec<(usize, usize, usize, f64)> {
    let fact = |n: usize| (1..=n).fold(1.0, |a, v| a * v as f64);
    let kf = fact(k);
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=(k - i) {
            let l = k - i - j;
            out.push((i, j, l, kf / (fact(i) * fact(j) * fact(l))));
        }
    }
    out
}
