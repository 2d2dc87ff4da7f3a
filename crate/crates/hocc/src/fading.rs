//! Fading-distribution zoo: parameter validation, PDF, CDF, closed-form
//! fractional moments, and seeded samplers.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma as GammaDist, Normal, Poisson};

use crate::error::{Error, Result};
use crate::snr::MeanSnr;
use crate::specfun::{
    adaptive_quadrature, erf, ext_inc_gamma, gamma_p, ln_bessel_ratio, ln_gamma, pfq,
    semi_infinite_quadrature, SeriesConfig,
};

/// dB-to-neper conversion constant 10/ln 10.
pub const KAPPA_DB: f64 = 4.342944819032518;

/// Instantaneous-SNR distribution of the end-to-end channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingModel {
    GeneralizedNakagami { m: f64, xi: f64 },
    Nakagami { m: f64 },
    Rayleigh,
    Weibull { xi: f64 },
    OneSidedGaussian,
    Lognormal { sigma_db: f64 },
    Egk { m: f64, xi: f64, m_s: f64, xi_s: f64 },
    KappaMu { kappa: f64, mu: f64 },
    EtaMu { eta: f64, mu: f64, format: u8 },
    /// Deterministic channel: gamma equals its mean with probability one.
    Awgn,
}

impl FadingModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        match *self {
            Self::GeneralizedNakagami { m, xi } => {
                if m < 0.5 {
                    return bad(format!("fading figure m must be >= 0.5, got {m}"));
                }
                if !(xi > 0.0) {
                    return bad(format!("shaping parameter xi must be > 0, got {xi}"));
                }
            }
            Self::Nakagami { m } => {
                if m < 0.5 {
                    return bad(format!("fading figure m must be >= 0.5, got {m}"));
                }
            }
            Self::Weibull { xi } => {
                if !(xi > 0.0) {
                    return bad(format!("shaping parameter xi must be > 0, got {xi}"));
                }
            }
            Self::Rayleigh | Self::OneSidedGaussian | Self::Awgn => {}
            Self::Lognormal { sigma_db } => {
                if !(sigma_db > 0.0) {
                    return bad(format!("sigma_db must be > 0, got {sigma_db}"));
                }
            }
            Self::Egk { m, xi, m_s, xi_s } => {
                if m < 0.5 || m_s < 0.5 {
                    return bad(format!("fading figures must be >= 0.5, got m={m}, m_s={m_s}"));
                }
                if !(xi > 0.0) || !(xi_s > 0.0) {
                    return bad(format!("shaping parameters must be > 0, got xi={xi}, xi_s={xi_s}"));
                }
            }
            Self::KappaMu { kappa, mu } => {
                if kappa < 0.0 {
                    return bad(format!("kappa must be >= 0, got {kappa}"));
                }
                if !(mu > 0.0) {
                    return bad(format!("mu must be > 0, got {mu}"));
                }
            }
            Self::EtaMu { eta, mu, format } => {
                if !(mu > 0.0) {
                    return bad(format!("mu must be > 0, got {mu}"));
                }
                match format {
                    1 => {
                        if !eta.is_finite() || !(eta > 0.0) {
                            return bad(format!("format-1 eta must be in (0, inf), got {eta}"));
                        }
                    }
                    2 => {
                        if !(eta > -1.0 && eta < 1.0) {
                            return bad(format!("format-2 eta must be in (-1, 1), got {eta}"));
                        }
                    }
                    f => return bad(format!("eta-mu format must be 1 or 2, got {f}")),
                }
            }
        }
        Ok(())
    }

    // Every generalized-Nakagami special case collapses to (m, xi).
    fn gn_params(&self) -> Option<(f64, f64)> {
        match *self {
            Self::GeneralizedNakagami { m, xi } => Some((m, xi)),
            Self::Nakagami { m } => Some((m, 1.0)),
            Self::Rayleigh => Some((1.0, 1.0)),
            Self::Weibull { xi } => Some((1.0, xi)),
            Self::OneSidedGaussian => Some((0.5, 1.0)),
            _ => None,
        }
    }

    // Format-2 eta-mu maps onto format 1 via eta1 = (1 - eta2)/(1 + eta2).
    fn eta_mu_format1(&self) -> Option<(f64, f64)> {
        match *self {
            Self::EtaMu { eta, mu, format: 1 } => Some((eta, mu)),
            Self::EtaMu { eta, mu, format: 2 } => Some(((1.0 - eta) / (1.0 + eta), mu)),
            _ => None,
        }
    }

    // (h, H) of the eta-mu density; H >= 0 by the eta <-> 1/eta symmetry.
    fn eta_mu_hh(&self) -> Option<(f64, f64)> {
        let (eta, _) = self.eta_mu_format1()?;
        let h = (2.0 + 1.0 / eta + eta) / 4.0;
        let hh = ((1.0 / eta - eta) / 4.0).abs();
        Some((h, hh))
    }

    /// E[gamma^n] / mean^n; independent of the mean for every model in scope.
    pub fn normalized_moment(&self, n: f64) -> Result<f64> {
        self.validate()?;
        let cfg = SeriesConfig::default();
        if let Some((m, xi)) = self.gn_params() {
            let beta = gn_beta(m, xi)?;
            if m + n / xi <= 0.0 {
                return Err(Error::Domain(format!("moment order {n} below -m*xi = {}", -m * xi)));
            }
            return Ok((ln_gamma(m + n / xi)? - ln_gamma(m)? - n * beta.ln()).exp());
        }
        match *self {
            Self::Lognormal { sigma_db } => {
                let s = sigma_db * sigma_db / (2.0 * KAPPA_DB * KAPPA_DB);
                Ok((s * (n * n - n)).exp())
            }
            Self::Egk { m, xi, m_s, xi_s } => {
                if m + n / xi <= 0.0 || m_s + n / xi_s <= 0.0 {
                    return Err(Error::Domain(format!("moment order {n} out of range")));
                }
                let beta = gn_beta(m, xi)?;
                let beta_s = gn_beta(m_s, xi_s)?;
                Ok((ln_gamma(m + n / xi)? + ln_gamma(m_s + n / xi_s)?
                    - ln_gamma(m)?
                    - ln_gamma(m_s)?
                    - n * (beta * beta_s).ln())
                .exp())
            }
            Self::KappaMu { kappa, mu } => {
                if mu + n <= 0.0 {
                    return Err(Error::Domain(format!("moment order {n} below -mu = {}", -mu)));
                }
                let f = pfq(&[mu + n], &[mu], kappa * mu, &cfg)?;
                Ok((ln_gamma(mu + n)? - ln_gamma(mu)? - kappa * mu
                    - n * (mu * (1.0 + kappa)).ln())
                .exp()
                    * f)
            }
            Self::EtaMu { .. } => {
                let (_, mu) = self.eta_mu_format1().unwrap();
                let (h, hh) = self.eta_mu_hh().unwrap();
                if 2.0 * mu + n <= 0.0 {
                    return Err(Error::Domain(format!("moment order {n} below -2mu")));
                }
                let x = (hh / h) * (hh / h);
                let f = pfq(&[mu + 0.5 * n + 0.5, mu + 0.5 * n], &[mu + 0.5], x, &cfg)?;
                Ok((ln_gamma(2.0 * mu + n)? - ln_gamma(2.0 * mu)?
                    - (mu + n) * h.ln()
                    - n * (2.0 * mu).ln())
                .exp()
                    * f)
            }
            Self::Awgn => Ok(1.0),
            _ => unreachable!(),
        }
    }

    /// E[gamma^n] at the given mean SNR.
    pub fn moment(&self, n: f64, mean: MeanSnr) -> Result<f64> {
        Ok(self.normalized_moment(n)? * mean.linear().powf(n))
    }

    /// Density of the instantaneous SNR.
    pub fn pdf(&self, gamma: f64, mean: MeanSnr) -> Result<f64> {
        self.validate()?;
        if gamma < 0.0 {
            return Err(Error::Domain(format!("pdf argument must be >= 0, got {gamma}")));
        }
        let gbar = mean.linear();
        if let Some((m, xi)) = self.gn_params() {
            let beta = gn_beta(m, xi)?;
            if gamma == 0.0 {
                return Ok(match (m * xi - 1.0).partial_cmp(&0.0).unwrap() {
                    std::cmp::Ordering::Greater => 0.0,
                    std::cmp::Ordering::Equal => xi * (beta / gbar) * (-ln_gamma(m)?).exp(),
                    std::cmp::Ordering::Less => f64::INFINITY,
                });
            }
            let u = beta * gamma / gbar;
            let ln_p = xi.ln() - ln_gamma(m)? + m * xi * (beta / gbar).ln()
                + (m * xi - 1.0) * gamma.ln()
                - u.powf(xi);
            return Ok(ln_p.exp());
        }
        match *self {
            Self::Lognormal { sigma_db } => {
                if gamma == 0.0 {
                    return Ok(0.0);
                }
                let mu_db = lognormal_mu_db(sigma_db, gbar);
                let z = (KAPPA_DB * gamma.ln() - mu_db) / sigma_db;
                Ok(KAPPA_DB / (gamma * sigma_db * (2.0 * std::f64::consts::PI).sqrt())
                    * (-0.5 * z * z).exp())
            }
            Self::Egk { m, xi, m_s, xi_s } => {
                let beta = gn_beta(m, xi)?;
                let beta_s = gn_beta(m_s, xi_s)?;
                let alpha = m_s - m * xi / xi_s;
                if gamma == 0.0 {
                    return Ok(if m * xi > 1.0 { 0.0 } else { f64::INFINITY });
                }
                let b = (beta * beta_s * gamma / gbar).powf(xi);
                let g = ext_inc_gamma(alpha, 0.0, b, xi / xi_s)?;
                let ln_pref = xi.ln() - ln_gamma(m)? - ln_gamma(m_s)?
                    + m * xi * (beta * beta_s / gbar).ln()
                    + (m * xi - 1.0) * gamma.ln();
                Ok(ln_pref.exp() * g)
            }
            Self::KappaMu { kappa, mu } => {
                if gamma == 0.0 {
                    return Ok(match (mu - 1.0).partial_cmp(&0.0).unwrap() {
                        std::cmp::Ordering::Greater => 0.0,
                        std::cmp::Ordering::Equal => (1.0 + kappa) * (-kappa).exp() / gbar,
                        std::cmp::Ordering::Less => f64::INFINITY,
                    });
                }
                let w = 2.0 * mu * (kappa * (1.0 + kappa) * gamma / gbar).sqrt();
                let ln_p = mu.ln() + (mu - 1.0) * (2.0 * mu).ln() + mu * (1.0 + kappa).ln()
                    - mu * kappa
                    + (mu - 1.0) * (gamma / gbar).ln()
                    - mu * (1.0 + kappa) * gamma / gbar
                    + ln_bessel_ratio(mu - 1.0, w)?
                    - gbar.ln();
                Ok(ln_p.exp())
            }
            Self::EtaMu { .. } => {
                let (_, mu) = self.eta_mu_format1().unwrap();
                let (h, hh) = self.eta_mu_hh().unwrap();
                if gamma == 0.0 {
                    return Ok(if 2.0 * mu > 1.0 { 0.0 } else { f64::INFINITY });
                }
                let w = 2.0 * mu * hh * gamma / gbar;
                let ln_p = (2.0 * std::f64::consts::PI.sqrt()).ln()
                    + (mu - 0.5) * 2f64.ln()
                    + 2.0 * mu * mu.ln()
                    + mu * h.ln()
                    + (2.0 * mu - 1.0) * (gamma / gbar).ln()
                    - 2.0 * mu * h * gamma / gbar
                    + ln_bessel_ratio(mu - 0.5, w)?
                    - ln_gamma(mu)?
                    - gbar.ln();
                Ok(ln_p.exp())
            }
            Self::Awgn => Err(Error::Unsupported(
                "deterministic channel has no density; its SNR equals the mean".into(),
            )),
            _ => unreachable!(),
        }
    }

    /// P(gamma_end <= gamma).
    pub fn cdf(&self, gamma: f64, mean: MeanSnr) -> Result<f64> {
        self.validate()?;
        if gamma < 0.0 {
            return Err(Error::Domain(format!("cdf argument must be >= 0, got {gamma}")));
        }
        if gamma == 0.0 {
            return Ok(0.0);
        }
        let gbar = mean.linear();
        if *self == Self::OneSidedGaussian {
            return Ok(erf((0.5 * gamma / gbar).sqrt()));
        }
        if let Some((m, xi)) = self.gn_params() {
            let beta = gn_beta(m, xi)?;
            return gamma_p(m, (beta * gamma / gbar).powf(xi));
        }
        match *self {
            Self::Lognormal { sigma_db } => {
                let mu_db = lognormal_mu_db(sigma_db, gbar);
                let z = (KAPPA_DB * gamma.ln() - mu_db) / (sigma_db * std::f64::consts::SQRT_2);
                Ok(0.5 * (1.0 + erf(z)))
            }
            Self::Awgn => Ok(if gamma >= gbar { 1.0 } else { 0.0 }),
            _ => {
                // far above the mean the body quadrature would straddle the
                // mass; the complement of the tail is the conditioned form
                if gamma >= 100.0 * gbar {
                    let f = |g: f64| self.pdf(g, mean).unwrap_or(f64::NAN);
                    let tail = semi_infinite_quadrature(&f, gamma, 1e-9, 2000)?;
                    return Ok((1.0 - tail.value).clamp(0.0, 1.0));
                }
                // quadrature of the density on [0, gamma], u = sqrt(g)
                // substitution so fractional zero exponents stay bounded
                let f = |u: f64| 2.0 * u * self.pdf(u * u, mean).unwrap_or(f64::NAN);
                let hi = gamma.sqrt();
                let mut splits = vec![0.0, hi];
                let knee = gbar.min(gamma).sqrt();
                if knee > 0.0 && knee < hi {
                    splits.push(knee);
                }
                splits.sort_by(f64::total_cmp);
                let mut total = 0.0;
                for w in splits.windows(2) {
                    total += adaptive_quadrature(&f, w[0], w[1], 1e-9, 2000)?.value;
                }
                Ok(total.min(1.0))
            }
        }
    }

    /// `count` i.i.d. draws; identical sequences for identical seeds.
    pub fn sample(&self, mean: MeanSnr, count: usize, seed: u64) -> Result<Vec<f64>> {
        self.validate()?;
        if count == 0 {
            return Err(Error::Domain("sample count must be >= 1".into()));
        }
        let gbar = mean.linear();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dist_err = |e: rand_distr::GammaError| Error::Domain(format!("gamma sampler: {e}"));
        if let Some((m, xi)) = self.gn_params() {
            let beta = gn_beta(m, xi)?;
            let g = GammaDist::new(m, 1.0).map_err(dist_err)?;
            return Ok((0..count)
                .map(|_| gbar / beta * g.sample(&mut rng).powf(1.0 / xi))
                .collect());
        }
        match *self {
            Self::Lognormal { sigma_db } => {
                let mu_db = lognormal_mu_db(sigma_db, gbar);
                let n = Normal::new(mu_db, sigma_db)
                    .map_err(|e| Error::Domain(format!("normal sampler: {e}")))?;
                Ok((0..count).map(|_| (n.sample(&mut rng) / KAPPA_DB).exp()).collect())
            }
            Self::Egk { m, xi, m_s, xi_s } => {
                let beta = gn_beta(m, xi)?;
                let beta_s = gn_beta(m_s, xi_s)?;
                let g1 = GammaDist::new(m, 1.0).map_err(dist_err)?;
                let g2 = GammaDist::new(m_s, 1.0).map_err(dist_err)?;
                Ok((0..count)
                    .map(|_| {
                        gbar / (beta * beta_s)
                            * g1.sample(&mut rng).powf(1.0 / xi)
                            * g2.sample(&mut rng).powf(1.0 / xi_s)
                    })
                    .collect())
            }
            Self::KappaMu { kappa, mu } => {
                // Poisson mixture of gammas: the noncentral-gamma construction
                let scale = gbar / (mu * (1.0 + kappa));
                let pois = if kappa > 0.0 {
                    Some(
                        Poisson::new(kappa * mu)
                            .map_err(|e| Error::Domain(format!("poisson sampler: {e}")))?,
                    )
                } else {
                    None
                };
                let mut out = Vec::with_capacity(count);
                for _ in 0..count {
                    let shift = pois.as_ref().map_or(0.0, |p| p.sample(&mut rng));
                    let g = GammaDist::new(mu + shift, 1.0).map_err(dist_err)?;
                    out.push(scale * g.sample(&mut rng));
                }
                Ok(out)
            }
            Self::EtaMu { .. } => {
                let (eta, mu) = self.eta_mu_format1().unwrap();
                // in-phase and quadrature powers with ratio eta
                let gx = GammaDist::new(mu, gbar * eta / (mu * (1.0 + eta))).map_err(dist_err)?;
                let gy = GammaDist::new(mu, gbar / (mu * (1.0 + eta))).map_err(dist_err)?;
                Ok((0..count).map(|_| gx.sample(&mut rng) + gy.sample(&mut rng)).collect())
            }
            Self::Awgn => {
                let _ = rng.gen::<u64>();
                Ok(vec![gbar; count])
            }
            _ => unreachable!(),
        }
    }
}

fn gn_beta(m: f64, xi: f64) -> Result<f64> {
    Ok((ln_gamma(m + 1.0 / xi)? - ln_gamma(m)?).exp())
}

fn lognormal_mu_db(sigma_db: f64, gbar: f64) -> f64 {
    KAPPA_DB * gbar.ln() - sigma_db * sigma_db / (2.0 * KAPPA_DB)
}

impl fmt::Display for FadingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::GeneralizedNakagami { m, xi } => write!(f, "gnak:m={m},xi={xi}"),
            Self::Nakagami { m } => write!(f, "nak:m={m}"),
            Self::Rayleigh => write!(f, "ray"),
            Self::Weibull { xi } => write!(f, "wei:xi={xi}"),
            Self::OneSidedGaussian => write!(f, "osg"),
            Self::Lognormal { sigma_db } => write!(f, "logn:sigma_db={sigma_db}"),
            Self::Egk { m, xi, m_s, xi_s } => {
                write!(f, "egk:m={m},xi={xi},ms={m_s},xis={xi_s}")
            }
            Self::KappaMu { kappa, mu } => write!(f, "kmu:kappa={kappa},mu={mu}"),
            Self::EtaMu { eta, mu, format } => write!(f, "emu:eta={eta},mu={mu},format={format}"),
            Self::Awgn => write!(f, "awgn"),
        }
    }
}

impl FromStr for FadingModel {
    type Err = Error;

    /// Grammar: `name` or `name:key=val,key=val`, e.g. `gnak:m=2.5,xi=0.7`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, r),
            None => (s, ""),
        };
        let mut kv = std::collections::BTreeMap::new();
        if !rest.is_empty() {
            for pair in rest.split(',') {
                let (k, v) = pair
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=val, got '{pair}'")))?;
                let val: f64 = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad numeric value '{v}' for '{k}'")))?;
                if kv.insert(k.trim().to_string(), val).is_some() {
                    return Err(Error::Parse(format!("duplicate key '{k}'")));
                }
            }
        }
        fn take(
            kv: &mut std::collections::BTreeMap<String, f64>,
            name: &str,
            key: &str,
        ) -> Result<f64> {
            kv.remove(key).ok_or_else(|| Error::Parse(format!("{name} requires '{key}'")))
        }
        let model = match name {
            "gnak" => FadingModel::GeneralizedNakagami { m: take(&mut kv, name, "m")?, xi: take(&mut kv, name, "xi")? },
            "nak" => FadingModel::Nakagami { m: take(&mut kv, name, "m")? },
            "ray" => FadingModel::Rayleigh,
            "wei" => FadingModel::Weibull { xi: take(&mut kv, name, "xi")? },
            "osg" => FadingModel::OneSidedGaussian,
            "logn" => FadingModel::Lognormal { sigma_db: take(&mut kv, name, "sigma_db")? },
            "egk" => FadingModel::Egk {
                m: take(&mut kv, name, "m")?,
                xi: take(&mut kv, name, "xi")?,
                m_s: take(&mut kv, name, "ms")?,
                xi_s: take(&mut kv, name, "xis")?,
            },
            "kmu" => FadingModel::KappaMu { kappa: take(&mut kv, name, "kappa")?, mu: take(&mut kv, name, "mu")? },
            "emu" => {
                let format = kv.remove("format").unwrap_or(1.0);
                if format != 1.0 && format != 2.0 {
                    return Err(Error::Parse(format!("emu format must be 1 or 2, got {format}")));
                }
                FadingModel::EtaMu { eta: take(&mut kv, name, "eta")?, mu: take(&mut kv, name, "mu")?, format: format as u8 }
            }
            "awgn" => FadingModel::Awgn,
            other => return Err(Error::Parse(format!("unknown model '{other}'"))),
        };
        if !kv.is_empty() {
            let extra: Vec<_> = kv.keys().cloned().collect();
            return Err(Error::Parse(format!("unknown keys for {name}: {}", extra.join(", "))));
        }
        model.validate()?;
        Ok(model)
    }
}
