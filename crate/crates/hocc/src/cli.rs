//! Batch front end: model-spec parsing, SNR sweeps to CSV, regime reports,
//! and a self-check suite.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::asymptotics::{hocc_high, hocc_low, jensen_high, HoccResult, Method};
use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::oracle::{hocc_monte_carlo, hocc_quadrature, McConfig, QuadratureConfig};
use crate::regime::{
    high_onset, regime_report, supremum_boundary, BOUNDARY_INFIMUM, BOUNDARY_SUPREMUM,
    DEFAULT_GAMMA_TH,
};
use crate::snr::{MeanSnr, SnrGrid};
use crate::statistics::{aof, mu_coeffs, mu_coeffs_closed, mu_coeffs_gl, AuxCoefficients};
use crate::specfun::GlConfig;

#[derive(Parser, Debug)]
#[command(name = "hocc", about = "Higher-order channel-capacity statistics over fading channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep an SNR grid and emit a CSV curve per requested method.
    Curve(CommonArgs),
    /// Report the SNR-regime boundaries and the boundary-objective scan.
    Boundary(CommonArgs),
    /// Run the invariant self-check suite; exit 0 iff every check passes.
    Validate(CommonArgs),
}

/// Raw flags; every field is optional so a config file can supply it.
#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// Model spec, `name:key=val,...` (e.g. `gnak:m=2.5,xi=0.7`); names:
    /// gnak, nak, ray, wei, osg, logn, egk, kmu, emu, awgn.
    #[arg(long)]
    pub model: Option<String>,
    /// Statistic order n in E[log^n(1+gamma)].
    #[arg(long)]
    pub order: Option<usize>,
    /// SNR sweep range in dB, `START:STOP`.
    #[arg(long, value_name = "START:STOP", allow_hyphen_values = true)]
    pub snr_db: Option<String>,
    /// Number of grid points across the sweep.
    #[arg(long)]
    pub points: Option<usize>,
    /// Comma-separated methods from {quadrature, mc, high, low, jensen}.
    #[arg(long)]
    pub methods: Option<String>,
    /// Monte Carlo sample budget.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Monte Carlo seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Quadrature relative tolerance.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Four positive boundary-objective weights summing to 1, comma-separated.
    #[arg(long)]
    pub weights: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plain `key = value` config file mirroring the flags; flags override.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved run parameters (flags over config file over defaults).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: FadingModel,
    pub order: usize,
    pub snr_db: (f64, f64),
    pub points: usize,
    pub methods: Vec<Method>,
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
    pub weights: [f64; 4],
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => parse_config_file(path)?,
            None => BTreeMap::new(),
        };
        let pick = |flag: &Option<String>, key: &str| -> Option<String> {
            flag.clone().or_else(|| file.get(key).cloned())
        };
        let model_spec = pick(&args.model, "model").unwrap_or_else(|| "ray".into());
        let model = FadingModel::from_str(&model_spec)?;
        model.validate()?;
        let order = match args.order {
            Some(n) => n,
            None => parse_opt(&file, "order", 1)?,
        };
        if order == 0 || order > 8 {
            return Err(Error::Parse(format!("order must be in 1..=8, got {order}")));
        }
        let snr_db = parse_range(&pick(&args.snr_db, "snr-db").unwrap_or_else(|| "0:40".into()))?;
        let points = match args.points {
            Some(p) => p,
            None => parse_opt(&file, "points", 41)?,
        };
        let methods =
            parse_methods(&pick(&args.methods, "methods").unwrap_or_else(|| "quadrature,high".into()))?;
        let samples = match args.samples {
            Some(s) => s,
            None => parse_opt(&file, "samples", 1_000_000)?,
        };
        let seed = match args.seed {
            Some(s) => s,
            None => parse_opt(&file, "seed", 0)?,
        };
        let eps = match args.eps {
            Some(e) => e,
            None => parse_opt(&file, "eps", 1e-8)?,
        };
        let weights = parse_weights(
            &pick(&args.weights, "weights").unwrap_or_else(|| "0.25,0.25,0.25,0.25".into()),
        )?;
        let out = args.out.clone().or_else(|| file.get("out").map(PathBuf::from));
        Ok(Self { model, order, snr_db, points, methods, samples, seed, eps, weights, out })
    }

    fn quad(&self) -> Result<QuadratureConfig> {
        QuadratureConfig::new(self.eps, 2000)
    }

    fn mc(&self) -> Result<McConfig> {
        McConfig::new(self.samples, self.seed)
    }
}

// `key = value` per line; `#` starts a comment; errors carry line numbers.
fn parse_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(Error::Parse(format!(
                "{}:{}: expected `key = value`, got `{raw}`",
                path.display(),
                i + 1
            )));
        };
        let key = line[..eq].trim().to_string();
        let val = line[eq + 1..].trim().to_string();
        if key.is_empty() || val.is_empty() {
            return Err(Error::Parse(format!(
                "{}:{}: empty key or value in `{raw}`",
                path.display(),
                i + 1
            )));
        }
        map.insert(key, val);
    }
    Ok(map)
}

fn parse_opt<T: FromStr>(file: &BTreeMap<String, String>, key: &str, default: T) -> Result<T> {
    match file.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::Parse(format!("config key `{key}`: cannot parse `{v}`"))),
    }
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let Some(col) = s.find(':') else {
        return Err(Error::Parse(format!("snr-db `{s}`: expected START:STOP (no `:` found)")));
    };
    let start: f64 = s[..col]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("snr-db `{s}`: bad START before column {col}")))?;
    let stop: f64 = s[col + 1..]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("snr-db `{s}`: bad STOP after column {col}")))?;
    Ok((start, stop))
}

fn parse_methods(s: &str) -> Result<Vec<Method>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let m = match part.trim() {
            "quadrature" => Method::Quadrature,
            "mc" => Method::MonteCarlo,
            "high" => Method::HighAsymptote,
            "low" => Method::LowAsymptote,
            "jensen" => Method::Jensen,
            other => {
                return Err(Error::Parse(format!(
                    "unknown method `{other}`; expected quadrature, mc, high, low or jensen"
                )))
            }
        };
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("methods list is empty".into()));
    }
    Ok(out)
}

fn parse_weights(s: &str) -> Result<[f64; 4]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad weight `{p}`"))))
        .collect::<Result<_>>()?;
    let w: [f64; 4] = parts
        .try_into()
        .map_err(|v: Vec<f64>| Error::Parse(format!("need 4 weights, got {}", v.len())))?;
    Ok(w)
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// Coefficients for the high asymptote, with a stderr note when the model has
// no closed form and the numeric stencil stands in.
fn high_coeffs(model: &FadingModel, order: usize) -> Result<AuxCoefficients> {
    match mu_coeffs_closed(model, order) {
        Err(Error::Unsupported(_)) => {
            eprintln!("note: no closed-form mu coefficients for {model}; using the numeric stencil");
            mu_coeffs_gl(model, order, &GlConfig::default())
        }
        other => other,
    }
}

/// SNR sweep to CSV with header `snr_db,method,order,value,err`.
pub fn cmd_curve(cfg: &RunConfig) -> Result<()> {
    let grid = SnrGrid::linspace_db(cfg.snr_db.0, cfg.snr_db.1, cfg.points)?;
    let qc = cfg.quad()?;
    let mc = cfg.mc()?;
    let coeffs = if cfg.methods.contains(&Method::HighAsymptote) {
        Some(high_coeffs(&cfg.model, cfg.order)?)
    } else {
        None
    };
    let blocks: Vec<String> = grid
        .as_slice()
        .par_iter()
        .map(|&mean| -> Result<String> {
            let mut block = String::new();
            for &method in &cfg.methods {
                let r: HoccResult = match method {
                    Method::Quadrature => hocc_quadrature(&cfg.model, cfg.order, mean, &qc)?,
                    Method::MonteCarlo => hocc_monte_carlo(&cfg.model, cfg.order, mean, &mc)?,
                    Method::HighAsymptote => {
                        hocc_high(&cfg.model, cfg.order, mean, coeffs.as_ref().unwrap())?
                    }
                    Method::LowAsymptote => hocc_low(&cfg.model, cfg.order, mean)?,
                    Method::Jensen => jensen_high(cfg.order, mean),
                };
                block.push_str(&format!(
                    "{},{},{},{},{}\n",
                    mean.db(),
                    method.label(),
                    cfg.order,
                    r.value,
                    r.err
                ));
            }
            Ok(block)
        })
        .collect::<Result<_>>()?;
    let mut csv = String::from("snr_db,method,order,value,err\n");
    for b in blocks {
        csv.push_str(&b);
    }
    write_output(&cfg.out, &csv)
}

/// Regime boundaries as text plus the objective scan as CSV.
pub fn cmd_boundary(cfg: &RunConfig) -> Result<()> {
    let qc = cfg.quad()?;
    let report = regime_report(&cfg.model, &cfg.weights, &qc)?;
    let mut text = String::new();
    text.push_str(&format!("model: {}\n", cfg.model));
    text.push_str(&format!(
        "high_onset_db: {} (outage 0.5 at threshold {})\n",
        report.high_onset_snr.db(),
        DEFAULT_GAMMA_TH
    ));
    text.push_str(&format!("high_onset_linear: {}\n", report.high_onset_snr.linear()));
    text.push_str(&format!("low_boundary_linear: {}\n", report.low_boundary_snr.linear()));
    text.push_str(&format!("low_boundary_db: {}\n", report.low_boundary_snr.db()));
    text.push_str(&format!("boundary_infimum: {BOUNDARY_INFIMUM}\n"));
    text.push_str(&format!("boundary_supremum: {BOUNDARY_SUPREMUM}\n"));
    let mut csv = String::from("snr_linear,objective\n");
    for (g, v) in &report.delta_curve {
        csv.push_str(&format!("{g},{v}\n"));
    }
    print!("{text}");
    match &cfg.out {
        Some(_) => write_output(&cfg.out, &csv),
        None => {
            println!();
            print!("{csv}");
            Ok(())
        }
    }
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, result: Result<(bool, String)>) -> Check {
    match result {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check { name, pass: false, detail: format!("error: {e}") },
    }
}

fn validate_models() -> Vec<FadingModel> {
    vec![
        FadingModel::Rayleigh,
        FadingModel::Nakagami { m: 2.0 },
        FadingModel::GeneralizedNakagami { m: 2.5, xi: 0.7 },
        FadingModel::Weibull { xi: 2.0 },
        FadingModel::OneSidedGaussian,
        FadingModel::Lognormal { sigma_db: 6.0 },
        FadingModel::Egk { m: 2.0, xi: 1.5, m_s: 1.5, xi_s: 1.0 },
        FadingModel::KappaMu { kappa: 1.0, mu: 2.0 },
        FadingModel::EtaMu { eta: 0.5, mu: 1.5, format: 1 },
    ]
}

/// Invariant suite: prints one PASS/FAIL line per check, Ok(true) iff all pass.
pub fn cmd_validate(cfg: &RunConfig) -> Result<bool> {
    let qc = cfg.quad()?;
    let mc = cfg.mc()?;
    let models = validate_models();
    let mut checks = Vec::new();

    checks.push(check("first-order fading amount vanishes", {
        let worst = models
            .iter()
            .map(|m| aof(m, 1.0).map(f64::abs))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().fold(0.0, f64::max));
        worst.map(|w| (w < 1e-9, format!("max |AF_1| = {w:.2e}")))
    }));

    checks.push(check("tail mass vanishes (CDF -> 1)", {
        let mean = MeanSnr::from_db(0.0)?;
        models
            .iter()
            .map(|m| m.cdf(1e8, mean))
            .collect::<Result<Vec<_>>>()
            .map(|v| {
                let worst = v.into_iter().map(|p| (1.0 - p).abs()).fold(0.0, f64::max);
                (worst < 1e-6, format!("max |1 - F(1e8)| = {worst:.2e}"))
            })
    }));

    checks.push(check("closed coefficients match the numeric stencil", {
        let gl_cfg = GlConfig::default();
        let run = || -> Result<(bool, String)> {
            let mut worst = 0.0f64;
            for m in &models {
                let closed = match mu_coeffs_closed(m, 4) {
                    Err(Error::Unsupported(_)) => continue,
                    c => c?,
                };
                let gl = mu_coeffs_gl(m, 4, &gl_cfg)?;
                for k in 0..=4 {
                    let c = closed.get(k)?;
                    let g = gl.get(k)?;
                    worst = worst.max((c - g).abs() / c.abs().max(1.0));
                }
            }
            Ok((worst < 1e-2, format!("max scaled deviation = {worst:.2e}")))
        };
        run()
    }));

    checks.push(check("Monte Carlo agrees with quadrature", {
        let run = || -> Result<(bool, String)> {
            let mut worst = 0.0f64;
            for m in &models {
                for &db in &[0.0, 20.0] {
                    let mean = MeanSnr::from_db(db)?;
                    for n in 1..=2usize {
                        let q = hocc_quadrature(m, n, mean, &qc)?.value;
                        let e = hocc_monte_carlo(m, n, mean, &mc)?;
                        worst = worst.max((e.value - q).abs() / (4.0 * e.err + 1e-12));
                    }
                }
            }
            Ok((worst < 1.0, format!("max |mc - quad| / 4se = {worst:.2}")))
        };
        run()
    }));

    checks.push(check("low-SNR bound sits above the exact statistic", {
        let mean = MeanSnr::from_db(-30.0)?;
        let run = || -> Result<(bool, String)> {
            let mut worst = f64::NEG_INFINITY;
            for m in &models {
                for n in 1..=2usize {
                    let q = hocc_quadrature(m, n, mean, &qc)?.value;
                    let low = hocc_low(m, n, mean)?.value;
                    worst = worst.max(q - low * (1.0 + 1e-9));
                }
            }
            Ok((worst <= 0.0, format!("max (exact - bound) = {worst:.2e}")))
        };
        run()
    }));

    checks.push(check("high-SNR asymptote is tight at 40 dB", {
        let mean = MeanSnr::from_db(40.0)?;
        let run = || -> Result<(bool, String)> {
            let mut worst = 0.0f64;
            for m in &models {
                for n in 1..=2usize {
                    let coeffs = mu_coeffs(m, n)?;
                    let q = hocc_quadrature(m, n, mean, &qc)?.value;
                    let h = hocc_high(m, n, mean, &coeffs)?.value;
                    worst = worst.max((q - h).abs() / q);
                }
            }
            // one-sided Gaussian converges like 1/sqrt(mean), the slowest of
            // the family; 1e-2 covers it at 40 dB with margin
            Ok((worst < 1e-2, format!("max relative gap = {worst:.2e}")))
        };
        run()
    }));

    checks.push(check("first-order asymptote stays below the exact value", {
        let mean = MeanSnr::from_db(40.0)?;
        let run = || -> Result<(bool, String)> {
            let mut worst = f64::NEG_INFINITY;
            for m in &models {
                let coeffs = mu_coeffs(m, 1)?;
                let q = hocc_quadrature(m, 1, mean, &qc)?.value;
                let h = hocc_high(m, 1, mean, &coeffs)?.value;
                worst = worst.max(h - q * (1.0 + 1e-9));
            }
            Ok((worst <= 0.0, format!("max (asymptote - exact) = {worst:.2e}")))
        };
        run()
    }));

    checks.push(check("regime boundary constants", {
        let run = || -> Result<(bool, String)> {
            let s = supremum_boundary().linear();
            let e1 = (s - (std::f64::consts::E - 1.0)).abs();
            let onset = high_onset(&FadingModel::Rayleigh, DEFAULT_GAMMA_TH, 0.5)?.linear();
            let e2 = (onset - DEFAULT_GAMMA_TH / 2f64.ln()).abs();
            let osg = high_onset(&FadingModel::OneSidedGaussian, DEFAULT_GAMMA_TH, 0.5)?.linear();
            let e3 = (osg - 17.5848747065).abs();
            let worst = e1.max(e2).max(e3);
            Ok((worst < 1e-6, format!("max deviation = {worst:.2e}")))
        };
        run()
    }));

    let mut all = true;
    for c in &checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        println!("{tag}  {}  ({})", c.name, c.detail);
        all &= c.pass;
    }
    println!("{}", if all { "all checks passed" } else { "some checks FAILED" });
    Ok(all)
}

/// Dispatch; returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Curve(args) => {
            cmd_curve(&RunConfig::resolve(args)?)?;
            Ok(0)
        }
        Command::Boundary(args) => {
            cmd_boundary(&RunConfig::resolve(args)?)?;
            Ok(0)
        }
        Command::Validate(args) => {
            let ok = cmd_validate(&RunConfig::resolve(args)?)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}
