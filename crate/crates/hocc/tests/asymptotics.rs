use hocc::asymptotics::{
    acc_high, capacity_gap, hocc_high, hocc_low, jensen_high, vertical_offset, Method,
};
use hocc::specfun::{digamma, ln_gamma, EULER_GAMMA};
use hocc::statistics::mu_coeffs;
use hocc::{Error, FadingModel, MeanSnr};

fn models() -> Vec<FadingModel> {
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

#[test]
fn first_order_high_asymptote_reduces_to_acc() {
    let mean = MeanSnr::from_db(20.0).unwrap();
    for model in models() {
        let coeffs = mu_coeffs(&model, 1).unwrap();
        let a = hocc_high(&model, 1, mean, &coeffs).unwrap().value;
        let b = acc_high(&model, mean).unwrap().value;
        assert!((a - b).abs() < 1e-12, "{model}");
    }
}

#[test]
fn rayleigh_high_snr_acc_reference() {
    let mean = MeanSnr::from_db(40.0).unwrap();
    let v = acc_high(&FadingModel::Rayleigh, mean).unwrap().value;
    assert!((v - (1e4f64.ln() - EULER_GAMMA)).abs() < 1e-10);
}

#[test]
fn acc_shortcuts_per_model() {
    let mean = MeanSnr::from_linear(100.0).unwrap();
    let l = 100f64.ln();

    // generalized Nakagami: ln(mean) - ln(beta) + psi0(m)/xi
    let (m, xi) = (2.5, 0.7);
    let beta = (ln_gamma(m + 1.0 / xi).unwrap() - ln_gamma(m).unwrap()).exp();
    let expect = l - beta.ln() + digamma(m).unwrap() / xi;
    let got = acc_high(&FadingModel::GeneralizedNakagami { m, xi }, mean).unwrap().value;
    assert!((got - expect).abs() < 1e-10);

    // Weibull: ln(mean) - ln Gamma(1 + 1/xi) - E/xi
    let xi = 2.0;
    let expect = l - ln_gamma(1.0 + 1.0 / xi).unwrap() - EULER_GAMMA / xi;
    let got = acc_high(&FadingModel::Weibull { xi }, mean).unwrap().value;
    assert!((got - expect).abs() < 1e-10);

    // Nakagami(3): ln(mean) - ln 3 + (1 + 1/2 - E), the harmonic-sum form
    let expect = l - 3f64.ln() + 1.0 + 0.5 - EULER_GAMMA;
    let got = acc_high(&FadingModel::Nakagami { m: 3.0 }, mean).unwrap().value;
    assert!((got - expect).abs() < 1e-10);

    // lognormal: ln(mean) - sigma^2/(2 kappa^2)
    let kappa = 10.0 / 10f64.ln();
    let expect = l - 36.0 / (2.0 * kappa * kappa);
    let got = acc_high(&FadingModel::Lognormal { sigma_db: 6.0 }, mean).unwrap().value;
    assert!((got - expect).abs() < 1e-10);

    // EGK: ln(mean) - ln(beta beta_s) + psi0(m)/xi + psi0(m_s)/xi_s
    let (m, xi, m_s, xi_s) = (2.0, 1.5, 1.5, 1.0);
    let beta = (ln_gamma(m + 1.0 / xi).unwrap() - ln_gamma(m).unwrap()).exp();
    let beta_s = (ln_gamma(m_s + 1.0 / xi_s).unwrap() - ln_gamma(m_s).unwrap()).exp();
    let expect = l - (beta * beta_s).ln()
        + digamma(m).unwrap() / xi
        + digamma(m_s).unwrap() / xi_s;
    let got = acc_high(&FadingModel::Egk { m, xi, m_s, xi_s }, mean).unwrap().value;
    assert!((got - expect).abs() < 1e-10);
}

#[test]
fn near_deterministic_channel_approaches_jensen() {
    let mean = MeanSnr::from_db(30.0).unwrap();
    let model = FadingModel::Nakagami { m: 500.0 };
    for n in 1..=2usize {
        let coeffs = mu_coeffs(&model, n).unwrap();
        let high = hocc_high(&model, n, mean, &coeffs).unwrap().value;
        let jensen = jensen_high(n, mean).value;
        assert!((high - jensen).abs() / jensen < 0.01, "n={n}: {high} vs {jensen}");
    }
}

#[test]
fn low_bound_first_order_is_the_mean() {
    let mean = MeanSnr::from_linear(0.02).unwrap();
    for model in models() {
        let v = hocc_low(&model, 1, mean).unwrap();
        assert!((v.value - 0.02).abs() < 1e-11, "{model}");
        assert_eq!(v.method, Method::LowAsymptote);
    }
}

#[test]
fn rayleigh_low_bound_second_order() {
    let mean = MeanSnr::from_linear(0.01).unwrap();
    let v = hocc_low(&FadingModel::Rayleigh, 2, mean).unwrap().value;
    assert!((v - 2e-4).abs() < 1e-16);
}

#[test]
fn eta_mu_low_bound_exercises_the_hypergeometric_identity() {
    let mean = MeanSnr::from_linear(0.5).unwrap();
    let model = FadingModel::EtaMu { eta: 0.5, mu: 1.5, format: 1 };
    let v = hocc_low(&model, 1, mean).unwrap().value;
    assert!((v - 0.5).abs() < 1e-9);
}

#[test]
fn jensen_values() {
    assert_eq!(jensen_high(3, MeanSnr::from_linear(1.0).unwrap()).value, 0.0);
    let e2 = MeanSnr::from_linear(std::f64::consts::E.powi(2)).unwrap();
    assert!((jensen_high(2, e2).value - 4.0).abs() < 1e-12);
    assert!((jensen_high(4, e2).value - 16.0).abs() < 1e-11);
}

#[test]
fn vertical_offset_is_mean_independent_and_matches_euler_for_rayleigh() {
    let off = vertical_offset(&FadingModel::Rayleigh).unwrap();
    assert!((off - EULER_GAMMA).abs() < 1e-12);
    // mean never enters: the offset is -mu_1 by construction
    let m30 = MeanSnr::from_db(30.0).unwrap();
    let m50 = MeanSnr::from_db(50.0).unwrap();
    let gap = |mean: MeanSnr| {
        let j = jensen_high(1, mean).value;
        j - (acc_high(&FadingModel::Rayleigh, mean).unwrap().value)
    };
    assert!((gap(m30) - gap(m50)).abs() < 1e-12);
    assert!((gap(m30) - off).abs() < 1e-12);
}

#[test]
fn capacity_gap_vanishes_for_the_deterministic_channel() {
    let mean = MeanSnr::from_db(30.0).unwrap();
    let g = capacity_gap(&FadingModel::Awgn, 1, mean).unwrap();
    assert!(g.abs() < 1e-6, "gap {g}");
}

#[test]
fn insufficient_coefficients_are_reported() {
    let mean = MeanSnr::from_db(20.0).unwrap();
    let coeffs = mu_coeffs(&FadingModel::Rayleigh, 2).unwrap();
    assert!(matches!(
        hocc_high(&FadingModel::Rayleigh, 3, mean, &coeffs),
        Err(Error::InsufficientCoefficients { .. })
    ));
    assert!(matches!(
        hocc_high(&FadingModel::Nakagami { m: 2.0 }, 2, mean, &coeffs),
        Err(Error::Domain(_))
    ));
}
