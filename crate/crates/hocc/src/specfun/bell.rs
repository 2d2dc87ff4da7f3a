//! Complete Bell polynomials and the Faa di Bruno forms of the higher
//! derivatives of Gamma(a + b k) and exp(a + b k^2).

use super::gamma::{gamma, ln_gamma, polygamma};
use crate::error::{Error, Result};

/// Complete Bell polynomial B_n(g_1, ..., g_n); n = g.len().
///
/// B_{n+1} = sum_{i=0}^{n} C(n, i) B_{n-i} g_{i+1}, B_0 = 1.
pub fn complete_bell(g: &[f64]) -> f64 {
    let n = g.len();
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    for m in 0..n {
        let mut acc = 0.0;
        let mut binom = 1.0; // C(m, i)
        for i in 0..=m {
            acc += binom * b[m - i] * g[i];
            binom *= (m - i) as f64 / (i as f64 + 1.0);
        }
        b[m + 1] = acc;
    }
    b[n]
}

/// nth derivative of Gamma(a + b k) with respect to k:
/// b^n Gamma(x) B_n(psi_0(x), ..., psi_{n-1}(x)), x = a + b k.
pub fn psi_n(n: usize, a: f64, b: f64, k: f64) -> Result<f64> {
    let x = a + b * k;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("psi_n requires a + b k > 0, got {x}")));
    }
    if n == 0 {
        return gamma(x);
    }
    let g: Vec<f64> = (0..n).map(|i| polygamma(i, x)).collect::<Result<_>>()?;
    Ok(b.powi(n as i32) * ln_gamma(x)?.exp() * complete_bell(&g))
}

/// nth derivative of exp(a + b k^2) with respect to k:
/// exp(a + b k^2) B_n(2bk, 2b, 0, ..., 0).
pub fn phi_n(n: usize, a: f64, b: f64, k: f64) -> f64 {
    let e = (a + b * k * k).exp();
    if n == 0 {
        return e;
    }
    let mut g = vec![0.0; n];
    g[0] = 2.0 * b * k;
    if n >= 2 {
        g[1] = 2.0 * b;
    }
    e * complete_bell(&g)
}
