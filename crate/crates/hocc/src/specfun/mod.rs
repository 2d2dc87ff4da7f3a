//! Special-function kernel: gamma family, error functions, Bessel I,
//! generalized hypergeometric series with parameter derivatives, Bell
//! polynomials, numerical differentiation, adaptive quadrature, and the
//! extended incomplete gamma function.

pub mod bell;
pub mod bessel;
pub mod erf;
pub mod ext_gamma;
pub mod gamma;
pub mod gl;
pub mod pfq;
pub mod quad;

pub use bell::{complete_bell, phi_n, psi_n};
pub use bessel::{bessel_i, bessel_i_scaled, ln_bessel_ratio};
pub use erf::{erf, erf_inv};
pub use ext_gamma::ext_inc_gamma;
pub use gamma::{digamma, gamma, gamma_p, ln_gamma, polygamma, EULER_GAMMA};
pub use gl::{gl_derivative, GlConfig};
pub use pfq::{hod_pfq, pfq, SeriesConfig};
pub use quad::{adaptive_quadrature, semi_infinite_quadrature, Quad};
