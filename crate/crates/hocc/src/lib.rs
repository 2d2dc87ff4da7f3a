//! Exact and asymptotic higher-order statistics of channel capacity over
//! generalized fading channels.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod fading;
pub mod oracle;
pub mod regime;
pub mod snr;
pub mod specfun;
pub mod statistics;

pub use error::{Error, Result};
pub use fading::FadingModel;
pub use snr::{MeanSnr, SnrGrid};
