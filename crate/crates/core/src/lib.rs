//! Asymptotic secret-key rates for Gaussian-modulated coherent-state CV-QKD
//! with reverse reconciliation, where receiver and preparation noise may be
//! trusted.
//!
//! [`keyrate::evaluate`] is the usual entry point. [`cloner`] has the
//! closed-form Holevo bound, [`purification`] an independent reference for
//! it, and [`optimizer`] the searches over modulation and receiver
//! transmittance. The guide in `book/` covers the model.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gaussian;
pub mod scalar;

pub use error::{Error, Result};
pub mod params;
pub mod cloner;
pub mod purification;
pub mod keyrate;
pub mod optimizer;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/trust.md")]
    mod trust {}
    #[doc = include_str!("../../../book/src/cloner.md")]
    mod cloner {}
    #[doc = include_str!("../../../book/src/purification.md")]
    mod purification {}
    #[doc = include_str!("../../../book/src/key-rate.md")]
    mod key_rate {}
    #[doc = include_str!("../../../book/src/optimization.md")]
    mod optimization {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/configuration.md")]
    mod configuration {}
}
