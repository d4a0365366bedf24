//! Signal-to-noise ratio, mutual information and the asymptotic key rate for
//! reverse reconciliation.

use serde::Serialize;

use crate::cloner::holevo_bound;
use crate::error::Result;
use crate::params::{LinkParams, ProtocolParams};

/// Everything reported for one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateResult {
    pub snr: f64,
    /// `I_AB` in bits per symbol.
    pub i_ab: f64,
    /// `χ_EB` in bits per symbol.
    pub chi_eb: f64,
    /// `r = β·I_AB − χ_EB`, signed.
    pub secret_fraction: f64,
    /// `K` in bits per second, present only when a symbol rate is given.
    pub key_rate: Option<f64>,
    /// `ν₁, ν₂` (before Bob's measurement) and `ν₃, ν₄` (after).
    pub eigs: [f64; 4],
}

/// `T_tot·V_mod / (μ + ξ_tot)`.
pub fn snr(p: &LinkParams) -> Result<f64> {
    p.validate()?;
    Ok(p.t_tot() * p.v_mod / (p.detection.mu() + p.xi_tot()))
}

/// `(μ/2)·log₂(1 + SNR)`.
pub fn mutual_information(p: &LinkParams) -> Result<f64> {
    Ok(0.5 * p.detection.mu() * (1.0 + snr(p)?).log2())
}

/// `f_sym·(1 − FER)·(1 − ν)·max(r, 0)`, or `None` without a symbol rate.
pub fn key_rate(proto: &ProtocolParams, secret_fraction: f64) -> Option<f64> {
    proto
        .f_sym
        .map(|f| f * (1.0 - proto.fer) * (1.0 - proto.disclosed_fraction) * secret_fraction.max(0.0))
}

pub fn evaluate(p: &LinkParams, proto: &ProtocolParams) -> Result<RateResult> {
    proto.validate()?;
    let snr = snr(p)?;
    let i_ab = mutual_information(p)?;
    let holevo = holevo_bound(p)?;
    let secret_fraction = proto.beta * i_ab - holevo.chi_eb;
    let e = holevo.entropies;
    Ok(RateResult {
        snr,
        i_ab,
        chi_eb: holevo.chi_eb,
        secret_fraction,
        key_rate: key_rate(proto, secret_fraction),
        eigs: [e.nu_pre.0, e.nu_pre.1, e.nu_post.0, e.nu_post.1],
    })
}
