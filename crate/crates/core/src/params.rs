//! Physical and post-processing parameters of one link.
//!
//! All noise figures are in shot-noise units. Channel noise is referred to
//! the channel output, so Bob's measured quadrature variance is
//! `T_tot·(V − 1) + 1 + ξ_tot` with `T_tot = T_ch·T_rec` and
//! `ξ_tot = T_tot·ξ_pr + T_rec·ξ_ch + ξ_rec`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Transmittances are capped here before a noise source is attached, since
/// `W = ξ/(1 − T) + 1` diverges at `T = 1`.
pub const MAX_NOISY_TRANSMITTANCE: f64 = 1.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detection {
    #[serde(alias = "hom")]
    Homodyne,
    #[serde(alias = "het")]
    Heterodyne,
}

impl Detection {
    /// `μ`: 1 for homodyne, 2 for heterodyne.
    pub fn mu(self) -> f64 {
        match self {
            Detection::Homodyne => 1.0,
            Detection::Heterodyne => 2.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Detection::Homodyne => "homodyne",
            Detection::Heterodyne => "heterodyne",
        }
    }
}

/// Which noise and loss sources are excluded from Eve's control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trust {
    UntrustedAll,
    TrustedReceiver,
    TrustedReceiverAndPreparation,
}

impl Trust {
    pub const ALL: [Trust; 3] = [
        Trust::UntrustedAll,
        Trust::TrustedReceiver,
        Trust::TrustedReceiverAndPreparation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Trust::UntrustedAll => "untrusted_all",
            Trust::TrustedReceiver => "trusted_receiver",
            Trust::TrustedReceiverAndPreparation => "trusted_receiver_and_preparation",
        }
    }

    pub fn receiver_trusted(self) -> bool {
        !matches!(self, Trust::UntrustedAll)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkParams {
    /// Modulation variance `V_mod`; the EPR variance is `V = V_mod + 1`.
    pub v_mod: f64,
    /// Preparation noise at Alice.
    pub xi_pr: f64,
    /// Channel transmittance.
    pub t_ch: f64,
    /// Channel excess noise, referred to the channel output.
    pub xi_ch: f64,
    /// Receiver transmittance (detection and coupling efficiency).
    pub t_rec: f64,
    /// Receiver noise.
    pub xi_rec: f64,
    pub detection: Detection,
    pub trust: Trust,
}

fn check_nonneg(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(name, x, "must be finite and non-negative"))
    }
}

fn check_transmittance(name: &'static str, t: f64) -> Result<()> {
    if t > 0.0 && t <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(name, t, "must lie in (0, 1]"))
    }
}

impl LinkParams {
    /// A lossless, noiseless link with the given modulation.
    pub fn perfect(v_mod: f64, detection: Detection, trust: Trust) -> Self {
        LinkParams {
            v_mod,
            xi_pr: 0.0,
            t_ch: 1.0,
            xi_ch: 0.0,
            t_rec: 1.0,
            xi_rec: 0.0,
            detection,
            trust,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_nonneg("v_mod", self.v_mod)?;
        check_nonneg("xi_pr", self.xi_pr)?;
        check_nonneg("xi_ch", self.xi_ch)?;
        check_nonneg("xi_rec", self.xi_rec)?;
        check_transmittance("t_ch", self.t_ch)?;
        check_transmittance("t_rec", self.t_rec)?;
        Ok(())
    }

    /// `V = V_mod + 1`.
    pub fn v(&self) -> f64 {
        self.v_mod + 1.0
    }

    /// Channel transmittance as used by the model: capped below one when
    /// the channel has to inject noise credited to Eve.
    pub fn t_ch_eff(&self) -> f64 {
        let eve_noise = match self.trust {
            Trust::TrustedReceiverAndPreparation => self.xi_ch,
            _ => self.xi_ch + self.t_ch * self.xi_pr,
        };
        noisy_transmittance(self.t_ch, eve_noise)
    }

    /// Receiver transmittance as used by the model.
    pub fn t_rec_eff(&self) -> f64 {
        noisy_transmittance(self.t_rec, self.xi_rec)
    }

    pub fn t_tot(&self) -> f64 {
        self.t_ch_eff() * self.t_rec_eff()
    }

    /// Total excess noise at Bob, `T_tot·ξ_pr + T_rec·ξ_ch + ξ_rec`.
    pub fn xi_tot(&self) -> f64 {
        self.t_tot() * self.xi_pr + self.t_rec_eff() * self.xi_ch + self.xi_rec
    }

    /// Bob's quadrature variance `T_tot·(V − 1) + 1 + ξ_tot`.
    pub fn bob_variance(&self) -> f64 {
        self.t_tot() * self.v_mod + 1.0 + self.xi_tot()
    }

    pub fn with_v_mod(mut self, v_mod: f64) -> Self {
        self.v_mod = v_mod;
        self
    }

    pub fn with_t_rec(mut self, t_rec: f64) -> Self {
        self.t_rec = t_rec;
        self
    }

    pub fn with_trust(mut self, trust: Trust) -> Self {
        self.trust = trust;
        self
    }

    pub fn with_detection(mut self, detection: Detection) -> Self {
        self.detection = detection;
        self
    }
}

/// The link as Eve's attack model sees it: which transmittance and noise she
/// is credited with, and which stay inside the trusted receiver.
///
/// Untrusted sources are folded into the channel. With everything
/// untrusted the receiver disappears into it entirely
/// (`T_ch ← T_tot`, `ξ_ch ← ξ_tot`). Untrusted preparation noise enters
/// the channel as `ξ_ch ← ξ_ch + T_ch·ξ_pr`. Trusted preparation noise is
/// absorbed into the EPR variance, `V ← V + ξ_pr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EveView {
    pub v: f64,
    pub t_ch: f64,
    pub xi_ch: f64,
    pub t_rec: f64,
    pub xi_rec: f64,
}

impl EveView {
    /// Bob's quadrature variance, `T_ch·T_rec·(V − 1) + 1 + T_rec·ξ_ch + ξ_rec`.
    pub fn bob_variance(&self) -> f64 {
        self.t_ch * self.t_rec * (self.v - 1.0) + 1.0 + self.t_rec * self.xi_ch + self.xi_rec
    }
}

impl LinkParams {
    pub fn eve_view(&self) -> EveView {
        match self.trust {
            Trust::UntrustedAll => EveView {
                v: self.v(),
                t_ch: self.t_tot(),
                xi_ch: self.xi_tot(),
                t_rec: 1.0,
                xi_rec: 0.0,
            },
            Trust::TrustedReceiver => EveView {
                v: self.v(),
                t_ch: self.t_ch_eff(),
                xi_ch: self.xi_ch + self.t_ch_eff() * self.xi_pr,
                t_rec: self.t_rec_eff(),
                xi_rec: self.xi_rec,
            },
            Trust::TrustedReceiverAndPreparation => EveView {
                v: self.v() + self.xi_pr,
                t_ch: self.t_ch_eff(),
                xi_ch: self.xi_ch,
                t_rec: self.t_rec_eff(),
                xi_rec: self.xi_rec,
            },
        }
    }
}

pub(crate) fn noisy_transmittance(t: f64, xi: f64) -> f64 {
    if xi > 0.0 {
        t.min(MAX_NOISY_TRANSMITTANCE)
    } else {
        t
    }
}

/// Error-correction and framing parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams {
    /// Reconciliation efficiency `β`.
    pub beta: f64,
    /// Frame error rate.
    pub fer: f64,
    /// Fraction of the raw key disclosed for parameter estimation.
    pub disclosed_fraction: f64,
    /// Symbol rate in symbols per second. Without it only bits per symbol
    /// are reported.
    pub f_sym: Option<f64>,
}

impl ProtocolParams {
    /// Zero frame errors, nothing disclosed, no symbol rate.
    pub fn new(beta: f64) -> Self {
        ProtocolParams {
            beta,
            fer: 0.0,
            disclosed_fraction: 0.0,
            f_sym: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::domain("beta", self.beta, "must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.fer) {
            return Err(Error::domain("fer", self.fer, "must lie in [0, 1]"));
        }
        if !(0.0..1.0).contains(&self.disclosed_fraction) {
            return Err(Error::domain(
                "disclosed_fraction",
                self.disclosed_fraction,
                "must lie in [0, 1)",
            ));
        }
        if let Some(f) = self.f_sym {
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::domain("f_sym", f, "must be positive"));
            }
        }
        Ok(())
    }
}
