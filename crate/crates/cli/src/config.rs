//! The TOML configuration file and its resolution into library parameters.

use std::path::Path;

use cvqkd::optimizer::DEFAULT_VMOD_BOUNDS;
use cvqkd::params::{Detection, LinkParams, ProtocolParams, Trust};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub link: LinkSection,
    pub protocol: Option<ProtocolSection>,
    #[serde(default)]
    pub fiber: FiberSection,
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub optimize: OptimizeSection,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSection {
    pub v_mod: Option<f64>,
    #[serde(default)]
    pub xi_pr: f64,
    pub t_ch: Option<f64>,
    #[serde(default)]
    pub xi_ch: f64,
    #[serde(default = "one")]
    pub t_rec: f64,
    #[serde(default)]
    pub xi_rec: f64,
    pub detection: Option<Detection>,
    pub trust: Option<Trust>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSection {
    pub beta: Option<f64>,
    #[serde(default)]
    pub fer: f64,
    #[serde(default)]
    pub disclosed_fraction: f64,
    pub f_sym: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSection {
    #[serde(default = "default_attenuation")]
    pub attenuation_db_per_km: f64,
    pub length_km: Option<f64>,
}

impl Default for FiberSection {
    fn default() -> Self {
        FiberSection {
            attenuation_db_per_km: default_attenuation(),
            length_km: None,
        }
    }
}

fn default_attenuation() -> f64 {
    0.2
}

/// Fibre loss in dB/km.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberModel {
    pub attenuation_db_per_km: f64,
}

impl FiberModel {
    pub fn new(attenuation_db_per_km: f64) -> Result<Self, CliError> {
        if !(attenuation_db_per_km.is_finite() && attenuation_db_per_km >= 0.0) {
            return Err(CliError::Config(format!(
                "fiber.attenuation_db_per_km must be finite and non-negative, got {attenuation_db_per_km}"
            )));
        }
        Ok(FiberModel {
            attenuation_db_per_km,
        })
    }

    /// `10^(−α·l/10)`.
    pub fn transmittance(&self, length_km: f64) -> Result<f64, CliError> {
        if !(length_km.is_finite() && length_km >= 0.0) {
            return Err(CliError::Config(format!(
                "fibre length must be finite and non-negative, got {length_km}"
            )));
        }
        Ok(10f64.powf(-self.attenuation_db_per_km * length_km / 10.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    DistanceKm,
    XiRec,
    TRec,
    XiPr,
    XiCh,
    VMod,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::DistanceKm => "distance_km",
            SweepVariable::XiRec => "xi_rec",
            SweepVariable::TRec => "t_rec",
            SweepVariable::XiPr => "xi_pr",
            SweepVariable::XiCh => "xi_ch",
            SweepVariable::VMod => "v_mod",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
    pub trust_cases: Option<Vec<Trust>>,
    #[serde(default)]
    pub optimize_vmod: bool,
    /// Lock the SNR to this value by choosing `V_mod`.
    pub snr_target: Option<f64>,
    /// With `snr_target`, also detune the receiver transmittance.
    #[serde(default)]
    pub detune_receiver: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return bad(format!(
                "sweep needs start < stop, got {} and {}",
                self.start, self.stop
            ));
        }
        if self.points < 2 {
            return bad(format!("sweep.points must be at least 2, got {}", self.points));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return bad(format!("a log sweep needs start > 0, got {}", self.start));
        }
        if self.optimize_vmod && self.snr_target.is_some() {
            return bad("sweep.optimize_vmod and sweep.snr_target are mutually exclusive".into());
        }
        if self.detune_receiver && self.snr_target.is_none() {
            return bad("sweep.detune_receiver needs sweep.snr_target".into());
        }
        if self.variable == SweepVariable::VMod && (self.optimize_vmod || self.snr_target.is_some()) {
            return bad("sweeping v_mod conflicts with choosing it by optimization or SNR".into());
        }
        if matches!(&self.trust_cases, Some(cases) if cases.is_empty()) {
            return bad("sweep.trust_cases must not be empty".into());
        }
        Ok(())
    }

    /// The sweep values, ends exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == n - 1 {
                    return self.stop;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * f,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizeMode {
    #[default]
    Vmod,
    VmodTrecSnr,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeSection {
    #[serde(default)]
    pub mode: OptimizeMode,
    #[serde(default = "default_vmod_min")]
    pub vmod_min: f64,
    #[serde(default = "default_vmod_max")]
    pub vmod_max: f64,
    pub snr_target: Option<f64>,
}

impl Default for OptimizeSection {
    fn default() -> Self {
        OptimizeSection {
            mode: OptimizeMode::default(),
            vmod_min: default_vmod_min(),
            vmod_max: default_vmod_max(),
            snr_target: None,
        }
    }
}

fn default_vmod_min() -> f64 {
    DEFAULT_VMOD_BOUNDS.0
}

fn default_vmod_max() -> f64 {
    DEFAULT_VMOD_BOUNDS.1
}

/// Command-line settings that take precedence over the file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub trust: Option<Trust>,
    pub detection: Option<Detection>,
}

/// A configuration with defaults filled in and overrides applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// The link with `v_mod` set to zero when the file leaves it open.
    pub link: LinkParams,
    pub v_mod: Option<f64>,
    pub fiber: FiberModel,
    pub length_km: Option<f64>,
    pub protocol: ProtocolParams,
    pub sweep: Option<SweepSpec>,
    /// `--trust` alone, else `sweep.trust_cases`, else `link.trust`.
    pub trust_cases: Vec<Trust>,
    pub optimize: OptimizeSection,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn resolve(&self, overrides: Overrides) -> Result<Scenario, CliError> {
        let missing = |key: &str| CliError::Config(format!("missing required key `{key}`"));

        let protocol = self.protocol.clone().unwrap_or_default();
        let protocol = ProtocolParams {
            beta: protocol.beta.ok_or_else(|| missing("protocol.beta"))?,
            fer: protocol.fer,
            disclosed_fraction: protocol.disclosed_fraction,
            f_sym: protocol.f_sym,
        };

        let fiber = FiberModel::new(self.fiber.attenuation_db_per_km)?;
        let length_km = self.fiber.length_km;
        let t_ch = match (self.link.t_ch, length_km) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "give either `link.t_ch` or `fiber.length_km`, not both".into(),
                ))
            }
            (Some(t), None) => t,
            (None, Some(l)) => fiber.transmittance(l)?,
            (None, None) => {
                let sweeps_distance = matches!(&self.sweep, Some(s) if s.variable == SweepVariable::DistanceKm);
                if !sweeps_distance {
                    return Err(missing("link.t_ch` or `fiber.length_km"));
                }
                1.0
            }
        };

        let detection = overrides
            .detection
            .or(self.link.detection)
            .ok_or_else(|| missing("link.detection"))?;
        let trust = match (overrides.trust, self.link.trust) {
            (Some(t), _) | (None, Some(t)) => t,
            (None, None) => {
                let listed = matches!(&self.sweep, Some(s) if s.trust_cases.is_some());
                if !listed {
                    return Err(missing("link.trust"));
                }
                Trust::UntrustedAll
            }
        };

        let link = LinkParams {
            v_mod: self.link.v_mod.unwrap_or(0.0),
            xi_pr: self.link.xi_pr,
            t_ch,
            xi_ch: self.link.xi_ch,
            t_rec: self.link.t_rec,
            xi_rec: self.link.xi_rec,
            detection,
            trust,
        };
        if let Some(s) = &self.sweep {
            s.validate()?;
            if s.variable == SweepVariable::DistanceKm && self.link.t_ch.is_some() {
                return Err(CliError::Config(
                    "a distance sweep derives `link.t_ch`; remove it".into(),
                ));
            }
        }
        let trust_cases = match (overrides.trust, self.sweep.as_ref().and_then(|s| s.trust_cases.clone())) {
            (Some(t), _) => vec![t],
            (None, Some(cases)) => cases,
            (None, None) => vec![trust],
        };
        Ok(Scenario {
            link,
            v_mod: self.link.v_mod,
            fiber,
            length_km,
            protocol,
            sweep: self.sweep.clone(),
            trust_cases,
            optimize: self.optimize,
        })
    }
}
