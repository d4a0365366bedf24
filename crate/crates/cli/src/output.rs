//! CSV rows and JSON reports.
//!
//! Parameters of the evaluated point are written with the shortest decimal
//! form that parses back to the same `f64`. Computed quantities are rounded to
//! 12 significant digits first.

use std::io::Write;

use cvqkd::keyrate::RateResult;
use cvqkd::params::{Detection, LinkParams, ProtocolParams, Trust};
use serde::Serialize;

use crate::config::FiberModel;
use crate::error::CliError;

pub const CSV_HEADER: [&str; 15] = [
    "variable_name",
    "value",
    "trust",
    "detection",
    "v_mod",
    "t_ch",
    "xi_ch",
    "t_rec",
    "xi_rec",
    "xi_pr",
    "snr",
    "i_ab",
    "chi_eb",
    "secret_fraction",
    "key_rate",
];

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Shortest round-trip decimal.
pub fn exact(x: f64) -> String {
    format!("{x}")
}

pub fn sig12(x: f64) -> String {
    exact(round12(x))
}

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub variable: &'static str,
    pub value: f64,
    pub link: LinkParams,
    pub result: RateResult,
}

impl Row {
    pub fn record(&self) -> [String; 15] {
        let p = &self.link;
        let r = &self.result;
        [
            self.variable.to_string(),
            exact(self.value),
            p.trust.as_str().to_string(),
            p.detection.as_str().to_string(),
            exact(p.v_mod),
            exact(p.t_ch),
            exact(p.xi_ch),
            exact(p.t_rec),
            exact(p.xi_rec),
            exact(p.xi_pr),
            sig12(r.snr),
            sig12(r.i_ab),
            sig12(r.chi_eb),
            sig12(r.secret_fraction),
            r.key_rate.map(sig12).unwrap_or_default(),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateReport {
    pub snr: f64,
    pub i_ab: f64,
    pub chi_eb: f64,
    pub secret_fraction: f64,
    pub key_rate: Option<f64>,
    /// `ν₁, ν₂` before Bob's measurement, `ν₃, ν₄` after.
    pub eigs: [f64; 4],
}

impl From<RateResult> for RateReport {
    fn from(r: RateResult) -> Self {
        RateReport {
            snr: round12(r.snr),
            i_ab: round12(r.i_ab),
            chi_eb: round12(r.chi_eb),
            secret_fraction: round12(r.secret_fraction),
            key_rate: r.key_rate.map(round12),
            eigs: r.eigs.map(round12),
        }
    }
}

/// The evaluated point as it went into the library.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inputs {
    pub v_mod: f64,
    pub xi_pr: f64,
    pub t_ch: f64,
    pub xi_ch: f64,
    pub t_rec: f64,
    pub xi_rec: f64,
    pub detection: Detection,
    pub trust: Trust,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length_km: Option<f64>,
    pub attenuation_db_per_km: f64,
    pub beta: f64,
    pub fer: f64,
    pub disclosed_fraction: f64,
    pub f_sym: Option<f64>,
}

impl Inputs {
    pub fn new(p: &LinkParams, proto: &ProtocolParams, fiber: FiberModel, length_km: Option<f64>) -> Self {
        Inputs {
            v_mod: p.v_mod,
            xi_pr: p.xi_pr,
            t_ch: p.t_ch,
            xi_ch: p.xi_ch,
            t_rec: p.t_rec,
            xi_rec: p.xi_rec,
            detection: p.detection,
            trust: p.trust,
            length_km,
            attenuation_db_per_km: fiber.attenuation_db_per_km,
            beta: proto.beta,
            fer: proto.fer,
            disclosed_fraction: proto.disclosed_fraction,
            f_sym: proto.f_sym,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateOutput {
    pub inputs: Inputs,
    pub result: RateReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum OptimizeOutput {
    Vmod {
        inputs: Inputs,
        vmod_bounds: (f64, f64),
        v_mod: f64,
        at_lower_bound: bool,
        at_upper_bound: bool,
        evaluations: usize,
        result: RateReport,
    },
    VmodTrecSnr {
        inputs: Inputs,
        snr_target: f64,
        vmod_max: f64,
        v_mod: f64,
        t_rec: f64,
        snr_residual: f64,
        at_calibration: bool,
        at_vmod_limit: bool,
        evaluations: usize,
        result: RateReport,
    },
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(0.1 + 0.2), "0.3");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(-2.0e-7 / 3.0), "-6.66666666667e-8".parse::<f64>().unwrap().to_string());
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn exact_round_trips() {
        for x in [0.1, 1.0 / 3.0, 10f64.powf(-0.5), 1e-300, 123456.789] {
            assert_eq!(exact(x).parse::<f64>().unwrap(), x);
        }
    }
}
