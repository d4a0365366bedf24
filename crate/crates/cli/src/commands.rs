use cvqkd::keyrate::evaluate;
use cvqkd::optimizer::{evaluate_snr_locked, optimize_vmod, optimize_vmod_trec_snr_locked};
use cvqkd::params::{LinkParams, Trust};
use rayon::prelude::*;

use crate::config::{OptimizeMode, Scenario, SweepSpec, SweepVariable};
use crate::error::CliError;
use crate::output::{Inputs, OptimizeOutput, RateOutput, RateReport, Row};

fn require_v_mod(s: &Scenario) -> Result<f64, CliError> {
    s.v_mod
        .ok_or_else(|| CliError::Config("missing required key `link.v_mod`".into()))
}

pub fn rate(s: &Scenario) -> Result<RateOutput, CliError> {
    let p = s.link.with_v_mod(require_v_mod(s)?);
    let result = evaluate(&p, &s.protocol)?;
    Ok(RateOutput {
        inputs: Inputs::new(&p, &s.protocol, s.fiber, s.length_km),
        result: result.into(),
    })
}

/// Evaluates every sweep point for every trust case, trust-major and in
/// sweep order, on `jobs` threads (0 picks the default).
pub fn sweep(s: &Scenario, jobs: usize) -> Result<Vec<Row>, CliError> {
    let spec = s
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("missing required section `[sweep]`".into()))?;
    if spec.variable != SweepVariable::VMod && !spec.optimize_vmod && spec.snr_target.is_none() {
        require_v_mod(s)?;
    }
    let values = spec.values();
    let points: Vec<(Trust, f64)> = s
        .trust_cases
        .iter()
        .flat_map(|&t| values.iter().map(move |&v| (t, v)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(trust, value)| sweep_point(s, spec, trust, value))
            .collect()
    })
}

fn sweep_point(s: &Scenario, spec: &SweepSpec, trust: Trust, value: f64) -> Result<Row, CliError> {
    let mut p = s.link.with_trust(trust);
    match spec.variable {
        SweepVariable::DistanceKm => p.t_ch = s.fiber.transmittance(value)?,
        SweepVariable::XiRec => p.xi_rec = value,
        SweepVariable::TRec => p.t_rec = value,
        SweepVariable::XiPr => p.xi_pr = value,
        SweepVariable::XiCh => p.xi_ch = value,
        SweepVariable::VMod => p.v_mod = value,
    }
    let (link, result) = if spec.optimize_vmod {
        let best = optimize_vmod(&p, &s.protocol, (s.optimize.vmod_min, s.optimize.vmod_max))?;
        (p.with_v_mod(best.v_mod), best.result)
    } else if let Some(target) = spec.snr_target {
        if spec.detune_receiver {
            let best = optimize_vmod_trec_snr_locked(&p, &s.protocol, target, s.optimize.vmod_max)?;
            (p.with_t_rec(best.t_rec).with_v_mod(best.v_mod), best.result)
        } else {
            let (v, result) = evaluate_snr_locked(&p, &s.protocol, target)?;
            (p.with_v_mod(v), result)
        }
    } else {
        if spec.variable != SweepVariable::VMod {
            p.v_mod = require_v_mod(s)?;
        }
        (p, evaluate(&p, &s.protocol)?)
    };
    Ok(Row {
        variable: spec.variable.as_str(),
        value,
        link,
        result,
    })
}

pub fn optimize(s: &Scenario) -> Result<OptimizeOutput, CliError> {
    let o = &s.optimize;
    // The starting modulation plays no part in either search.
    let p: LinkParams = s.link.with_v_mod(s.v_mod.unwrap_or(1.0));
    match o.mode {
        OptimizeMode::Vmod => {
            let bounds = (o.vmod_min, o.vmod_max);
            let best = optimize_vmod(&p, &s.protocol, bounds)?;
            Ok(OptimizeOutput::Vmod {
                inputs: Inputs::new(&p.with_v_mod(best.v_mod), &s.protocol, s.fiber, s.length_km),
                vmod_bounds: bounds,
                v_mod: best.v_mod,
                at_lower_bound: best.at_lower_bound,
                at_upper_bound: best.at_upper_bound,
                evaluations: best.evaluations,
                result: RateReport::from(best.result),
            })
        }
        OptimizeMode::VmodTrecSnr => {
            let target = o
                .snr_target
                .ok_or_else(|| CliError::Config("missing required key `optimize.snr_target`".into()))?;
            let best = optimize_vmod_trec_snr_locked(&p, &s.protocol, target, o.vmod_max)?;
            let at = p.with_t_rec(best.t_rec).with_v_mod(best.v_mod);
            Ok(OptimizeOutput::VmodTrecSnr {
                inputs: Inputs::new(&at, &s.protocol, s.fiber, s.length_km),
                snr_target: target,
                vmod_max: o.vmod_max,
                v_mod: best.v_mod,
                t_rec: best.t_rec,
                snr_residual: best.snr_residual,
                at_calibration: best.at_calibration,
                at_vmod_limit: best.at_vmod_limit,
                evaluations: best.evaluations,
                result: RateReport::from(best.result),
            })
        }
    }
}
