//! Maximizing the secret fraction over the modulation variance, alone or
//! jointly with a detuned receiver transmittance at fixed SNR.
//!
//! Both searches work in log space: a 64-point grid brackets the best
//! region, golden-section search refines it, and the best point ever
//! evaluated wins. Values within [`TIE_TOL`] of the best count as ties.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::keyrate::{evaluate, RateResult};
use crate::params::{LinkParams, ProtocolParams};

pub const DEFAULT_VMOD_BOUNDS: (f64, f64) = (1e-3, 1e3);

/// Points in the bracketing grid.
pub const COARSE_POINTS: usize = 64;

/// Secret fractions closer than this are treated as equal.
pub const TIE_TOL: f64 = 1e-10;

/// Golden-section search stops once the bracket is this narrow in log space.
const LOG_TOL: f64 = 1e-9;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VmodOptimum {
    pub v_mod: f64,
    pub result: RateResult,
    pub at_lower_bound: bool,
    pub at_upper_bound: bool,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LockedOptimum {
    pub v_mod: f64,
    pub t_rec: f64,
    pub result: RateResult,
    /// `|SNR − target|` at the reported point.
    pub snr_residual: f64,
    /// The optimum sits at the calibrated receiver transmittance.
    pub at_calibration: bool,
    /// The optimum sits at the smallest transmittance the `V_mod` bound allows.
    pub at_vmod_limit: bool,
    pub evaluations: usize,
}

/// Which end of the domain wins a tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Prefer {
    Low,
    High,
}

#[derive(Debug, Clone, Copy)]
struct Probe {
    x: f64,
    value: f64,
    result: RateResult,
}

/// Maximizes `f` over `[lo, hi]` (both positive) in `ln x`.
fn maximize_log<F>(lo: f64, hi: f64, prefer: Prefer, mut f: F) -> Result<(Probe, usize)>
where
    F: FnMut(f64) -> Result<RateResult>,
{
    let (a0, b0) = (lo.ln(), hi.ln());
    let mut history: Vec<Probe> = Vec::with_capacity(COARSE_POINTS + 64);
    let mut probe = |u: f64, history: &mut Vec<Probe>| -> Result<f64> {
        // exp(ln x) need not round-trip; pin the ends exactly.
        let x = if u <= a0 {
            lo
        } else if u >= b0 {
            hi
        } else {
            u.exp()
        };
        let result = f(x)?;
        history.push(Probe {
            x,
            value: result.secret_fraction,
            result,
        });
        Ok(result.secret_fraction)
    };

    let step = (b0 - a0) / (COARSE_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..COARSE_POINTS).map(|i| a0 + step * i as f64).collect();
    let mut values = Vec::with_capacity(COARSE_POINTS);
    for &u in &grid {
        values.push(probe(u, &mut history)?);
    }
    let best = pick(&grid, &values, prefer);
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(COARSE_POINTS - 1)];

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = probe(c, &mut history)?;
    let mut fd = probe(d, &mut history)?;
    while b - a > LOG_TOL {
        let go_left = match prefer {
            Prefer::Low => fc >= fd,
            Prefer::High => fc > fd,
        };
        if go_left {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = probe(c, &mut history)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = probe(d, &mut history)?;
        }
    }

    let xs: Vec<f64> = history.iter().map(|p| p.x).collect();
    let vs: Vec<f64> = history.iter().map(|p| p.value).collect();
    let n = history.len();
    Ok((history[pick(&xs, &vs, prefer)], n))
}

/// Index of the best value; among ties, the smallest or largest `x`.
fn pick(xs: &[f64], values: &[f64], prefer: Prefer) -> usize {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties = (0..xs.len()).filter(|&i| values[i] >= max - TIE_TOL);
    match prefer {
        Prefer::Low => ties.min_by(|&i, &j| xs[i].total_cmp(&xs[j])),
        Prefer::High => ties.max_by(|&i, &j| xs[i].total_cmp(&xs[j])),
    }
    .expect("non-empty search grid")
}

fn check_bounds((lo, hi): (f64, f64)) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "V_mod bounds must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )))
    }
}

/// Best `V_mod` in `bounds` for the secret fraction, everything else in `p`
/// held fixed.
///
/// ```
/// use cvqkd::optimizer::{optimize_vmod, DEFAULT_VMOD_BOUNDS};
/// use cvqkd::params::{Detection, LinkParams, ProtocolParams, Trust};
///
/// let p = LinkParams::perfect(1.0, Detection::Homodyne, Trust::UntrustedAll);
/// let best = optimize_vmod(&p, &ProtocolParams::new(0.95), DEFAULT_VMOD_BOUNDS).unwrap();
/// assert!(best.at_upper_bound);
/// ```
pub fn optimize_vmod(p: &LinkParams, proto: &ProtocolParams, bounds: (f64, f64)) -> Result<VmodOptimum> {
    check_bounds(bounds)?;
    p.validate()?;
    proto.validate()?;
    let (best, evaluations) = maximize_log(bounds.0, bounds.1, Prefer::Low, |v| {
        evaluate(&p.with_v_mod(v), proto)
    })?;
    Ok(VmodOptimum {
        v_mod: best.x,
        result: best.result,
        at_lower_bound: best.x == bounds.0,
        at_upper_bound: best.x == bounds.1,
        evaluations,
    })
}

/// The `V_mod` that gives `SNR = snr_target`:
/// `snr_target·(μ + ξ_tot)/T_tot`. `ξ_tot` does not depend on `V_mod`.
pub fn vmod_for_snr(p: &LinkParams, snr_target: f64) -> Result<f64> {
    p.validate()?;
    if !(snr_target.is_finite() && snr_target >= 0.0) {
        return Err(Error::domain("snr_target", snr_target, "must be finite and non-negative"));
    }
    Ok(snr_target * (p.detection.mu() + p.xi_tot()) / p.t_tot())
}

/// Evaluates `p` with `V_mod` chosen to hit `snr_target` and nothing else
/// changed.
pub fn evaluate_snr_locked(p: &LinkParams, proto: &ProtocolParams, snr_target: f64) -> Result<(f64, RateResult)> {
    let v = vmod_for_snr(p, snr_target)?;
    Ok((v, evaluate(&p.with_v_mod(v), proto)?))
}

/// Smallest receiver transmittance whose SNR-locked `V_mod` stays at or
/// below `vmod_max`, from `V_mod(t) = s(μ + ξ_rec)/(T_ch·t) + s(ξ_ch + T_ch·ξ_pr)/T_ch`.
fn min_transmittance(p: &LinkParams, snr_target: f64, vmod_max: f64) -> Option<f64> {
    let t_ch = p.t_ch_eff();
    let slack = t_ch * vmod_max - snr_target * (p.xi_ch + t_ch * p.xi_pr);
    if slack <= 0.0 {
        return None;
    }
    Some(snr_target * (p.detection.mu() + p.xi_rec) / slack)
}

/// Jointly picks `T_rec ≤ p.t_rec` and `V_mod` to maximize the secret
/// fraction while keeping `SNR = snr_target`.
///
/// For each candidate `T_rec` the modulation is fixed by [`vmod_for_snr`],
/// so the search is one-dimensional in `T_rec`. `p.t_rec` is the calibrated
/// receiver transmittance and the upper end of the search; the lower end is
/// where the required `V_mod` reaches `vmod_max`. Ties go to the larger
/// transmittance.
pub fn optimize_vmod_trec_snr_locked(
    p: &LinkParams,
    proto: &ProtocolParams,
    snr_target: f64,
    vmod_max: f64,
) -> Result<LockedOptimum> {
    p.validate()?;
    proto.validate()?;
    if !p.trust.receiver_trusted() {
        return Err(Error::Usage(
            "detuning the receiver needs a trusted receiver".into(),
        ));
    }
    if !(snr_target.is_finite() && snr_target > 0.0) {
        return Err(Error::domain("snr_target", snr_target, "must be positive"));
    }
    if !(vmod_max.is_finite() && vmod_max > 0.0) {
        return Err(Error::Usage(format!("V_mod upper bound must be positive, got {vmod_max}")));
    }
    let t_cal = p.t_rec;
    let v_cal = vmod_for_snr(p, snr_target)?;
    if v_cal > vmod_max {
        return Err(Error::Constraint(format!(
            "SNR {snr_target} needs V_mod = {v_cal} at the calibrated receiver, above the bound {vmod_max}"
        )));
    }
    let t_min = min_transmittance(p, snr_target, vmod_max)
        .expect("reachable at calibration implies positive slack")
        .min(t_cal);

    let locked = |t: f64| -> Result<RateResult> {
        let q = p.with_t_rec(t);
        evaluate(&q.with_v_mod(vmod_for_snr(&q, snr_target)?), proto)
    };
    let (best, evaluations) = if t_min < t_cal {
        maximize_log(t_min, t_cal, Prefer::High, locked)?
    } else {
        let result = locked(t_cal)?;
        let probe = Probe {
            x: t_cal,
            value: result.secret_fraction,
            result,
        };
        (probe, 1)
    };
    let q = p.with_t_rec(best.x);
    let v_mod = vmod_for_snr(&q, snr_target)?;
    Ok(LockedOptimum {
        v_mod,
        t_rec: best.x,
        result: best.result,
        snr_residual: (best.result.snr - snr_target).abs(),
        at_calibration: best.x == t_cal,
        at_vmod_limit: best.x == t_min && t_min < t_cal,
        evaluations,
    })
}
