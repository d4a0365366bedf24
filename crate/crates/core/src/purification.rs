//! Purification-based reference computation of Eve's entropies.
//!
//! Eve is assumed to hold a purification of the Alice–Bob state, so
//! `S_E = S(Σ_AB)` and, after Bob measures, `S_E|B` is the entropy of
//! whatever else remains. A trusted receiver is purified by an ancillary EPR
//! pair of variance `W_rec`, one arm of which is mixed into Bob's mode on a
//! beamsplitter of transmittance `T_rec`. The conditional state is then six
//! by six (Alice and both ancilla modes) and its spectrum comes from the
//! generic solver, not from any closed form.
//!
//! The ancilla carries variances of order `W_rec`, which near unit receiver
//! transmittance is far beyond what `f64` can resolve against the unit-sized
//! symplectic eigenvalues, so every matrix here is built in double-double
//! arithmetic. That holds up to `W_rec` of about `1e9`; beyond it, entries of
//! order `W_rec²` exhaust even 32 digits and the closed forms of
//! [`crate::cloner`] are the more accurate of the two.

use crate::cloner::{clamp_chi, EntropyPair, HolevoBound, Measurement};
use crate::error::Result;
use crate::gaussian::{
    apply_symplectic, beamsplitter, condition_heterodyne, condition_homodyne, direct_sum, epr_state,
    mode_permutation, symplectic_eigenvalues, thermal_state, von_neumann_entropy, CovMatrix,
};
use crate::params::{EveView, LinkParams};
use crate::scalar::{Real, TwoFloat};

use nalgebra::DMatrix;

type Dd = TwoFloat;

/// How the receiver's loss and noise are modelled in [`purified_total_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReceiverAncilla {
    /// Ancillary EPR pair, which keeps the total state pure.
    Epr,
    /// A single thermal mode plus a vacuum. Mixed unless `W_rec = 1`.
    Thermal,
}

/// `[[V·1₂, √(T(V² − 1))·σz], [.., (T(V − 1) + 1 + ξ)·1₂]]`.
fn ab_form<T: Real>(v: T, t: T, xi: T) -> CovMatrix<T> {
    let one = T::one();
    let c = (t * (v * v - one)).sqrt();
    let b = t * (v - one) + one + xi;
    let z = T::zero();
    CovMatrix::from_raw(DMatrix::from_row_slice(
        4,
        4,
        &[v, z, c, z, z, v, z, -c, c, z, b, z, z, -c, z, b],
    ))
}

/// The Alice–Bob state with every loss and noise source on the channel:
/// `T = T_tot`, `ξ = ξ_tot`.
pub fn ab_matrix_untrusted(p: &LinkParams) -> Result<CovMatrix> {
    p.validate()?;
    Ok(ab_form(p.v(), p.t_tot(), p.xi_tot()))
}

/// The Alice–Bob state at the input of the trusted receiver, with `V → V + ξ_pr`
/// when preparation noise is trusted.
///
/// For [`crate::params::Trust::UntrustedAll`] there is no trusted receiver and
/// this equals [`ab_matrix_untrusted`].
pub fn ab_matrix_trusted(p: &LinkParams) -> Result<CovMatrix> {
    p.validate()?;
    let view = p.eve_view();
    Ok(ab_form(view.v, view.t_ch, view.xi_ch))
}

fn lift(m: &CovMatrix) -> CovMatrix<Dd> {
    CovMatrix::from_raw(m.matrix().map(Dd::lit))
}

fn entropy_dd(sigma: &CovMatrix<Dd>) -> Result<(f64, Vec<f64>)> {
    let nus: Vec<f64> = symplectic_eigenvalues(sigma)?
        .into_iter()
        .map(Real::as_f64)
        .collect();
    Ok((von_neumann_entropy(&nus)?, nus))
}

/// `W = ξ/(1 − T) + 1`, evaluated in double-double.
fn noise_variance_dd(t: f64, xi: f64) -> Dd {
    if xi == 0.0 {
        return Dd::lit(1.0);
    }
    Dd::lit(xi).quo(Dd::lit(1.0) - Dd::lit(t)) + Dd::lit(1.0)
}

/// The four-mode state before Bob's measurement, ordered
/// (Alice, ancilla₁, ancilla₂, Bob). Ancilla₁ is the arm that was mixed
/// into Bob's mode.
fn four_mode_state(view: &EveView, ancilla: ReceiverAncilla) -> Result<CovMatrix<Dd>> {
    let ab = lift(&ab_form(view.v, view.t_ch, view.xi_ch));
    let w_rec = noise_variance_dd(view.t_rec, view.xi_rec);
    let anc = match ancilla {
        ReceiverAncilla::Epr => epr_state(w_rec)?,
        ReceiverAncilla::Thermal => direct_sum(&[thermal_state(w_rec)?, CovMatrix::vacuum(1)])?,
    };
    // (A, B, anc₁, anc₂) → receiver beamsplitter → (A, anc₁, anc₂, B)
    let initial = direct_sum(&[ab, anc])?;
    let bs = beamsplitter(4, 1, 2, Dd::lit(view.t_rec))?;
    let order = mode_permutation::<Dd>(&[0, 2, 3, 1])?;
    apply_symplectic(&(&order * &bs), &initial)
}

/// `S_E = S(Σ_AB)` for the part of the link Eve is credited with.
pub fn oracle_eve_entropy(p: &LinkParams) -> Result<f64> {
    Ok(oracle_eve(p)?.0)
}

fn oracle_eve(p: &LinkParams) -> Result<(f64, Vec<f64>)> {
    entropy_dd(&lift(&ab_matrix_trusted(p)?))
}

/// `S_E|B`: entropy of the three modes left after Bob measures, with the
/// quadrature for homodyne taken from `p.detection` (always `q`).
pub fn oracle_conditional_entropy(p: &LinkParams) -> Result<f64> {
    Ok(oracle_conditional(p, p.detection.into())?.0)
}

/// Like [`oracle_conditional_entropy`] but with an explicit measurement, so
/// the `p` quadrature can be exercised too.
pub fn oracle_conditional_entropy_with(p: &LinkParams, measurement: Measurement) -> Result<f64> {
    Ok(oracle_conditional(p, measurement)?.0)
}

fn oracle_conditional(p: &LinkParams, measurement: Measurement) -> Result<(f64, Vec<f64>)> {
    p.validate()?;
    let total = four_mode_state(&p.eve_view(), ReceiverAncilla::Epr)?;
    let rest = match measurement {
        Measurement::Heterodyne => condition_heterodyne(&total, 3)?,
        Measurement::Homodyne(q) => condition_homodyne(&total, 3, q)?,
    };
    entropy_dd(&rest)
}

/// `χ_EB` from the purification, with the same reporting as
/// [`crate::cloner::holevo_bound`]. The `nu_pre`/`nu_post` pairs hold the
/// two largest eigenvalues of the respective states; the third eigenvalue of
/// the conditional state is one.
pub fn oracle_holevo_bound(p: &LinkParams) -> Result<HolevoBound> {
    let (s_e, pre) = oracle_eve(p)?;
    let (s_e_given_b, post) = oracle_conditional(p, p.detection.into())?;
    Ok(HolevoBound {
        entropies: EntropyPair {
            s_e,
            s_e_given_b,
            nu_pre: (pre[0], pre[1]),
            nu_post: (post[0], post[1]),
        },
        chi_eb: clamp_chi(s_e - s_e_given_b)?,
    })
}

/// The full state before Bob measures, Eve's purification included, in the
/// order (Alice, ancilla₁, ancilla₂, Bob, Eve₁, Eve₂).
///
/// Eve purifies the channel with an EPR pair of variance `W_ch` whose first
/// arm is mixed into Bob's mode at transmittance `T_ch`. This is one choice
/// among many; any other differs by a symplectic map on her two modes.
pub fn purified_total_state(p: &LinkParams, ancilla: ReceiverAncilla) -> Result<CovMatrix<Dd>> {
    p.validate()?;
    let view = p.eve_view();
    let v = Dd::lit(view.v);
    let w_ch = noise_variance_dd(view.t_ch, view.xi_ch);
    let w_rec = noise_variance_dd(view.t_rec, view.xi_rec);
    let anc = match ancilla {
        ReceiverAncilla::Epr => epr_state(w_rec)?,
        ReceiverAncilla::Thermal => direct_sum(&[thermal_state(w_rec)?, CovMatrix::vacuum(1)])?,
    };
    // (A, B, E₁, E₂, anc₁, anc₂)
    let initial = direct_sum(&[epr_state(v)?, epr_state(w_ch)?, anc])?;
    let channel = beamsplitter(6, 1, 2, Dd::lit(view.t_ch))?;
    let receiver = beamsplitter(6, 1, 4, Dd::lit(view.t_rec))?;
    let order = mode_permutation::<Dd>(&[0, 4, 5, 1, 2, 3])?;
    apply_symplectic(&(&order * &(&receiver * &channel)), &initial)
}

/// Tolerance of [`purity_check`] on each symplectic eigenvalue.
pub const PURITY_TOL: f64 = 1e-9;

/// Whether the purified pre-measurement state is pure: every symplectic
/// eigenvalue within [`PURITY_TOL`] of one.
pub fn purity_check(p: &LinkParams) -> bool {
    purified_total_state(p, ReceiverAncilla::Epr)
        .and_then(|s| s.is_pure(PURITY_TOL))
        .unwrap_or(false)
}
