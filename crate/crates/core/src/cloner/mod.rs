//! Entangling-cloner model of the link and its closed-form Holevo bound.
//!
//! Five modes, in this order: Alice (0), Bob (1), Eve's two EPR modes
//! (2 and 3) and the receiver's thermal mode (4). The initial state
//! `EPR(V) ⊕ EPR(W_ch) ⊕ Th(W_rec)` passes a channel beamsplitter of
//! transmittance `T_ch` on modes (1, 2) and then a receiver beamsplitter of
//! transmittance `T_rec` on modes (1, 4), with
//! `W = ξ/(1 − T) + 1` for each noise source.
//!
//! Eve holds modes 2 and 3. Her unconditional state has the two-mode
//! `σz` form, so `ν₁,₂` come straight from [`two_mode_eigs`](crate::gaussian::two_mode_eigs). After Bob
//! measures, the heterodyne case keeps that form; the homodyne case does
//! not, but squaring `iΩΣ_E|B` and swapping its middle rows and columns
//! block-diagonalizes it into a 2×2 matrix and its transpose, so `ν₃,₄`
//! again solve a quadratic.
//!
//! Near unit transmittance `W` is huge while the spectra stay finite, so the
//! eigenvalues are evaluated from the invariants `ν₁ν₂` and `ν₁ − ν₂` (or
//! trace and determinant) written in `q = (1 − T_ch)·W_ch = ξ_ch + 1 − T_ch`
//! and `r = (1 − T_rec)·W_rec`, where the `W²` terms have cancelled.
//!
//! Which sources count as Eve's is decided by [`LinkParams::eve_view`].
//! Preparation noise never gets a mode of its own; trusted preparation is
//! handled by `V → V + ξ_pr`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{
    apply_symplectic, beamsplitter, clamp_nu, condition_heterodyne, condition_homodyne, direct_sum,
    epr_state, mode_entropy, thermal_state, CovMatrix, Quadrature,
};
use crate::params::{Detection, EveView, LinkParams, Trust};

/// Negative radicands down to this size are rounding noise.
const RADICAND_TOL: f64 = 1e-12;

/// A negative Holevo bound down to this size is rounding noise.
pub const CHI_TOL: f64 = 1e-9;

/// Eve's entropies before and after Bob's measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyPair {
    pub s_e: f64,
    pub s_e_given_b: f64,
    pub nu_pre: (f64, f64),
    pub nu_post: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolevoBound {
    pub entropies: EntropyPair,
    /// `S_E − S_E|B`, never negative.
    pub chi_eb: f64,
}

/// How Bob reads out his mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measurement {
    Heterodyne,
    Homodyne(Quadrature),
}

impl From<Detection> for Measurement {
    fn from(d: Detection) -> Self {
        match d {
            Detection::Heterodyne => Measurement::Heterodyne,
            Detection::Homodyne => Measurement::Homodyne(Quadrature::Q),
        }
    }
}

/// The EPR variance Eve's entropy is computed with: `V + ξ_pr` when
/// preparation noise is trusted, otherwise `V`.
pub fn effective_v(p: &LinkParams) -> f64 {
    match p.trust {
        Trust::TrustedReceiverAndPreparation => p.v() + p.xi_pr,
        _ => p.v(),
    }
}

/// `ξ/(1 − T) + 1`.
pub(crate) fn noise_variance(name: &'static str, t: f64, xi: f64) -> Result<f64> {
    if xi == 0.0 {
        return Ok(1.0);
    }
    if t >= 1.0 {
        return Err(Error::domain(
            name,
            t,
            "a noise source needs a transmittance below 1",
        ));
    }
    Ok(xi / (1.0 - t) + 1.0)
}

/// Variances `(W_ch, W_rec)` of the channel EPR state and the receiver
/// thermal state.
pub fn noise_source_variances(p: &LinkParams) -> Result<(f64, f64)> {
    p.validate()?;
    variances(&p.eve_view())
}

fn variances(view: &EveView) -> Result<(f64, f64)> {
    Ok((
        noise_variance("t_ch", view.t_ch, view.xi_ch)?,
        noise_variance("t_rec", view.t_rec, view.xi_rec)?,
    ))
}

/// The full five-mode state after both beamsplitters.
pub fn assemble_and_propagate(p: &LinkParams) -> Result<CovMatrix> {
    p.validate()?;
    let view = p.eve_view();
    let (w_ch, w_rec) = variances(&view)?;
    let initial = direct_sum(&[epr_state(view.v)?, epr_state(w_ch)?, thermal_state(w_rec)?])?;
    let bs = &beamsplitter(5, 1, 4, view.t_rec)? * &beamsplitter(5, 1, 2, view.t_ch)?;
    apply_symplectic(&bs, &initial)
}

/// Eve's two modes before Bob measures, in closed form:
/// `[[((1 − T_ch)V + T_ch·W_ch)·1₂, √T_ch·√(W_ch² − 1)·σz], [.., W_ch·1₂]]`.
pub fn eve_state(p: &LinkParams) -> Result<CovMatrix> {
    let (a, b, c) = eve_entries(p)?;
    Ok(CovMatrix::from_raw(DMatrix::from_row_slice(
        4,
        4,
        &[a, 0.0, c, 0.0, 0.0, a, 0.0, -c, c, 0.0, b, 0.0, 0.0, -c, 0.0, b],
    )))
}

fn eve_entries(p: &LinkParams) -> Result<(f64, f64, f64)> {
    p.validate()?;
    let view = p.eve_view();
    let (w_ch, _) = variances(&view)?;
    let t = view.t_ch;
    Ok((
        (1.0 - t) * view.v + t * w_ch,
        w_ch,
        (t * (w_ch * w_ch - 1.0)).sqrt(),
    ))
}

/// `(1 − T)·W = ξ + 1 − T`.
fn scaled_noise(t: f64, xi: f64) -> f64 {
    xi + (1.0 - t)
}

/// The finite combinations every closed form is written in.
#[derive(Debug, Clone, Copy)]
struct Reduced {
    v: f64,
    t: f64,
    /// `1 − T_ch`
    s: f64,
    q: f64,
    t_rec: f64,
    r: f64,
    v_b: f64,
}

impl Reduced {
    fn new(view: &EveView) -> Self {
        let q = scaled_noise(view.t_ch, view.xi_ch);
        let r = scaled_noise(view.t_rec, view.xi_rec);
        Reduced {
            v: view.v,
            t: view.t_ch,
            s: 1.0 - view.t_ch,
            q,
            t_rec: view.t_rec,
            r,
            v_b: r + view.t_rec * (view.v * view.t_ch + q),
        }
    }

    /// `ν₁ν₂ = ab − c² = V·q + T_ch` of Eve's unconditional state.
    fn pre_product(&self) -> f64 {
        self.v * self.q + self.t
    }
}

/// `(z ± d)/2` with `z = √(d² + 4·prod)`, descending.
fn from_difference_and_product(d: f64, prod: f64, context: &'static str) -> Result<(f64, f64)> {
    let z = nonneg_radicand(d * d + 4.0 * prod, context)?.sqrt();
    let a = clamp_nu(0.5 * (z + d), context)?;
    let b = clamp_nu(0.5 * (z - d), context)?;
    Ok(if a >= b { (a, b) } else { (b, a) })
}

/// `ν₁, ν₂` of Eve's unconditional state, the [`two_mode_eigs`](crate::gaussian::two_mode_eigs) formula
/// evaluated as `ν₁,₂ = (z ± (b − a))/2` with `b − a = q − (1 − T_ch)·V`
/// and `z² = (b − a)² + 4(ab − c²)`.
pub fn eve_eigenvalues(p: &LinkParams) -> Result<(f64, f64)> {
    p.validate()?;
    let m = Reduced::new(&p.eve_view());
    from_difference_and_product(m.q - m.s * m.v, m.pre_product(), "Eve's unconditional eigenvalue")
}

/// Entries of Eve's state after Bob heterodynes, before the common
/// `1/(V_B + 1)` factor: `[[e₁·1₂, e₂·σz], [e₂·σz, e₃·1₂]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeterodyneBlock {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub v_b: f64,
    /// `e₃ − e₁`, evaluated without forming `W`.
    pub diff: f64,
    /// `(e₁e₃ − e₂²)/(V_B + 1)`, likewise.
    pub gram: f64,
}

impl HeterodyneBlock {
    pub fn new(p: &LinkParams) -> Result<Self> {
        p.validate()?;
        let view = p.eve_view();
        let (w_ch, w_rec) = variances(&view)?;
        let EveView { v, t_ch, t_rec, .. } = view;
        // (1 − T_rec)·W_rec, which stays finite as T_rec → 1.
        let rec = (1.0 - t_rec) * w_rec;
        let e1 = v * (rec + t_rec * w_ch + 1.0) + t_ch * (w_ch - v) * (1.0 + rec);
        let e2 = (t_ch * (w_ch * w_ch - 1.0)).sqrt() * (t_rec * v + rec + 1.0);
        let e3 = (1.0 - t_rec) * w_ch * w_rec + t_rec * t_ch * (v * w_ch - 1.0) + t_rec + w_ch;
        let m = Reduced::new(&view);
        Ok(HeterodyneBlock {
            e1,
            e2,
            e3,
            v_b: view.bob_variance(),
            diff: (1.0 + m.r) * (m.q - m.s * m.v) + m.t_rec * (m.s - m.v * m.q),
            gram: (1.0 + m.r) * m.pre_product() + m.v * m.t_rec,
        })
    }

    /// `Σ_E|B` itself, scale factor included.
    pub fn matrix(&self) -> DMatrix<f64> {
        let k = 1.0 / (self.v_b + 1.0);
        let (a, b, c) = (self.e1 * k, self.e3 * k, self.e2 * k);
        DMatrix::from_row_slice(
            4,
            4,
            &[a, 0.0, c, 0.0, 0.0, a, 0.0, -c, c, 0.0, b, 0.0, 0.0, -c, 0.0, b],
        )
    }

    /// `ν₃,₄ = (z ± (e₃ − e₁)) / (2(V_B + 1))`, `z = √((e₁ + e₃)² − 4e₂²)`,
    /// descending. The radicand is taken as `(e₃ − e₁)² + 4(e₁e₃ − e₂²)`.
    pub fn eigenvalues(&self) -> Result<(f64, f64)> {
        let k = self.v_b + 1.0;
        from_difference_and_product(
            self.diff / k,
            self.gram / k,
            "heterodyne conditional eigenvalue",
        )
    }
}

/// The six entries of Eve's state after Bob homodynes `q`:
///
/// ```text
/// [[e1, 0, e2, 0], [0, e3, 0, e4], [e2, 0, e5, 0], [0, e4, 0, e6]]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneBlock {
    pub e: [f64; 6],
    pub v_b: f64,
    /// Trace of [`HomodyneBlock::reduced`], evaluated without forming `W`.
    pub trace: f64,
    /// Its determinant, likewise.
    pub det: f64,
}

impl HomodyneBlock {
    pub fn new(p: &LinkParams) -> Result<Self> {
        p.validate()?;
        let view = p.eve_view();
        let (w_ch, w_rec) = variances(&view)?;
        let EveView { v, t_ch, t_rec, .. } = view;
        let v_b = view.bob_variance();
        let bob_side = t_rec * v + (1.0 - t_rec) * w_rec;
        let corr = (t_ch * (w_ch * w_ch - 1.0)).sqrt();
        let e = [
            v + t_ch * (w_ch - v) * bob_side / v_b,
            corr * bob_side / v_b,
            v + t_ch * (w_ch - v),
            -corr,
            w_ch - (1.0 - t_ch) * t_rec * (w_ch * w_ch - 1.0) / v_b,
            w_ch,
        ];
        let m = Reduced::new(&view);
        let pre = m.pre_product();
        let gap = m.v * m.s - m.q;
        let trace = (m.r * (gap * gap + 2.0 * pre) + m.t_rec * (m.q * (m.v * m.v + 1.0) + 2.0 * m.v * m.t)) / m.v_b;
        let det = pre * (m.r * pre + m.v * m.t_rec) / m.v_b;
        Ok(HomodyneBlock { e, v_b, trace, det })
    }

    /// `Σ_E|B` for a `q` or `p` measurement; the `p` form swaps the roles of
    /// the quadratures and flips the sign of the correlations.
    pub fn matrix(&self, quad: Quadrature) -> DMatrix<f64> {
        let [e1, e2, e3, e4, e5, e6] = self.e;
        let entries = match quad {
            Quadrature::Q => [
                e1, 0.0, e2, 0.0, 0.0, e3, 0.0, e4, e2, 0.0, e5, 0.0, 0.0, e4, 0.0, e6,
            ],
            Quadrature::P => [
                e3, 0.0, -e4, 0.0, 0.0, e1, 0.0, -e2, -e4, 0.0, e6, 0.0, 0.0, -e2, 0.0, e5,
            ],
        };
        DMatrix::from_row_slice(4, 4, &entries)
    }

    /// The 2×2 block `𝓔` of the squared, permuted `iΩΣ_E|B`.
    pub fn reduced(&self) -> [[f64; 2]; 2] {
        let [e1, e2, e3, e4, e5, e6] = self.e;
        [
            [e1 * e3 + e2 * e4, e2 * e3 + e4 * e5],
            [e1 * e4 + e2 * e6, e2 * e4 + e5 * e6],
        ]
    }

    /// `ν₃,₄ = √((𝓔₁₁ + 𝓔₂₂ ± √((𝓔₁₁ − 𝓔₂₂)² + 4𝓔₁₂𝓔₂₁)) / 2)`, descending,
    /// with the inner radicand taken as `tr² − 4·det`.
    pub fn eigenvalues(&self) -> Result<(f64, f64)> {
        let (tr, det) = (self.trace, self.det);
        let inner = nonneg_radicand(tr * tr - 4.0 * det, "homodyne 2×2 discriminant")?;
        let root = inner.sqrt();
        let hi = nonneg_radicand(0.5 * (tr + root), "homodyne ν² (upper)")?.sqrt();
        let lo = nonneg_radicand(0.5 * (tr - root), "homodyne ν² (lower)")?.sqrt();
        Ok((
            clamp_nu(hi, "homodyne conditional eigenvalue")?,
            clamp_nu(lo, "homodyne conditional eigenvalue")?,
        ))
    }
}

fn nonneg_radicand(x: f64, context: &'static str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -RADICAND_TOL {
        Ok(0.0)
    } else {
        Err(Error::NonPhysical { value: x, context })
    }
}

fn require_detection(p: &LinkParams, wanted: Detection) -> Result<()> {
    if p.detection == wanted {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "link is configured for {} detection, not {}",
            p.detection.as_str(),
            wanted.as_str()
        )))
    }
}

/// `ν₃, ν₄` of Eve's state conditioned on Bob's heterodyne outcome.
pub fn eve_conditional_het(p: &LinkParams) -> Result<(f64, f64)> {
    require_detection(p, Detection::Heterodyne)?;
    HeterodyneBlock::new(p)?.eigenvalues()
}

/// `ν₃, ν₄` of Eve's state conditioned on Bob's homodyne outcome.
pub fn eve_conditional_hom(p: &LinkParams) -> Result<(f64, f64)> {
    require_detection(p, Detection::Homodyne)?;
    HomodyneBlock::new(p)?.eigenvalues()
}

/// `ν₃, ν₄` for whatever detection `p` specifies.
pub fn eve_conditional_eigenvalues(p: &LinkParams) -> Result<(f64, f64)> {
    match p.detection {
        Detection::Heterodyne => eve_conditional_het(p),
        Detection::Homodyne => eve_conditional_hom(p),
    }
}

/// `χ_EB = g(ν₁) + g(ν₂) − g(ν₃) − g(ν₄)`.
pub fn holevo_bound(p: &LinkParams) -> Result<HolevoBound> {
    let nu_pre = eve_eigenvalues(p)?;
    let nu_post = eve_conditional_eigenvalues(p)?;
    let s_e = mode_entropy(nu_pre.0)? + mode_entropy(nu_pre.1)?;
    let s_e_given_b = mode_entropy(nu_post.0)? + mode_entropy(nu_post.1)?;
    let chi_eb = clamp_chi(s_e - s_e_given_b)?;
    Ok(HolevoBound {
        entropies: EntropyPair {
            s_e,
            s_e_given_b,
            nu_pre,
            nu_post,
        },
        chi_eb,
    })
}

pub(crate) fn clamp_chi(chi: f64) -> Result<f64> {
    if chi >= 0.0 {
        Ok(chi)
    } else if chi >= -CHI_TOL {
        Ok(0.0)
    } else {
        Err(Error::NonPhysical {
            value: chi,
            context: "negative Holevo bound",
        })
    }
}

/// Eve's conditional state taken from the full five-mode matrix by brute
/// force: condition on Bob's mode, then keep modes 1 and 2 of the
/// remaining (Alice, Eve, Eve, receiver).
pub fn conditioned_eve_block(p: &LinkParams, measurement: Measurement) -> Result<CovMatrix> {
    let total = assemble_and_propagate(p)?;
    let rest = match measurement {
        Measurement::Heterodyne => condition_heterodyne(&total, 1)?,
        Measurement::Homodyne(q) => condition_homodyne(&total, 1, q)?,
    };
    rest.reduce(&[1, 2])
}
