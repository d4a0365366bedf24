//! Covariance-matrix algebra for zero-mean Gaussian states.
//!
//! Quadratures are in shot-noise units: the vacuum has covariance `1₂`.
//! Mode `k` occupies rows and columns `2k` (q) and `2k + 1` (p).
//!
//! The module works over any [`Real`] scalar; `f64` is the default and the
//! only type most callers need.

mod linalg;

use std::ops::Mul;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symplectic eigenvalues in `[1 - UNPHYSICAL_TOL, 1)` are rounding noise and
/// are clamped to one. Anything lower is rejected.
pub const UNPHYSICAL_TOL: f64 = 1e-6;

const SYMPLECTIC_TOL: f64 = 1e-12;
const ISOTROPY_TOL: f64 = 1e-9;

/// Which quadrature a homodyne detector measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrature {
    Q,
    P,
}

impl Quadrature {
    fn offset(self) -> usize {
        match self {
            Quadrature::Q => 0,
            Quadrature::P => 1,
        }
    }
}

/// Covariance matrix of an `n`-mode Gaussian state.
///
/// Always symmetric. Matrices built through [`CovMatrix::new`] are also
/// checked against the uncertainty principle.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix<T: Real = f64> {
    data: DMatrix<T>,
}

/// A real symplectic matrix, `S Ω Sᵀ = Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SympMatrix<T: Real = f64> {
    data: DMatrix<T>,
}

fn symmetrize<T: Real>(m: &mut DMatrix<T>) {
    let n = m.nrows();
    let half = T::lit(0.5);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (m[(i, j)] + m[(j, i)]) * half;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

fn check_even_square<T: Real>(m: &DMatrix<T>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.nrows() == 0 || m.nrows() % 2 != 0 {
        return Err(Error::Usage(format!(
            "a {n}×{n} matrix does not describe whole modes",
            n = m.nrows()
        )));
    }
    Ok(m.nrows() / 2)
}

impl<T: Real> CovMatrix<T> {
    /// Symmetrizes `data` and verifies the state is physical.
    pub fn new(data: DMatrix<T>) -> Result<Self> {
        check_even_square(&data)?;
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::Usage("covariance matrix has non-finite entries".into()));
        }
        let cov = Self::from_raw(data);
        cov.symplectic_eigenvalues()?;
        Ok(cov)
    }

    /// Symmetrizes without the physicality check. For states produced by
    /// operations that preserve physicality.
    pub(crate) fn from_raw(mut data: DMatrix<T>) -> Self {
        symmetrize(&mut data);
        CovMatrix { data }
    }

    pub fn vacuum(n_modes: usize) -> Self {
        CovMatrix {
            data: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.data
    }

    /// The marginal state of the listed modes, in the listed order.
    pub fn reduce(&self, modes: &[usize]) -> Result<Self> {
        let n = self.n_modes();
        if modes.is_empty() {
            return Err(Error::Usage("cannot reduce to zero modes".into()));
        }
        if let Some(&bad) = modes.iter().find(|&&m| m >= n) {
            return Err(Error::Usage(format!("mode {bad} out of range for {n} modes")));
        }
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let data = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.data[(idx[i], idx[j])]);
        Ok(CovMatrix { data })
    }

    /// Symplectic spectrum, descending. See [`symplectic_eigenvalues`].
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<T>> {
        symplectic_eigenvalues(self)
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> Result<f64> {
        let nus: Vec<f64> = self.symplectic_eigenvalues()?.into_iter().map(Real::as_f64).collect();
        von_neumann_entropy(&nus)
    }

    /// All symplectic eigenvalues within `tol` of one.
    pub fn is_pure(&self, tol: f64) -> Result<bool> {
        Ok(self
            .symplectic_eigenvalues()?
            .iter()
            .all(|nu| (nu.as_f64() - 1.0).abs() <= tol))
    }
}

impl<T: Real> SympMatrix<T> {
    /// Checks `S Ω Sᵀ = Ω` elementwise to 1e-12.
    pub fn new(data: DMatrix<T>) -> Result<Self> {
        let n = check_even_square(&data)?;
        let omega = symplectic_form::<T>(n);
        let residual = &data * &omega * data.transpose() - omega;
        let worst = residual.iter().fold(0.0f64, |acc, x| acc.max(x.abs().as_f64()));
        if worst > SYMPLECTIC_TOL {
            return Err(Error::Usage(format!(
                "matrix is not symplectic: max |SΩSᵀ − Ω| = {worst:e}"
            )));
        }
        Ok(SympMatrix { data })
    }

    pub fn identity(n_modes: usize) -> Self {
        SympMatrix {
            data: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.data
    }

    /// Inverse, which for a symplectic matrix is `-Ω Sᵀ Ω`.
    pub fn inverse(&self) -> Self {
        let omega = symplectic_form::<T>(self.n_modes());
        SympMatrix {
            data: -(&omega * self.data.transpose() * &omega),
        }
    }
}

/// `self * rhs` applies `rhs` first.
impl<T: Real> Mul for &SympMatrix<T> {
    type Output = SympMatrix<T>;

    fn mul(self, rhs: Self) -> SympMatrix<T> {
        assert_eq!(self.n_modes(), rhs.n_modes(), "symplectic dimension mismatch");
        SympMatrix {
            data: &self.data * &rhs.data,
        }
    }
}

/// `Ω = ⊕ [[0, 1], [-1, 0]]` over `n_modes` modes.
pub fn symplectic_form<T: Real>(n_modes: usize) -> DMatrix<T> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = T::one();
        omega[(2 * k + 1, 2 * k)] = -T::one();
    }
    omega
}

/// Two-mode squeezed vacuum with quadrature variance `v` on each arm.
///
/// ```
/// let epr = cvqkd::gaussian::epr_state(5.0).unwrap();
/// assert_eq!(epr.matrix()[(0, 2)], 24f64.sqrt());
/// assert_eq!(epr.matrix()[(1, 3)], -24f64.sqrt());
/// ```
pub fn epr_state<T: Real>(v: T) -> Result<CovMatrix<T>> {
    if !(v >= T::one()) {
        return Err(Error::domain("EPR variance", v.as_f64(), "must be at least 1"));
    }
    let c = (v * v - T::one()).sqrt();
    let mut data = DMatrix::from_diagonal_element(4, 4, v);
    data[(0, 2)] = c;
    data[(2, 0)] = c;
    data[(1, 3)] = -c;
    data[(3, 1)] = -c;
    Ok(CovMatrix { data })
}

/// Single-mode thermal state `w·1₂`.
pub fn thermal_state<T: Real>(w: T) -> Result<CovMatrix<T>> {
    if !(w >= T::one()) {
        return Err(Error::domain("thermal variance", w.as_f64(), "must be at least 1"));
    }
    Ok(CovMatrix {
        data: DMatrix::from_diagonal_element(2, 2, w),
    })
}

/// Block-diagonal concatenation; modes keep their order.
pub fn direct_sum<T: Real>(states: &[CovMatrix<T>]) -> Result<CovMatrix<T>> {
    if states.is_empty() {
        return Err(Error::Usage("direct sum of zero states".into()));
    }
    let dim: usize = states.iter().map(|s| s.data.nrows()).sum();
    let mut data = DMatrix::zeros(dim, dim);
    let mut at = 0;
    for s in states {
        let d = s.data.nrows();
        data.view_mut((at, at), (d, d)).copy_from(&s.data);
        at += d;
    }
    Ok(CovMatrix { data })
}

/// Beamsplitter of transmittance `t` between `mode_i` and `mode_j`.
///
/// The output of `mode_i` is `√t·i + √(1-t)·j` and that of `mode_j` is
/// `-√(1-t)·i + √t·j`, the same sign layout as the channel beamsplitter of
/// the entangling cloner.
pub fn beamsplitter<T: Real>(n_modes: usize, mode_i: usize, mode_j: usize, t: T) -> Result<SympMatrix<T>> {
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::domain("beamsplitter transmittance", t.as_f64(), "must lie in [0, 1]"));
    }
    if mode_i == mode_j || mode_i >= n_modes || mode_j >= n_modes {
        return Err(Error::Usage(format!(
            "beamsplitter modes ({mode_i}, {mode_j}) invalid for {n_modes} modes"
        )));
    }
    let tau = t.sqrt();
    let rho = (T::one() - t).sqrt();
    let mut data = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for d in 0..2 {
        let (i, j) = (2 * mode_i + d, 2 * mode_j + d);
        data[(i, i)] = tau;
        data[(i, j)] = rho;
        data[(j, i)] = -rho;
        data[(j, j)] = tau;
    }
    Ok(SympMatrix { data })
}

/// Permutation of whole modes: output slot `k` holds input mode `order[k]`.
///
/// `order = [0, 2, 3, 4, 1]` moves mode 1 of five to the end.
pub fn mode_permutation<T: Real>(order: &[usize]) -> Result<SympMatrix<T>> {
    let n = order.len();
    let mut seen = vec![false; n];
    for &m in order {
        if m >= n || seen[m] {
            return Err(Error::Usage(format!("{order:?} is not a permutation of 0..{n}")));
        }
        seen[m] = true;
    }
    if n == 0 {
        return Err(Error::Usage("empty permutation".into()));
    }
    let mut data = DMatrix::zeros(2 * n, 2 * n);
    for (k, &m) in order.iter().enumerate() {
        data[(2 * k, 2 * m)] = T::one();
        data[(2 * k + 1, 2 * m + 1)] = T::one();
    }
    Ok(SympMatrix { data })
}

/// `S Σ Sᵀ`, re-symmetrized.
pub fn apply_symplectic<T: Real>(s: &SympMatrix<T>, sigma: &CovMatrix<T>) -> Result<CovMatrix<T>> {
    if s.data.nrows() != sigma.data.nrows() {
        return Err(Error::Dimension {
            expected: sigma.data.nrows(),
            found: s.data.nrows(),
        });
    }
    Ok(CovMatrix::from_raw(&s.data * &sigma.data * s.data.transpose()))
}

/// Maps a computed `ν` onto the physical range, clamping rounding noise.
pub(crate) fn clamp_nu<T: Real>(nu: T, context: &'static str) -> Result<T> {
    if nu >= T::one() {
        Ok(nu)
    } else if nu >= T::lit(1.0 - UNPHYSICAL_TOL) {
        Ok(T::one())
    } else {
        Err(Error::NonPhysical {
            value: nu.as_f64(),
            context,
        })
    }
}

/// Symplectic eigenvalues, descending, each at least one.
///
/// Computed as square roots of the spectrum of `-(ΩΣ)²`. With `Σ = L Lᵀ`
/// that matrix is similar to the symmetric `Lᵀ Ωᵀ Σ Ω L`, whose
/// eigenvalues come in equal pairs `ν²`.
pub fn symplectic_eigenvalues<T: Real>(sigma: &CovMatrix<T>) -> Result<Vec<T>> {
    let n = sigma.n_modes();
    let l = linalg::cholesky(&sigma.data).map_err(|pivot| Error::NonPhysical {
        value: pivot.as_f64(),
        context: "covariance matrix is not positive definite",
    })?;
    let omega = symplectic_form::<T>(n);
    let mut k = l.transpose() * omega.transpose() * &sigma.data * &omega * &l;
    symmetrize(&mut k);
    let squared = linalg::symmetric_eigenvalues(&k);

    let mut nus = Vec::with_capacity(n);
    for pair in squared.rchunks(2).map(|c| (c[0] + c[1]) * T::lit(0.5)) {
        let nu = pair.max(T::zero()).sqrt();
        nus.push(clamp_nu(nu, "symplectic eigenvalue below 1")?);
    }
    Ok(nus)
}

/// Symplectic eigenvalues `(ν₁, ν₂)` of `[[a·1₂, c·σz], [c·σz, b·1₂]]`.
///
/// `ν₁,₂ = (z ± (b − a)) / 2` with `z = √((a + b)² − 4c²)`; returned
/// descending.
pub fn two_mode_eigs(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    let disc = (a + b) * (a + b) - 4.0 * c * c;
    if !(disc >= 0.0) {
        return Err(Error::domain(
            "(a + b)² − 4c²",
            disc,
            "two-mode discriminant must be non-negative",
        ));
    }
    let z = disc.sqrt();
    let nu1 = clamp_nu(0.5 * (z + (b - a)), "two-mode symplectic eigenvalue")?;
    let nu2 = clamp_nu(0.5 * (z - (b - a)), "two-mode symplectic eigenvalue")?;
    Ok(if nu1 >= nu2 { (nu1, nu2) } else { (nu2, nu1) })
}

/// Splits `sigma` into the unmeasured block `A`, the cross block `C` and the
/// measured mode's block `B`, after moving `mode` to the end.
fn partition<T: Real>(sigma: &CovMatrix<T>, mode: usize) -> Result<(DMatrix<T>, DMatrix<T>, DMatrix<T>)> {
    let n = sigma.n_modes();
    if mode >= n {
        return Err(Error::Usage(format!("mode {mode} out of range for {n} modes")));
    }
    if n < 2 {
        return Err(Error::Usage("measuring the only mode leaves nothing".into()));
    }
    let order: Vec<usize> = (0..n).filter(|&k| k != mode).chain(std::iter::once(mode)).collect();
    let moved = apply_symplectic(&mode_permutation(&order)?, sigma)?.data;
    let m = 2 * (n - 1);
    let a = moved.view((0, 0), (m, m)).into_owned();
    let c = moved.view((0, m), (m, 2)).into_owned();
    let b = moved.view((m, m), (2, 2)).into_owned();
    Ok((a, c, b))
}

/// State of the remaining modes after heterodyne detection of `mode`:
/// `Σ_A − Σ_C Σ_Cᵀ / (V_B + 1)`.
///
/// Only defined here for a measured mode with isotropic covariance
/// `V_B·1₂`; anything else is rejected.
pub fn condition_heterodyne<T: Real>(sigma: &CovMatrix<T>, mode: usize) -> Result<CovMatrix<T>> {
    let (a, c, b) = partition(sigma, mode)?;
    let vb = b[(0, 0)];
    let scale = vb.abs().max(T::one()) * T::lit(ISOTROPY_TOL);
    if (b[(1, 1)] - vb).abs() > scale || b[(0, 1)].abs() > scale {
        return Err(Error::Unsupported(format!(
            "heterodyne conditioning needs an isotropic measured mode, got [[{}, {}], [{}, {}]]",
            b[(0, 0)],
            b[(0, 1)],
            b[(1, 0)],
            b[(1, 1)]
        )));
    }
    let update = &c * c.transpose() * T::one().quo(vb + T::one());
    Ok(CovMatrix::from_raw(a - update))
}

/// State of the remaining modes after homodyne detection of `quad` on
/// `mode`: `Σ_A − Σ_C Π Σ_Cᵀ / V_B(quad)`.
pub fn condition_homodyne<T: Real>(sigma: &CovMatrix<T>, mode: usize, quad: Quadrature) -> Result<CovMatrix<T>> {
    let (a, c, b) = partition(sigma, mode)?;
    let k = quad.offset();
    let vb = b[(k, k)];
    if !(vb > T::zero()) {
        return Err(Error::domain(
            "measured quadrature variance",
            vb.as_f64(),
            "must be positive",
        ));
    }
    let col = c.column(k);
    let update = col * col.transpose() * T::one().quo(vb);
    Ok(CovMatrix::from_raw(a - update))
}

/// Entropy contribution `g(ν)` of one symplectic eigenvalue, in bits.
pub fn mode_entropy(nu: f64) -> Result<f64> {
    if !(nu >= 1.0) {
        return Err(Error::domain("symplectic eigenvalue", nu, "entropy needs ν ≥ 1"));
    }
    let plus = 0.5 * (nu + 1.0);
    let minus = 0.5 * (nu - 1.0);
    let tail = if nu - 1.0 < 1e-12 { 0.0 } else { minus * minus.log2() };
    Ok(plus * plus.log2() - tail)
}

/// `S = Σᵢ g(νᵢ)` in bits.
pub fn von_neumann_entropy(nus: &[f64]) -> Result<f64> {
    nus.iter().map(|&nu| mode_entropy(nu)).sum()
}
