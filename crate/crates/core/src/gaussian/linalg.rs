//! Dense symmetric kernels generic over [`Real`].
//!
//! nalgebra's decompositions need `ComplexField`, which double-double types
//! do not implement, so the two routines the symplectic spectrum needs are
//! written here against the plain [`Real`] bound.

use nalgebra::DMatrix;

use crate::scalar::Real;

/// Lower-triangular `L` with `A = L Lᵀ`, or `Err(pivot)` at the first
/// non-positive pivot.
pub(crate) fn cholesky<T: Real>(a: &DMatrix<T>) -> Result<DMatrix<T>, T> {
    let n = a.nrows();
    let mut l = DMatrix::<T>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > T::zero()) {
            return Err(d);
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s.quo(d);
        }
    }
    Ok(l)
}

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub(crate) fn symmetric_eigenvalues<T: Real>(a: &DMatrix<T>) -> Vec<T> {
    let n = a.nrows();
    let mut m = a.clone();
    let frob2 = m.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let eps = T::lit(T::PRECISION);
    let tol = eps * eps * frob2;
    let huge = T::one().quo(eps);

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                if apq.abs() <= eps * (app.abs() + aqq.abs()) {
                    m[(p, q)] = T::zero();
                    m[(q, p)] = T::zero();
                    continue;
                }
                let theta = (aqq - app).quo(T::lit(2.0) * apq);
                let t = if theta.abs() > huge {
                    T::lit(0.5).quo(theta)
                } else {
                    let sign = if theta < T::zero() { -T::one() } else { T::one() };
                    sign.quo(theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one().quo((t * t + T::one()).sqrt());
                let s = t * c;

                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = T::zero();
                m[(q, p)] = T::zero();
            }
        }
    }

    let mut eigs: Vec<T> = (0..n).map(|i| m[(i, i)]).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("NaN eigenvalue"));
    eigs
}
