//! Thin linear-algebra layer.
//!
//! faer supplies the Hermitian eigensolver; everything else (matrix products,
//! unitaries from eigendecompositions, norms) is written out directly since
//! every matrix in this crate is small (at most (2j+1)^2 x (2j+1)^2).
//! Unitaries are always built from Hermitian eigendecompositions rather than
//! series expansions, so they are unitary to machine precision by
//! construction; tests cross-check them against a scaling-and-squaring
//! exponential.

use faer::Side;
pub use faer::{Mat, c64};

use crate::error::{Error, Result};

pub const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
pub const ONE: c64 = c64 { re: 1.0, im: 0.0 };

#[inline]
pub fn cis(phase: f64) -> c64 {
    c64::new(phase.cos(), phase.sin())
}

/// Eigendecomposition of a Hermitian matrix: `h = vecs * diag(vals) * vecs^H`.
pub struct HermEig {
    pub vals: Vec<f64>,
    pub vecs: Mat<c64>,
}

/// Hermitian eigendecomposition (lower triangle is read; the caller is
/// responsible for Hermiticity where it is a contract, see
/// [`hermiticity_defect`]).
pub fn eigh(h: &Mat<c64>) -> Result<HermEig> {
    let evd = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::numerical(format!("self-adjoint eigensolver failed: {e:?}")))?;
    let n = h.nrows();
    let s = evd.S();
    let vals: Vec<f64> = (0..n).map(|i| s[i].re).collect();
    let u = evd.U();
    let vecs = Mat::from_fn(n, n, |i, j| u[(i, j)]);
    Ok(HermEig { vals, vecs })
}

/// Largest deviation `max_ij |h_ij - conj(h_ji)|` from Hermiticity.
pub fn hermiticity_defect(h: &Mat<c64>) -> f64 {
    let n = h.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let d = h[(i, j)] - h[(j, i)].conj();
            worst = worst.max(d.norm());
        }
    }
    worst
}

impl HermEig {
    /// Apply `exp(-i * scale * H)` to a vector: `V exp(-i*scale*w) V^H v`.
    pub fn apply_exp(&self, scale: f64, v: &[c64]) -> Vec<c64> {
        let n = self.vals.len();
        assert_eq!(v.len(), n, "dimension mismatch in apply_exp");
        // w = V^H v
        let mut w = vec![ZERO; n];
        for k in 0..n {
            let mut acc = ZERO;
            for i in 0..n {
                acc += self.vecs[(i, k)].conj() * v[i];
            }
            w[k] = acc;
        }
        for k in 0..n {
            w[k] *= cis(-scale * self.vals[k]);
        }
        // V w
        let mut out = vec![ZERO; n];
        for i in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                acc += self.vecs[(i, k)] * w[k];
            }
            out[i] = acc;
        }
        out
    }

    /// Dense `exp(-i * scale * H)` as a matrix.
    pub fn exp_matrix(&self, scale: f64) -> Mat<c64> {
        let n = self.vals.len();
        let phases: Vec<c64> = self.vals.iter().map(|&w| cis(-scale * w)).collect();
        Mat::from_fn(n, n, |i, j| {
            let mut acc = ZERO;
            for k in 0..n {
                acc += self.vecs[(i, k)] * phases[k] * self.vecs[(j, k)].conj();
            }
            acc
        })
    }
}

/// `a * v` for a dense matrix and vector.
pub fn mat_vec(a: &Mat<c64>, v: &[c64]) -> Vec<c64> {
    let (m, n) = (a.nrows(), a.ncols());
    assert_eq!(v.len(), n, "dimension mismatch in mat_vec");
    let mut out = vec![ZERO; m];
    for i in 0..m {
        let mut acc = ZERO;
        for j in 0..n {
            acc += a[(i, j)] * v[j];
        }
        out[i] = acc;
    }
    out
}

/// `a * b` for dense matrices.
pub fn mat_mul(a: &Mat<c64>, b: &Mat<c64>) -> Mat<c64> {
    let (m, k, n) = (a.nrows(), a.ncols(), b.ncols());
    assert_eq!(b.nrows(), k, "dimension mismatch in mat_mul");
    Mat::from_fn(m, n, |i, j| {
        let mut acc = ZERO;
        for l in 0..k {
            acc += a[(i, l)] * b[(l, j)];
        }
        acc
    })
}

/// Inner product `<a|b>` with the physicist's convention (conjugate-linear in
/// the first argument).
pub fn inner(a: &[c64], b: &[c64]) -> c64 {
    assert_eq!(a.len(), b.len(), "dimension mismatch in inner");
    let mut acc = ZERO;
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * *y;
    }
    acc
}

pub fn norm2(v: &[c64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
