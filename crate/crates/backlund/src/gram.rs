//! Pointwise Gram systems of the iterated Bäcklund transform.
//!
//! For waves `ψ_1, …, ψ_N` at distinct spectral parameters the Gram matrix
//! is `G_jk = i ψ_k^H ψ_j / (z_j − z̄_k)`, the kernel
//! `K(z, w) = i ψ(w)^H ψ(z)/(z − w̄)` sampled at the eigenvalues. It is
//! Hermitian positive definite. When an eigenvalue is double, the wave and
//! its `z`-derivative both enter the basis, and the corresponding entries
//! are derivatives of `K`: `∂_z` for a derivative in the row and `∂_w̄` for
//! one in the column.
//!
//! The field correction is `2 Σ_jk (G⁻¹)_jk ψ_k¹ conj(ψ_j²)`, evaluated as
//! `2 Σ_k conj(ψ_k²) y_k` with `G y = ψ¹`. Rescaling all members of one
//! eigenvalue group by the same nonzero number leaves it unchanged.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use soliton_core::{Error, Result};

/// Gram systems with a larger estimated condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// One member of the basis spanning the Bäcklund kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element {
    /// Spectral parameter.
    pub z: C64,
    /// `true` for the `z`-derivative of a wave, `false` for the wave itself.
    pub jet: bool,
    /// Index of the wave this element belongs to (itself when `jet` is false).
    pub base: usize,
}

fn inner(a: [C64; 2], b: [C64; 2]) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Gram matrix at one grid point, given the basis vectors there.
pub fn gram_matrix(elems: &[Element], vecs: &[[C64; 2]]) -> DMatrix<C64> {
    let m = elems.len();
    let i = C64::i();
    DMatrix::from_fn(m, m, |j, k| {
        let (ej, ek) = (elems[j], elems[k]);
        let d = ej.z - ek.z.conj();
        let (j0, k0) = (vecs[ej.base], vecs[ek.base]);
        let (j1, k1) = (vecs[j], vecs[k]);
        match (ej.jet, ek.jet) {
            (false, false) => i * inner(k0, j0) / d,
            (true, false) => i * (inner(k0, j1) / d - inner(k0, j0) / (d * d)),
            (false, true) => i * (inner(k1, j0) / d + inner(k0, j0) / (d * d)),
            (true, true) => {
                i * (inner(k1, j1) / d + inner(k0, j1) / (d * d)
                    - inner(k1, j0) / (d * d)
                    - 2.0 * inner(k0, j0) / (d * d * d))
            }
        }
    })
}

/// A factorized Gram matrix.
pub enum Factor {
    /// Cholesky factorization (the normal case).
    Cholesky(nalgebra::linalg::Cholesky<C64, nalgebra::Dyn>),
    /// Column-pivoted QR (fallback when Cholesky breaks down).
    Qr(nalgebra::linalg::ColPivQR<C64, nalgebra::Dyn, nalgebra::Dyn>),
}

impl Factor {
    /// Factorizes `g`, estimating its condition number from the factor's
    /// diagonal; fails with a confluence error above [`MAX_CONDITION`].
    pub fn new(g: DMatrix<C64>) -> Result<Self> {
        let diag_ratio = |d: Vec<f64>| {
            let max = d.iter().cloned().fold(0.0, f64::max);
            let min = d.iter().cloned().fold(f64::INFINITY, f64::min);
            if min > 0.0 {
                max / min
            } else {
                f64::INFINITY
            }
        };
        if let Some(ch) = g.clone().cholesky() {
            let l = ch.l_dirty();
            let cond = diag_ratio((0..l.nrows()).map(|k| l[(k, k)].norm()).collect()).powi(2);
            if !(cond <= MAX_CONDITION) {
                return Err(Error::Confluence(cond));
            }
            return Ok(Factor::Cholesky(ch));
        }
        let qr = g.col_piv_qr();
        let r = qr.r();
        let cond = diag_ratio((0..r.nrows()).map(|k| r[(k, k)].norm()).collect());
        if !(cond <= MAX_CONDITION) {
            return Err(Error::Confluence(cond));
        }
        Ok(Factor::Qr(qr))
    }

    /// Solves `G y = b`.
    pub fn solve(&self, b: &DVector<C64>) -> Result<DVector<C64>> {
        match self {
            Factor::Cholesky(ch) => Ok(ch.solve(b)),
            Factor::Qr(qr) => qr.solve(b).ok_or_else(|| Error::Confluence(f64::INFINITY)),
        }
    }
}

/// Field correction `v − u` at one grid point.
pub fn correction(elems: &[Element], vecs: &[[C64; 2]]) -> Result<C64> {
    let f = Factor::new(gram_matrix(elems, vecs))?;
    let b = DVector::from_iterator(vecs.len(), vecs.iter().map(|v| v[0]));
    let y = f.solve(&b)?;
    Ok(2.0 * vecs.iter().zip(y.iter()).map(|(v, y)| v[1].conj() * y).sum::<C64>())
}

/// Trace of the `2×2` matrix `A = Σ_jk (G⁻¹)_jk ψ_j ψ_k^H` at one grid point.
pub fn trace(elems: &[Element], vecs: &[[C64; 2]]) -> Result<f64> {
    let f = Factor::new(gram_matrix(elems, vecs))?;
    let mut t = C64::new(0.0, 0.0);
    for c in 0..2 {
        let b = DVector::from_iterator(vecs.len(), vecs.iter().map(|v| v[c]));
        let y = f.solve(&b)?;
        t += vecs.iter().zip(y.iter()).map(|(v, y)| v[c].conj() * y).sum::<C64>();
    }
    Ok(t.re)
}

/// Image `Dψ` of a probe vector under the Bäcklund intertwining map, up to
/// the scalar factor `Π (z − z̄_l)` which the caller applies.
///
/// `Dψ = ψ − Σ_j b_j c_j` with `G^T c = i r`, where
/// `r_k = b_k^H ψ/(z − z̄_k)` (and its `w̄`-derivative for jet elements).
pub fn project_out(elems: &[Element], vecs: &[[C64; 2]], z: C64, psi: [C64; 2]) -> Result<[C64; 2]> {
    let g = gram_matrix(elems, vecs);
    let r = DVector::from_iterator(
        elems.len(),
        elems.iter().enumerate().map(|(k, e)| {
            let d = z - e.z.conj();
            let k0 = vecs[e.base];
            if e.jet {
                inner(vecs[k], psi) / d + inner(k0, psi) / (d * d)
            } else {
                inner(k0, psi) / d
            }
        }),
    );
    // Gᵀ = conj(G) is Hermitian positive definite as well.
    let c = Factor::new(g.transpose())?.solve(&(r * C64::i()))?;
    let mut out = psi;
    for (v, c) in vecs.iter().zip(c.iter()) {
        out[0] -= v[0] * c;
        out[1] -= v[1] * c;
    }
    Ok(out)
}
