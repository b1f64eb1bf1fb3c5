//! Real polynomials of generalized scattering parameters.
//!
//! A pure `N`-soliton is described by its spectrum together with a real
//! polynomial `β` of degree at most `2N − 1`. The scattering parameter of an
//! eigenvalue `z_j` is `κ_j = iβ(z_j)`: `Re κ_j = Im z_j·x_j` encodes the
//! position and `Im κ_j = θ_j` the phase. Because only `e^{2κ_j}` is
//! observable, `β(z_j)` matters modulo `π`. At a double eigenvalue the
//! derivative `β'(z_j)` also matters.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::sym::{Root, SpectrumSym};

/// Interpolation systems with a larger condition number are rejected.
pub const MAX_CONDITION: f64 = 1e10;

/// A real polynomial `β(z) = Σ β_k z^k` of degree `≤ 2N − 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaPoly {
    coeffs: Vec<f64>,
}

/// One interpolation node: an eigenvalue with the prescribed scattering
/// parameter and, for a double eigenvalue, its `z`-derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    /// The eigenvalue.
    pub z: C64,
    /// `κ = iβ(z)`.
    pub kappa: C64,
    /// `κ' = iβ'(z)`, present exactly at double eigenvalues.
    pub dkappa: Option<C64>,
}

impl BetaPoly {
    /// Wraps coefficients `β_0, β_1, …`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite β coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// The zero polynomial with `len` coefficients.
    pub fn zeros(len: usize) -> Self {
        Self { coeffs: vec![0.0; len] }
    }

    /// Coefficients in ascending order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Whether no coefficient is stored.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `β(z)`.
    pub fn eval(&self, z: C64) -> C64 {
        poly::eval_real(&self.coeffs, z)
    }

    /// `β'(z)`.
    pub fn eval_derivative(&self, z: C64) -> C64 {
        poly::eval_real_derivative(&self.coeffs, z)
    }

    /// Scattering parameter `κ = iβ(z)`.
    pub fn kappa(&self, z: C64) -> C64 {
        C64::i() * self.eval(z)
    }

    /// Coefficient-wise sum `self + t·other`, padding the shorter operand.
    pub fn add_scaled(&self, t: f64, other: &BetaPoly) -> BetaPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeffs.get(k).copied().unwrap_or(0.0) + t * other.coeffs.get(k).copied().unwrap_or(0.0))
            .collect();
        BetaPoly { coeffs }
    }

    /// Solves the real interpolation problem `β(z_j) = −iκ_j (mod π)` and,
    /// where given, `β'(z_j) = −iκ'_j`.
    ///
    /// Each value condition fixes `β(z_j)` only modulo `π`. Among the shifts
    /// `κ_j ↦ κ_j + iπm`, `|m| ≤ 2`, the one with the smallest coefficient
    /// norm is returned (only the principal branch is tried for more than
    /// four nodes).
    ///
    /// ```
    /// use soliton_core::beta::{BetaPoly, Node};
    /// use num_complex::Complex64 as C;
    /// // A soliton at z = i centred at x = 3 with phase 0.2: κ = 3 + 0.2i.
    /// let b = BetaPoly::interpolate(&[Node { z: C::i(), kappa: C::new(3.0, 0.2), dkappa: None }]).unwrap();
    /// assert!((b.coeffs()[0] - 0.2).abs() < 1e-12 && (b.coeffs()[1] + 3.0).abs() < 1e-12);
    /// ```
    pub fn interpolate(nodes: &[Node]) -> Result<BetaPoly> {
        let conditions: usize = nodes.iter().map(|n| if n.dkappa.is_some() { 2 } else { 1 }).sum();
        let dim = 2 * conditions;
        let mut a = DMatrix::<f64>::zeros(dim, dim);
        let mut row = 0;
        for node in nodes {
            let mut zk = C64::new(1.0, 0.0);
            for k in 0..dim {
                a[(row, k)] = zk.re;
                a[(row + 1, k)] = zk.im;
                zk *= node.z;
            }
            row += 2;
            if node.dkappa.is_some() {
                let mut zk = C64::new(1.0, 0.0);
                for k in 1..dim {
                    let d = zk * k as f64;
                    a[(row, k)] = d.re;
                    a[(row + 1, k)] = d.im;
                    zk *= node.z;
                }
                row += 2;
            }
        }
        let svd = a.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        if !(cond <= MAX_CONDITION) {
            return Err(Error::Conditioning(cond));
        }
        let base_rhs = |shifts: &[i32]| {
            let mut b = DVector::<f64>::zeros(dim);
            let mut row = 0;
            for (j, node) in nodes.iter().enumerate() {
                let target = -C64::i() * node.kappa + std::f64::consts::PI * shifts[j] as f64;
                b[row] = target.re;
                b[row + 1] = target.im;
                row += 2;
                if let Some(dk) = node.dkappa {
                    let t = -C64::i() * dk;
                    b[row] = t.re;
                    b[row + 1] = t.im;
                    row += 2;
                }
            }
            b
        };
        let range: Vec<i32> = if nodes.len() <= 4 { vec![-2, -1, 0, 1, 2] } else { vec![0] };
        let mut best: Option<(f64, DVector<f64>)> = None;
        let mut shifts = vec![0i32; nodes.len()];
        let total = range.len().pow(nodes.len() as u32);
        for code in 0..total {
            let mut c = code;
            for s in shifts.iter_mut() {
                *s = range[c % range.len()];
                c /= range.len();
            }
            let x = svd
                .solve(&base_rhs(&shifts), 0.0)
                .map_err(|e| Error::Numeric(format!("interpolation solve failed: {e}")))?;
            let norm = x.norm();
            if best.as_ref().map_or(true, |(bn, _)| norm < *bn - 1e-12) {
                best = Some((norm, x));
            }
        }
        let (_, x) = best.expect("at least one branch is tried");
        BetaPoly::new(x.iter().copied().collect())
    }

    /// Distance between two parameter polynomials on a spectrum, modulo the
    /// equivalence that only `β(z_j) mod π` (and `β'(z_j)` at double roots)
    /// is observable.
    pub fn distance_mod_equivalence(&self, other: &BetaPoly, roots: &[Root]) -> f64 {
        let pi = std::f64::consts::PI;
        roots
            .iter()
            .map(|r| {
                let d = self.eval(r.z) - other.eval(r.z);
                let re = d.re - pi * (d.re / pi).round();
                let mut dist = re.hypot(d.im);
                if r.multiplicity > 1 {
                    dist = dist.max((self.eval_derivative(r.z) - other.eval_derivative(r.z)).norm());
                }
                dist
            })
            .fold(0.0, f64::max)
    }
}

/// Reduces a real polynomial modulo `P_z·P_z̄`, the degree-`2N` real
/// polynomial vanishing on the spectrum and its conjugate.
///
/// The result has degree `≤ 2N − 1` and agrees with `p` on every root.
///
/// ```
/// use soliton_core::{beta::reduce_mod_char, SpectrumSym};
/// use num_complex::Complex64 as C;
/// let s = SpectrumSym::from_roots(&[C::i()]).unwrap();
/// // z² ≡ −1 modulo z² + 1.
/// assert_eq!(reduce_mod_char(&[0.0, 0.0, 1.0], &s).coeffs(), &[-1.0, 0.0]);
/// ```
pub fn reduce_mod_char(p: &[f64], spectrum: &SpectrumSym) -> BetaPoly {
    let modulus = spectrum.char_poly_real();
    BetaPoly { coeffs: poly::rem_monic_real(p, &modulus) }
}
