//! Symmetric coordinates for unordered spectra.
//!
//! An unordered multiset `{z_1, …, z_N}` is stored through its power sums
//! `s_j = Σ_n z_n^j`, `j = 1..N`. Unlike an ordered list of roots, power sums
//! depend smoothly on the spectrum even where eigenvalues collide. Roots are
//! recovered with Newton's identities (power sums → elementary symmetric
//! functions → monic characteristic polynomial) followed by the eigenvalues
//! of the companion matrix.
//!
//! Near a collision of `m` roots the inverse map is only Hölder continuous
//! with exponent `1/m`, so roots closer than [`CLUSTER_RADIUS`] are reported
//! as one root of higher multiplicity.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Roots closer than this are merged into one multiple root.
pub const CLUSTER_RADIUS: f64 = 1e-3;

/// A root of the characteristic polynomial with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    /// Location in the upper half-plane.
    pub z: C64,
    /// Multiplicity (1 for simple eigenvalues).
    pub multiplicity: usize,
}

/// Power-sum coordinates of an unordered spectrum in the upper half-plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSym {
    s: Vec<C64>,
}

/// Canonical order used when summing: by real part, then imaginary part.
fn canonical_order(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl SpectrumSym {
    /// Power sums of a root multiset.
    ///
    /// Roots are sorted before summation, so any permutation of the input
    /// gives bit-identical coordinates.
    ///
    /// ```
    /// use soliton_core::SpectrumSym;
    /// use num_complex::Complex64 as C;
    /// let s = SpectrumSym::from_roots(&[C::new(0.0, 1.0), C::new(0.0, 2.0)]).unwrap();
    /// assert_eq!(s.power_sums(), &[C::new(0.0, 3.0), C::new(-5.0, 0.0)]);
    /// ```
    pub fn from_roots(roots: &[C64]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Domain("a spectrum needs at least one root".into()));
        }
        if let Some(z) = roots.iter().find(|z| !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain(format!("root {z} is not in the open upper half-plane")));
        }
        let mut sorted = roots.to_vec();
        sorted.sort_by(canonical_order);
        let n = sorted.len();
        let mut s = vec![C64::new(0.0, 0.0); n];
        for z in &sorted {
            let mut p = *z;
            for sj in s.iter_mut() {
                *sj += p;
                p *= z;
            }
        }
        Ok(Self { s })
    }

    /// Wraps raw power sums without validating the recovered roots.
    pub fn from_power_sums(s: Vec<C64>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Domain("a spectrum needs at least one root".into()));
        }
        if s.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain("non-finite power sum".into()));
        }
        Ok(Self { s })
    }

    /// Number of roots counted with multiplicity.
    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// The power sums `s_1..s_N`.
    pub fn power_sums(&self) -> &[C64] {
        &self.s
    }

    /// Elementary symmetric functions `e_0 = 1, e_1, …, e_N` via Newton's
    /// identities `k e_k = Σ_{i=1}^k (−1)^{i−1} e_{k−i} s_i`.
    pub fn elementary(&self) -> Vec<C64> {
        let n = self.n();
        let mut e = vec![C64::new(0.0, 0.0); n + 1];
        e[0] = C64::new(1.0, 0.0);
        for k in 1..=n {
            let mut acc = C64::new(0.0, 0.0);
            for i in 1..=k {
                let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                acc += sign * e[k - i] * self.s[i - 1];
            }
            e[k] = acc / k as f64;
        }
        e
    }

    /// Ascending coefficients of the monic characteristic polynomial
    /// `P(z) = Π (z − z_n)`.
    pub fn char_poly(&self) -> Vec<C64> {
        let e = self.elementary();
        let n = self.n();
        let mut c = vec![C64::new(0.0, 0.0); n + 1];
        for (k, ek) in e.iter().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            c[n - k] = sign * ek;
        }
        c
    }

    /// Ascending coefficients of the real monic polynomial `P(z)·P̄(z)` of
    /// degree `2N`, whose roots are the spectrum and its conjugate.
    pub fn char_poly_real(&self) -> Vec<f64> {
        let p = self.char_poly();
        let pbar: Vec<C64> = p.iter().map(|c| c.conj()).collect();
        poly::mul_complex(&p, &pbar).into_iter().map(|c| c.re).collect()
    }

    /// Recovers the roots with multiplicities.
    ///
    /// Roots are sorted by real part, then imaginary part. Roots closer than
    /// [`CLUSTER_RADIUS`] are merged into their mean.
    ///
    /// ```
    /// use soliton_core::SpectrumSym;
    /// use num_complex::Complex64 as C;
    /// let s = SpectrumSym::from_power_sums(vec![C::new(0.0, 2.0), C::new(-2.0, 0.0)]).unwrap();
    /// let r = s.roots().unwrap();
    /// assert_eq!(r.len(), 1);
    /// assert_eq!(r[0].multiplicity, 2);
    /// assert!((r[0].z - C::new(0.0, 1.0)).norm() < 1e-12);
    /// ```
    pub fn roots(&self) -> Result<Vec<Root>> {
        let raw = self.raw_roots()?;
        let clustered = cluster(&raw);
        if let Some(r) = clustered.iter().find(|r| !(r.z.im > 0.0)) {
            return Err(Error::Domain(format!("recovered root {} is not in the upper half-plane", r.z)));
        }
        Ok(clustered)
    }

    /// Roots listed with repetition according to multiplicity.
    pub fn roots_flat(&self) -> Result<Vec<C64>> {
        Ok(self
            .roots()?
            .into_iter()
            .flat_map(|r| std::iter::repeat(r.z).take(r.multiplicity))
            .collect())
    }

    /// Unclustered roots from the companion matrix, polished by Newton steps
    /// on the characteristic polynomial.
    fn raw_roots(&self) -> Result<Vec<C64>> {
        let c = self.char_poly();
        let n = self.n();
        if n == 1 {
            return Ok(vec![-c[0]]);
        }
        let mut m = DMatrix::<C64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -c[i];
        }
        let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Numeric("companion-matrix eigenvalue iteration did not converge".into()))?;
        let (_, t) = schur.unpack();
        let dc: Vec<C64> = (1..c.len()).map(|k| c[k] * k as f64).collect();
        let mut roots: Vec<C64> = (0..n)
            .map(|i| {
                let mut z = t[(i, i)];
                for _ in 0..3 {
                    let d = poly::eval_complex(&dc, z);
                    if d.norm() < 1e-8 {
                        break;
                    }
                    let step = poly::eval_complex(&c, z) / d;
                    if !(step.re.is_finite() && step.im.is_finite()) || step.norm() > 1e-3 {
                        break;
                    }
                    z -= step;
                }
                z
            })
            .collect();
        roots.sort_by(canonical_order);
        Ok(roots)
    }
}

/// Merges roots closer than [`CLUSTER_RADIUS`] (single linkage).
fn cluster(roots: &[C64]) -> Vec<Root> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < CLUSTER_RADIUS {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<Root> = Vec::new();
    let mut groups: Vec<(usize, C64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if let Some(g) = groups.iter_mut().find(|g| g.0 == r) {
            g.1 += roots[i];
            g.2 += 1;
        } else {
            groups.push((r, roots[i], 1));
        }
    }
    for (_, sum, m) in groups {
        out.push(Root { z: sum / m as f64, multiplicity: m });
    }
    out.sort_by(|a, b| canonical_order(&a.z, &b.z));
    out
}
