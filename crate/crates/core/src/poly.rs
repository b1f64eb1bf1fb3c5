//! Dense univariate polynomials with real or complex coefficients.
//!
//! Coefficients are stored in ascending order: `c[k]` multiplies `z^k`.

use num_complex::Complex64 as C64;

/// Evaluates a real polynomial at a complex point (Horner).
pub fn eval_real(coeffs: &[f64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Evaluates the derivative of a real polynomial at a complex point.
pub fn eval_real_derivative(coeffs: &[f64], z: C64) -> C64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
}

/// Evaluates a complex polynomial (Horner).
pub fn eval_complex(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Divided difference `(p(a) − p(b))/(a − b)` of a real polynomial, exact
/// also for `a = b` (where it equals `p'(a)`).
pub fn divided_difference_real(coeffs: &[f64], a: C64, b: C64) -> C64 {
    // (a^k − b^k)/(a − b) = Σ_{j<k} a^j b^{k−1−j}, accumulated by the
    // recursion h_k = a·h_{k−1} + b^{k−1}.
    let mut h = C64::new(0.0, 0.0);
    let mut bpow = C64::new(1.0, 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for &c in coeffs.iter().skip(1) {
        h = a * h + bpow;
        bpow *= b;
        acc += c * h;
    }
    acc
}

/// Product of two complex polynomials.
pub fn mul_complex(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of a real polynomial modulo a monic real polynomial.
///
/// Returns exactly `deg(modulus)` coefficients (zero-padded).
pub fn rem_monic_real(p: &[f64], modulus: &[f64]) -> Vec<f64> {
    let m = modulus.len() - 1;
    let mut r = p.to_vec();
    if r.len() > m {
        for top in (m..r.len()).rev() {
            let c = r[top];
            if c != 0.0 {
                for j in 0..=m {
                    r[top - m + j] -= c * modulus[j];
                }
            }
            r[top] = 0.0;
        }
    }
    r.resize(m, 0.0);
    r
}
