//! The first five conserved Hamiltonians of the focusing NLS hierarchy.
//!
//! ```text
//! H₀ = ∫ |u|²
//! H₁ = (1/i) ∫ u ū_x
//! H₂ = ∫ |u_x|² − |u|⁴
//! H₃ = Re (1/i) ∫ u_x ū_xx − 3|u|² u ū_x
//! H₄ = ∫ |u_xx|² − |(|u|²)_x|² − (3/2)|(u²)_x|² + 2|u|⁶
//! ```
//!
//! Derivatives are spectral, integrals use the trapezoid rule (exact for
//! band-limited periodic integrands). On the one-soliton with eigenvalue
//! `z`, `H_n = (2/(n+1)) Im (2z)^{n+1}`.

use num_complex::Complex64 as C64;
use soliton_core::{spectral, Error, GridField, Result};

/// Number of Hamiltonians provided.
pub const COUNT: usize = 5;

/// `H_n(u)` for `n ∈ 0..=4`.
///
/// ```
/// use num_complex::Complex64 as C;
/// use soliton_core::{Grid, GridField};
/// use soliton_conserved::hamiltonian;
/// let q0 = GridField::from_fn(Grid::centered(512, 40.0).unwrap(), |x| C::new(2.0 / (2.0 * x).cosh(), 0.0));
/// assert!((hamiltonian(&q0, 0).unwrap() - 4.0).abs() < 1e-8);
/// assert!((hamiltonian(&q0, 2).unwrap() + 16.0 / 3.0).abs() < 1e-8);
/// ```
pub fn hamiltonian(u: &GridField, n: usize) -> Result<f64> {
    if n >= COUNT {
        return Err(Error::Domain(format!("Hamiltonian H_{n} is not available (0..=4)")));
    }
    Ok(all_up_to(u, n)[n])
}

/// `[H₀, …, H₄]`.
pub fn hamiltonians(u: &GridField) -> [f64; COUNT] {
    let v = all_up_to(u, COUNT - 1);
    [v[0], v[1], v[2], v[3], v[4]]
}

fn all_up_to(u: &GridField, n: usize) -> Vec<f64> {
    let g = u.grid();
    let dx = g.dx();
    let v = u.values();
    let integrate = |f: &dyn Fn(usize) -> f64| dx * (0..v.len()).map(f).sum::<f64>();
    let mut out = vec![integrate(&|k| v[k].norm_sqr())];
    if n == 0 {
        return out;
    }
    let ux = spectral::derivative(g, v, 1);
    let i = C64::i();
    out.push(integrate(&|k| (v[k] * ux[k].conj() / i).re));
    if n == 1 {
        return out;
    }
    out.push(integrate(&|k| ux[k].norm_sqr() - v[k].norm_sqr().powi(2)));
    if n == 2 {
        return out;
    }
    let uxx = spectral::derivative(g, v, 2);
    out.push(integrate(&|k| {
        ((ux[k] * uxx[k].conj() - 3.0 * v[k].norm_sqr() * v[k] * ux[k].conj()) / i).re
    }));
    if n == 3 {
        return out;
    }
    let m: Vec<C64> = v.iter().map(|c| C64::new(c.norm_sqr(), 0.0)).collect();
    let sq: Vec<C64> = v.iter().map(|c| c * c).collect();
    let mx = spectral::derivative(g, &m, 1);
    let sqx = spectral::derivative(g, &sq, 1);
    out.push(integrate(&|k| {
        uxx[k].norm_sqr() - mx[k].norm_sqr() - 1.5 * sqx[k].norm_sqr() + 2.0 * v[k].norm_sqr().powi(3)
    }));
    out
}
