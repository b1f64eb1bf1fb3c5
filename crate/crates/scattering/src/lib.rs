//! Direct scattering for the Zakharov–Shabat system.
//!
//! * [`jost_pair`] and [`transmission_inv`]: renormalized Jost solutions and
//!   `T(z)⁻¹`, their Wronskian;
//! * [`locate_spectrum`]: eigenvalues inside a rectangle by contour
//!   integrals of `T⁻¹'/T⁻¹`;
//! * [`extract_scattering_data`]: the parameters `κ_j` and the real
//!   polynomial `β` of a pure multi-soliton.
//!
//! The free functions build a fresh [`Scatterer`] per call. When many
//! spectral parameters are probed for one field, build the engine once.
//!
//! ```
//! use num_complex::Complex64 as C;
//! use soliton_core::{Grid, GridField};
//! use soliton_scattering::transmission_inv;
//!
//! // The one-soliton 2 sech(2x) has T(z) = (z + i)/(z − i), so T⁻¹(2i) = 1/3.
//! let grid = Grid::centered(512, 40.0).unwrap();
//! let q0 = GridField::from_fn(grid, |x| C::new(2.0 / (2.0 * x).cosh(), 0.0));
//! let t = transmission_inv(&q0, C::new(0.0, 2.0)).unwrap();
//! assert!((t - 1.0 / 3.0).norm() < 1e-8);
//! ```

pub mod extract;
pub mod jost;
pub mod spectrum;

pub use extract::{eigen_data, extract_scattering_data, extract_with, EigenData};
pub use jost::{JostOptions, Renorm, Scatterer, WavePair};
pub use spectrum::{locate_spectrum, locate_spectrum_with, Region, SpectrumReport};

use num_complex::Complex64 as C64;
use soliton_core::{Error, GridField, Result};

/// Smallest `Im z` accepted by [`jost_pair`] and [`transmission_inv`].
pub const MIN_IM: f64 = 0.05;

fn check_im(z: C64) -> Result<()> {
    if !(z.im >= MIN_IM) {
        return Err(Error::Domain(format!("spectral parameter {z} must satisfy Im z >= {MIN_IM}")));
    }
    Ok(())
}

/// Renormalized left and right Jost solutions of `𝓛(u)` at `z`.
pub fn jost_pair(u: &GridField, z: C64) -> Result<(WavePair, WavePair)> {
    check_im(z)?;
    Scatterer::new(u).jost_pair(z)
}

/// `T(z)⁻¹`, the Wronskian of the Jost solutions.
pub fn transmission_inv(u: &GridField, z: C64) -> Result<C64> {
    check_im(z)?;
    Scatterer::new(u).transmission_inv(z)
}
