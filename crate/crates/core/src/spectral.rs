//! Discrete Fourier helpers on periodic grids: spectral derivatives and
//! band-limited interpolation.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::grid::Grid;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Forward transform plan of length `n`, cached per thread.
pub fn forward_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

/// Inverse (unnormalized) transform plan of length `n`, cached per thread.
pub fn inverse_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n))
}

/// Discrete Fourier transform `U_k = Σ_j u_j e^{-2πijk/n}`.
pub fn fft(values: &[C64]) -> Vec<C64> {
    let mut buf = values.to_vec();
    forward_plan(buf.len()).process(&mut buf);
    buf
}

/// Inverse transform including the `1/n` normalization.
pub fn ifft(spectrum: &[C64]) -> Vec<C64> {
    let mut buf = spectrum.to_vec();
    inverse_plan(buf.len()).process(&mut buf);
    let s = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|v| *v *= s);
    buf
}

/// `order`-th spectral derivative of periodic samples on `grid`.
pub fn derivative(grid: &Grid, values: &[C64], order: u32) -> Vec<C64> {
    if order == 0 {
        return values.to_vec();
    }
    let mut spec = fft(values);
    let ik: Vec<C64> = grid.wavenumbers().into_iter().map(|k| C64::new(0.0, k)).collect();
    for (s, k) in spec.iter_mut().zip(&ik) {
        *s *= k.powu(order);
    }
    ifft(&spec)
}

/// Band-limited interpolation onto a grid `factor` times finer.
///
/// Output sample `p` sits at `x_min + p·dx/factor`. The Nyquist coefficient
/// is split evenly between the two aliases so that real data stay real.
pub fn upsample(values: &[C64], factor: usize) -> Vec<C64> {
    let n = values.len();
    if factor <= 1 {
        return values.to_vec();
    }
    let m = n * factor;
    let spec = fft(values);
    let mut out = vec![C64::new(0.0, 0.0); m];
    let half = n / 2;
    for k in 0..n {
        if n % 2 == 0 && k == half {
            out[half] += 0.5 * spec[k];
            out[m - half] += 0.5 * spec[k];
        } else if k < half || (n % 2 == 1 && k == half) {
            out[k] = spec[k];
        } else {
            out[m - (n - k)] = spec[k];
        }
    }
    let mut res = out;
    inverse_plan(m).process(&mut res);
    let s = 1.0 / n as f64;
    res.iter_mut().for_each(|v| *v *= s);
    res
}
