//! Real-input FFT of length `n` computed with one complex FFT of length
//! `n/2`. Only the `n/2 + 1` non-redundant bins are produced; the rest
//! follow from `X[n-k] = conj(X[k])`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::counters;
use super::fft::FftPlan;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RealFftPlan {
    size: usize,
    half: FftPlan,
    // X[k] = E/2 + split[k] * O,  split[k] = -i/2 * W^k
    split: Vec<Complex64>,
    // Z[k] = E'/n + merge[k] * O',  merge[k] = i/n * W^-k
    merge: Vec<Complex64>,
}

impl RealFftPlan {
    pub fn new(size: usize) -> Result<Self> {
        if !size.is_power_of_two() || size < 2 {
            return Err(Error::NotPowerOfTwo(size));
        }
        let m = size / 2;
        let w = |k: usize| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / size as f64);
        let split = (0..=m).map(|k| Complex64::new(0.0, -0.5) * w(k)).collect();
        let merge = (0..m)
            .map(|k| Complex64::new(0.0, 1.0 / size as f64) * w(k).conj())
            .collect();
        Ok(Self {
            size,
            half: FftPlan::new(m)?,
            split,
            merge,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of output bins, `n/2 + 1`.
    pub fn bins(&self) -> usize {
        self.size / 2 + 1
    }

    pub fn forward(&self, x: &[f64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.size, "input length does not match the plan");
        counters::add_forward();
        let m = self.size / 2;
        let mut z: Vec<Complex64> = x
            .chunks_exact(2)
            .map(|p| Complex64::new(p[0], p[1]))
            .collect();
        self.half.forward_uncounted(&mut z);
        let out = (0..=m)
            .map(|k| {
                let zk = z[k % m];
                let zc = z[(m - k) % m].conj();
                (zk + zc) * 0.5 + self.split[k] * (zk - zc)
            })
            .collect();
        counters::add_multiplies(6 * (m as u64 + 1));
        out
    }

    /// Inverse of [`forward`](Self::forward), including the `1/n` scale.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Vec<f64> {
        assert_eq!(
            spectrum.len(),
            self.bins(),
            "spectrum length does not match the plan"
        );
        counters::add_inverse();
        let m = self.size / 2;
        let inv_n = 1.0 / self.size as f64;
        let mut z: Vec<Complex64> = (0..m)
            .map(|k| {
                let xk = spectrum[k];
                let xc = spectrum[m - k].conj();
                (xk + xc) * inv_n + self.merge[k] * (xk - xc)
            })
            .collect();
        counters::add_multiplies(6 * m as u64);
        self.half.inverse_unscaled(&mut z);
        z.iter().flat_map(|c| [c.re, c.im]).collect()
    }
}
