//! Iterative radix-2 Cooley-Tukey FFT over `Complex64`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::counters;
use crate::error::{Error, Result};

/// Precomputed twiddles and bit-reversal permutation for one transform size.
#[derive(Debug, Clone)]
pub struct FftPlan {
    size: usize,
    twiddles: Vec<Complex64>,
    bit_reverse: Vec<usize>,
}

impl FftPlan {
    pub fn new(size: usize) -> Result<Self> {
        if !size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(size));
        }
        let twiddles = (0..size / 2)
            .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / size as f64))
            .collect();
        let bits = size.trailing_zeros();
        let bit_reverse = (0..size)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (usize::BITS - bits)
                }
            })
            .collect();
        Ok(Self {
            size,
            twiddles,
            bit_reverse,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        counters::add_forward();
        self.transform(buf, false);
    }

    /// Inverse DFT including the `1/n` scale.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        counters::add_inverse();
        self.transform(buf, true);
        let scale = 1.0 / self.size as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
        counters::add_multiplies(2 * self.size as u64);
    }

    /// Inverse DFT without scaling, for callers that fold `1/n` elsewhere.
    pub(crate) fn inverse_unscaled(&self, buf: &mut [Complex64]) {
        self.transform(buf, true);
    }

    pub(crate) fn forward_uncounted(&self, buf: &mut [Complex64]) {
        self.transform(buf, false);
    }

    fn transform(&self, buf: &mut [Complex64], inverse: bool) {
        let n = self.size;
        assert_eq!(buf.len(), n, "buffer length does not match the plan");
        for i in 0..n {
            let j = self.bit_reverse[i];
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let t = w * buf[start + k + half];
                    let u = buf[start + k];
                    buf[start + k] = u + t;
                    buf[start + k + half] = u - t;
                }
            }
            len <<= 1;
        }
        // n/2 butterflies per stage, one complex multiply (4 real) each
        counters::add_multiplies(2 * n as u64 * n.trailing_zeros() as u64);
    }
}

/// One-shot transform. `inverse` applies the `1/n` scale.
pub fn fft(x: &[Complex64], inverse: bool) -> Result<Vec<Complex64>> {
    let plan = FftPlan::new(x.len())?;
    let mut buf = x.to_vec();
    if inverse {
        plan.inverse(&mut buf);
    } else {
        plan.forward(&mut buf);
    }
    Ok(buf)
}

/// Forward transform of a real signal, returned as a full complex spectrum.
pub fn fft_real(x: &[f64]) -> Result<Vec<Complex64>> {
    let buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft(&buf, false)
}
