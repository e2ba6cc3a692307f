use num_complex::Complex64;

use super::counters;
use super::fft::FftPlan;
use super::matrix::BlockCirculantMatrix;
use super::rfft::RealFftPlan;
use crate::error::{Error, Result};

/// Relative bound on the imaginary part left over after the inverse
/// transform. Real weights times real inputs must give real outputs; a
/// larger residue means the spectral data is corrupt.
pub const IMAG_RESIDUE_TOLERANCE: f64 = 1e-9;

/// Block-circulant weights with every defining vector already transformed,
/// so inference only has to transform the input.
#[derive(Debug, Clone)]
pub struct SpectralWeights {
    rows: usize,
    cols: usize,
    block_size: usize,
    p: usize,
    q: usize,
    spectral: Vec<Complex64>,
    plan: FftPlan,
    real_plan: RealFftPlan,
}

/// Transforms each of the `p*q` defining vectors.
pub fn precompute_spectral(w: &BlockCirculantMatrix) -> SpectralWeights {
    let n = w.block_size();
    let plan = FftPlan::new(n).expect("block size validated at construction");
    let real_plan = RealFftPlan::new(n).expect("block size validated at construction");
    let mut spectral = Vec::with_capacity(w.stored_len());
    let mut buf = vec![Complex64::default(); n];
    for i in 0..w.p() {
        for j in 0..w.q() {
            for (dst, &src) in buf.iter_mut().zip(w.block(i, j)) {
                *dst = Complex64::new(src, 0.0);
            }
            plan.forward(&mut buf);
            spectral.extend_from_slice(&buf);
        }
    }
    SpectralWeights {
        rows: w.rows(),
        cols: w.cols(),
        block_size: n,
        p: w.p(),
        q: w.q(),
        spectral,
        plan,
        real_plan,
    }
}

impl SpectralWeights {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn spectral_block(&self, i: usize, j: usize) -> &[Complex64] {
        let n = self.block_size;
        let start = (i * self.q + j) * n;
        &self.spectral[start..start + n]
    }

    fn check_input(&self, h: &[f64]) -> Result<()> {
        if h.len() != self.cols {
            return Err(Error::dims(
                "block-circulant matvec input",
                self.cols,
                h.len(),
            ));
        }
        Ok(())
    }

    /// Transforms the zero-padded input, one spectrum per column block.
    fn input_spectra(&self, h: &[f64]) -> Vec<Vec<Complex64>> {
        let n = self.block_size;
        (0..self.q)
            .map(|j| {
                let mut buf = vec![Complex64::default(); n];
                for (k, slot) in buf.iter_mut().enumerate() {
                    if let Some(&v) = h.get(j * n + k) {
                        slot.re = v;
                    }
                }
                self.plan.forward(&mut buf);
                buf
            })
            .collect()
    }

    fn emit_real(&self, block: &[Complex64], out: &mut Vec<f64>) -> Result<()> {
        for c in block {
            if out.len() == self.rows {
                break;
            }
            if c.im.abs() >= IMAG_RESIDUE_TOLERANCE * (1.0 + c.re.abs()) {
                return Err(Error::Internal(format!(
                    "imaginary residue {:e} on output {} (real part {:e})",
                    c.im,
                    out.len(),
                    c.re
                )));
            }
            out.push(c.re);
        }
        Ok(())
    }

    /// Block-circulant matrix-vector product. For each block row the
    /// spectral products of all `q` column blocks are summed first and a
    /// single inverse transform brings the sum back, so only `p` inverse
    /// transforms run in total.
    pub fn bc_matvec(&self, h: &[f64]) -> Result<Vec<f64>> {
        self.check_input(h)?;
        let n = self.block_size;
        let spectra = self.input_spectra(h);
        let mut out = Vec::with_capacity(self.p * n);
        let mut acc = vec![Complex64::default(); n];
        for i in 0..self.p {
            acc.fill(Complex64::default());
            for (j, x) in spectra.iter().enumerate() {
                for ((a, w), v) in acc.iter_mut().zip(self.spectral_block(i, j)).zip(x) {
                    *a += w * v;
                }
            }
            counters::add_multiplies(4 * (self.q * n) as u64);
            self.plan.inverse(&mut acc);
            self.emit_real(&acc, &mut out)?;
        }
        Ok(out)
    }

    /// Reference flow that inverse-transforms every block product and sums
    /// in the spatial domain: `p*q` inverse transforms. Kept to check that
    /// spectral accumulation changes nothing but the transform count.
    pub fn bc_matvec_per_block_ifft(&self, h: &[f64]) -> Result<Vec<f64>> {
        self.check_input(h)?;
        let n = self.block_size;
        let spectra = self.input_spectra(h);
        let mut out = Vec::with_capacity(self.p * n);
        let mut prod = vec![Complex64::default(); n];
        for i in 0..self.p {
            let mut acc = vec![Complex64::default(); n];
            for (j, x) in spectra.iter().enumerate() {
                for ((slot, w), v) in prod.iter_mut().zip(self.spectral_block(i, j)).zip(x) {
                    *slot = w * v;
                }
                counters::add_multiplies(4 * n as u64);
                self.plan.inverse(&mut prod);
                for (a, v) in acc.iter_mut().zip(&prod) {
                    *a += v;
                }
            }
            self.emit_real(&acc, &mut out)?;
        }
        Ok(out)
    }

    /// Same product computed on half spectra with real transforms. Real
    /// defining vectors have conjugate-symmetric spectra, so bins
    /// `0..=n/2` carry all the information.
    pub fn rfft_matvec(&self, h: &[f64]) -> Result<Vec<f64>> {
        self.check_input(h)?;
        let n = self.block_size;
        let bins = self.real_plan.bins();
        let spectra: Vec<Vec<Complex64>> = (0..self.q)
            .map(|j| {
                let block: Vec<f64> = (0..n)
                    .map(|k| h.get(j * n + k).copied().unwrap_or(0.0))
                    .collect();
                self.real_plan.forward(&block)
            })
            .collect();
        let mut out = Vec::with_capacity(self.p * n);
        let mut acc = vec![Complex64::default(); bins];
        for i in 0..self.p {
            acc.fill(Complex64::default());
            for (j, x) in spectra.iter().enumerate() {
                for ((a, w), v) in acc.iter_mut().zip(self.spectral_block(i, j)).zip(x) {
                    *a += w * v;
                }
            }
            counters::add_multiplies(4 * (self.q * bins) as u64);
            let block = self.real_plan.inverse(&acc);
            let take = (self.rows - out.len()).min(n);
            out.extend_from_slice(&block[..take]);
        }
        Ok(out)
    }
}
