//! Block-circulant weight matrices and their FFT compute path.
//!
//! A [`BlockCirculantMatrix`] stores one defining vector per `n x n` block.
//! [`precompute_spectral`] moves those vectors to the frequency domain once,
//! and [`SpectralWeights::bc_matvec`] then evaluates `W h` with `q` forward
//! and `p` inverse transforms. [`BlockCirculantMatrix::to_dense`] is the
//! oracle every fast path is checked against.

pub mod counters;
mod fft;
mod matrix;
mod projection;
mod rfft;
mod spectral;
mod stats;

pub use fft::{fft, fft_real, FftPlan};
pub use matrix::BlockCirculantMatrix;
pub use projection::project_to_block_circulant;
pub use rfft::RealFftPlan;
pub use spectral::{precompute_spectral, SpectralWeights, IMAG_RESIDUE_TOLERANCE};
pub use stats::{compression_stats, CompressionStats};
