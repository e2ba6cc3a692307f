//! Block-circulant matvec through the spectral domain, checked against the
//! dense expansion, with transform counts for the two accumulation orders.
//!
//! ```text
//! cargo run --example circulant_matvec
//! ```

use circgnn::circulant::{counters, precompute_spectral, BlockCirculantMatrix};
use circgnn::linalg::max_abs_diff;

fn main() -> circgnn::Result<()> {
    let (rows, cols, n) = (512, 512, 128);
    let w = BlockCirculantMatrix::new_random(rows, cols, n, 42)?;
    let spectral = precompute_spectral(&w);
    let x: Vec<f64> = (0..cols).map(|i| (i as f64 * 0.37).sin()).collect();

    let dense = w.to_dense().matvec(&x)?;
    let (fast, ops) = counters::measure(|| spectral.bc_matvec(&x));
    let (slow, ops_slow) = counters::measure(|| spectral.bc_matvec_per_block_ifft(&x));
    let (fast, slow) = (fast?, slow?);

    println!(
        "{rows}x{cols} matrix, block size {n}: p = {}, q = {}",
        w.p(),
        w.q()
    );
    println!(
        "stored reals: {} (dense would need {})",
        w.stored_len(),
        rows * cols
    );
    println!(
        "max |spectral - dense|            = {:.3e}",
        max_abs_diff(&fast, &dense)
    );
    println!(
        "max |per-block IFFT - spectral|   = {:.3e}",
        max_abs_diff(&slow, &fast)
    );
    println!();
    println!(
        "{:<24} {:>8} {:>8} {:>12}",
        "accumulation", "FFTs", "IFFTs", "real mults"
    );
    println!(
        "{:<24} {:>8} {:>8} {:>12}",
        "spectral (p IFFTs)", ops.forward_transforms, ops.inverse_transforms, ops.real_multiplies
    );
    println!(
        "{:<24} {:>8} {:>8} {:>12}",
        "per block (p*q IFFTs)",
        ops_slow.forward_transforms,
        ops_slow.inverse_transforms,
        ops_slow.real_multiplies
    );
    println!("dense matvec real mults: {}", rows * cols);
    Ok(())
}
