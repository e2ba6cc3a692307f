//! Real-input transforms: half-size spectra cut the multiply count of the
//! block-circulant matvec while giving the same result.
//!
//! ```text
//! cargo run --example rfft_fast_path
//! ```

use circgnn::circulant::{counters, precompute_spectral, BlockCirculantMatrix, RealFftPlan};
use circgnn::linalg::max_abs_diff;

fn main() -> circgnn::Result<()> {
    let plan = RealFftPlan::new(8)?;
    let signal = [1.0, 2.0, 0.0, -1.0, 0.5, 0.0, 3.0, -2.0];
    let spectrum = plan.forward(&signal);
    println!("8-point real signal -> {} bins", plan.bins());
    for (k, z) in spectrum.iter().enumerate() {
        println!("  X[{k}] = {:>7.3} {:+7.3}i", z.re, z.im);
    }
    let back = plan.inverse(&spectrum);
    println!("roundtrip error {:.2e}\n", max_abs_diff(&back, &signal));

    println!(
        "{:>6} {:>4} {:>14} {:>14} {:>7} {:>10}",
        "n", "p=q", "complex mults", "real-fft mults", "ratio", "max diff"
    );
    for n in [16, 32, 64, 128] {
        let dim = 4 * n;
        let w = BlockCirculantMatrix::new_random(dim, dim, n, n as u64)?;
        let s = precompute_spectral(&w);
        let x: Vec<f64> = (0..dim).map(|i| ((i * 7 % 13) as f64) - 6.0).collect();
        let (full, a) = counters::measure(|| s.bc_matvec(&x));
        let (half, b) = counters::measure(|| s.rfft_matvec(&x));
        let (full, half) = (full?, half?);
        println!(
            "{:>6} {:>4} {:>14} {:>14} {:>7.3} {:>10.2e}",
            n,
            4,
            a.real_multiplies,
            b.real_multiplies,
            b.real_multiplies as f64 / a.real_multiplies as f64,
            max_abs_diff(&full, &half)
        );
    }
    Ok(())
}
