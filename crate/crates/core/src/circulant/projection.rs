use super::matrix::{check_block_size, BlockCirculantMatrix};
use crate::error::Result;
use crate::linalg::DenseMatrix;

/// Least-squares projection of a dense matrix onto block-circulant
/// structure. Each defining-vector entry `w_ij[k]` is the mean of block
/// `(i, j)` along the circulant diagonal `(a - b) mod n == k`, counting only
/// entries that lie inside the matrix.
pub fn project_to_block_circulant(d: &DenseMatrix, n: usize) -> Result<BlockCirculantMatrix> {
    check_block_size(n)?;
    let (rows, cols) = (d.rows(), d.cols());
    let p = rows.div_ceil(n);
    let q = cols.div_ceil(n);
    let mut sums = vec![0.0; p * q * n];
    let mut counts = vec![0u32; p * q * n];
    for r in 0..rows {
        let (i, a) = (r / n, r % n);
        for c in 0..cols {
            let (j, b) = (c / n, c % n);
            let slot = (i * q + j) * n + (a + n - b) % n;
            sums[slot] += d.get(r, c);
            counts[slot] += 1;
        }
    }
    let defining = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &k)| if k == 0 { 0.0 } else { s / f64::from(k) })
        .collect();
    BlockCirculantMatrix::new(rows, cols, n, defining)
}
