use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// An `rows x cols` weight matrix made of `p x q` circulant blocks of size
/// `n`, stored as one defining vector per block.
///
/// Block `(i, j)` expands to `B[a][b] = w_ij[(a - b) mod n]`: the defining
/// vector is the block's first column and every row is a right rotation of
/// the row above. With this convention `B x = IFFT(FFT(w) * FFT(x))`.
///
/// When `rows` or `cols` is not a multiple of `n` the trailing blocks extend
/// past the matrix; inputs are zero-padded and outputs truncated, so the
/// padded part of those blocks never contributes.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCirculantMatrix {
    rows: usize,
    cols: usize,
    block_size: usize,
    p: usize,
    q: usize,
    defining: Vec<f64>,
}

pub(crate) fn check_block_size(n: usize) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

impl BlockCirculantMatrix {
    /// `defining` is laid out block-row-major: block `(i, j)` occupies
    /// `[(i*q + j)*n, (i*q + j + 1)*n)`.
    pub fn new(rows: usize, cols: usize, block_size: usize, defining: Vec<f64>) -> Result<Self> {
        check_block_size(block_size)?;
        if rows == 0 || cols == 0 {
            return Err(Error::Config(format!("empty weight matrix {rows}x{cols}")));
        }
        let p = rows.div_ceil(block_size);
        let q = cols.div_ceil(block_size);
        if defining.len() != p * q * block_size {
            return Err(Error::dims(
                "defining vectors",
                p * q * block_size,
                defining.len(),
            ));
        }
        Ok(Self {
            rows,
            cols,
            block_size,
            p,
            q,
            defining,
        })
    }

    /// Defining vectors drawn uniformly from `[-1/sqrt(cols), 1/sqrt(cols)]`.
    pub fn new_random(rows: usize, cols: usize, block_size: usize, seed: u64) -> Result<Self> {
        check_block_size(block_size)?;
        if rows == 0 || cols == 0 {
            return Err(Error::Config(format!("empty weight matrix {rows}x{cols}")));
        }
        let bound = 1.0 / (cols as f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rows.div_ceil(block_size) * cols.div_ceil(block_size) * block_size;
        let defining = (0..len).map(|_| rng.random_range(-bound..=bound)).collect();
        Self::new(rows, cols, block_size, defining)
    }

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

    pub fn defining_vectors(&self) -> &[f64] {
        &self.defining
    }

    pub fn block(&self, i: usize, j: usize) -> &[f64] {
        let n = self.block_size;
        let start = (i * self.q + j) * n;
        &self.defining[start..start + n]
    }

    /// Number of stored reals, `p*q*n`.
    pub fn stored_len(&self) -> usize {
        self.defining.len()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.block_size;
        DenseMatrix::from_fn(self.rows, self.cols, |r, c| {
            let (i, a) = (r / n, r % n);
            let (j, b) = (c / n, c % n);
            self.block(i, j)[(a + n - b) % n]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_rotation() {
        let m = BlockCirculantMatrix::new(2, 2, 2, vec![1.0, 2.0]).unwrap();
        let d = m.to_dense();
        assert_eq!(d.row(0), &[1.0, 2.0]);
        assert_eq!(d.row(1), &[2.0, 1.0]);
    }

    #[test]
    fn n4_first_and_second_columns() {
        let (a, b, c, d) = (1.0, 2.0, 3.0, 4.0);
        let m = BlockCirculantMatrix::new(4, 4, 4, vec![a, b, c, d]).unwrap();
        let dense = m.to_dense();
        let col = |j: usize| (0..4).map(|r| dense.get(r, j)).collect::<Vec<_>>();
        assert_eq!(col(0), vec![a, b, c, d]);
        assert_eq!(col(1), vec![d, a, b, c]);
        // first row is [w0, w3, w2, w1]
        assert_eq!(dense.row(0), &[a, d, c, b]);
    }

    #[test]
    fn shapes_and_padding() {
        let m = BlockCirculantMatrix::new_random(512, 512, 128, 1).unwrap();
        assert_eq!((m.p(), m.q(), m.stored_len()), (4, 4, 2048));
        let m = BlockCirculantMatrix::new_random(4, 4, 4, 1).unwrap();
        assert_eq!((m.p(), m.q()), (1, 1));
        let m = BlockCirculantMatrix::new_random(100, 70, 32, 1).unwrap();
        assert_eq!((m.p(), m.q()), (4, 3));
        let d = m.to_dense();
        assert_eq!((d.rows(), d.cols()), (100, 70));
    }

    #[test]
    fn random_entries_within_bound() {
        let m = BlockCirculantMatrix::new_random(64, 100, 16, 3).unwrap();
        assert!(m.defining_vectors().iter().all(|v| v.abs() <= 0.1));
        assert_eq!(m, BlockCirculantMatrix::new_random(64, 100, 16, 3).unwrap());
    }

    #[test]
    fn rejects_bad_block_size() {
        for n in [0, 1, 3, 12] {
            assert!(matches!(
                BlockCirculantMatrix::new_random(8, 8, n, 0),
                Err(Error::NotPowerOfTwo(_))
            ));
        }
        assert!(BlockCirculantMatrix::new(4, 4, 4, vec![0.0; 3]).is_err());
    }
}
