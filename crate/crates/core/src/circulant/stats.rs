use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Theoretical computation reduction and storage reduction of a block size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompressionStats {
    pub tcr: f64,
    pub sr: f64,
}

/// `sr = n`, `tcr = n / log2(n)`. Block size 1 denotes an uncompressed
/// matrix and reports 1.0 for both.
pub fn compression_stats(rows: usize, cols: usize, n: usize) -> Result<CompressionStats> {
    if rows == 0 || cols == 0 {
        return Err(Error::Config(format!("empty weight matrix {rows}x{cols}")));
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if n == 1 {
        return Ok(CompressionStats { tcr: 1.0, sr: 1.0 });
    }
    let n = n as f64;
    Ok(CompressionStats {
        tcr: n / n.log2(),
        sr: n,
    })
}
