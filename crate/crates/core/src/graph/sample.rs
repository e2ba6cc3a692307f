use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Draws `count` neighbors of `v` uniformly with replacement. A node with no
/// neighbors samples itself, so the result always has exactly `count` ids.
pub fn sample_neighbors(g: &Graph, v: usize, count: usize, seed: u64) -> Result<Vec<usize>> {
    if v >= g.num_nodes() {
        return Err(Error::Index {
            index: v,
            len: g.num_nodes(),
        });
    }
    if count == 0 {
        return Err(Error::Config("sample size must be at least 1".into()));
    }
    let neigh = g.neighbors(v);
    if neigh.is_empty() {
        return Ok(vec![v; count]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| neigh[rng.random_range(0..neigh.len())])
        .collect())
}

/// Mixes a base seed with a (node, layer) pair so every sampling site gets
/// its own stream regardless of evaluation order.
pub fn derive_seed(base: u64, node: usize, layer: usize) -> u64 {
    let mut z = base
        ^ (node as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (layer as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
