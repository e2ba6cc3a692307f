use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::Graph;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Random directed graph where each node links to `Binomial(n-1, d/(n-1))`
/// distinct other nodes, so the expected out-degree is `avg_degree`.
/// Features are uniform in [-1, 1].
pub fn synthetic_graph(
    num_nodes: usize,
    avg_degree: usize,
    feature_dim: usize,
    seed: u64,
) -> Result<Graph> {
    if num_nodes == 0 {
        return Err(Error::Config(
            "synthetic graph needs at least one node".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let others = num_nodes - 1;
    let mut edges = Vec::with_capacity(num_nodes * avg_degree);
    if others > 0 && avg_degree > 0 {
        let p = (avg_degree as f64 / others as f64).min(1.0);
        let degree_dist = Binomial::new(others as u64, p)
            .map_err(|e| Error::Config(format!("degree distribution: {e}")))?;
        for v in 0..num_nodes {
            let d = degree_dist.sample(&mut rng) as usize;
            for t in index::sample(&mut rng, others, d) {
                // skip over v itself
                let u = if t >= v { t + 1 } else { t };
                edges.push((v, u));
            }
        }
    }
    let features =
        DenseMatrix::from_fn(num_nodes, feature_dim, |_, _| rng.random_range(-1.0..=1.0));
    Graph::from_edges(num_nodes, edges, Some(features))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hundred_nodes_about_thousand_edges() {
        let g = synthetic_graph(100, 10, 32, 7).unwrap();
        assert_eq!(g.num_nodes(), 100);
        assert_eq!(g.feature_dim(), 32);
        let e = g.num_edges() as f64;
        // Sum of 100 Binomial(99, 10/99): sd about 30
        assert!((850.0..1150.0).contains(&e), "edges {e}");
        assert!(g.edges().all(|(a, b)| a != b));
        assert!(g
            .features()
            .as_slice()
            .iter()
            .all(|x| (-1.0..=1.0).contains(x)));
    }

    #[test]
    fn single_isolated_node() {
        let g = synthetic_graph(1, 0, 4, 0).unwrap();
        assert_eq!(g.num_nodes(), 1);
        assert_eq!(g.num_edges(), 0);
        assert_eq!(g.feature_dim(), 4);
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = synthetic_graph(50, 5, 8, 3).unwrap();
        let b = synthetic_graph(50, 5, 8, 3).unwrap();
        let bytes = |g: &Graph| -> Vec<u8> {
            g.features()
                .as_slice()
                .iter()
                .flat_map(|x| x.to_le_bytes())
                .collect()
        };
        assert_eq!(bytes(&a), bytes(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(synthetic_graph(0, 1, 1, 0).is_err());
    }
}
