//! CSR graph storage, edge-list ingestion, synthetic fixtures and
//! neighbor sampling.
//!
//! Graphs are directed exactly as given. Undirected datasets must list both
//! arcs of every edge.

mod io;
mod sample;
mod synthetic;

pub use io::{load_edge_list, load_features, load_labels, parse_edge_list};
pub use sample::{derive_seed, sample_neighbors};
pub use synthetic::synthetic_graph;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_nodes: usize,
    csr_offsets: Vec<usize>,
    csr_neighbors: Vec<usize>,
    features: DenseMatrix,
}

/// Dataset-level counts used by the cost model and the profiler without
/// loading any graph data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub num_nodes: u64,
    pub num_edges: u64,
    pub feature_dim: u64,
    pub num_labels: u64,
}

impl GraphStats {
    pub const CORA: GraphStats = GraphStats::new(2_708, 10_556, 1_433, 7);
    pub const CITESEER: GraphStats = GraphStats::new(3_327, 4_732, 3_703, 6);
    pub const PUBMED: GraphStats = GraphStats::new(19_717, 44_338, 500, 3);
    pub const REDDIT: GraphStats = GraphStats::new(232_965, 11_606_919, 602, 41);

    pub const fn new(num_nodes: u64, num_edges: u64, feature_dim: u64, num_labels: u64) -> Self {
        Self {
            num_nodes,
            num_edges,
            feature_dim,
            num_labels,
        }
    }

    /// Looks up one of the benchmark datasets by name or short code
    /// (`cora`/`cr`, `citeseer`/`cs`, `pubmed`/`pb`, `reddit`/`rd`).
    pub fn named(name: &str) -> Option<GraphStats> {
        match name.to_ascii_lowercase().as_str() {
            "cora" | "cr" => Some(Self::CORA),
            "citeseer" | "cs" => Some(Self::CITESEER),
            "pubmed" | "pb" => Some(Self::PUBMED),
            "reddit" | "rd" => Some(Self::REDDIT),
            _ => None,
        }
    }
}

impl Graph {
    /// Builds a CSR graph from an arc list. Duplicate arcs are dropped and
    /// each adjacency row is sorted.
    pub fn from_edges(
        num_nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        features: Option<DenseMatrix>,
    ) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(s, d) in &edges {
            for v in [s, d] {
                if v >= num_nodes {
                    return Err(Error::Index {
                        index: v,
                        len: num_nodes,
                    });
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut csr_offsets = vec![0usize; num_nodes + 1];
        for &(s, _) in &edges {
            csr_offsets[s + 1] += 1;
        }
        for v in 0..num_nodes {
            csr_offsets[v + 1] += csr_offsets[v];
        }
        let csr_neighbors = edges.into_iter().map(|(_, d)| d).collect();

        let features = match features {
            Some(f) => {
                if f.rows() != num_nodes {
                    return Err(Error::dims("feature rows", num_nodes, f.rows()));
                }
                f
            }
            None => DenseMatrix::zeros(num_nodes, 0),
        };

        Ok(Self {
            num_nodes,
            csr_offsets,
            csr_neighbors,
            features,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.csr_neighbors.len()
    }

    pub fn feature_dim(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &DenseMatrix {
        &self.features
    }

    pub fn feature(&self, v: usize) -> &[f64] {
        self.features.row(v)
    }

    pub fn csr_offsets(&self) -> &[usize] {
        &self.csr_offsets
    }

    pub fn csr_neighbors(&self) -> &[usize] {
        &self.csr_neighbors
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.csr_neighbors[self.csr_offsets[v]..self.csr_offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.csr_offsets[v + 1] - self.csr_offsets[v]
    }

    /// Out-degree of every node.
    pub fn degrees(&self) -> Vec<usize> {
        self.csr_offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Re-emits the (sorted, deduplicated) arc set.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_nodes).flat_map(move |v| self.neighbors(v).iter().map(move |&u| (v, u)))
    }

    pub fn stats(&self, num_labels: u64) -> GraphStats {
        GraphStats::new(
            self.num_nodes as u64,
            self.num_edges() as u64,
            self.feature_dim() as u64,
            num_labels,
        )
    }

    pub fn with_features(mut self, features: DenseMatrix) -> Result<Self> {
        if features.rows() != self.num_nodes {
            return Err(Error::dims("feature rows", self.num_nodes, features.rows()));
        }
        self.features = features;
        Ok(self)
    }
}
