use std::fs;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Loads a whitespace-separated `src dst` edge list (zero-based ids, `#`
/// comments) and an optional CSV feature file with one row per node.
pub fn load_edge_list(path: impl AsRef<Path>, feature_path: Option<&Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (num_nodes, edges) = parse_edge_list(&text, path)?;
    let features = feature_path.map(load_features).transpose()?;
    Graph::from_edges(num_nodes, edges, features)
}

/// Parses edge-list text. Returns the node count (max id + 1) and the arcs.
pub fn parse_edge_list(text: &str, origin: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut edges = Vec::new();
    let mut max_id = None::<usize>;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: idx + 1,
            message,
        };
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(format!("expected `src dst`, got {line:?}")));
        };
        let src: usize = a
            .parse()
            .map_err(|_| parse_err(format!("invalid node id {a:?}")))?;
        let dst: usize = b
            .parse()
            .map_err(|_| parse_err(format!("invalid node id {b:?}")))?;
        max_id = Some(max_id.unwrap_or(0).max(src).max(dst));
        edges.push((src, dst));
    }
    match max_id {
        Some(m) => Ok((m + 1, edges)),
        None => Err(Error::Parse {
            path: origin.to_path_buf(),
            line: 0,
            message: "edge list is empty".into(),
        }),
    }
}

/// Reads a CSV of decimal reals; every row must have the same width.
pub fn load_features(path: &Path) -> Result<DenseMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut data = Vec::new();
    let mut rows = 0usize;
    let mut cols = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message,
        };
        let before = data.len();
        for field in line.split(',') {
            let field = field.trim();
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(format!("invalid real {field:?}")))?;
            data.push(v);
        }
        let width = data.len() - before;
        match cols {
            None => cols = Some(width),
            Some(c) if c != width => {
                return Err(parse_err(format!("row has {width} values, expected {c}")));
            }
            _ => {}
        }
        rows += 1;
    }
    DenseMatrix::from_row_major(rows, cols.unwrap_or(0), data)
}

/// Reads one non-negative integer label per line. Returns the labels and
/// the number of distinct values.
pub fn load_labels(path: &Path) -> Result<(Vec<usize>, u64)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut labels = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        labels.push(line.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message: format!("invalid label {line:?}"),
        })?);
    }
    let distinct = labels
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len() as u64;
    Ok((labels, distinct))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_edge_list() {
        let (n, edges) = parse_edge_list("0 1\n1 2", Path::new("t")).unwrap();
        let g = Graph::from_edges(n, edges, None).unwrap();
        assert_eq!(g.num_nodes(), 3);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.feature_dim(), 0);
    }

    #[test]
    fn comments_and_duplicates() {
        let (n, edges) = parse_edge_list("# header\n0 1\n0 1\n\n2 0\n", Path::new("t")).unwrap();
        let g = Graph::from_edges(n, edges, None).unwrap();
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_edge_list("0 1\n1 x\n", Path::new("e.txt")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_edge_list("0 1 2\n", Path::new("e.txt")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn empty_edge_file_rejected() {
        assert!(parse_edge_list("", Path::new("e")).is_err());
        assert!(parse_edge_list("# only comments\n", Path::new("e")).is_err());
    }
}
