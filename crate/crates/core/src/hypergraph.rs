//! k-uniform loose paths.
//!
//! Vertices are labelled `1..=n` to match the usual presentation: edge `i`
//! (0-based) is `{i(k-1)+1, ..., i(k-1)+k}`, so consecutive edges share the
//! vertices `k, 2k-1, 3k-2, ...`.

use serde::Serialize;

use crate::error::{Error, Result};

/// The loose path `G_{k,d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoosePath {
    /// Uniformity: every edge has exactly `k` vertices.
    pub k: usize,
    /// Length: number of edges.
    pub d: usize,
    /// Vertex count, `d(k-1) + 1`.
    pub n: usize,
    /// Edges as ascending lists of 1-based vertex labels.
    pub edges: Vec<Vec<usize>>,
}

impl LoosePath {
    /// 1-based labels of the vertices shared by consecutive edges.
    pub fn intersection_vertices(&self) -> Vec<usize> {
        (1..self.d).map(|i| i * (self.k - 1) + 1).collect()
    }

    /// 0-based index range of edge `e`; loose path edges are contiguous.
    pub(crate) fn edge_range(&self, e: usize) -> std::ops::Range<usize> {
        let start = e * (self.k - 1);
        start..start + self.k
    }
}

/// Builds `G_{k,d}` with edges `{1..k}, {k..2k-1}, ...`.
pub fn build_loose_path(k: usize, d: usize) -> Result<LoosePath> {
    if k < 3 {
        return Err(Error::domain(format!(
            "uniformity k = {k} must be at least 3"
        )));
    }
    if d < 1 {
        return Err(Error::domain("length d must be at least 1"));
    }
    let n = d * (k - 1) + 1;
    let edges = (0..d)
        .map(|i| {
            let first = i * (k - 1) + 1;
            (first..first + k).collect()
        })
        .collect();
    Ok(LoosePath { k, d, n, edges })
}

/// Vertex degrees, indexed by `label - 1`.
pub fn degrees(path: &LoosePath) -> Vec<usize> {
    let mut deg = vec![0; path.n];
    for edge in &path.edges {
        for &v in edge {
            deg[v - 1] += 1;
        }
    }
    deg
}
